#include "emt/ymh.hpp"

#include <cmath>

namespace emt {

namespace {

int levi_civita(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  return ((b - a + 3) % 3 == 1) ? 1 : -1;
}

}  // namespace

LieAlgebra LieAlgebra::so3() {
  LieAlgebra g;
  g.dim = 3;
  g.f.assign(27, 0.0);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) g.f[(a * 3 + b) * 3 + c] = levi_civita(a, b, c);
  return g;
}

LieAlgebra LieAlgebra::so2() {
  LieAlgebra g;
  g.dim = 1;
  g.f.assign(1, 0.0);
  return g;
}

LieAlgebraAction LieAlgebraAction::so3_defining() {
  LieAlgebraAction act;
  act.algebra = LieAlgebra::so3();
  act.dim_v = 3;
  for (int a = 0; a < 3; ++a) {
    Mat m = Mat::Zero(3, 3);
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) m(b, c) = -levi_civita(a, b, c);
    act.rho.push_back(m);
  }
  return act;
}

LieAlgebraAction LieAlgebraAction::so2_plane() {
  LieAlgebraAction act;
  act.algebra = LieAlgebra::so2();
  act.dim_v = 2;
  Mat m(2, 2);
  m << 0.0, -1.0, 1.0, 0.0;
  act.rho.push_back(m);
  return act;
}

void LieAlgebraAction::validate(double tol) const {
  const int g = algebra.dim;
  if (static_cast<int>(rho.size()) != g) throw ShapeError("action needs one matrix per generator");
  for (const Mat& m : rho) {
    if (m.rows() != dim_v || m.cols() != dim_v) throw ShapeError("action matrix has the wrong size");
    if ((m + m.transpose()).cwiseAbs().maxCoeff() > tol) throw std::invalid_argument("action matrix is not skew-symmetric");
  }
  for (int b = 0; b < g; ++b)
    for (int c = 0; c < g; ++c) {
      Mat bracket = rho[b] * rho[c] - rho[c] * rho[b];
      for (int a = 0; a < g; ++a) bracket -= algebra.structure(a, b, c) * rho[a];
      if (bracket.cwiseAbs().maxCoeff() > tol) throw std::invalid_argument("action does not represent the bracket");
    }
}

GaugePotential::GaugePotential(ModelSpace space, LieAlgebra algebra, JetFn fn)
    : space_(space), algebra_(std::move(algebra)), fn_(std::move(fn)) {}

GaugePotential GaugePotential::zero(const ModelSpace& space, const LieAlgebra& algebra) {
  return GaugePotential(space, algebra, nullptr);
}

std::vector<Jet> GaugePotential::jets(const ChartPoint& x) const {
  space_.require_in_domain(x);
  const int n = space_.dim();
  std::vector<Jet> out(static_cast<std::size_t>(n * algebra_.dim), Jet::constant(n, 0.0));
  if (fn_) {
    const auto xs = coordinate_jets(x);
    fn_(xs, out);
  }
  return out;
}

ConnectionField GaugePotential::adjoint_connection() const {
  const int n = space_.dim();
  const int g = algebra_.dim;
  if (!fn_) return ConnectionField::trivial(n, g);
  const GaugePotential self = *this;
  return ConnectionField(n, g, [self, n, g](std::span<const Jet> x, std::span<Jet> out) {
    ChartPoint p(n);
    for (int i = 0; i < n; ++i) p[i] = x[i].value();
    const auto a = self.jets(p);
    for (int i = 0; i < n; ++i)
      for (int r = 0; r < g; ++r)
        for (int s = 0; s < g; ++s) {
          Jet v = Jet::constant(n, 0.0);
          for (int c = 0; c < g; ++c) {
            const double f = self.algebra().structure(r, c, s);
            if (f != 0.0) v += a[i * g + c] * f;
          }
          out[(i * g + r) * g + s] = v;
        }
  });
}

ConnectionField GaugePotential::representation_connection(const LieAlgebraAction& action) const {
  const int n = space_.dim();
  const int g = algebra_.dim;
  const int m = action.dim_v;
  if (action.algebra.dim != g) throw ShapeError("action and potential use different algebras");
  if (!fn_) return ConnectionField::trivial(n, m);
  const GaugePotential self = *this;
  const std::vector<Mat> rho = action.rho;
  return ConnectionField(n, m, [self, rho, n, g, m](std::span<const Jet> x, std::span<Jet> out) {
    ChartPoint p(n);
    for (int i = 0; i < n; ++i) p[i] = x[i].value();
    const auto a = self.jets(p);
    for (int i = 0; i < n; ++i)
      for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s) {
          Jet v = Jet::constant(n, 0.0);
          for (int c = 0; c < g; ++c)
            if (rho[c](r, s) != 0.0) v += a[i * g + c] * rho[c](r, s);
          out[(i * m + r) * m + s] = v;
        }
  });
}

FormJet curvature_jet(const LieAlgebra& algebra, int n, std::span<const Jet> a) {
  const int g = algebra.dim;
  FormJet F(n, 2, g);
  const auto& set = F.indices();
  for (int pos = 0; pos < set.size(); ++pos) {
    const auto e = set.entries(pos);
    const int i = e[0], j = e[1];
    for (int r = 0; r < g; ++r) {
      Jet v = a[j * g + r].partial(i) - a[i * g + r].partial(j);
      for (int b = 0; b < g; ++b)
        for (int c = 0; c < g; ++c) {
          const double f = algebra.structure(r, b, c);
          if (f != 0.0) v += a[i * g + b] * a[j * g + c] * f;
        }
      F.at(r, pos) = v;
    }
  }
  return F;
}

FormValue curvature_from_connection(const ModelSpace& space, const GaugePotential& A, const ChartPoint& x) {
  return values_of(curvature_jet(A.algebra(), space.dim(), A.jets(x)));
}

BundleForm curvature_form(const GaugePotential& A) {
  const int n = A.space().dim();
  const int g = A.algebra().dim;
  auto point = [n](std::span<const double> x) {
    ChartPoint p(n);
    for (int i = 0; i < n; ++i) p[i] = x[i];
    return p;
  };
  BundleForm::JetFn jets = [A, n](std::span<const Jet> x, std::span<Jet> out) {
    ChartPoint p(n);
    for (int i = 0; i < n; ++i) p[i] = x[i].value();
    const FormJet F = curvature_jet(A.algebra(), n, A.jets(p));
    std::copy(F.comps.begin(), F.comps.end(), out.begin());
  };
  BundleForm::ValueFn values = [A, n, point](std::span<const double> x, std::span<double> out) {
    const FormJet F = curvature_jet(A.algebra(), n, A.jets(point(x)));
    for (std::size_t c = 0; c < F.comps.size(); ++c) out[c] = F.comps[c].value();
  };
  return BundleForm(A.space(), 2, g, std::move(jets), std::move(values));
}

Potential Potential::quartic() {
  return {[](double s) { return 0.25 * (s - 1.0) * (s - 1.0); }, [](double s) { return 0.5 * (s - 1.0); },
          [](double) { return 0.5; }};
}

FormValue odot(const LieAlgebraAction& action, const Vec& e1, const FormValue& e2) {
  if (e1.size() != action.dim_v || e2.rank != action.dim_v) throw ShapeError("odot: vector sizes differ from dim V");
  FormValue out(e2.dim, e2.degree, action.algebra.dim);
  const int count = e2.count();
  for (int a = 0; a < action.algebra.dim; ++a) {
    const Vec moved = action.rho[a] * e1;
    for (int pos = 0; pos < count; ++pos) {
      double s = 0.0;
      for (int v = 0; v < action.dim_v; ++v) s += moved[v] * e2.at(v, pos);
      out.at(a, pos) = s;
    }
  }
  return out;
}

FormJet odot(const LieAlgebraAction& action, std::span<const Jet> e1, const FormJet& e2) {
  if (static_cast<int>(e1.size()) != action.dim_v || e2.rank != action.dim_v)
    throw ShapeError("odot: vector sizes differ from dim V");
  const int n = e2.dim;
  FormJet out(n, e2.degree, action.algebra.dim);
  const int count = e2.count();
  for (int a = 0; a < action.algebra.dim; ++a) {
    std::vector<Jet> moved(static_cast<std::size_t>(action.dim_v), Jet::constant(n, 0.0));
    for (int r = 0; r < action.dim_v; ++r)
      for (int s = 0; s < action.dim_v; ++s)
        if (action.rho[a](r, s) != 0.0) moved[r] += e1[s] * action.rho[a](r, s);
    for (int pos = 0; pos < count; ++pos) {
      Jet s = Jet::constant(n, 0.0);
      for (int v = 0; v < action.dim_v; ++v) s += moved[v] * e2.at(v, pos);
      out.at(a, pos) = s;
    }
  }
  return out;
}

YmhPair make_ymh_pair(const LieAlgebraAction& action, const GaugePotential& A, const BundleForm& u,
                      const Potential& W) {
  YmhPair pair{A.space(), action, A, curvature_form(A), u, W};
  require_consistent(pair);
  return pair;
}

void require_consistent(const YmhPair& pair) {
  const int n = pair.space.dim();
  pair.action.validate();
  if (pair.A.space().dim() != n || pair.F.dim() != n || pair.u.dim() != n) throw ShapeError("YMH data on different spaces");
  if (pair.A.algebra().dim != pair.action.algebra.dim) throw ShapeError("potential and action use different algebras");
  if (pair.F.degree() != 2 || pair.F.rank() != pair.action.algebra.dim)
    throw ShapeError("curvature must be an adjoint-valued 2-form");
  if (pair.u.degree() != 0 || pair.u.rank() != pair.action.dim_v) throw ShapeError("Higgs field must be a V-valued 0-form");
}

YmhPoint ymh_point(const YmhPair& pair, const ChartPoint& x) {
  YmhPoint pt;
  pt.geo = point_geometry(pair.space, x);
  const ConnectionField ad = pair.A.adjoint_connection();
  const ConnectionField rep = pair.A.representation_connection(pair.action);
  if (!ad.is_trivial()) pt.ad = ad.jets(x);
  if (!rep.is_trivial()) pt.rep = rep.jets(x);
  pt.F = pair.F.jet(x);
  pt.u = pair.u.jet(x);
  pt.du = exterior_covariant_derivative(pt.geo, pt.rep, pt.u);
  pt.u2 = Jet::constant(pt.geo.n, 0.0);
  for (const Jet& c : pt.u.comps) pt.u2 += c * c;
  return pt;
}

Jet ymh_density_jet(const YmhPair& pair, const YmhPoint& pt) {
  return 0.5 * squared_norm(pt.geo, pt.F) + 0.5 * squared_norm(pt.geo, pt.du) + pair.W(pt.u2);
}

double ymh_density(const YmhPair& pair, const ChartPoint& x) { return ymh_density_jet(pair, ymh_point(pair, x)).value(); }

TensorJet ymh_stress_jet(const YmhPair& pair, const YmhPoint& pt) {
  const int n = pt.geo.n;
  TensorJet t(n);
  const Jet e = ymh_density_jet(pair, pt);
  const FormJet F_hat = orthonormal_components(pt.geo, pt.F);
  const FormJet du_hat = orthonormal_components(pt.geo, pt.du);
  const Jet inv_s2 = reciprocal(pt.geo.scale * pt.geo.scale);
  std::vector<FormJet> contracted;
  for (int a = 0; a < n; ++a) contracted.push_back(interior_axis(a, F_hat));
  const int m = pt.du.rank;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      Jet v = frame_dot(contracted[a], contracted[b]);
      for (int c = 0; c < m; ++c) v += du_hat.at(c, a) * du_hat.at(c, b);
      if (a == b) v -= e;
      v = v * inv_s2;
      t(a, b) = v;
      t(b, a) = v;
    }
  return t;
}

Mat ymh_stress(const YmhPair& pair, const ChartPoint& x) { return ymh_stress_jet(pair, ymh_point(pair, x)).values(); }

namespace {

// delta F + u (.) du (coordinate components) and delta du + 2 W'(|u|^2) u.
struct EquationTerms {
  FormValue gauge;
  FormValue higgs;
};

EquationTerms equation_terms(const YmhPair& pair, const YmhPoint& pt) {
  EquationTerms out;
  out.gauge = values_of(codifferential(pt.geo, pt.ad, pt.F));
  out.gauge += values_of(odot(pair.action, pt.u.comps, pt.du));
  out.higgs = values_of(codifferential(pt.geo, pt.rep, pt.du));
  const double dw = pair.W.dw(pt.u2.value());
  for (std::size_t c = 0; c < out.higgs.comps.size(); ++c) out.higgs.comps[c] += 2.0 * dw * pt.u.comps[c].value();
  return out;
}

}  // namespace

YmheResidual ymhe_residual(const YmhPair& pair, const ChartPoint& x) {
  const YmhPoint pt = ymh_point(pair, x);
  const EquationTerms eq = equation_terms(pair, pt);
  const double s = pt.geo.scale.value();
  YmheResidual r;
  r.gauge = s * std::sqrt(frame_dot(eq.gauge, eq.gauge));
  r.higgs = std::sqrt(frame_dot(eq.higgs, eq.higgs));
  return r;
}

DivergenceRoutes ymh_div_stress(const YmhPair& pair, const YmhPoint& pt) {
  const int n = pt.geo.n;
  DivergenceRoutes routes;
  routes.direct = covariant_divergence(pt.geo, ymh_stress_jet(pair, pt));

  const EquationTerms eq = equation_terms(pair, pt);
  const double s = pt.geo.scale.value();
  FormValue gauge_hat = eq.gauge;
  gauge_hat *= s;
  const FormValue F_hat = values_of(orthonormal_components(pt.geo, pt.F));
  const FormValue du = values_of(pt.du);
  routes.identity = Vec::Zero(n);
  for (int j = 0; j < n; ++j) {
    double c = frame_dot(gauge_hat, interior_axis(j, F_hat));
    for (int v = 0; v < du.rank; ++v) c += eq.higgs.at(v, 0) * s * du.at(v, j);
    routes.identity[j] = -c / s;
  }
  return routes;
}

DivergenceRoutes ymh_div_stress(const YmhPair& pair, const ChartPoint& x) { return ymh_div_stress(pair, ymh_point(pair, x)); }

}  // namespace emt
