#include "emt/calculus.hpp"

#include <algorithm>
#include <cmath>

#include "emt/quadrature_rules.hpp"

namespace emt {

namespace {

bool is_zero(const Jet& j) {
  if (j.value() != 0.0) return false;
  for (int q = 0; q < j.dim(); ++q)
    if (j.grad(q) != 0.0) return false;
  return true;
}

}  // namespace

Jet PointGeometry::scale_power(int m) const {
  Jet out = Jet::constant(n, 1.0);
  if (m >= 0)
    for (int i = 0; i < m; ++i) out = out * scale;
  else
    for (int i = 0; i < -m; ++i) out = out / scale;
  return out;
}

PointGeometry point_geometry(const ModelSpace& space, const ChartPoint& x) {
  space.require_in_domain(x);
  PointGeometry geo;
  const int n = space.dim();
  geo.n = n;
  geo.x = x;
  geo.scale = space.frame_scale_jet(x);
  const Jet s2 = geo.scale * geo.scale;
  const Jet inv_s2 = reciprocal(s2);
  const Jet zero = Jet::constant(n, 0.0);
  geo.g.assign(static_cast<std::size_t>(n * n), zero);
  geo.ginv.assign(static_cast<std::size_t>(n * n), zero);
  for (int i = 0; i < n; ++i) {
    geo.g[i * n + i] = inv_s2;
    geo.ginv[i * n + i] = s2;
  }
  // g = exp(2 phi) delta with phi = -log s:
  // Gamma^l_ij = delta_li d_j phi + delta_lj d_i phi - delta_ij d_l phi.
  const Jet phi = -log(geo.scale);
  std::vector<Jet> dphi;
  for (int i = 0; i < n; ++i) dphi.push_back(phi.partial(i));
  geo.gamma.assign(static_cast<std::size_t>(n * n * n), zero);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Jet v = zero;
        if (l == i) v += dphi[j];
        if (l == j) v += dphi[i];
        if (i == j) v -= dphi[l];
        geo.gamma[(l * n + i) * n + j] = v;
      }
  return geo;
}

FormJet covariant_derivative(const PointGeometry& geo, std::span<const Jet> conn, const FormJet& psi, int direction) {
  const int n = geo.n;
  const int m = psi.rank;
  const int i = direction;
  const auto& set = psi.indices();
  FormJet out(n, psi.degree, m);
  for (std::size_t c = 0; c < psi.comps.size(); ++c) out.comps[c] = psi.comps[c].partial(i);

  if (!conn.empty()) {
    for (int pos = 0; pos < set.size(); ++pos)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) out.at(a, pos) += conn[(i * m + a) * m + b] * psi.at(b, pos);
  }

  // Levi-Civita part: -sum_s Gamma^l_{i j_s} psi_{J with j_s -> l}.
  for (int pos = 0; pos < set.size(); ++pos) {
    const auto entries = set.entries(pos);
    const std::uint32_t mask = set.mask(pos);
    for (int slot = 0; slot < psi.degree; ++slot) {
      const std::uint32_t rest = mask & ~(1u << entries[slot]);
      for (int l = 0; l < n; ++l) {
        const int ins = insertion_sign(rest, l);
        if (ins == 0) continue;
        const Jet& gam = geo.christoffel(l, i, entries[slot]);
        if (is_zero(gam)) continue;
        const int sign = ((slot & 1) ? -1 : 1) * ins;
        const int src = set.position(rest | (1u << l));
        for (int a = 0; a < m; ++a) out.at(a, pos) -= gam * psi.at(a, src) * static_cast<double>(sign);
      }
    }
  }
  return out;
}

FormJet exterior_covariant_derivative(const PointGeometry& geo, std::span<const Jet> conn, const FormJet& psi) {
  const int n = geo.n;
  if (psi.degree >= n) throw ShapeError("exterior derivative of an n-form");
  FormJet out(n, psi.degree + 1, psi.rank);
  const auto& upper = out.indices();
  const auto& lower = psi.indices();
  for (int i = 0; i < n; ++i) {
    const FormJet nab = covariant_derivative(geo, conn, psi, i);
    for (int pos = 0; pos < upper.size(); ++pos) {
      const std::uint32_t mask = upper.mask(pos);
      if (!(mask & (1u << i))) continue;
      const std::uint32_t rest = mask & ~(1u << i);
      const double sign = insertion_sign(rest, i);
      const int src = lower.position(rest);
      for (int a = 0; a < psi.rank; ++a) out.at(a, pos) += nab.at(a, src) * sign;
    }
  }
  return out;
}

FormJet codifferential(const PointGeometry& geo, std::span<const Jet> conn, const FormJet& psi, const Mat* frame) {
  const int n = geo.n;
  if (psi.degree < 1) throw ShapeError("codifferential of a 0-form");
  std::vector<FormJet> nab;
  nab.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) nab.push_back(covariant_derivative(geo, conn, psi, i));

  // -sum_{mu,nu} G^{mu nu} (i_mu nabla_nu psi), G = sum_a e_a e_a^T.
  std::vector<Jet> G(static_cast<std::size_t>(n * n), Jet::constant(n, 0.0));
  if (frame) {
    const Mat gram = (*frame) * frame->transpose();
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu) G[mu * n + nu] = Jet::constant(n, gram(mu, nu));
  } else {
    G = geo.ginv;
  }
  FormJet out(n, psi.degree - 1, psi.rank);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) {
      const Jet& w = G[mu * n + nu];
      if (w.value() == 0.0 && !frame && mu != nu) continue;
      const FormJet contracted = interior_axis(mu, nab[nu]);
      for (std::size_t c = 0; c < out.comps.size(); ++c) out.comps[c] -= w * contracted.comps[c];
    }
  return out;
}

FormJet orthonormal_components(const PointGeometry& geo, const FormJet& psi) {
  return to_orthonormal(psi, geo.scale);
}

Jet squared_norm(const PointGeometry& geo, const FormJet& psi) {
  Jet sum = Jet::constant(geo.n, 0.0);
  for (const Jet& c : psi.comps) sum += c * c;
  return sum * geo.scale_power(2 * psi.degree);
}

FormJet weighted_form(const PointGeometry& geo, const FormJet& psi, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("exponent p must exceed 1");
  if (p == 2.0) return psi;
  const Jet n2 = squared_norm(geo, psi);
  if (n2.value() == 0.0) {
    if (p < 2.0) throw SingularWeightError("|psi|^(p-2) with p < 2 at a zero of psi, point " + format_point(geo.x));
    return FormJet(psi.dim, psi.degree, psi.rank);
  }
  const Jet w = pow(n2, 0.5 * (p - 2.0));
  FormJet out = psi;
  for (auto& c : out.comps) c = w * c;
  return out;
}

void require_compatible(const ModelSpace& space, const ConnectionField& conn, const BundleForm& psi) {
  if (psi.dim() != space.dim()) throw ShapeError("form dimension differs from the space");
  if (conn.dim() != space.dim()) throw ShapeError("connection dimension differs from the space");
  if (conn.rank() != psi.rank()) throw ShapeError("connection rank differs from the bundle rank");
}

namespace {

std::vector<Jet> connection_jets(const ConnectionField& conn, const ChartPoint& x) {
  if (conn.is_trivial()) return {};
  return conn.jets(x);
}

}  // namespace

FormValue covariant_derivative(const ModelSpace& space, const ConnectionField& conn, const BundleForm& psi,
                               const ChartPoint& x, int direction) {
  require_compatible(space, conn, psi);
  if (direction < 0 || direction >= space.dim()) throw ShapeError("direction index out of range");
  const PointGeometry geo = point_geometry(space, x);
  return values_of(covariant_derivative(geo, connection_jets(conn, x), psi.jet(x), direction));
}

FormValue exterior_covariant_derivative(const ModelSpace& space, const ConnectionField& conn, const BundleForm& psi,
                                        const ChartPoint& x) {
  require_compatible(space, conn, psi);
  if (psi.degree() >= space.dim()) throw ShapeError("exterior derivative of an n-form");
  const PointGeometry geo = point_geometry(space, x);
  return values_of(exterior_covariant_derivative(geo, connection_jets(conn, x), psi.jet(x)));
}

FormValue codifferential(const ModelSpace& space, const ConnectionField& conn, const BundleForm& psi,
                         const ChartPoint& x, const Mat* frame) {
  require_compatible(space, conn, psi);
  if (psi.degree() < 1) throw ShapeError("codifferential of a 0-form");
  const PointGeometry geo = point_geometry(space, x);
  return values_of(codifferential(geo, connection_jets(conn, x), psi.jet(x), frame));
}

FormValue p_codifferential(const ModelSpace& space, const ConnectionField& conn, const BundleForm& psi,
                           const ChartPoint& x, double p) {
  require_compatible(space, conn, psi);
  if (psi.degree() < 1) throw ShapeError("codifferential of a 0-form");
  const PointGeometry geo = point_geometry(space, x);
  const FormJet weighted = weighted_form(geo, psi.jet(x), p);
  return values_of(codifferential(geo, connection_jets(conn, x), weighted));
}

double adjointness_residual(const ModelSpace& space, const ConnectionField& conn, const BundleForm& psi1,
                            const BundleForm& psi2, const Box& box, int nodes, double leak_tolerance) {
  require_compatible(space, conn, psi1);
  require_compatible(space, conn, psi2);
  if (psi1.degree() + 1 != psi2.degree()) throw ShapeError("adjointness needs degrees k-1 and k");
  const int n = space.dim();
  if (box.lower.size() != n || box.upper.size() != n) throw ShapeError("box dimension differs from the space");
  for (int i = 0; i < n; ++i)
    if (!(box.upper[i] > box.lower[i])) throw std::invalid_argument("box must have positive extent");
  space.require_in_domain(box.lower);
  space.require_in_domain(box.upper);

  std::vector<GaussRule> axes;
  for (int i = 0; i < n; ++i) axes.push_back(gauss_legendre(nodes, box.lower[i], box.upper[i]));

  std::vector<double> terms;
  double interior_max = 0.0;
  std::vector<int> idx(n, 0);
  while (true) {
    ChartPoint x(n);
    double w = 1.0;
    for (int i = 0; i < n; ++i) {
      x[i] = axes[i].nodes[idx[i]];
      w *= axes[i].weights[idx[i]];
    }
    const PointGeometry geo = point_geometry(space, x);
    const auto a = connection_jets(conn, x);
    const FormJet j1 = psi1.jet(x);
    const FormJet j2 = psi2.jet(x);
    const FormValue d1 = values_of(exterior_covariant_derivative(geo, a, j1));
    const FormValue del2 = values_of(codifferential(geo, a, j2));
    const FormValue v1 = values_of(j1);
    const FormValue v2 = values_of(j2);
    interior_max = std::max({interior_max, max_abs(v1), max_abs(v2)});
    const double vol = std::pow(space.frame_scale(x), -n);
    terms.push_back(w * vol * (inner_product(space, x, d1, v2) - inner_product(space, x, v1, del2)));

    int j = 0;
    while (j < n && ++idx[j] == nodes) idx[j++] = 0;
    if (j == n) break;
  }

  // Support check on the faces of the box.
  const double limit = leak_tolerance * std::max(interior_max, 1e-300);
  for (int face_axis = 0; face_axis < n; ++face_axis)
    for (int side = 0; side < 2; ++side) {
      std::vector<int> f(n, 0);
      while (true) {
        ChartPoint x(n);
        for (int i = 0; i < n; ++i) x[i] = axes[i].nodes[f[i]];
        x[face_axis] = side ? box.upper[face_axis] : box.lower[face_axis];
        const double m = std::max(max_abs(psi1.value(x)), max_abs(psi2.value(x)));
        if (m > limit) throw PreconditionError("field support leaks outside the integration box", x, m);
        int j = 0;
        while (j < n && (j == face_axis || ++f[j] == nodes)) {
          if (j != face_axis) f[j] = 0;
          ++j;
        }
        if (j == n) break;
      }
    }
  return std::abs(pairwise_sum(terms));
}

}  // namespace emt
