#include "emt/catalog.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace emt {

std::string tag_name(Tag t) {
  switch (t) {
    case Tag::Closed: return "closed";
    case Tag::PCoclosed: return "p-coclosed";
    case Tag::PHarmonic: return "p-harmonic";
    case Tag::YmhPair: return "ymh-pair";
    case Tag::Inhomogeneous: return "inhomogeneous";
  }
  return "unknown";
}

std::vector<std::string> ExampleField::tag_names() const {
  std::vector<std::string> out;
  for (Tag t : {Tag::Closed, Tag::PCoclosed, Tag::PHarmonic, Tag::YmhPair, Tag::Inhomogeneous})
    if (has(t)) out.push_back(tag_name(t));
  return out;
}

double thooft_eta(int a, int mu, int nu) {
  if (mu < 3 && nu < 3) {
    if (a == mu || a == nu || mu == nu) return 0.0;
    return ((mu - a + 3) % 3 == 1) ? 1.0 : -1.0;
  }
  if (nu == 3 && mu < 3) return a == mu ? 1.0 : 0.0;
  if (mu == 3 && nu < 3) return a == nu ? -1.0 : 0.0;
  return 0.0;
}

namespace {

constexpr unsigned kPHarmonic =
    static_cast<unsigned>(Tag::Closed) | static_cast<unsigned>(Tag::PCoclosed) | static_cast<unsigned>(Tag::PHarmonic);

std::function<ChartPoint(std::mt19937_64&)> box_sampler(int n, double half) {
  return [n, half](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-half, half);
    ChartPoint x(n);
    for (int i = 0; i < n; ++i) x[i] = u(rng);
    return x;
  };
}

std::function<ChartPoint(std::mt19937_64&)> shell_sampler(int n, double r0, double r1) {
  return [n, r0, r1](std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(r0, r1);
    ChartPoint x(n);
    for (int i = 0; i < n; ++i) x[i] = g(rng);
    return ChartPoint(x * (u(rng) / x.norm()));
  };
}

std::function<bool(const ChartPoint&)> everywhere() {
  return [](const ChartPoint&) { return true; };
}

ExampleField zero_field() {
  ExampleField f;
  f.name = "zero";
  f.description = "zero 1-form on R^3";
  f.space = ModelSpace::euclidean(3);
  f.cfg = {2.0, 1, 3};
  f.psi = BundleForm::zero(f.space, 1, 1);
  f.conn = ConnectionField::trivial(3, 1);
  f.tags = kPHarmonic;
  f.valid = everywhere();
  f.sample = box_sampler(3, 2.0);
  f.center = ChartPoint::Zero(3);
  return f;
}

ExampleField constant_one_form() {
  ExampleField f;
  f.name = "const-1form";
  f.description = "dx^1 on R^3 (p-harmonic for every p)";
  f.space = ModelSpace::euclidean(3);
  f.cfg = {2.0, 1, 3};
  f.psi = BundleForm::from_generic(f.space, 1, 1, [](auto, auto out) {
    out[0] = 1.0;
    out[1] = 0.0;
    out[2] = 0.0;
  });
  f.conn = ConnectionField::trivial(3, 1);
  f.tags = kPHarmonic;
  f.valid = everywhere();
  f.sample = box_sampler(3, 2.0);
  f.center = ChartPoint::Zero(3);
  return f;
}

ExampleField constant_two_form() {
  ExampleField f;
  f.name = "const-2form-ym";
  f.description = "dx^1 ^ dx^2 on R^5, the curvature of the abelian potential x^1 dx^2";
  f.space = ModelSpace::euclidean(5);
  f.cfg = {2.0, 2, 5};
  f.psi = BundleForm::from_generic(f.space, 2, 1, [](auto, auto out) {
    for (auto& c : out) c = 0.0;
    out[0] = 1.0;  // (1, 2) is the first increasing pair
  });
  f.conn = ConnectionField::trivial(5, 1);
  f.tags = kPHarmonic;
  f.valid = everywhere();
  f.sample = box_sampler(5, 2.0);
  f.center = ChartPoint::Zero(5);
  return f;
}

ExampleField radial_p_harmonic() {
  ExampleField f;
  f.name = "radial-p-harmonic";
  f.description = "du with u = |x|^((p-n)/(p-1)) on R^4 minus the origin, p = 3";
  f.space = ModelSpace::euclidean(4);
  f.cfg = {3.0, 1, 4};
  // u = |x|^(-1/2), d_i u = -x_i |x|^(-5/2) / 2.
  f.psi = BundleForm::from_generic(f.space, 1, 1, [](auto x, auto out) {
    auto r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
    auto factor = pow(r2, -1.25) * -0.5;
    for (int i = 0; i < 4; ++i) out[i] = factor * x[i];
  });
  f.conn = ConnectionField::trivial(4, 1);
  f.tags = kPHarmonic;
  f.valid = [](const ChartPoint& x) { return x.norm() > 0.25; };
  f.sample = shell_sampler(4, 0.5, 2.0);
  f.center = ChartPoint::Zero(4);
  f.center[0] = 3.0;
  f.radius_min = 0.2;
  f.radius_max = 2.0;
  return f;
}

ExampleField hyperbolic_harmonic() {
  ExampleField f;
  f.name = "hyperbolic-harmonic";
  f.description = "du with u = y^2 on the hyperbolic 3-space, kappa = 1";
  f.space = ModelSpace::hyperbolic(3, 1.0);
  f.cfg = {2.0, 1, 3};
  f.psi = BundleForm::from_generic(f.space, 1, 1, [](auto x, auto out) {
    out[0] = 0.0;
    out[1] = 0.0;
    out[2] = x[2] * 2.0;
  });
  f.conn = ConnectionField::trivial(3, 1);
  f.tags = kPHarmonic;
  f.valid = [](const ChartPoint& x) { return x[2] > 0.0; };
  f.sample = [](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0), y(0.3, 3.0);
    ChartPoint x(3);
    x << u(rng), u(rng), y(rng);
    return x;
  };
  f.center = ChartPoint::Zero(3);
  f.center[2] = 1.0;
  f.radius_min = 0.2;
  f.radius_max = 2.0;
  return f;
}

GaugePotential instanton_potential(const ModelSpace& space) {
  // Regular-gauge unit instanton on the first four coordinates:
  // A^a_mu = 2 eta^a_{mu nu} x^nu / (|x|^2 + 1), no x^5 component.
  return GaugePotential::from_generic(space, LieAlgebra::so3(), [](auto x, auto out) {
    auto denom = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3] + 1.0;
    auto scale = 2.0 / denom;
    for (auto& c : out) c = 0.0;
    for (int mu = 0; mu < 4; ++mu)
      for (int a = 0; a < 3; ++a) {
        auto v = x[0] * 0.0;
        for (int nu = 0; nu < 4; ++nu) {
          const double eta = thooft_eta(a, mu, nu);
          if (eta != 0.0) v += x[nu] * eta;
        }
        out[mu * 3 + a] = v * scale;
      }
  });
}

ExampleField instanton() {
  ExampleField f;
  f.name = "instanton";
  f.description = "unit su(2) instanton curvature on R^4 pulled back to R^5";
  f.space = ModelSpace::euclidean(5);
  f.cfg = {2.0, 2, 5};
  const GaugePotential A = instanton_potential(f.space);
  // F^a_{mu nu} = -4 eta^a_{mu nu} / (|x|^2 + 1)^2.
  f.psi = BundleForm::from_generic(f.space, 2, 3, [](auto x, auto out) {
    auto denom = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3] + 1.0;
    auto profile = -4.0 / (denom * denom);
    const auto& set = MultiIndexSet::get(5, 2);
    for (int pos = 0; pos < set.size(); ++pos) {
      const auto e = set.entries(pos);
      for (int a = 0; a < 3; ++a) {
        const double eta = (e[1] < 4) ? thooft_eta(a, e[0], e[1]) : 0.0;
        out[a * set.size() + pos] = profile * eta;
      }
    }
  });
  f.conn = A.adjoint_connection();
  f.ymh = YmhPair{f.space, LieAlgebraAction::so3_defining(), A, *f.psi, BundleForm::zero(f.space, 0, 3),
                  Potential{[](double) { return 0.0; }, [](double) { return 0.0; }, [](double) { return 0.0; }}};
  f.tags = kPHarmonic | static_cast<unsigned>(Tag::YmhPair);
  f.valid = everywhere();
  f.sample = box_sampler(5, 2.0);
  f.center = ChartPoint::Zero(5);
  return f;
}

ExampleField ymh_example(bool vacuum) {
  ExampleField f;
  f.name = vacuum ? "ymh-vacuum" : "ymh-zero-higgs";
  f.description = vacuum ? "flat so(3) connection with constant unit Higgs field on R^5"
                         : "flat so(3) connection with vanishing Higgs field on R^5, W(0) = 1/4";
  f.space = ModelSpace::euclidean(5);
  f.cfg = {2.0, 2, 5};
  const auto action = LieAlgebraAction::so3_defining();
  const GaugePotential A = GaugePotential::zero(f.space, action.algebra);
  const BundleForm u = vacuum ? BundleForm::from_generic(f.space, 0, 3,
                                                         [](auto, auto out) {
                                                           out[0] = 1.0;
                                                           out[1] = 0.0;
                                                           out[2] = 0.0;
                                                         })
                              : BundleForm::zero(f.space, 0, 3);
  f.ymh = make_ymh_pair(action, A, u, Potential::quartic());
  f.psi = f.ymh->F;
  f.conn = A.adjoint_connection();
  f.tags = static_cast<unsigned>(Tag::YmhPair);
  f.valid = everywhere();
  f.sample = box_sampler(5, 2.0);
  f.center = ChartPoint::Zero(5);
  return f;
}

ExampleField inhomogeneous_bump() {
  ExampleField f;
  f.name = "inhomogeneous-bump";
  f.description = "dx^1 + 0.1 exp(-|x|^2) dx^2 on R^3";
  f.space = ModelSpace::euclidean(3);
  f.cfg = {2.0, 1, 3};
  f.psi = BundleForm::from_generic(f.space, 1, 1, [](auto x, auto out) {
    out[0] = 1.0;
    out[1] = exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2])) * 0.1;
    out[2] = 0.0;
  });
  f.conn = ConnectionField::trivial(3, 1);
  f.tags = static_cast<unsigned>(Tag::Inhomogeneous);
  f.valid = everywhere();
  f.sample = box_sampler(3, 2.0);
  f.center = ChartPoint::Zero(3);
  const auto [q, where] = sample_inhomogeneity(f.cfg, f.space, f.conn, *f.psi, f.center, f.radius_max, QuadratureSpec{});
  (void)where;
  f.gamma = 1.05 * q;
  return f;
}

void register_checked(std::vector<ExampleField>& out, ExampleField f) {
  const TagCheck c = check_tags(f);
  auto fail = [&](const std::string& what, double v) {
    std::ostringstream os;
    os << "catalog entry '" << f.name << "' fails its " << what << " check (residual " << v << ")";
    throw std::logic_error(os.str());
  };
  if ((f.has(Tag::Closed) || f.has(Tag::PHarmonic)) && c.closed > kTagTolerance) fail("closed", c.closed);
  if ((f.has(Tag::PCoclosed) || f.has(Tag::PHarmonic)) && c.coclosed > kTagTolerance) fail("p-coclosed", c.coclosed);
  if (f.has(Tag::YmhPair) && (c.ymh_gauge > kTagTolerance || c.ymh_higgs > kTagTolerance))
    fail("ymh-pair", std::max(c.ymh_gauge, c.ymh_higgs));
  if (f.ymh && f.name == "instanton") {
    // The analytic curvature must be the curvature of the potential.
    std::mt19937_64 rng(3);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const ChartPoint x = f.sample(rng);
      FormValue diff = f.psi->value(x);
      diff -= curvature_from_connection(f.space, f.ymh->A, x);
      worst = std::max(worst, max_abs(diff));
    }
    if (worst > 1e-12) fail("curvature-of-potential", worst);
  }
  out.push_back(std::move(f));
}

}  // namespace

TagCheck check_tags(const ExampleField& field, int points, std::uint64_t seed) {
  TagCheck c;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < points; ++i) {
    ChartPoint x = field.sample(rng);
    if (!field.valid(x)) continue;
    if (field.psi && field.psi->degree() < field.space.dim()) {
      const FormValue d = exterior_covariant_derivative(field.space, field.conn, *field.psi, x);
      c.closed = std::max(c.closed, std::sqrt(inner_product(field.space, x, d, d)));
    }
    if (field.psi && field.psi->degree() > 0) {
      const FormValue v = field.psi->value(x);
      if (max_abs(v) > 0.0 || field.cfg.p >= 2.0) {
        const FormValue del = p_codifferential(field.space, field.conn, *field.psi, x, field.cfg.p);
        c.coclosed = std::max(c.coclosed, std::sqrt(inner_product(field.space, x, del, del)));
      }
    }
    if (field.has(Tag::YmhPair) && field.ymh) {
      const YmheResidual r = ymhe_residual(*field.ymh, x);
      c.ymh_gauge = std::max(c.ymh_gauge, r.gauge);
      c.ymh_higgs = std::max(c.ymh_higgs, r.higgs);
    }
  }
  return c;
}

const std::vector<ExampleField>& catalog() {
  static const std::vector<ExampleField> entries = [] {
    std::vector<ExampleField> out;
    register_checked(out, zero_field());
    register_checked(out, constant_one_form());
    register_checked(out, constant_two_form());
    register_checked(out, radial_p_harmonic());
    register_checked(out, hyperbolic_harmonic());
    register_checked(out, instanton());
    register_checked(out, ymh_example(true));
    register_checked(out, ymh_example(false));
    register_checked(out, inhomogeneous_bump());
    return out;
  }();
  return entries;
}

std::string catalog_listing() {
  std::ostringstream os;
  for (const auto& f : catalog()) {
    os << "  " << f.name << " [";
    const auto names = f.tag_names();
    for (std::size_t i = 0; i < names.size(); ++i) os << (i ? "," : "") << names[i];
    os << "] " << f.description << "\n";
  }
  return os.str();
}

const ExampleField& find_example(const std::string& name) {
  for (const auto& f : catalog())
    if (f.name == name) return f;
  throw std::invalid_argument("unknown example '" + name + "'; available examples:\n" + catalog_listing());
}

double jet_selftest(const ExampleField& field, int points, double step, std::uint64_t seed) {
  std::vector<const BundleForm*> forms;
  if (field.psi) forms.push_back(&*field.psi);
  if (field.ymh) forms.push_back(&field.ymh->u);
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    const ChartPoint x = field.sample(rng);
    if (!field.valid(x)) continue;
    for (const BundleForm* f : forms) {
      const FormJet exact = f->jet(x);
      const auto approx = f->with_finite_difference_jets(step).jet(x);
      const int n = field.space.dim();
      for (std::size_t c = 0; c < exact.comps.size(); ++c) {
        const Jet& a = exact.comps[c];
        const Jet& b = approx.comps[c];
        auto dev = [](double u, double v) { return std::abs(u - v) / std::max(1.0, std::abs(u)); };
        worst = std::max(worst, dev(a.value(), b.value()));
        for (int p = 0; p < n; ++p) {
          worst = std::max(worst, dev(a.grad(p), b.grad(p)));
          for (int q = p; q < n; ++q) worst = std::max(worst, dev(a.hess(p, q), b.hess(p, q)));
        }
      }
    }
  }
  return worst;
}

}  // namespace emt
