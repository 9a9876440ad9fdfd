#include "emt/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "emt/quadrature_rules.hpp"

namespace emt {

std::vector<int> QuadratureSpec::latitudes(int dim) const {
  if (angle_nodes.empty()) return std::vector<int>(static_cast<std::size_t>(dim - 2), angular);
  return std::vector<int>(angle_nodes.begin(), angle_nodes.begin() + (dim - 2));
}

int QuadratureSpec::longitude(int dim) const { return angle_nodes.empty() ? 2 * angular : angle_nodes[dim - 2]; }

void QuadratureSpec::validate(int dim) const {
  if (radial_nodes < 4) throw std::invalid_argument("quadrature needs at least 4 radial nodes");
  if (angle_nodes.empty()) {
    if (angular < 4) throw std::invalid_argument("quadrature needs at least 4 nodes per angle");
  } else {
    if (static_cast<int>(angle_nodes.size()) != dim - 1)
      throw std::invalid_argument("quadrature needs n-1 angle node counts (latitudes, then longitude)");
    for (int c : angle_nodes)
      if (c < 4) throw std::invalid_argument("quadrature needs at least 4 nodes per angle");
  }
  if (threads < 1) throw std::invalid_argument("thread count must be positive");
}

QuadratureSpec QuadratureSpec::halved(int dim) const {
  QuadratureSpec h = *this;
  auto half = [](int c) { return std::max(2, c / 2); };
  h.radial_nodes = half(radial_nodes);
  if (angle_nodes.empty()) {
    h.angle_nodes = latitudes(dim);
    h.angle_nodes.push_back(longitude(dim));
  }
  for (int& c : h.angle_nodes) c = half(c);
  h.error_estimate = false;
  return h;
}

namespace {

// Runs fn(q) for q in [0, count), in contiguous chunks across threads. The
// exception from the lowest failing chunk is rethrown.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn fn) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t q = 0; q < count; ++q) fn(q);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::size_t end = std::min(count, (w + 1) * chunk);
        for (std::size_t q = w * chunk; q < end; ++q) fn(q);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct NodeValues {
  std::vector<PolarNode> nodes;
  std::vector<double> weights;
  std::vector<double> values;  // [q * outputs + o]
};

NodeValues evaluate(const ModelSpace& space, const ChartPoint& x0, const std::vector<double>& radii,
                    const std::vector<double>& radial_weights, const QuadratureSpec& spec, int outputs,
                    const MultiIntegrand& f) {
  const int n = space.dim();
  const auto lat = spec.latitudes(n);
  const SphereRule sphere = sphere_rule(n, lat, spec.longitude(n), spec.seed);
  const std::size_t nd = sphere.directions.size();
  const std::size_t total = radii.size() * nd;
  NodeValues out;
  out.nodes.resize(total);
  out.weights.resize(total);
  out.values.assign(total * static_cast<std::size_t>(outputs), 0.0);
  parallel_for(total, spec.threads, [&](std::size_t q) {
    const std::size_t i = q / nd;
    const std::size_t j = q % nd;
    PolarNode node;
    node.r = radii[i];
    node.direction = sphere.directions[j];
    node.x = space.geodesic_point(x0, node.direction, node.r);
    out.weights[q] = radial_weights[i] * space.polar_jacobian(node.r) * sphere.weights[j];
    try {
      f(node, std::span<double>(out.values.data() + q * outputs, static_cast<std::size_t>(outputs)));
    } catch (const std::exception& e) {
      throw IntegrandError(std::string("integrand failed: ") + e.what(), node.x, node.r);
    }
    out.nodes[q] = std::move(node);
  });
  return out;
}

std::vector<double> weighted_sums(const NodeValues& nv, int outputs) {
  std::vector<double> sums(static_cast<std::size_t>(outputs));
  std::vector<double> terms(nv.weights.size());
  for (int o = 0; o < outputs; ++o) {
    for (std::size_t q = 0; q < terms.size(); ++q) terms[q] = nv.weights[q] * nv.values[q * outputs + o];
    sums[o] = pairwise_sum(terms);
  }
  return sums;
}

std::vector<double> ball_sums(const ModelSpace& space, const ChartPoint& x0, double a, double b, int outputs,
                              const MultiIntegrand& f, const QuadratureSpec& spec) {
  const GaussRule radial = gauss_legendre(spec.radial_nodes, a, b);
  return weighted_sums(evaluate(space, x0, radial.nodes, radial.weights, spec, outputs, f), outputs);
}

std::vector<double> sphere_sums(const ModelSpace& space, const ChartPoint& x0, double R, int outputs,
                                const MultiIntegrand& f, const QuadratureSpec& spec) {
  return weighted_sums(evaluate(space, x0, {R}, {1.0}, spec, outputs, f), outputs);
}

void check_ball(const ModelSpace& space, const ChartPoint& x0, double R, const QuadratureSpec& spec) {
  space.require_in_domain(x0);
  if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("ball radius must be positive");
  spec.validate(space.dim());
}

std::vector<QuadratureResult> combine(const std::vector<double>& fine, const std::vector<double>* coarse) {
  std::vector<QuadratureResult> out(fine.size());
  for (std::size_t o = 0; o < fine.size(); ++o) {
    out[o].value = fine[o];
    out[o].error_estimate = coarse ? std::abs(fine[o] - (*coarse)[o]) : 0.0;
  }
  return out;
}

MultiIntegrand scalar(const PointFunction& f) {
  return [f](const PolarNode& node, std::span<double> out) { out[0] = f(node.x); };
}

}  // namespace

std::vector<QuadratureResult> ball_integrals(const ModelSpace& space, const ChartPoint& x0, double R, int outputs,
                                             const MultiIntegrand& f, const QuadratureSpec& spec) {
  check_ball(space, x0, R, spec);
  const auto fine = ball_sums(space, x0, 0.0, R, outputs, f, spec);
  if (!spec.error_estimate) return combine(fine, nullptr);
  const auto coarse = ball_sums(space, x0, 0.0, R, outputs, f, spec.halved(space.dim()));
  return combine(fine, &coarse);
}

std::vector<QuadratureResult> sphere_integrals(const ModelSpace& space, const ChartPoint& x0, double R, int outputs,
                                               const MultiIntegrand& f, const QuadratureSpec& spec) {
  check_ball(space, x0, R, spec);
  const auto fine = sphere_sums(space, x0, R, outputs, f, spec);
  if (!spec.error_estimate) return combine(fine, nullptr);
  const auto coarse = sphere_sums(space, x0, R, outputs, f, spec.halved(space.dim()));
  return combine(fine, &coarse);
}

QuadratureResult ball_integral(const ModelSpace& space, const ChartPoint& x0, double R, const PointFunction& f,
                               const QuadratureSpec& spec) {
  return ball_integrals(space, x0, R, 1, scalar(f), spec)[0];
}

QuadratureResult sphere_integral(const ModelSpace& space, const ChartPoint& x0, double R, const PointFunction& f,
                                 const QuadratureSpec& spec) {
  return sphere_integrals(space, x0, R, 1, scalar(f), spec)[0];
}

void require_radius_grid(std::span<const double> radii) {
  if (radii.empty()) throw std::invalid_argument("radius grid is empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) throw std::invalid_argument("radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw std::invalid_argument("radii must be strictly increasing");
  }
}

std::vector<QuadratureResult> nested_ball_integrals(const ModelSpace& space, const ChartPoint& x0,
                                                    std::span<const double> radii, const PointFunction& f,
                                                    const QuadratureSpec& spec) {
  require_radius_grid(radii);
  check_ball(space, x0, radii.back(), spec);
  const MultiIntegrand g = scalar(f);
  const QuadratureSpec coarse_spec = spec.halved(space.dim());
  std::vector<QuadratureResult> out(radii.size());
  double fine = 0.0, coarse = 0.0, lower = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    fine += ball_sums(space, x0, lower, radii[i], 1, g, spec)[0];
    if (spec.error_estimate) coarse += ball_sums(space, x0, lower, radii[i], 1, g, coarse_spec)[0];
    out[i].value = fine;
    out[i].error_estimate = spec.error_estimate ? std::abs(fine - coarse) : 0.0;
    lower = radii[i];
  }
  return out;
}

namespace {

// r, grad r and the comparison tensor at a node.
struct RadialData {
  double r;
  Vec grad;
  Mat comparison;
};

RadialData radial_data(const ModelSpace& space, const ChartPoint& x0, const ChartPoint& x) {
  const DistanceJet d = distance_jet(space, x0, x);
  const MetricJet m = metric_jet(space, x);
  const double factor = comparison_factor(space, d.value);
  return {d.value, d.gradient, factor * (m.g - d.differential * d.differential.transpose())};
}

MultiIntegrand term_integrand(const EnergyModel& model, const ModelSpace& space, const ChartPoint& x0) {
  return [&model, &space, x0](const PolarNode& node, std::span<double> out) {
    const RadialData rd = radial_data(space, x0, node.x);
    const IdentityTerms t = model.terms(node.x, rd.r, rd.grad, rd.comparison);
    out[0] = t.bulk;
    out[1] = t.extra;
    out[2] = t.boundary;
  };
}

}  // namespace

EnergyModel form_energy_model(const EnergyConfig& cfg, const ModelSpace& space, const ConnectionField& conn,
                              const BundleForm& psi) {
  require_matching(cfg, space, psi);
  require_compatible(space, conn, psi);
  EnergyModel model;
  model.dim = space.dim();
  model.exponent = cfg.scaling_exponent();
  model.density = [cfg, space, psi](const ChartPoint& x) { return energy_density(cfg, space, psi, x); };
  model.terms = [cfg, space, psi](const ChartPoint& x, double r, const Vec& grad_r, const Mat& comparison) {
    const PointGeometry geo = point_geometry(space, x);
    const FormJet j = psi.jet(x);
    const TensorJet T = stress_tensor_jet(cfg, geo, j);
    const Vec div = covariant_divergence(geo, T);
    IdentityTerms t;
    t.bulk = tensor_inner(space, x, T.values(), comparison) - r * grad_r.dot(div);
    if (psi.degree() > 0) {
      const FormValue v = values_of(j);
      const double n2 = inner_product(space, x, v, v);
      if (n2 > 0.0) {
        const FormValue radial = interior(grad_r, v);
        const double w = cfg.p == 2.0 ? 1.0 : std::pow(n2, 0.5 * (cfg.p - 2.0));
        t.boundary = w * inner_product(space, x, radial, radial);
      }
    }
    return t;
  };
  return model;
}

EnergyModel ymh_energy_model(const YmhPair& pair) {
  require_consistent(pair);
  EnergyModel model;
  model.dim = pair.space.dim();
  model.exponent = 4.0 - pair.space.dim();
  model.density = [pair](const ChartPoint& x) { return ymh_density(pair, x); };
  model.terms = [pair](const ChartPoint& x, double r, const Vec& grad_r, const Mat& comparison) {
    const YmhPoint pt = ymh_point(pair, x);
    const TensorJet T = ymh_stress_jet(pair, pt);
    const Vec div = covariant_divergence(pt.geo, T);
    IdentityTerms t;
    t.bulk = tensor_inner(pair.space, x, T.values(), comparison) - r * grad_r.dot(div);
    t.extra = squared_norm(pt.geo, pt.du).value() + 4.0 * pair.W.w(pt.u2.value());
    const FormValue F = values_of(pt.F);
    const FormValue radial_F = interior(grad_r, F);
    const FormValue du = values_of(pt.du);
    double radial_u = 0.0;
    for (int v = 0; v < du.rank; ++v) {
      double c = 0.0;
      for (int i = 0; i < du.dim; ++i) c += grad_r[i] * du.at(v, i);
      radial_u += c * c;
    }
    t.boundary = inner_product(pair.space, x, radial_F, radial_F) + radial_u;
    return t;
  };
  return model;
}

IdentityResult monotonicity_identity(const EnergyModel& model, const ModelSpace& space, const ChartPoint& x0, double R,
                                     const QuadratureSpec& spec) {
  check_ball(space, x0, R, spec);
  const double a = model.exponent;
  const double h = 0.01 * R;
  QuadratureSpec plain = spec;
  plain.error_estimate = false;
  auto scaled = [&](double rho) { return std::pow(rho, a) * ball_integral(space, x0, rho, model.density, plain).value; };
  IdentityResult res;
  res.R = R;
  res.lhs = (scaled(R - 2 * h) - 8.0 * scaled(R - h) + 8.0 * scaled(R + h) - scaled(R + 2 * h)) / (12.0 * h);

  const MultiIntegrand terms = term_integrand(model, space, x0);
  const auto bulk = ball_integrals(space, x0, R, 3, terms, spec);
  const auto bnd = sphere_integrals(space, x0, R, 3, terms, spec);
  res.bulk_term = std::pow(R, a - 1.0) * (bulk[0].value + bulk[1].value);
  res.boundary_term = std::pow(R, a) * bnd[2].value;
  res.rhs = res.bulk_term + res.boundary_term;
  constexpr double eps = 1e-12;
  res.residual = std::abs(res.lhs - res.rhs) / (std::abs(res.lhs) + std::abs(res.rhs) + eps);
  res.quadrature_error = std::pow(R, a - 1.0) * (bulk[0].error_estimate + bulk[1].error_estimate) +
                         std::pow(R, a) * bnd[2].error_estimate;
  res.inconclusive = res.quadrature_error > 1e-3 * (std::abs(res.lhs) + std::abs(res.rhs)) + eps;
  return res;
}

double monotonicity_identity_residual(const EnergyConfig& cfg, const ModelSpace& space, const ConnectionField& conn,
                                      const BundleForm& psi, const ChartPoint& x0, double R,
                                      const QuadratureSpec& spec) {
  cfg.require_standing_assumption();
  return monotonicity_identity(form_energy_model(cfg, space, conn, psi), space, x0, R, spec).residual;
}

TermSigns identity_term_signs(const EnergyModel& model, const ModelSpace& space, const ChartPoint& x0, double R,
                              const QuadratureSpec& spec) {
  check_ball(space, x0, R, spec);
  const MultiIntegrand terms = term_integrand(model, space, x0);
  const GaussRule radial = gauss_legendre(spec.radial_nodes, 0.0, R);
  const NodeValues inner = evaluate(space, x0, radial.nodes, radial.weights, spec, 3, terms);
  const NodeValues outer = evaluate(space, x0, {R}, {1.0}, spec, 3, terms);
  TermSigns s{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (std::size_t q = 0; q < inner.weights.size(); ++q) s.min_bulk = std::min(s.min_bulk, inner.values[q * 3]);
  for (std::size_t q = 0; q < outer.weights.size(); ++q) s.min_boundary = std::min(s.min_boundary, outer.values[q * 3 + 2]);
  return s;
}

double RadialProfile::max_residual() const {
  double m = 0.0;
  for (double r : residual)
    if (std::isfinite(r)) m = std::max(m, r);
  return m;
}

double RadialProfile::max_conclusive_residual() const {
  double m = 0.0;
  for (std::size_t i = 0; i < residual.size(); ++i)
    if (std::isfinite(residual[i]) &&
        std::find(inconclusive_radii.begin(), inconclusive_radii.end(), static_cast<int>(i)) == inconclusive_radii.end())
      m = std::max(m, residual[i]);
  return m;
}

std::vector<std::pair<int, int>> monotone_violations(std::span<const double> q) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i + 1 < q.size(); ++i)
    if (q[i + 1] < q[i] - monotone_slack(q[i])) out.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
  return out;
}

RadialProfile theta_profile(const EnergyModel& model, const ModelSpace& space, const ChartPoint& x0,
                            std::span<const double> radii, double Lambda, const QuadratureSpec& spec,
                            bool with_identity) {
  require_radius_grid(radii);
  RadialProfile prof;
  prof.radii.assign(radii.begin(), radii.end());
  const auto raw = nested_ball_integrals(space, x0, radii, model.density, spec);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double R = radii[i];
    prof.raw_energy.push_back(raw[i].value);
    prof.theta.push_back(std::exp(Lambda * R * R) * std::pow(R, model.exponent) * raw[i].value);
    if (with_identity) {
      const IdentityResult id = monotonicity_identity(model, space, x0, R, spec);
      prof.boundary_term.push_back(id.boundary_term);
      prof.bulk_term.push_back(id.bulk_term);
      prof.identity_lhs.push_back(id.lhs);
      prof.identity_rhs.push_back(id.rhs);
      prof.residual.push_back(id.residual);
      if (id.inconclusive) prof.inconclusive_radii.push_back(static_cast<int>(i));
      prof.inconclusive = prof.inconclusive || id.inconclusive;
    } else {
      prof.boundary_term.push_back(nan);
      prof.bulk_term.push_back(nan);
      prof.identity_lhs.push_back(nan);
      prof.identity_rhs.push_back(nan);
      prof.residual.push_back(nan);
    }
  }
  prof.violations = monotone_violations(prof.theta);
  return prof;
}

RadialProfile theta_profile(const EnergyConfig& cfg, const ModelSpace& space, const ConnectionField& conn,
                            const BundleForm& psi, const ChartPoint& x0, std::span<const double> radii, double Lambda,
                            const QuadratureSpec& spec, bool with_identity) {
  cfg.require_standing_assumption();
  return theta_profile(form_energy_model(cfg, space, conn, psi), space, x0, radii, Lambda, spec, with_identity);
}

double inhomogeneity(const EnergyConfig& cfg, const ModelSpace& space, const ConnectionField& conn,
                     const BundleForm& psi, const ChartPoint& x) {
  require_matching(cfg, space, psi);
  require_compatible(space, conn, psi);
  const PointGeometry geo = point_geometry(space, x);
  const std::vector<Jet> a = conn.is_trivial() ? std::vector<Jet>{} : conn.jets(x);
  const FormJet j = psi.jet(x);
  double q = 0.0;
  if (psi.degree() > 0) {
    const FormValue delta = values_of(codifferential(geo, a, weighted_form(geo, j, cfg.p)));
    q += std::sqrt(inner_product(space, x, delta, delta));
  }
  if (psi.degree() < space.dim()) {
    const FormValue v = values_of(j);
    const double n2 = inner_product(space, x, v, v);
    if (n2 > 0.0) {
      const FormValue d = values_of(exterior_covariant_derivative(geo, a, j));
      const double w = cfg.p == 2.0 ? 1.0 : std::pow(n2, 0.5 * (cfg.p - 2.0));
      q += w * std::sqrt(inner_product(space, x, d, d));
    }
  }
  return q;
}

std::pair<double, ChartPoint> sample_inhomogeneity(const EnergyConfig& cfg, const ModelSpace& space,
                                                   const ConnectionField& conn, const BundleForm& psi,
                                                   const ChartPoint& x0, double R, const QuadratureSpec& spec) {
  check_ball(space, x0, R, spec);
  const GaussRule radial = gauss_legendre(spec.radial_nodes, 0.0, R);
  std::vector<double> radii = radial.nodes;
  std::vector<double> weights = radial.weights;
  radii.push_back(R);
  weights.push_back(0.0);
  const NodeValues nv = evaluate(space, x0, radii, weights, spec, 1,
                                 [&](const PolarNode& node, std::span<double> out) {
                                   out[0] = inhomogeneity(cfg, space, conn, psi, node.x);
                                 });
  double best = inhomogeneity(cfg, space, conn, psi, x0);
  ChartPoint where = x0;
  for (std::size_t q = 0; q < nv.nodes.size(); ++q)
    if (nv.values[q] > best) {
      best = nv.values[q];
      where = nv.nodes[q].x;
    }
  return {best, where};
}

namespace {

double adaptive_gauss(const std::function<double(double)>& f, double a, double b, double whole, double tol, int depth) {
  static const GaussRule rule = gauss_legendre(10, 0.0, 1.0);
  auto gl = [&](double lo, double hi) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(lo + (hi - lo) * rule.nodes[i]);
    return s * (hi - lo);
  };
  const double mid = 0.5 * (a + b);
  const double left = gl(a, mid);
  const double right = gl(mid, b);
  if (depth <= 0 || std::abs(left + right - whole) <= tol * std::max(std::abs(left + right), 1e-300))
    return left + right;
  return adaptive_gauss(f, a, mid, left, tol, depth - 1) + adaptive_gauss(f, mid, b, right, tol, depth - 1);
}

}  // namespace

double volume_weight_integral(const ModelSpace& space, double R, double a, double Lambda, double tol) {
  if (!(R > 0.0)) return 0.0;
  const std::function<double(double)> f = [&](double s) {
    if (s <= 0.0) return 0.0;
    return std::exp(Lambda * s * s + s) * std::pow(s, a) * space.ball_volume(s);
  };
  static const GaussRule rule = gauss_legendre(10, 0.0, 1.0);
  double whole = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) whole += rule.weights[i] * f(R * rule.nodes[i]);
  return adaptive_gauss(f, 0.0, R, whole * R, tol, 30);
}

RadialProfile inhomogeneous_profile(const EnergyConfig& cfg, const ModelSpace& space, const ConnectionField& conn,
                                    const BundleForm& psi, const ChartPoint& x0, std::span<const double> radii,
                                    double Gamma, double Lambda, const QuadratureSpec& spec) {
  cfg.require_standing_assumption();
  require_radius_grid(radii);
  if (!(Gamma >= 0.0)) throw std::invalid_argument("Gamma must be nonnegative");
  const auto [q, where] = sample_inhomogeneity(cfg, space, conn, psi, x0, radii.back(), spec);
  if (q > Gamma) throw PreconditionError("inhomogeneity bound exceeded (sampled q > Gamma)", where, q);

  RadialProfile prof = theta_profile(form_energy_model(cfg, space, conn, psi), space, x0, radii, Lambda, spec);
  const double pc = cfg.conjugate();
  const double coeff = std::pow(Gamma, pc) / pc;
  const double a = cfg.scaling_exponent();
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double R = radii[i];
    const double first = std::exp(Lambda * R * R + R) * std::pow(R, a) * prof.raw_energy[i];
    const double second = coeff == 0.0 ? 0.0 : coeff * volume_weight_integral(space, R, a, Lambda);
    prof.combined.push_back(first + second);
  }
  prof.violations = monotone_violations(prof.combined);
  return prof;
}

std::vector<std::pair<int, int>> liouville_ratio_check(const RadialProfile& profile) {
  std::vector<std::pair<int, int>> out;
  const auto& t = profile.theta;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (t[i] > t[j] + monotone_slack(t[i])) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return out;
}

RadialProfile ymh_identity_and_profile(const YmhPair& pair, const ChartPoint& x0, std::span<const double> radii,
                                       double Lambda, const QuadratureSpec& spec) {
  return theta_profile(ymh_energy_model(pair), pair.space, x0, radii, Lambda, spec, true);
}

}  // namespace emt
