#include "emt/manifold.hpp"

#include "emt/quadrature_rules.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace emt {

std::string format_point(const ChartPoint& x) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (int i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

ModelSpace ModelSpace::euclidean(int dim) {
  if (dim < 2 || dim > kMaxDim) throw std::invalid_argument("model space dimension must lie in [2, 6]");
  return ModelSpace(SpaceKind::Euclidean, dim, 0.0);
}

ModelSpace ModelSpace::hyperbolic(int dim, double kappa) {
  if (dim < 2 || dim > kMaxDim) throw std::invalid_argument("model space dimension must lie in [2, 6]");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("hyperbolic space needs kappa > 0");
  return ModelSpace(SpaceKind::Hyperbolic, dim, kappa);
}

std::string ModelSpace::describe() const {
  std::ostringstream os;
  if (is_hyperbolic())
    os << "hyperbolic:" << dim_ << ":" << kappa_;
  else
    os << "euclidean:" << dim_;
  return os.str();
}

bool ModelSpace::contains(const ChartPoint& x) const {
  if (x.size() != dim_) return false;
  for (int i = 0; i < dim_; ++i)
    if (!std::isfinite(x[i])) return false;
  return !is_hyperbolic() || x[dim_ - 1] > 0.0;
}

void ModelSpace::require_in_domain(const ChartPoint& x) const {
  if (!contains(x)) throw DomainError("point " + format_point(x) + " outside the chart of " + describe());
}

double ModelSpace::frame_scale(const ChartPoint& x) const {
  return is_hyperbolic() ? kappa_ * x[dim_ - 1] : 1.0;
}

Jet ModelSpace::frame_scale_jet(const ChartPoint& x) const {
  if (!is_hyperbolic()) return Jet::constant(dim_, 1.0);
  Jet s = Jet::variable(dim_, dim_ - 1, x[dim_ - 1]);
  return s * kappa_;
}

ChartPoint ModelSpace::geodesic_point(const ChartPoint& x0, const Vec& direction, double s) const {
  if (!is_hyperbolic()) return x0 + s * direction;
  // Unit-speed geodesic through (0, 1) with initial direction w for metric
  // y^-2|dx|^2 is (w_h sinh t, 1) / (cosh t - w_y sinh t); translate and
  // dilate to x0 and rescale arclength by kappa.
  const double t = kappa_ * s;
  const double y0 = x0[dim_ - 1];
  const double sh = std::sinh(t);
  const double denom = std::cosh(t) - direction[dim_ - 1] * sh;
  ChartPoint x(dim_);
  for (int i = 0; i + 1 < dim_; ++i) x[i] = x0[i] + y0 * direction[i] * sh / denom;
  x[dim_ - 1] = y0 / denom;
  return x;
}

double ModelSpace::polar_jacobian(double s) const {
  if (!is_hyperbolic()) return std::pow(s, dim_ - 1);
  return std::pow(std::sinh(kappa_ * s) / kappa_, dim_ - 1);
}

double ModelSpace::unit_sphere_area(int dim) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

double ModelSpace::unit_ball_volume(int dim) {
  return std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

namespace {

// Integral of sinh^m over [0, t].
double sinh_power_integral(int m, double t) {
  if (t < 0.5) {
    // Below t = 0.5 the closed-form recursion loses digits to cancellation;
    // the integrand is analytic, so a fixed Gauss rule is exact to round-off.
    static const GaussRule rule = gauss_legendre(16, 0.0, 1.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * std::pow(std::sinh(t * rule.nodes[i]), m);
    return t * sum;
  }
  if (m == 0) return t;
  if (m == 1) return std::cosh(t) - 1.0;
  return std::pow(std::sinh(t), m - 1) * std::cosh(t) / m - (m - 1.0) / m * sinh_power_integral(m - 2, t);
}

}  // namespace

double ModelSpace::ball_volume(double s) const {
  if (s <= 0.0) return 0.0;
  if (!is_hyperbolic()) return unit_ball_volume(dim_) * std::pow(s, dim_);
  return unit_sphere_area(dim_) * std::pow(kappa_, -dim_) * sinh_power_integral(dim_ - 1, kappa_ * s);
}

MetricJet metric_jet(const ModelSpace& space, const ChartPoint& x) {
  space.require_in_domain(x);
  const int n = space.dim();
  MetricJet m;
  const double s = space.frame_scale(x);
  m.g = Mat::Identity(n, n) / (s * s);
  m.ginv = Mat::Identity(n, n) * (s * s);
  for (int k = 0; k < n; ++k) m.dg[k] = Mat::Zero(n, n);
  if (space.is_hyperbolic()) {
    // g_ij = (kappa y)^-2 delta_ij, so d_y g_ij = -2 kappa^-2 y^-3 delta_ij.
    const double y = x[n - 1];
    const double k2 = space.kappa() * space.kappa();
    m.dg[n - 1] = Mat::Identity(n, n) * (-2.0 / (k2 * y * y * y));
  }
  return m;
}

Christoffel christoffel(const MetricJet& metric) {
  const int n = static_cast<int>(metric.g.rows());
  Christoffel gamma(n);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double sum = 0.0;
        for (int m = 0; m < n; ++m) {
          sum += metric.ginv(l, m) * (metric.dg[i](j, m) + metric.dg[j](i, m) - metric.dg[m](i, j));
        }
        gamma(l, i, j) = 0.5 * sum;
        gamma(l, j, i) = 0.5 * sum;
      }
  return gamma;
}

Christoffel christoffel(const ModelSpace& space, const ChartPoint& x) { return christoffel(metric_jet(space, x)); }

DistanceJet distance_jet(const ModelSpace& space, const ChartPoint& x0, const ChartPoint& x) {
  space.require_in_domain(x0);
  space.require_in_domain(x);
  const int n = space.dim();
  if ((x - x0).norm() == 0.0) throw DegeneratePointError("distance gradient undefined at the base point " + format_point(x0));

  const auto xs = coordinate_jets(x);
  Jet chord2(0.0, n);
  for (int i = 0; i < n; ++i) {
    const Jet d = xs[i] - x0[i];
    chord2 += d * d;
  }
  DistanceJet out;
  if (!space.is_hyperbolic()) {
    out.jet = sqrt(chord2);
  } else {
    // cosh(kappa r) = 1 + |x - x0|^2 / (2 y y0), rewritten through
    // sinh(kappa r / 2) = |x - x0| / (2 sqrt(y y0)) for small-r accuracy.
    const double y0 = x0[n - 1];
    const Jet arg = sqrt(chord2 / (xs[n - 1] * (4.0 * y0)));
    out.jet = asinh(arg) * (2.0 / space.kappa());
  }
  out.value = out.jet.value();
  out.differential = Vec(n);
  out.coordinate_hessian = Mat(n, n);
  for (int i = 0; i < n; ++i) {
    out.differential[i] = out.jet.grad(i);
    for (int j = 0; j < n; ++j) out.coordinate_hessian(i, j) = out.jet.hess(i, j);
  }
  const double s = space.frame_scale(x);
  out.gradient = out.differential * (s * s);
  return out;
}

double comparison_factor(const ModelSpace& space, double r) {
  if (!space.is_hyperbolic()) return 0.0;
  const double t = space.kappa() * r;
  if (t < 1e-2) {
    const double t2 = t * t;
    return t2 * (-1.0 / 3.0 + t2 * (1.0 / 45.0 - t2 * (2.0 / 945.0)));
  }
  return 1.0 - t / std::tanh(t);
}

HalfSquareHessian hessian_half_r2(const ModelSpace& space, const ChartPoint& x0, const ChartPoint& x) {
  const DistanceJet dist = distance_jet(space, x0, x);
  const MetricJet metric = metric_jet(space, x);
  HalfSquareHessian out;
  out.r = dist.value;
  out.factor = comparison_factor(space, dist.value);
  out.radial_metric = metric.g - dist.differential * dist.differential.transpose();
  out.comparison = out.factor * out.radial_metric;
  out.hessian = metric.g - out.comparison;
  return out;
}

double monotonicity_constant(double lambda_lower, double lambda_upper, int k, double p, int n) {
  const double lower_neg = std::min(lambda_lower, 0.0);
  const double inner = k * p * lower_neg - (n - 1) * lambda_upper;
  return -0.5 * std::min(inner, 0.0);
}

GeometryBounds geometry_bounds(const ModelSpace& space, double R, int k, double p, int n) {
  if (!(R > 0.0)) throw std::invalid_argument("geometry bounds need a positive radius");
  if (!(n > k * p)) throw std::invalid_argument("standing assumption violated: dimension n must exceed kp");
  GeometryBounds b;
  b.radius = R;
  if (space.is_hyperbolic()) {
    // (1 - kappa r coth(kappa r)) / r^2 sampled on (0, R]; the factor is
    // increasing in r, so the infimum is the r -> 0 limit -kappa^2/3.
    const double k2 = space.kappa() * space.kappa();
    double lower = -k2 / 3.0;
    constexpr int samples = 2000;
    for (int i = 1; i <= samples; ++i) {
      const double r = R * i / samples;
      lower = std::min(lower, comparison_factor(space, r) / (r * r));
    }
    b.lambda_lower = lower;
    b.lambda_upper = 0.0;
  }
  b.Lambda = monotonicity_constant(b.lambda_lower, b.lambda_upper, k, p, n);
  return b;
}

}  // namespace emt
