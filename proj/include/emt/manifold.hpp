#pragma once

// Model Riemannian geometries described in a single global chart: Euclidean
// space and the upper half-space model of constant curvature -kappa^2.

#include <array>
#include <string>

#include "emt/types.hpp"

namespace emt {

enum class SpaceKind { Euclidean, Hyperbolic };

/// A chart-described model space. The hyperbolic metric is
/// g = (kappa y)^-2 (dx_1^2 + ... + dx_n^2) with y = x_n > 0, which has
/// sectional curvature -kappa^2. Both models are conformally flat with
/// g = s^-2 * identity for the frame scale s (s = 1 resp. s = kappa*y), and the
/// orthonormal frame e_i = s d_i is used throughout the library.
class ModelSpace {
 public:
  static ModelSpace euclidean(int dim);
  static ModelSpace hyperbolic(int dim, double kappa);

  SpaceKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double kappa() const { return kappa_; }
  bool is_hyperbolic() const { return kind_ == SpaceKind::Hyperbolic; }
  std::string describe() const;

  bool contains(const ChartPoint& x) const;
  /// Throws DomainError for wrong length, non-finite entries or y <= 0.
  void require_in_domain(const ChartPoint& x) const;

  /// s(x) with g = s^-2 * identity.
  double frame_scale(const ChartPoint& x) const;
  /// s as a jet in the chart coordinates.
  Jet frame_scale_jet(const ChartPoint& x) const;

  /// Point at geodesic distance s from x0 in the direction of the unit vector
  /// `direction`, given by its components in the orthonormal frame at x0.
  ChartPoint geodesic_point(const ChartPoint& x0, const Vec& direction, double s) const;
  /// Jacobian of geodesic polar coordinates, dvol = J(s) ds dsigma.
  double polar_jacobian(double s) const;
  /// Riemannian volume of a geodesic ball of radius s (centre irrelevant).
  double ball_volume(double s) const;
  /// Area of the geodesic sphere of radius s.
  double sphere_area(double s) const { return unit_sphere_area(dim_) * polar_jacobian(s); }

  static double unit_sphere_area(int dim);
  static double unit_ball_volume(int dim);

 private:
  ModelSpace(SpaceKind kind, int dim, double kappa) : kind_(kind), dim_(dim), kappa_(kappa) {}

  SpaceKind kind_;
  int dim_;
  double kappa_;
};

/// Metric components, their first partials and the inverse metric at a point.
struct MetricJet {
  Mat g;
  Mat ginv;
  std::array<Mat, kMaxDim> dg;  // dg[k](i, j) = d_k g_ij
};

MetricJet metric_jet(const ModelSpace& space, const ChartPoint& x);

/// Christoffel symbols of the Levi-Civita connection, Gamma^l_ij.
class Christoffel {
 public:
  explicit Christoffel(int dim = 0) : dim_(dim) { data_.fill(0.0); }
  int dim() const { return dim_; }
  double operator()(int l, int i, int j) const { return data_[(l * kMaxDim + i) * kMaxDim + j]; }
  double& operator()(int l, int i, int j) { return data_[(l * kMaxDim + i) * kMaxDim + j]; }

 private:
  int dim_;
  std::array<double, kMaxDim * kMaxDim * kMaxDim> data_;
};

/// Gamma^l_ij = 1/2 g^lm (d_i g_jm + d_j g_im - d_m g_ij).
Christoffel christoffel(const MetricJet& metric);
Christoffel christoffel(const ModelSpace& space, const ChartPoint& x);

/// The distance r = d(x0, .) near x, as a 2-jet in the chart coordinates of x.
struct DistanceJet {
  double value = 0.0;
  Jet jet;           // value, coordinate partials d_i r and d_i d_j r
  Vec differential;  // d_i r
  Vec gradient;      // (grad r)^i = g^ij d_j r, a unit vector
  Mat coordinate_hessian;
};

/// Throws DegeneratePointError when x == x0.
DistanceJet distance_jet(const ModelSpace& space, const ChartPoint& x0, const ChartPoint& x);

/// 1 - kappa r coth(kappa r) (zero for Euclidean space); evaluated by its
/// Taylor series for small kappa r.
double comparison_factor(const ModelSpace& space, double r);

/// Covariant Hessian of r^2/2 and the comparison tensor g - Hess(r^2/2) =
/// factor * g_r, with g_r = g - dr (x) dr.
struct HalfSquareHessian {
  double r = 0.0;
  double factor = 0.0;
  Mat hessian;
  Mat comparison;
  Mat radial_metric;
};

HalfSquareHessian hessian_half_r2(const ModelSpace& space, const ChartPoint& x0, const ChartPoint& x);

/// Constants of the two-sided estimate
///   lambda_lower r^2 g_r <= g - Hess(r^2/2) <= lambda_upper r^2 g_r
/// on the ball of the given radius, and the monotonicity constant
///   Lambda = -1/2 min(kp min(lambda_lower, 0) - (n-1) lambda_upper, 0).
struct GeometryBounds {
  double lambda_lower = 0.0;
  double lambda_upper = 0.0;
  double Lambda = 0.0;
  double radius = 0.0;
};

double monotonicity_constant(double lambda_lower, double lambda_upper, int k, double p, int n);

/// Throws std::invalid_argument for R <= 0 or n <= kp.
GeometryBounds geometry_bounds(const ModelSpace& space, double R, int k, double p, int n);

}  // namespace emt
