#pragma once

// Quadrature on geodesic balls and spheres, the monotonicity identity and
// radial profiles of the scaled energy.

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "emt/stress.hpp"
#include "emt/ymh.hpp"

namespace emt {

/// Node counts of the polar product rule. `angle_nodes` lists the n-2
/// latitude counts followed by the longitude count; empty means
/// `angular` for every latitude and 2 * angular in longitude.
struct QuadratureSpec {
  int radial_nodes = 16;
  int angular = 8;
  std::vector<int> angle_nodes;
  std::uint64_t seed = 0;
  int threads = 1;
  bool error_estimate = true;

  std::vector<int> latitudes(int dim) const;
  int longitude(int dim) const;
  /// Every count >= 4 and n - 1 angle counts when given explicitly.
  void validate(int dim) const;
  /// The rule with every count halved (minimum 2), for error estimates.
  QuadratureSpec halved(int dim) const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// A quadrature node in geodesic polar coordinates about x0.
struct PolarNode {
  ChartPoint x;
  double r = 0.0;
  Vec direction;  // unit vector in the orthonormal frame at x0
};

using PointFunction = std::function<double(const ChartPoint&)>;
/// Writes `outputs` integrand values at a node.
using MultiIntegrand = std::function<void(const PolarNode&, std::span<double>)>;

/// An integrand threw at a node.
class IntegrandError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

QuadratureResult ball_integral(const ModelSpace& space, const ChartPoint& x0, double R, const PointFunction& f,
                               const QuadratureSpec& spec);
QuadratureResult sphere_integral(const ModelSpace& space, const ChartPoint& x0, double R, const PointFunction& f,
                                 const QuadratureSpec& spec);

std::vector<QuadratureResult> ball_integrals(const ModelSpace& space, const ChartPoint& x0, double R, int outputs,
                                             const MultiIntegrand& f, const QuadratureSpec& spec);
std::vector<QuadratureResult> sphere_integrals(const ModelSpace& space, const ChartPoint& x0, double R, int outputs,
                                               const MultiIntegrand& f, const QuadratureSpec& spec);
/// Integrals over B_{R_i} for an increasing radius grid, accumulated shell by
/// shell ([0, R_0], [R_0, R_1], ...), each shell with the full radial rule.
std::vector<QuadratureResult> nested_ball_integrals(const ModelSpace& space, const ChartPoint& x0,
                                                    std::span<const double> radii, const PointFunction& f,
                                                    const QuadratureSpec& spec);

/// Pointwise data entering the monotonicity identity.
struct IdentityTerms {
  double bulk = 0.0;      // <T, g - Hess(r^2/2)> - r <grad r, div T>
  double extra = 0.0;     // additional nonnegative bulk integrand
  double boundary = 0.0;  // boundary integrand on the sphere
};

/// An energy together with its stress tensor. `exponent` is the power of R
/// in the scaled energy (kp - n for forms, 4 - n for YMH). `terms` receives
/// the point, r, grad r (coordinates) and the comparison tensor.
struct EnergyModel {
  int dim = 0;
  double exponent = 0.0;
  PointFunction density;
  std::function<IdentityTerms(const ChartPoint&, double, const Vec&, const Mat&)> terms;
};

EnergyModel form_energy_model(const EnergyConfig& cfg, const ModelSpace& space, const ConnectionField& conn,
                              const BundleForm& psi);
EnergyModel ymh_energy_model(const YmhPair& pair);

struct IdentityResult {
  double R = 0.0;
  double lhs = 0.0;            // d/dR (R^a int_B e)
  double rhs = 0.0;
  double boundary_term = 0.0;  // R^a int_dB boundary
  double bulk_term = 0.0;      // R^(a-1) int_B (bulk + extra)
  double residual = 0.0;       // |lhs - rhs| / (|lhs| + |rhs| + eps)
  double quadrature_error = 0.0;
  bool inconclusive = false;
};

/// Both sides of the monotonicity identity at radius R; the derivative by
/// 5-point central differences with step 0.01 R.
IdentityResult monotonicity_identity(const EnergyModel& model, const ModelSpace& space, const ChartPoint& x0, double R,
                                     const QuadratureSpec& spec);
double monotonicity_identity_residual(const EnergyConfig& cfg, const ModelSpace& space, const ConnectionField& conn,
                                      const BundleForm& psi, const ChartPoint& x0, double R,
                                      const QuadratureSpec& spec);

/// Smallest bulk and boundary integrands over the quadrature nodes.
struct TermSigns {
  double min_bulk = 0.0;
  double min_boundary = 0.0;
};
TermSigns identity_term_signs(const EnergyModel& model, const ModelSpace& space, const ChartPoint& x0, double R,
                              const QuadratureSpec& spec);

/// Absolute plus relative slack for monotonicity comparisons.
inline double monotone_slack(double theta) { return 1e-6 + 1e-6 * std::abs(theta); }

struct RadialProfile {
  std::vector<double> radii;
  std::vector<double> raw_energy;     // int_{B_R} e
  std::vector<double> theta;          // exp(Lambda R^2) R^a int_{B_R} e
  std::vector<double> boundary_term;  // NaN when the identity was not evaluated
  std::vector<double> bulk_term;
  std::vector<double> identity_lhs;
  std::vector<double> identity_rhs;
  std::vector<double> residual;
  std::vector<double> combined;       // inhomogeneous quantity, empty otherwise
  std::vector<std::pair<int, int>> violations;  // adjacent pairs that decrease
  bool inconclusive = false;
  std::vector<int> inconclusive_radii;  // indices whose identity check was inconclusive

  /// The monotone column: `combined` when present, else `theta`.
  const std::vector<double>& monotone_quantity() const { return combined.empty() ? theta : combined; }
  double max_residual() const;
  /// Largest identity residual over the radii that were not inconclusive.
  double max_conclusive_residual() const;
};

/// Adjacent pairs (i, i+1) with q[i+1] < q[i] - slack.
std::vector<std::pair<int, int>> monotone_violations(std::span<const double> q);

void require_radius_grid(std::span<const double> radii);

RadialProfile theta_profile(const EnergyModel& model, const ModelSpace& space, const ChartPoint& x0,
                            std::span<const double> radii, double Lambda, const QuadratureSpec& spec,
                            bool with_identity = false);
RadialProfile theta_profile(const EnergyConfig& cfg, const ModelSpace& space, const ConnectionField& conn,
                            const BundleForm& psi, const ChartPoint& x0, std::span<const double> radii, double Lambda,
                            const QuadratureSpec& spec, bool with_identity = false);

/// q = |delta(|psi|^(p-2) psi)| + |psi|^(p-2) |d psi| at a point.
double inhomogeneity(const EnergyConfig& cfg, const ModelSpace& space, const ConnectionField& conn,
                     const BundleForm& psi, const ChartPoint& x);
/// Largest q over the quadrature nodes of B_R(x0) (and x0 itself), with the
/// point attaining it.
std::pair<double, ChartPoint> sample_inhomogeneity(const EnergyConfig& cfg, const ModelSpace& space,
                                                   const ConnectionField& conn, const BundleForm& psi,
                                                   const ChartPoint& x0, double R, const QuadratureSpec& spec);

/// int_0^R exp(Lambda s^2 + s) s^a Vol(B_s) ds by adaptive Gauss-Legendre.
double volume_weight_integral(const ModelSpace& space, double R, double a, double Lambda, double tol = 1e-13);

/// exp(Lambda R^2 + R) R^a int_{B_R} e + Gamma^p'/p' int_0^R exp(Lambda s^2 + s) s^a Vol(B_s) ds
/// in `combined`. Throws PreconditionError if a sampled q exceeds Gamma.
RadialProfile inhomogeneous_profile(const EnergyConfig& cfg, const ModelSpace& space, const ConnectionField& conn,
                                    const BundleForm& psi, const ChartPoint& x0, std::span<const double> radii,
                                    double Gamma, double Lambda, const QuadratureSpec& spec);

/// All pairs (i, j), i < j, with theta[i] > theta[j] + slack.
std::vector<std::pair<int, int>> liouville_ratio_check(const RadialProfile& profile);

/// exp(Lambda R^2) R^(4-n) int e profile with the YMH identity at every radius.
RadialProfile ymh_identity_and_profile(const YmhPair& pair, const ChartPoint& x0, std::span<const double> radii,
                                       double Lambda, const QuadratureSpec& spec);

}  // namespace emt
