#pragma once

// Energy density, energy-momentum tensor and its divergence.

#include <functional>
#include <span>
#include <vector>

#include "emt/calculus.hpp"

namespace emt {

/// Exponent p, form degree k and dimension n.
struct EnergyConfig {
  double p = 2.0;
  int k = 1;
  int n = 3;

  /// Checks p > 1 and 0 <= k <= n.
  void validate() const;
  /// The monotonicity results assume n > kp; throws std::invalid_argument
  /// naming the assumption otherwise.
  void require_standing_assumption() const;
  /// p' with 1/p + 1/p' = 1.
  double conjugate() const { return p / (p - 1.0); }
  /// kp - n, the power of R in the monotone quantity.
  double scaling_exponent() const { return k * p - n; }
};

EnergyConfig make_config(double p, int k, int n);
void require_matching(const EnergyConfig& cfg, const ModelSpace& space, const BundleForm& psi);

/// A symmetric n x n array of jets (coordinate components).
struct TensorJet {
  int n = 0;
  std::vector<Jet> c;  // [i * n + j]

  explicit TensorJet(int dim = 0) : n(dim), c(static_cast<std::size_t>(dim * dim), Jet::constant(dim, 0.0)) {}
  Jet& operator()(int i, int j) { return c[static_cast<std::size_t>(i * n + j)]; }
  const Jet& operator()(int i, int j) const { return c[static_cast<std::size_t>(i * n + j)]; }
  Mat values() const;
};

/// e = |psi|^p / p.
double energy_density(const EnergyConfig& cfg, const ModelSpace& space, const BundleForm& psi, const ChartPoint& x);
Jet energy_density(const EnergyConfig& cfg, const PointGeometry& geo, const FormJet& psi);

/// T = |psi|^(p-2) sum <i_{e_a} psi, i_{e_b} psi> w^a w^b - e g, built in the
/// orthonormal frame and returned in coordinates, with exact first partials.
/// Zero field: zero tensor for p >= 2, SingularWeightError for p < 2.
TensorJet stress_tensor_jet(const EnergyConfig& cfg, const PointGeometry& geo, const FormJet& psi);
Mat stress_tensor(const EnergyConfig& cfg, const ModelSpace& space, const BundleForm& psi, const ChartPoint& x);

/// g-trace of a covariant 2-tensor.
double metric_trace(const ModelSpace& space, const ChartPoint& x, const Mat& t);
/// <a, b>_g = g^ik g^jl a_ij b_kl.
double tensor_inner(const ModelSpace& space, const ChartPoint& x, const Mat& a, const Mat& b);

/// |d/dt (e_{g+th} sqrt det(g+th)) - <-T/2, h>_g sqrt det g| at t = 0, the
/// derivative by Richardson-extrapolated central differences with step
/// `step` and step/2, |psi|_{g+th} from the Gram determinant with components
/// fixed. Throws PreconditionError if g + th is not positive definite.
double metric_variation_residual(const EnergyConfig& cfg, const ModelSpace& space, const BundleForm& psi,
                                 const ChartPoint& x, const Mat& h, double step = 1e-4);

/// (div S)_j = g^ik (d_i S_kj - Gamma^l_ik S_lj - Gamma^l_ij S_kl).
Vec covariant_divergence(const PointGeometry& geo, const TensorJet& s);

Vec div_stress_direct(const EnergyConfig& cfg, const ModelSpace& space, const BundleForm& psi, const ChartPoint& x);

/// -sum_j (<delta(|psi|^(p-2) psi), i_j psi> + |psi|^(p-2) <i_j d psi, psi>) w^j
/// in the orthonormal frame, returned as a coordinate covector.
Vec div_stress_identity(const EnergyConfig& cfg, const PointGeometry& geo, std::span<const Jet> conn,
                        const FormJet& psi);
Vec div_stress_identity(const EnergyConfig& cfg, const ModelSpace& space, const ConnectionField& conn,
                        const BundleForm& psi, const ChartPoint& x);

/// g-norm of a covector.
double covector_norm(const ModelSpace& space, const ChartPoint& x, const Vec& v);

/// Symmetric 2-tensor field; the component map writes n*n coordinate
/// components row-major and is symmetrized on evaluation.
class SymTensorField {
 public:
  using JetFn = std::function<void(std::span<const Jet>, std::span<Jet>)>;
  SymTensorField(ModelSpace space, JetFn fn) : space_(space), fn_(std::move(fn)) {}
  template <class F>
  static SymTensorField from_generic(const ModelSpace& space, F f) {
    return SymTensorField(space, [f](std::span<const Jet> x, std::span<Jet> out) { f(x, out); });
  }
  const ModelSpace& space() const { return space_; }
  TensorJet jet(const ChartPoint& x) const;
  Mat value(const ChartPoint& x) const { return jet(x).values(); }

 private:
  ModelSpace space_;
  JetFn fn_;
};

/// Vector field by coordinate components X^i.
class VectorField {
 public:
  using JetFn = std::function<void(std::span<const Jet>, std::span<Jet>)>;
  VectorField(ModelSpace space, JetFn fn) : space_(space), fn_(std::move(fn)) {}
  template <class F>
  static VectorField from_generic(const ModelSpace& space, F f) {
    return VectorField(space, [f](std::span<const Jet> x, std::span<Jet> out) { f(x, out); });
  }
  const ModelSpace& space() const { return space_; }
  std::vector<Jet> jet(const ChartPoint& x) const;

 private:
  ModelSpace space_;
  JetFn fn_;
};

/// |div(i_X S) - <S, nabla X^flat> - i_X div S| with the full covariant
/// derivative (nabla X^flat)_ij = d_i X_j - Gamma^l_ij X_l.
double contraction_divergence_residual(const ModelSpace& space, const SymTensorField& s, const VectorField& X,
                                       const ChartPoint& x);

}  // namespace emt
