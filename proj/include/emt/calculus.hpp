#pragma once

// Covariant derivative, exterior covariant derivative and codifferential of
// bundle-valued forms, at the level of pointwise jets and of fields.

#include <span>
#include <vector>

#include "emt/forms.hpp"
#include "emt/manifold.hpp"

namespace emt {

/// Metric data at a chart point as jets: g_ij, g^ij (full 2-jets) and the
/// Christoffel symbols (value and first partials; second partials unset).
struct PointGeometry {
  int n = 0;
  ChartPoint x;
  Jet scale;                 // s with g = s^-2 identity
  std::vector<Jet> g;        // [i * n + j]
  std::vector<Jet> ginv;     // [i * n + j]
  std::vector<Jet> gamma;    // Gamma^l_ij at [(l * n + i) * n + j]

  const Jet& metric(int i, int j) const { return g[i * n + j]; }
  const Jet& inverse(int i, int j) const { return ginv[i * n + j]; }
  const Jet& christoffel(int l, int i, int j) const { return gamma[(l * n + i) * n + j]; }
  /// s^m as a jet.
  Jet scale_power(int m) const;
};

PointGeometry point_geometry(const ModelSpace& space, const ChartPoint& x);

// Jet-level kernels. `conn` holds (A_i)_ab at [(i * rank + a) * rank + b] and
// may be empty for the trivial connection. If the input has exact 2-jets the
// output of a first-order operator has exact values and first partials.

FormJet covariant_derivative(const PointGeometry& geo, std::span<const Jet> conn, const FormJet& psi, int direction);
FormJet exterior_covariant_derivative(const PointGeometry& geo, std::span<const Jet> conn, const FormJet& psi);
/// -sum_a i_{e_a} nabla_{e_a} psi. With `frame` (columns e_a in coordinates,
/// orthonormal for g) the sum runs over that frame; otherwise over the
/// diagonal frame of the model space.
FormJet codifferential(const PointGeometry& geo, std::span<const Jet> conn, const FormJet& psi,
                       const Mat* frame = nullptr);

/// |psi|^2 from orthonormal-frame components, as a jet.
Jet squared_norm(const PointGeometry& geo, const FormJet& psi);

/// |psi|^(p-2) psi as a jet. Where psi vanishes: p == 2 returns psi, p > 2
/// returns zero, p < 2 throws SingularWeightError.
FormJet weighted_form(const PointGeometry& geo, const FormJet& psi, double p);

/// Components of a coordinate-coframe form in the orthonormal coframe.
FormJet orthonormal_components(const PointGeometry& geo, const FormJet& psi);

// Field-level operations.

FormValue covariant_derivative(const ModelSpace& space, const ConnectionField& conn, const BundleForm& psi,
                               const ChartPoint& x, int direction);
/// Rejects k = n.
FormValue exterior_covariant_derivative(const ModelSpace& space, const ConnectionField& conn, const BundleForm& psi,
                                        const ChartPoint& x);
/// Rejects k = 0.
FormValue codifferential(const ModelSpace& space, const ConnectionField& conn, const BundleForm& psi,
                         const ChartPoint& x, const Mat* frame = nullptr);
/// delta(|psi|^(p-2) psi), p > 1.
FormValue p_codifferential(const ModelSpace& space, const ConnectionField& conn, const BundleForm& psi,
                           const ChartPoint& x, double p);

/// Axis-aligned coordinate box.
struct Box {
  ChartPoint lower;
  ChartPoint upper;
};

/// |int <d psi1, psi2> - int <psi1, delta psi2>| over the box by a tensor
/// Gauss-Legendre rule with `nodes` points per axis. Both fields must vanish
/// on the box faces; a face sample above `leak_tolerance` (relative to the
/// largest interior sample) raises PreconditionError.
double adjointness_residual(const ModelSpace& space, const ConnectionField& conn, const BundleForm& psi1,
                            const BundleForm& psi2, const Box& box, int nodes = 24, double leak_tolerance = 1e-10);

void require_compatible(const ModelSpace& space, const ConnectionField& conn, const BundleForm& psi);

}  // namespace emt
