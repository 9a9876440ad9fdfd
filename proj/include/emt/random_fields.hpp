#pragma once

// Seeded random polynomial fields for property checks.

#include <cstdint>
#include <random>

#include "emt/stress.hpp"
#include "emt/ymh.hpp"

namespace emt {

/// Centre of the sampling region: the origin, or (0, ..., 0, 1) on the half space.
ChartPoint sampling_center(const ModelSpace& space);
/// Uniform in the box of half-width `half` about sampling_center (last
/// coordinate in [0.5, 2] on the half space).
ChartPoint random_point(const ModelSpace& space, std::mt19937_64& rng, double half = 1.0);

/// Components are quadratic polynomials in x - sampling_center with
/// coefficients uniform in [-1, 1] (quadratic part scaled by 0.3).
BundleForm random_polynomial_form(const ModelSpace& space, int degree, int rank, std::uint64_t seed);
/// Skew A_i(x), affine in x.
ConnectionField random_connection(const ModelSpace& space, int rank, std::uint64_t seed);
SymTensorField random_sym_tensor(const ModelSpace& space, std::uint64_t seed);
VectorField random_vector_field(const ModelSpace& space, std::uint64_t seed);
/// Symmetric perturbation with |h|_g <= 1 in the orthonormal frame.
Mat random_metric_perturbation(const ModelSpace& space, const ChartPoint& x, std::mt19937_64& rng);

/// so(3) potential and Higgs field with polynomial components, quartic W.
YmhPair random_ymh_pair(const ModelSpace& space, std::uint64_t seed);

}  // namespace emt
