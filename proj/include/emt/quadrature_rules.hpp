#pragma once

// One-dimensional Gauss rules and the product rule on the unit sphere.

#include <cstdint>
#include <span>
#include <vector>

#include "emt/types.hpp"

namespace emt {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Gegenbauer rule for the weight (1 - t^2)^(lambda - 1/2) on [-1, 1],
/// from the symmetric Jacobi matrix (Golub-Welsch). lambda = 1/2 gives
/// Gauss-Legendre. Exact for polynomials of degree 2*count - 1.
GaussRule gauss_gegenbauer(int count, double lambda);

/// Gauss-Legendre on [a, b].
GaussRule gauss_legendre(int count, double a = -1.0, double b = 1.0);

/// Quadrature on the unit sphere S^(n-1) in R^n in hyperspherical coordinates:
/// Gauss-Gegenbauer in the cosines of the n-2 latitude angles (so each
/// sin^m factor of the surface measure is absorbed into the weight) times the
/// uniform rule in the periodic longitude.
struct SphereRule {
  std::vector<Vec> directions;
  std::vector<double> weights;
};

/// `latitude_counts` has n-2 entries; `longitude_count` nodes in the periodic
/// angle. A nonzero seed applies a deterministic random rotation.
SphereRule sphere_rule(int dim, std::span<const int> latitude_counts, int longitude_count, std::uint64_t seed = 0);

/// Random orthogonal matrix from the QR factorization of a Gaussian matrix.
Mat random_rotation(int dim, std::uint64_t seed);

/// Sum in a fixed pairwise order, independent of how terms were produced.
double pairwise_sum(std::span<const double> terms);

}  // namespace emt
