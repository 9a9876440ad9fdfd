#include "emt/quadrature_rules.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace emt {

GaussRule gauss_gegenbauer(int count, double lambda) {
  if (count < 1) throw std::invalid_argument("Gauss rule needs at least one node");
  if (!(lambda > 0.0)) throw std::invalid_argument("Gegenbauer parameter must be positive");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(count, count);
  for (int j = 1; j < count; ++j) {
    const double b = std::sqrt(j * (j + 2.0 * lambda - 1.0) / (4.0 * (j + lambda) * (j + lambda - 1.0)));
    jacobi(j, j - 1) = b;
    jacobi(j - 1, j) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  const double mu0 = std::sqrt(std::numbers::pi) * std::tgamma(lambda + 0.5) / std::tgamma(lambda + 1.0);
  GaussRule rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  for (int i = 0; i < count; ++i) {
    rule.nodes[i] = eig.eigenvalues()[i];
    const double v = eig.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v * v;
  }
  // Symmetrize: the weight is even, so nodes come in +/- pairs.
  for (int i = 0; i < count / 2; ++i) {
    const int j = count - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    rule.weights[i] = rule.weights[j] = w;
  }
  if (count % 2 == 1) rule.nodes[count / 2] = 0.0;
  return rule;
}

GaussRule gauss_legendre(int count, double a, double b) {
  GaussRule rule = gauss_gegenbauer(count, 0.5);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < count; ++i) {
    rule.nodes[i] = a + half * (rule.nodes[i] + 1.0);
    rule.weights[i] *= half;
  }
  return rule;
}

Mat random_rotation(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  // Fix the sign ambiguity of QR so the distribution is Haar.
  for (int j = 0; j < dim; ++j)
    if (qr.matrixQR()(j, j) < 0.0) q.col(j) *= -1.0;
  return q;
}

SphereRule sphere_rule(int dim, std::span<const int> latitude_counts, int longitude_count, std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("sphere rule needs dimension >= 2");
  if (static_cast<int>(latitude_counts.size()) != dim - 2)
    throw std::invalid_argument("sphere rule needs one latitude count per polar angle");
  if (longitude_count < 1) throw std::invalid_argument("sphere rule needs longitude nodes");

  // Polar angle j (0-based) carries sin^(dim-2-j); with t = cos(theta) the
  // measure becomes (1-t^2)^((m-1)/2) dt, a Gegenbauer weight with lambda = m/2.
  std::vector<GaussRule> lat;
  for (int j = 0; j < dim - 2; ++j) lat.push_back(gauss_gegenbauer(latitude_counts[j], 0.5 * (dim - 2 - j)));

  SphereRule rule;
  std::vector<int> idx(dim - 2, 0);
  const double dphi = 2.0 * std::numbers::pi / longitude_count;
  while (true) {
    double w = dphi;
    Vec prefix(dim);
    double sin_product = 1.0;
    for (int j = 0; j < dim - 2; ++j) {
      const double t = lat[j].nodes[idx[j]];
      w *= lat[j].weights[idx[j]];
      prefix[j] = sin_product * t;
      sin_product *= std::sqrt(std::max(0.0, 1.0 - t * t));
    }
    for (int q = 0; q < longitude_count; ++q) {
      const double phi = (q + 0.5) * dphi;
      Vec d = prefix;
      d[dim - 2] = sin_product * std::cos(phi);
      d[dim - 1] = sin_product * std::sin(phi);
      rule.directions.push_back(d);
      rule.weights.push_back(w);
    }
    int j = 0;
    while (j < dim - 2 && ++idx[j] == latitude_counts[j]) idx[j++] = 0;
    if (j == dim - 2) break;
  }
  if (seed != 0) {
    const Mat q = random_rotation(dim, seed);
    for (auto& d : rule.directions) d = q * d;
  }
  return rule;
}

double pairwise_sum(std::span<const double> terms) {
  if (terms.size() <= 8) {
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
  }
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

}  // namespace emt
