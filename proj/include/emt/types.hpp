#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "emt/jet.hpp"

namespace emt {

// Fixed-capacity Eigen types: no heap traffic in per-point kernels.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

/// Coordinates of a point in the chart of a model space.
using ChartPoint = Vec;

std::string format_point(const ChartPoint& x);

/// A chart point outside the coordinate domain (for instance y <= 0 in the
/// upper half-space).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Quantity undefined at the base point of a distance function.
class DegeneratePointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// |psi|^(p-2) with p < 2 evaluated where psi vanishes.
class SingularWeightError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Degree, rank or dimension mismatch between arguments.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition was found violated at a concrete point.
class PreconditionError : public std::runtime_error {
 public:
  PreconditionError(const std::string& what, ChartPoint witness, double value)
      : std::runtime_error(what + " at " + format_point(witness)),
        witness_(std::move(witness)),
        value_(value) {}
  const ChartPoint& witness() const { return witness_; }
  double value() const { return value_; }

 private:
  ChartPoint witness_;
  double value_;
};

/// Coordinate variables as jets: x_i with unit gradient e_i.
inline std::vector<Jet> coordinate_jets(const ChartPoint& x) {
  std::vector<Jet> out;
  out.reserve(static_cast<std::size_t>(x.size()));
  for (int i = 0; i < x.size(); ++i) out.push_back(Jet::variable(static_cast<int>(x.size()), i, x[i]));
  return out;
}

}  // namespace emt
