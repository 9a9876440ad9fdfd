#pragma once

// Library of analytic test fields with verified defining properties.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "emt/integrate.hpp"

namespace emt {

enum class Tag : unsigned { Closed = 1, PCoclosed = 2, PHarmonic = 4, YmhPair = 8, Inhomogeneous = 16 };

std::string tag_name(Tag t);

struct ExampleField {
  std::string name;
  std::string description;
  ModelSpace space = ModelSpace::euclidean(3);
  EnergyConfig cfg;
  std::optional<BundleForm> psi;
  ConnectionField conn = ConnectionField::trivial(3, 1);
  std::optional<YmhPair> ymh;
  unsigned tags = 0;
  std::function<bool(const ChartPoint&)> valid;
  /// Random point of the region used for tag checks.
  std::function<ChartPoint(std::mt19937_64&)> sample;
  /// Profile defaults: centre and radius range with the ball inside the valid region.
  ChartPoint center;
  double radius_min = 0.2;
  double radius_max = 2.0;
  /// Measured inhomogeneity bound (inhomogeneous fields only).
  double gamma = 0.0;

  bool has(Tag t) const { return (tags & static_cast<unsigned>(t)) != 0; }
  std::vector<std::string> tag_names() const;
};

/// Largest residuals of the tag checks over `points` sampled points.
struct TagCheck {
  double closed = 0.0;      // max |d psi|
  double coclosed = 0.0;    // max |delta(|psi|^(p-2) psi)|
  double ymh_gauge = 0.0;   // max first YMH equation residual
  double ymh_higgs = 0.0;   // max second YMH equation residual
};

inline constexpr double kTagTolerance = 1e-8;

TagCheck check_tags(const ExampleField& field, int points = 100, std::uint64_t seed = 7);

/// The immutable catalog; every tag has been verified when this returns.
const std::vector<ExampleField>& catalog();
/// Throws std::invalid_argument listing the catalog for unknown names.
const ExampleField& find_example(const std::string& name);
std::string catalog_listing();

/// Max relative deviation (|a - b| / max(1, |a|)) between supplied jets and
/// central differences of values at random valid points.
double jet_selftest(const ExampleField& field, int points = 20, double step = 1e-4, std::uint64_t seed = 11);

/// 't Hooft symbol eta^a_{mu nu}, a in [0, 3), mu, nu in [0, 4).
double thooft_eta(int a, int mu, int nu);

}  // namespace emt
