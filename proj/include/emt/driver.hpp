#pragma once

// Batch driver behind the command-line tool: pointwise identity suites and
// radial profile runs over catalog or random fields.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "emt/report.hpp"

namespace emt {

/// Bad flags, unknown names, or a configuration outside the standing
/// assumption. The CLI maps this to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RadiusGrid {
  double min = 0.2;
  double max = 2.0;
  int count = 20;
  bool log = false;

  /// "min:max:count" or "min:max:count:log".
  static RadiusGrid parse(const std::string& text);
  std::vector<double> values() const;
};

struct SpaceParams {
  SpaceKind kind = SpaceKind::Euclidean;
  int dim = 4;
  double kappa = 1.0;

  /// "euclidean:N" or "hyperbolic:N[:kappa]".
  static SpaceParams parse(const std::string& text);
  ModelSpace make() const;
};

struct RunConfig {
  std::string suite;
  std::vector<std::string> examples;  // empty: random fields on `space`
  SpaceParams space;
  int k = 1;
  double p = 3.0;
  std::optional<ChartPoint> center;   // profile centre, default from the example
  std::optional<RadiusGrid> radii;    // default from the example
  QuadratureSpec quadrature;
  int points = 100;
  std::uint64_t seed = 1;
  double lambda = 0.0;
  std::optional<double> gamma;        // inhomogeneity bound, default measured
  bool identity = false;              // evaluate the monotonicity identity at every radius
  bool timing = false;                // runtimes in the JSON summary
  std::string out;                    // output directory, empty for none
};

/// Names accepted by `suite`.
const std::vector<std::string>& pointwise_suites();
const std::vector<std::string>& profile_suites();
bool is_profile_suite(const std::string& suite);

/// Parses a JSON document mirroring RunConfig (see docs/formats.md).
RunConfig parse_config_json(const std::string& text);
std::string config_json(const RunConfig& cfg);

/// Rejects unknown suites/examples (with the catalog listing), invalid
/// grids and n <= kp (n <= 4 for YMH profiles).
void validate(const RunConfig& cfg);

Report run_pointwise(const RunConfig& cfg);
/// Also writes <out>/<example>-<suite>.csv when `out` is set.
Report run_profile(const RunConfig& cfg);
/// Dispatches on the suite; writes <out>/report.json when `out` is set.
Report run(const RunConfig& cfg);

}  // namespace emt
