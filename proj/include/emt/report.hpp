#pragma once

// Check records, profile tables and their CSV / JSON serializations.

#include <iosfwd>
#include <string>
#include <vector>

#include "emt/integrate.hpp"

namespace emt {

struct CheckRecord {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double runtime = 0.0;  // seconds
};

struct ProfileTable {
  std::string name;
  std::string csv_path;  // empty when not written
  RadialProfile profile;
};

struct Report {
  std::string suite;
  std::vector<CheckRecord> records;
  std::vector<ProfileTable> profiles;
  std::vector<std::string> warnings;

  /// Adds a record; pass iff the residual is finite and <= tolerance.
  CheckRecord& add(const std::string& name, double max_residual, double tolerance, double runtime = 0.0);
  bool passed() const;
};

/// Header R,raw_energy,theta,boundary_term,bulk_term,identity_lhs,identity_rhs,residual
/// (plus combined when present); values printed with 17 significant digits.
void write_profile_csv(std::ostream& os, const RadialProfile& profile);
/// Inverse of write_profile_csv. Throws std::runtime_error on malformed input.
RadialProfile read_profile_csv(std::istream& is);

/// Deterministic JSON summary; runtimes only when `with_runtime`.
std::string report_json(const Report& report, bool with_runtime = false);
/// One human-readable line per record.
std::string report_text(const Report& report);

}  // namespace emt
