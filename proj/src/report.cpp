#include "emt/report.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace emt {

CheckRecord& Report::add(const std::string& name, double max_residual, double tolerance, double runtime) {
  records.push_back({name, max_residual, tolerance, std::isfinite(max_residual) && max_residual <= tolerance, runtime});
  return records.back();
}

bool Report::passed() const {
  for (const auto& r : records)
    if (!r.pass) return false;
  for (const auto& t : profiles)
    if (!t.profile.violations.empty()) return false;
  return true;
}

namespace {

const char* const kColumns[] = {"R",        "raw_energy",   "theta",        "boundary_term", "bulk_term",
                                "identity_lhs", "identity_rhs", "residual", "combined"};

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class P>
auto* column(P& p, int c) {
  switch (c) {
    case 0: return &p.radii;
    case 1: return &p.raw_energy;
    case 2: return &p.theta;
    case 3: return &p.boundary_term;
    case 4: return &p.bulk_term;
    case 5: return &p.identity_lhs;
    case 6: return &p.identity_rhs;
    case 7: return &p.residual;
    default: return &p.combined;
  }
}

// JSON cannot hold NaN; those become null.
nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

void write_profile_csv(std::ostream& os, const RadialProfile& profile) {
  const int ncols = profile.combined.empty() ? 8 : 9;
  for (int c = 0; c < ncols; ++c) os << (c ? "," : "") << kColumns[c];
  os << "\n";
  for (std::size_t i = 0; i < profile.radii.size(); ++i) {
    for (int c = 0; c < ncols; ++c) {
      const auto& col = *column(profile, c);
      os << (c ? "," : "") << number(i < col.size() ? col[i] : std::nan(""));
    }
    os << "\n";
  }
}

RadialProfile read_profile_csv(std::istream& is) {
  RadialProfile p;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("profile csv: empty input");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  if (header.size() != 8 && header.size() != 9) throw std::runtime_error("profile csv: unexpected column count");
  for (std::size_t c = 0; c < header.size(); ++c)
    if (header[c] != kColumns[c]) throw std::runtime_error("profile csv: unexpected column '" + header[c] + "'");
  int row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t c = 0;
    for (; std::getline(ss, cell, ','); ++c) {
      if (c >= header.size()) throw std::runtime_error("profile csv: too many cells on row " + std::to_string(row));
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0')
        throw std::runtime_error("profile csv: bad number '" + cell + "' on row " + std::to_string(row));
      column(p, static_cast<int>(c))->push_back(v);
    }
    if (c != header.size()) throw std::runtime_error("profile csv: short row " + std::to_string(row));
  }
  p.violations = monotone_violations(p.monotone_quantity());
  return p;
}

std::string report_json(const Report& report, bool with_runtime) {
  using nlohmann::json;
  json j;
  j["suite"] = report.suite;
  j["pass"] = report.passed();
  json records = json::array();
  for (const auto& r : report.records) {
    json e = {{"name", r.name},
              {"max_residual", finite_or_null(r.max_residual)},
              {"tolerance", r.tolerance},
              {"pass", r.pass}};
    if (with_runtime) e["runtime"] = r.runtime;
    records.push_back(e);
  }
  j["records"] = records;
  json profiles = json::array();
  for (const auto& t : report.profiles) {
    json v = json::array();
    for (const auto& [a, b] : t.profile.violations) v.push_back({a, b});
    json inc = json::array();
    for (int i : t.profile.inconclusive_radii) inc.push_back(t.profile.radii[i]);
    json e = {{"name", t.name},
              {"radii", t.profile.radii.size()},
              {"inconclusive_radii", inc},
              {"violations", v},
              {"inconclusive", t.profile.inconclusive},
              {"max_identity_residual", finite_or_null(t.profile.max_residual())}};
    if (!t.csv_path.empty()) e["csv"] = t.csv_path;
    profiles.push_back(e);
  }
  j["profiles"] = profiles;
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

std::string report_text(const Report& report) {
  std::ostringstream os;
  char buf[256];
  for (const auto& r : report.records) {
    std::snprintf(buf, sizeof buf, "%-4s %-48s residual %.3e  tol %.1e\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                  r.max_residual, r.tolerance);
    os << buf;
  }
  for (const auto& t : report.profiles) {
    std::snprintf(buf, sizeof buf, "%-4s %-48s %zu radii, %zu violations%s\n",
                  t.profile.violations.empty() ? "PASS" : "FAIL", ("monotone " + t.name).c_str(),
                  t.profile.radii.size(), t.profile.violations.size(), t.profile.inconclusive ? " (inconclusive)" : "");
    os << buf;
  }
  for (const auto& w : report.warnings) os << "WARN " << w << "\n";
  os << (report.passed() ? "overall PASS" : "overall FAIL") << "\n";
  return os.str();
}

}  // namespace emt
