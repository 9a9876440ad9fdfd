// emt_cli: runs identity suites and radial profiles, writes CSV/JSON reports.
// Exit status: 0 all checks pass, 1 a check failed, 2 usage error,
// 3 a precondition of the computation failed.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "emt/catalog.hpp"
#include "emt/driver.hpp"

namespace {

emt::ChartPoint parse_point(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      v.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw emt::UsageError("--center expects comma-separated numbers, got '" + text + "'");
    }
  }
  emt::ChartPoint x(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) x[static_cast<int>(i)] = v[i];
  return x;
}

// "radial:angular" or "radial:lat1,...,lon".
void apply_nodes(const std::string& text, emt::QuadratureSpec& q) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw emt::UsageError("--nodes expects radial:angular or radial:n1,n2,...");
  try {
    q.radial_nodes = std::stoi(text.substr(0, colon));
    const std::string rest = text.substr(colon + 1);
    if (rest.find(',') == std::string::npos) {
      q.angular = std::stoi(rest);
      q.angle_nodes.clear();
    } else {
      q.angle_nodes.clear();
      std::stringstream ss(rest);
      std::string cell;
      while (std::getline(ss, cell, ',')) q.angle_nodes.push_back(std::stoi(cell));
    }
  } catch (const std::logic_error&) {
    throw emt::UsageError("--nodes expects integers, got '" + text + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-momentum tensor identities and monotonicity profiles"};
  std::string suite, space, kp, center, radii, nodes, config_path, out;
  std::vector<std::string> examples;
  std::uint64_t seed = 0;
  int points = 0, threads = 0;
  double lambda = 0.0, gamma = 0.0;
  bool list = false, identity = false, timing = false;

  app.add_option("--suite", suite, "pointwise: divergence, trace, contraction, metric-variation, conservation, ymhe; "
                                   "profile: profile, inhomogeneous, ymh-profile");
  app.add_option("--example", examples, "catalog example name (repeatable)");
  app.add_option("--space", space, "euclidean:N or hyperbolic:N[:kappa] for random-field suites");
  app.add_option("--kp", kp, "form degree and exponent as k:p");
  app.add_option("--center", center, "profile centre, comma-separated chart coordinates");
  app.add_option("--radii", radii, "radius grid min:max:count[:log]");
  app.add_option("--nodes", nodes, "quadrature nodes radial:angular or radial:lat...,lon");
  app.add_option("--threads", threads, "quadrature worker threads");
  app.add_option("--points", points, "sample points for pointwise suites");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--lambda", lambda, "exponential weight Lambda in the profile");
  app.add_option("--gamma", gamma, "inhomogeneity bound (default: measured)");
  app.add_flag("--identity", identity, "evaluate the monotonicity identity at every radius");
  app.add_flag("--timing", timing, "include runtimes in report.json");
  app.add_option("--out", out, "output directory for CSV tables and report.json");
  app.add_option("--config", config_path, "JSON run configuration; flags override it");
  app.add_flag("--list", list, "list the example catalog and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (list) {
      std::cout << emt::catalog_listing();
      return 0;
    }
    emt::RunConfig rc;
    if (!config_path.empty()) {
      std::ifstream is(config_path);
      if (!is) throw emt::UsageError("cannot read config file " + config_path);
      std::stringstream buf;
      buf << is.rdbuf();
      rc = emt::parse_config_json(buf.str());
    }
    if (app.count("--suite")) rc.suite = suite;
    if (app.count("--example")) rc.examples = examples;
    if (app.count("--space")) rc.space = emt::SpaceParams::parse(space);
    if (app.count("--kp")) {
      const auto colon = kp.find(':');
      if (colon == std::string::npos) throw emt::UsageError("--kp expects k:p");
      try {
        rc.k = std::stoi(kp.substr(0, colon));
        rc.p = std::stod(kp.substr(colon + 1));
      } catch (const std::logic_error&) {
        throw emt::UsageError("--kp expects k:p, got '" + kp + "'");
      }
    }
    if (app.count("--center")) rc.center = parse_point(center);
    if (app.count("--radii")) rc.radii = emt::RadiusGrid::parse(radii);
    if (app.count("--nodes")) apply_nodes(nodes, rc.quadrature);
    if (app.count("--threads")) rc.quadrature.threads = threads;
    if (app.count("--points")) rc.points = points;
    if (app.count("--seed")) rc.seed = rc.quadrature.seed = seed;
    if (app.count("--lambda")) rc.lambda = lambda;
    if (app.count("--gamma")) rc.gamma = gamma;
    if (identity) rc.identity = true;
    if (timing) rc.timing = true;
    if (app.count("--out")) rc.out = out;
    if (rc.suite.empty()) throw emt::UsageError("--suite is required (or --list)");

    const emt::Report rep = emt::run(rc);
    std::cout << emt::report_text(rep);
    return rep.passed() ? 0 : 1;
  } catch (const emt::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
