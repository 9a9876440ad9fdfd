#include "emt/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "emt/catalog.hpp"
#include "emt/random_fields.hpp"
#include "json.hpp"

namespace emt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad number '" + s + "' in " + what);
  }
}

int parse_int(const std::string& s, const std::string& what) {
  const double v = parse_double(s, what);
  if (v != std::floor(v)) throw UsageError("expected an integer, got '" + s + "' in " + what);
  return static_cast<int>(v);
}

double relative_gap(double norm_gap, double a, double b) { return norm_gap / std::max({a, b, 1.0}); }

std::string space_label(const ModelSpace& s) { return s.describe(); }

// Field under test at one sample: either a catalog entry or a seeded random field.
struct FormCase {
  EnergyConfig cfg;
  ModelSpace space;
  ConnectionField conn;
  BundleForm psi;
};

FormCase random_form_case(const RunConfig& rc, std::uint64_t seed) {
  const ModelSpace space = rc.space.make();
  const int rank = 2;
  return {EnergyConfig{rc.p, rc.k, space.dim()}, space, random_connection(space, rank, seed ^ 0x9e3779b97f4a7c15ULL),
          random_polynomial_form(space, rc.k, rank, seed)};
}

struct Sampler {
  const ExampleField* example = nullptr;
  ModelSpace space;
  std::mt19937_64 rng;

  ChartPoint next() {
    if (!example) return random_point(space, rng);
    for (int attempt = 0; attempt < 1000; ++attempt) {
      ChartPoint x = example->sample(rng);
      if (example->valid(x)) return x;
    }
    throw std::runtime_error("no valid sample point for example '" + example->name + "'");
  }
};

std::vector<const ExampleField*> selected_examples(const RunConfig& rc) {
  std::vector<const ExampleField*> out;
  for (const auto& name : rc.examples) {
    try {
      out.push_back(&find_example(name));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

class Accumulator {
 public:
  void add(double v) { worst_ = std::isnan(v) ? v : (std::isnan(worst_) ? worst_ : std::max(worst_, v)); }
  double value() const { return worst_; }

 private:
  double worst_ = 0.0;
};

double flat_or_curved(const ModelSpace& s, double flat, double curved) { return s.is_hyperbolic() ? curved : flat; }

// ---- pointwise suites -----------------------------------------------------

void suite_divergence(const RunConfig& rc, Report& rep) {
  auto run_forms = [&](const ExampleField* ex) {
    const auto t0 = Clock::now();
    const ModelSpace space = ex ? ex->space : rc.space.make();
    Sampler smp{ex, space, std::mt19937_64(rc.seed)};
    Accumulator acc;
    for (int i = 0; i < rc.points; ++i) {
      const ChartPoint x = smp.next();
      if (ex && ex->ymh) {
        const DivergenceRoutes d = ymh_div_stress(*ex->ymh, x);
        const Vec gap = d.direct - d.identity;
        acc.add(relative_gap(covector_norm(space, x, gap), covector_norm(space, x, d.direct),
                             covector_norm(space, x, d.identity)));
        continue;
      }
      const FormCase fc = ex ? FormCase{ex->cfg, ex->space, ex->conn, *ex->psi} : random_form_case(rc, rc.seed * 7919 + i);
      const Vec a = div_stress_direct(fc.cfg, fc.space, fc.psi, x);
      const Vec b = div_stress_identity(fc.cfg, fc.space, fc.conn, fc.psi, x);
      acc.add(relative_gap(covector_norm(space, x, a - b), covector_norm(space, x, a), covector_norm(space, x, b)));
    }
    const std::string label = "divergence routes " + (ex ? ex->name : "random on " + space_label(space));
    rep.add(label, acc.value(), flat_or_curved(space, 1e-7, 1e-6), seconds_since(t0));
  };
  if (rc.examples.empty()) run_forms(nullptr);
  for (const auto* ex : selected_examples(rc)) run_forms(ex);
}

double form_trace_defect(const FormCase& fc, const ChartPoint& x) {
  const double e = energy_density(fc.cfg, fc.space, fc.psi, x);
  const Mat T = stress_tensor(fc.cfg, fc.space, fc.psi, x);
  return std::abs(metric_trace(fc.space, x, T) - (fc.cfg.k * fc.cfg.p - fc.cfg.n) * e) / std::max(1.0, std::abs(e));
}

double ymh_trace_defect(const YmhPair& pair, const ChartPoint& x) {
  const YmhPoint pt = ymh_point(pair, x);
  const double e = ymh_density_jet(pair, pt).value();
  const double du2 = squared_norm(pt.geo, pt.du).value();
  const double w = pair.W.w(pt.u2.value());
  const Mat T = ymh_stress_jet(pair, pt).values();
  const int n = pair.space.dim();
  return std::abs(metric_trace(pair.space, x, T) - ((4 - n) * e - (du2 + 4.0 * w))) / std::max(1.0, std::abs(e));
}

void suite_trace(const RunConfig& rc, Report& rep) {
  auto run_one = [&](const ExampleField* ex) {
    const auto t0 = Clock::now();
    const ModelSpace space = ex ? ex->space : rc.space.make();
    Sampler smp{ex, space, std::mt19937_64(rc.seed)};
    Accumulator acc;
    for (int i = 0; i < rc.points; ++i) {
      const ChartPoint x = smp.next();
      if (ex && ex->ymh) {
        acc.add(ymh_trace_defect(*ex->ymh, x));
        continue;
      }
      const FormCase fc = ex ? FormCase{ex->cfg, ex->space, ex->conn, *ex->psi} : random_form_case(rc, rc.seed * 7919 + i);
      acc.add(form_trace_defect(fc, x));
    }
    rep.add("trace identity " + (ex ? ex->name : "random on " + space_label(space)), acc.value(), 1e-12,
            seconds_since(t0));
  };
  if (rc.examples.empty()) run_one(nullptr);
  for (const auto* ex : selected_examples(rc)) run_one(ex);
}

void suite_contraction(const RunConfig& rc, Report& rep) {
  std::vector<ModelSpace> spaces;
  if (rc.examples.empty()) spaces.push_back(rc.space.make());
  for (const auto* ex : selected_examples(rc)) spaces.push_back(ex->space);
  for (const auto& space : spaces) {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(rc.seed);
    Accumulator acc;
    for (int i = 0; i < rc.points; ++i) {
      const ChartPoint x = random_point(space, rng);
      const std::uint64_t s = rc.seed * 7919 + i;
      acc.add(contraction_divergence_residual(space, random_sym_tensor(space, s), random_vector_field(space, s + 1), x));
    }
    rep.add("contraction rule on " + space_label(space), acc.value(), flat_or_curved(space, 1e-10, 1e-8),
            seconds_since(t0));
  }
}

void suite_metric_variation(const RunConfig& rc, Report& rep) {
  auto run_one = [&](const ExampleField* ex) {
    if (ex && !ex->psi) return;
    const auto t0 = Clock::now();
    const ModelSpace space = ex ? ex->space : rc.space.make();
    Sampler smp{ex, space, std::mt19937_64(rc.seed)};
    std::mt19937_64 hrng(rc.seed + 17);
    Accumulator acc;
    for (int i = 0; i < rc.points; ++i) {
      const ChartPoint x = smp.next();
      const FormCase fc = ex ? FormCase{ex->cfg, ex->space, ex->conn, *ex->psi} : random_form_case(rc, rc.seed * 7919 + i);
      acc.add(metric_variation_residual(fc.cfg, fc.space, fc.psi, x, random_metric_perturbation(space, x, hrng)));
    }
    rep.add("metric variation " + (ex ? ex->name : "random on " + space_label(space)), acc.value(), 1e-6,
            seconds_since(t0));
  };
  if (rc.examples.empty()) run_one(nullptr);
  for (const auto* ex : selected_examples(rc)) run_one(ex);
}

void suite_conservation(const RunConfig& rc, Report& rep) {
  std::vector<const ExampleField*> fields = selected_examples(rc);
  if (fields.empty())
    for (const auto& f : catalog())
      if (f.has(Tag::PHarmonic) || f.has(Tag::YmhPair)) fields.push_back(&f);
  for (const auto* ex : fields) {
    if (!ex->has(Tag::PHarmonic) && !ex->has(Tag::YmhPair))
      throw UsageError("conservation needs a p-harmonic or ymh-pair example; '" + ex->name + "' is neither");
    const auto t0 = Clock::now();
    Sampler smp{ex, ex->space, std::mt19937_64(rc.seed)};
    Accumulator forms, ymh;
    for (int i = 0; i < rc.points; ++i) {
      const ChartPoint x = smp.next();
      if (ex->has(Tag::PHarmonic)) forms.add(covector_norm(ex->space, x, div_stress_direct(ex->cfg, ex->space, *ex->psi, x)));
      if (ex->has(Tag::YmhPair)) ymh.add(covector_norm(ex->space, x, ymh_div_stress(*ex->ymh, x).direct));
    }
    if (ex->has(Tag::PHarmonic)) rep.add("conservation " + ex->name, forms.value(), 1e-8, seconds_since(t0));
    if (ex->has(Tag::YmhPair)) rep.add("ymh conservation " + ex->name, ymh.value(), 1e-10, seconds_since(t0));
  }
}

double odot_adjointness_defect(const LieAlgebraAction& action, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int dg = action.algebra.dim, dv = action.dim_v;
  const int n = 3, l = 1;
  Vec e1(dv);
  for (int i = 0; i < dv; ++i) e1[i] = u(rng);
  FormValue e2(n, l, dv), X(n, l, dg);
  for (auto& c : e2.comps) c = u(rng);
  for (auto& c : X.comps) c = u(rng);
  // <X, e1 (.) e2> against <X . e1, e2>, summed over multi-indices.
  const FormValue lhs_form = odot(action, e1, e2);
  double lhs = 0.0, rhs = 0.0;
  for (int pos = 0; pos < X.count(); ++pos) {
    Vec xe1 = Vec::Zero(dv);
    for (int a = 0; a < dg; ++a) {
      lhs += X.at(a, pos) * lhs_form.at(a, pos);
      xe1 += X.at(a, pos) * (action.rho[a] * e1);
    }
    for (int v = 0; v < dv; ++v) rhs += xe1[v] * e2.at(v, pos);
  }
  return std::abs(lhs - rhs);
}

void suite_ymhe(const RunConfig& rc, Report& rep) {
  const auto fields = selected_examples(rc);
  for (const auto* ex : fields) {
    if (!ex->ymh) throw UsageError("ymhe needs an example with Yang-Mills-Higgs data; '" + ex->name + "' has none");
    const auto t0 = Clock::now();
    Sampler smp{ex, ex->space, std::mt19937_64(rc.seed)};
    Accumulator gauge, higgs;
    for (int i = 0; i < rc.points; ++i) {
      const YmheResidual r = ymhe_residual(*ex->ymh, smp.next());
      gauge.add(r.gauge);
      higgs.add(r.higgs);
    }
    rep.add("ymhe gauge equation " + ex->name, gauge.value(), 1e-8, seconds_since(t0));
    rep.add("ymhe higgs equation " + ex->name, higgs.value(), 1e-8, seconds_since(t0));
  }
  if (!fields.empty()) return;

  // Random non-solutions: structural identities only.
  const ModelSpace space = rc.space.make();
  std::mt19937_64 rng(rc.seed);
  Accumulator adj, trace, routes, reduction;
  const auto t0 = Clock::now();
  for (int i = 0; i < rc.points; ++i) {
    const std::uint64_t s = rc.seed * 7919 + i;
    const ChartPoint x = random_point(space, rng);
    const YmhPair pair = random_ymh_pair(space, s);
    adj.add(odot_adjointness_defect(pair.action, rng));
    trace.add(ymh_trace_defect(pair, x));
    const DivergenceRoutes d = ymh_div_stress(pair, x);
    routes.add(relative_gap(covector_norm(space, x, d.direct - d.identity), covector_norm(space, x, d.direct),
                            covector_norm(space, x, d.identity)));
    // u = 0: div of the YMH tensor is the k = 2, p = 2 form divergence of F.
    const YmhPair bare = make_ymh_pair(pair.action, pair.A, BundleForm::zero(space, 0, 3), pair.W);
    const Vec a = ymh_div_stress(bare, x).direct;
    const Vec b = div_stress_identity(EnergyConfig{2.0, 2, space.dim()}, space, bare.A.adjoint_connection(), bare.F, x);
    reduction.add(relative_gap(covector_norm(space, x, a - b), covector_norm(space, x, a), covector_norm(space, x, b)));
  }
  const double dt = seconds_since(t0);
  rep.add("odot adjointness", adj.value(), 1e-13, dt);
  rep.add("ymh trace identity random on " + space_label(space), trace.value(), 1e-12, dt);
  rep.add("ymh divergence routes random on " + space_label(space), routes.value(), 1e-6, dt);
  rep.add("ymh zero-higgs reduction to form stress", reduction.value(), 1e-8, dt);
}

// ---- profile suites ---------------------------------------------------------

std::vector<double> grid_for(const RunConfig& rc, const ExampleField& ex) {
  if (rc.radii) return rc.radii->values();
  return RadiusGrid{ex.radius_min, ex.radius_max, 20, false}.values();
}

void finish_profile(const RunConfig& rc, Report& rep, const std::string& name, RadialProfile profile,
                    Clock::time_point t0) {
  double negative = 0.0;
  for (double t : profile.theta) negative = std::max(negative, -t);
  rep.add("nonnegative theta " + name, negative, 0.0, seconds_since(t0));
  if (std::any_of(profile.residual.begin(), profile.residual.end(), [](double r) { return std::isfinite(r); }))
    rep.add("identity residual " + name, profile.max_conclusive_residual(), 1e-2, seconds_since(t0));
  for (int i : profile.inconclusive_radii) {
    std::ostringstream os;
    os << name << ": identity inconclusive at R = " << profile.radii[i] << " (quadrature error too large, residual "
       << profile.residual[i] << ")";
    rep.warnings.push_back(os.str());
  }
  ProfileTable table{name, "", std::move(profile)};
  if (!rc.out.empty()) {
    std::filesystem::create_directories(rc.out);
    const std::filesystem::path path = std::filesystem::path(rc.out) / (name + ".csv");
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    write_profile_csv(os, table.profile);
    table.csv_path = path.string();
  }
  rep.profiles.push_back(std::move(table));
}

ChartPoint center_for(const RunConfig& rc, const ExampleField& ex) {
  if (!rc.center) return ex.center;
  if (rc.center->size() != ex.space.dim())
    throw UsageError("centre has " + std::to_string(rc.center->size()) + " coordinates; '" + ex.name + "' lives on " +
                     ex.space.describe());
  return *rc.center;
}

void suite_profile(const RunConfig& rc, Report& rep) {
  for (const auto* ex : selected_examples(rc)) {
    if (!ex->psi) continue;
    const auto t0 = Clock::now();
    RadialProfile prof = theta_profile(ex->cfg, ex->space, ex->conn, *ex->psi, center_for(rc, *ex), grid_for(rc, *ex),
                                       rc.lambda, rc.quadrature, rc.identity);
    finish_profile(rc, rep, ex->name + "-profile", std::move(prof), t0);
  }
}

void suite_inhomogeneous(const RunConfig& rc, Report& rep) {
  for (const auto* ex : selected_examples(rc)) {
    if (!ex->psi) continue;
    const auto t0 = Clock::now();
    const ChartPoint x0 = center_for(rc, *ex);
    const std::vector<double> radii = grid_for(rc, *ex);
    double gamma = ex->gamma;
    if (rc.gamma) {
      gamma = *rc.gamma;
    } else if (!ex->has(Tag::Inhomogeneous)) {
      gamma = 1.05 * sample_inhomogeneity(ex->cfg, ex->space, ex->conn, *ex->psi, x0, radii.back(), rc.quadrature).first;
    }
    RadialProfile prof =
        inhomogeneous_profile(ex->cfg, ex->space, ex->conn, *ex->psi, x0, radii, gamma, rc.lambda, rc.quadrature);
    finish_profile(rc, rep, ex->name + "-inhomogeneous", std::move(prof), t0);
  }
}

void suite_ymh_profile(const RunConfig& rc, Report& rep) {
  for (const auto* ex : selected_examples(rc)) {
    if (!ex->ymh) throw UsageError("ymh-profile needs an example with Yang-Mills-Higgs data; '" + ex->name + "' has none");
    const auto t0 = Clock::now();
    RadialProfile prof =
        ymh_identity_and_profile(*ex->ymh, center_for(rc, *ex), grid_for(rc, *ex), rc.lambda, rc.quadrature);
    finish_profile(rc, rep, ex->name + "-ymh-profile", std::move(prof), t0);
  }
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

}  // namespace

RadiusGrid RadiusGrid::parse(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3 && parts.size() != 4) throw UsageError("--radii expects min:max:count[:log], got '" + text + "'");
  RadiusGrid g;
  g.min = parse_double(parts[0], "--radii");
  g.max = parse_double(parts[1], "--radii");
  g.count = parse_int(parts[2], "--radii");
  if (parts.size() == 4) {
    if (parts[3] != "log" && parts[3] != "linear") throw UsageError("--radii spacing must be 'log' or 'linear'");
    g.log = parts[3] == "log";
  }
  g.values();  // range check
  return g;
}

std::vector<double> RadiusGrid::values() const {
  if (!(min > 0.0) || !(max > min) || count < 2)
    throw UsageError("radius grid needs 0 < min < max and count >= 2");
  std::vector<double> r(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    r[i] = log ? min * std::pow(max / min, t) : min + (max - min) * t;
  }
  r.back() = max;
  return r;
}

SpaceParams SpaceParams::parse(const std::string& text) {
  const auto parts = split(text, ':');
  SpaceParams s;
  if (parts.empty()) throw UsageError("--space expects euclidean:N or hyperbolic:N[:kappa]");
  if (parts[0] == "euclidean" && parts.size() == 2) {
    s.kind = SpaceKind::Euclidean;
  } else if (parts[0] == "hyperbolic" && (parts.size() == 2 || parts.size() == 3)) {
    s.kind = SpaceKind::Hyperbolic;
    if (parts.size() == 3) s.kappa = parse_double(parts[2], "--space");
  } else {
    throw UsageError("--space expects euclidean:N or hyperbolic:N[:kappa], got '" + text + "'");
  }
  s.dim = parse_int(parts[1], "--space");
  return s;
}

ModelSpace SpaceParams::make() const {
  try {
    return kind == SpaceKind::Hyperbolic ? ModelSpace::hyperbolic(dim, kappa) : ModelSpace::euclidean(dim);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

const std::vector<std::string>& pointwise_suites() {
  static const std::vector<std::string> names = {"divergence",       "trace",        "contraction",
                                                 "metric-variation", "conservation", "ymhe"};
  return names;
}

const std::vector<std::string>& profile_suites() {
  static const std::vector<std::string> names = {"profile", "inhomogeneous", "ymh-profile"};
  return names;
}

bool is_profile_suite(const std::string& suite) {
  const auto& p = profile_suites();
  return std::find(p.begin(), p.end(), suite) != p.end();
}

RunConfig parse_config_json(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config: expected a JSON object");
  static const std::vector<std::string> known = {"suite",  "examples", "space",    "k",       "p",
                                                 "center", "radii",    "quadrature", "points", "seed",
                                                 "lambda", "gamma",    "identity", "timing",  "out"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end()) throw UsageError("config: unknown key '" + key + "'");
  }
  RunConfig rc;
  try {
    rc.suite = j.value("suite", rc.suite);
    if (j.contains("examples")) {
      if (j["examples"].is_string())
        rc.examples = {j["examples"].get<std::string>()};
      else
        rc.examples = j["examples"].get<std::vector<std::string>>();
    }
    if (j.contains("space")) {
      const json& s = j["space"];
      if (s.is_string()) {
        rc.space = SpaceParams::parse(s.get<std::string>());
      } else {
        const std::string kind = s.value("kind", std::string("euclidean"));
        if (kind != "euclidean" && kind != "hyperbolic") throw UsageError("config: space.kind must be euclidean or hyperbolic");
        rc.space.kind = kind == "hyperbolic" ? SpaceKind::Hyperbolic : SpaceKind::Euclidean;
        rc.space.dim = s.value("dim", rc.space.dim);
        rc.space.kappa = s.value("kappa", rc.space.kappa);
      }
    }
    rc.k = j.value("k", rc.k);
    rc.p = j.value("p", rc.p);
    if (j.contains("center")) {
      const auto c = j["center"].get<std::vector<double>>();
      rc.center = ChartPoint(static_cast<int>(c.size()));
      for (std::size_t i = 0; i < c.size(); ++i) (*rc.center)[static_cast<int>(i)] = c[i];
    }
    if (j.contains("radii")) {
      const json& r = j["radii"];
      if (r.is_string()) {
        rc.radii = RadiusGrid::parse(r.get<std::string>());
      } else {
        RadiusGrid g;
        g.min = r.value("min", g.min);
        g.max = r.value("max", g.max);
        g.count = r.value("count", g.count);
        g.log = r.value("log", g.log);
        rc.radii = g;
      }
    }
    if (j.contains("quadrature")) {
      const json& q = j["quadrature"];
      rc.quadrature.radial_nodes = q.value("radial_nodes", rc.quadrature.radial_nodes);
      rc.quadrature.angular = q.value("angular", rc.quadrature.angular);
      rc.quadrature.angle_nodes = q.value("angle_nodes", rc.quadrature.angle_nodes);
      rc.quadrature.threads = q.value("threads", rc.quadrature.threads);
      rc.quadrature.error_estimate = q.value("error_estimate", rc.quadrature.error_estimate);
    }
    rc.points = j.value("points", rc.points);
    rc.seed = j.value("seed", rc.seed);
    rc.quadrature.seed = rc.seed;
    rc.lambda = j.value("lambda", rc.lambda);
    if (j.contains("gamma") && !j["gamma"].is_null()) rc.gamma = j["gamma"].get<double>();
    rc.identity = j.value("identity", rc.identity);
    rc.timing = j.value("timing", rc.timing);
    rc.out = j.value("out", rc.out);
  } catch (const json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  return rc;
}

std::string config_json(const RunConfig& rc) {
  using nlohmann::json;
  json j;
  j["suite"] = rc.suite;
  j["examples"] = rc.examples;
  j["space"] = {{"kind", rc.space.kind == SpaceKind::Hyperbolic ? "hyperbolic" : "euclidean"},
                {"dim", rc.space.dim},
                {"kappa", rc.space.kappa}};
  j["k"] = rc.k;
  j["p"] = rc.p;
  if (rc.center) j["center"] = std::vector<double>(rc.center->data(), rc.center->data() + rc.center->size());
  if (rc.radii) j["radii"] = {{"min", rc.radii->min}, {"max", rc.radii->max}, {"count", rc.radii->count}, {"log", rc.radii->log}};
  j["quadrature"] = {{"radial_nodes", rc.quadrature.radial_nodes},
                     {"angular", rc.quadrature.angular},
                     {"angle_nodes", rc.quadrature.angle_nodes},
                     {"threads", rc.quadrature.threads},
                     {"error_estimate", rc.quadrature.error_estimate}};
  j["points"] = rc.points;
  j["seed"] = rc.seed;
  j["lambda"] = rc.lambda;
  j["gamma"] = rc.gamma ? json(*rc.gamma) : json(nullptr);
  j["identity"] = rc.identity;
  j["timing"] = rc.timing;
  j["out"] = rc.out;
  return j.dump(2) + "\n";
}

void validate(const RunConfig& rc) {
  const auto& pw = pointwise_suites();
  if (std::find(pw.begin(), pw.end(), rc.suite) == pw.end() && !is_profile_suite(rc.suite))
    throw UsageError("unknown suite '" + rc.suite + "'; pointwise suites: " + join(pw) +
                     "; profile suites: " + join(profile_suites()) + "\nexamples:\n" + catalog_listing());
  const auto fields = selected_examples(rc);
  if (rc.points < 1) throw UsageError("points must be positive");
  if (is_profile_suite(rc.suite) && fields.empty())
    throw UsageError("suite '" + rc.suite + "' needs at least one --example; available examples:\n" + catalog_listing());
  if (rc.radii) (void)rc.radii->values();
  try {
    rc.quadrature.validate(fields.empty() ? rc.space.dim : fields.front()->space.dim());
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }

  auto standing = [](int n, double kp, const std::string& who) {
    if (!(n > kp)) {
      std::ostringstream os;
      os << "standing assumption n > kp violated for " << who << ": n = " << n << ", kp = " << kp
         << " (the monotonicity theory needs the dimension to exceed kp)";
      throw UsageError(os.str());
    }
  };
  if (fields.empty() && rc.suite != "ymhe" && rc.suite != "contraction") {
    (void)rc.space.make();
    if (rc.k < 0 || rc.k > rc.space.dim) throw UsageError("form degree k must lie in [0, n]");
    if (!(rc.p > 1.0)) throw UsageError("exponent p must exceed 1");
    standing(rc.space.dim, rc.k * rc.p, "the random-field configuration");
  }
  for (const auto* ex : fields) {
    if (rc.suite == "ymh-profile")
      standing(ex->space.dim(), 4.0, "'" + ex->name + "' (Yang-Mills-Higgs profile, kp = 4)");
    else
      standing(ex->cfg.n, ex->cfg.k * ex->cfg.p, "'" + ex->name + "'");
  }
}

Report run_pointwise(const RunConfig& rc) {
  validate(rc);
  Report rep;
  rep.suite = rc.suite;
  if (rc.suite == "divergence") suite_divergence(rc, rep);
  else if (rc.suite == "trace") suite_trace(rc, rep);
  else if (rc.suite == "contraction") suite_contraction(rc, rep);
  else if (rc.suite == "metric-variation") suite_metric_variation(rc, rep);
  else if (rc.suite == "conservation") suite_conservation(rc, rep);
  else if (rc.suite == "ymhe") suite_ymhe(rc, rep);
  else throw UsageError("'" + rc.suite + "' is not a pointwise suite");
  return rep;
}

Report run_profile(const RunConfig& rc) {
  validate(rc);
  Report rep;
  rep.suite = rc.suite;
  if (rc.suite == "profile") suite_profile(rc, rep);
  else if (rc.suite == "inhomogeneous") suite_inhomogeneous(rc, rep);
  else if (rc.suite == "ymh-profile") suite_ymh_profile(rc, rep);
  else throw UsageError("'" + rc.suite + "' is not a profile suite");
  return rep;
}

Report run(const RunConfig& rc) {
  Report rep = is_profile_suite(rc.suite) ? run_profile(rc) : run_pointwise(rc);
  if (!rc.out.empty()) {
    std::filesystem::create_directories(rc.out);
    std::ofstream os(std::filesystem::path(rc.out) / "report.json");
    if (!os) throw std::runtime_error("cannot write report.json in " + rc.out);
    os << report_json(rep, rc.timing);
  }
  return rep;
}

}  // namespace emt
