#include "helpers.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "emt/driver.hpp"

using namespace test;

namespace {

RunConfig profile_run(const std::string& suite, const std::string& example, const std::string& grid) {
  RunConfig rc;
  rc.suite = suite;
  rc.examples = {example};
  rc.radii = RadiusGrid::parse(grid);
  rc.quadrature.radial_nodes = 12;
  rc.quadrature.angular = 8;
  return rc;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("radius grids and spaces") {
    const RadiusGrid g = RadiusGrid::parse("0.5:2:4");
    CHECK(g.values() == std::vector<double>{0.5, 1.0, 1.5, 2.0});
    const std::vector<double> l = RadiusGrid::parse("0.1:10:3:log").values();
    REQUIRE(l.size() == 3);
    CHECK(l[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(l[2] == doctest::Approx(10.0).epsilon(1e-14));
    for (const char* bad : {"1:0.5:4", "0:1:4", "0.1:1", "0.1:1:1", "a:b:c", "0.1:1:4:cubic"})
      CHECK_THROWS_AS(RadiusGrid::parse(bad), UsageError);
    const SpaceParams h = SpaceParams::parse("hyperbolic:3:0.5");
    CHECK(h.kind == SpaceKind::Hyperbolic);
    CHECK(h.dim == 3);
    CHECK(h.kappa == 0.5);
    CHECK(SpaceParams::parse("euclidean:5").make().dim() == 5);
    CHECK_THROWS_AS(SpaceParams::parse("spherical:3"), UsageError);
  }

  TEST_CASE("pointwise suites") {
    RunConfig rc;
    rc.suite = "conservation";
    rc.examples = {"radial-p-harmonic"};
    rc.points = 30;
    Report r = run(rc);
    CHECK(r.passed());
    CHECK(r.records.size() >= 1);
    rc = RunConfig{};
    rc.suite = "trace";
    rc.space = SpaceParams::parse("euclidean:5");
    rc.points = 30;
    r = run(rc);
    CHECK(r.passed());
    for (const char* suite : {"divergence", "contraction", "metric-variation", "ymhe"}) {
      rc.suite = suite;
      rc.points = 10;
      CAPTURE(suite);
      CHECK(run(rc).passed());
    }
  }

  TEST_CASE("rejections") {
    RunConfig rc;
    rc.suite = "divergence";
    rc.space = SpaceParams::parse("euclidean:4");
    rc.k = 2;
    rc.p = 3.0;
    try {
      validate(rc);
      FAIL("no throw");
    } catch (const UsageError& e) {
      CHECK(std::string(e.what()).find("n > kp") != std::string::npos);
    }
    rc = RunConfig{};
    rc.suite = "nonsense";
    CHECK_THROWS_AS(validate(rc), UsageError);
    rc.suite = "profile";
    CHECK_THROWS_AS(validate(rc), UsageError);  // needs an example
    rc.examples = {"missing"};
    try {
      validate(rc);
      FAIL("no throw");
    } catch (const UsageError& e) {
      CHECK(std::string(e.what()).find("const-1form") != std::string::npos);
    }
  }

  TEST_CASE("profile of dx1") {
    RunConfig rc = profile_run("profile", "const-1form", "0.5:2:4");
    rc.identity = true;
    const Report r = run(rc);
    CHECK(r.passed());
    REQUIRE(r.profiles.size() == 1);
    const RadialProfile& p = r.profiles[0].profile;
    for (std::size_t i = 0; i < p.radii.size(); ++i)
      CHECK(std::abs(p.theta[i] - 2.0 * kPi / 3.0 * p.radii[i] * p.radii[i]) <= 1e-8);
  }

  TEST_CASE("profiles of the hyperbolic and inhomogeneous examples") {
    RunConfig rc = profile_run("profile", "hyperbolic-harmonic", "0.2:1:5");
    CHECK(run(rc).passed());
    rc = profile_run("inhomogeneous", "inhomogeneous-bump", "0.2:2:6");
    const Report r = run(rc);
    CHECK(r.passed());
    REQUIRE(r.profiles.size() == 1);
    CHECK(r.profiles[0].profile.combined.size() == 6);
  }

  TEST_CASE("CSV round trip is exact") {
    const Report r = run(profile_run("profile", "radial-p-harmonic", "0.2:1.8:5"));
    const RadialProfile& p = r.profiles.at(0).profile;
    std::stringstream a;
    write_profile_csv(a, p);
    const RadialProfile q = read_profile_csv(a);
    std::stringstream b;
    write_profile_csv(b, q);
    CHECK(a.str() == b.str());
    CHECK(q.theta == p.theta);
    CHECK(q.raw_energy == p.raw_energy);
    std::istringstream bad("R,theta\n1,2\n");
    CHECK_THROWS(read_profile_csv(bad));
  }

  TEST_CASE("JSON reports are deterministic") {
    RunConfig rc = profile_run("profile", "radial-p-harmonic", "0.2:1.8:4");
    rc.identity = true;
    const std::string one = report_json(run(rc));
    CHECK(one == report_json(run(rc)));
    rc.quadrature.threads = 3;
    CHECK(one == report_json(run(rc)));
    CHECK(one.find("runtime") == std::string::npos);
    RunConfig pw;
    pw.suite = "trace";
    pw.space = SpaceParams::parse("hyperbolic:4");
    pw.points = 20;
    CHECK(report_json(run(pw)) == report_json(run(pw)));
  }

  TEST_CASE("output directory") {
    const auto dir = std::filesystem::temp_directory_path() / "emt_cli_unit";
    std::filesystem::remove_all(dir);
    RunConfig rc = profile_run("profile", "const-1form", "0.5:1:3");
    rc.out = dir.string();
    run(rc);
    CHECK(std::filesystem::exists(dir / "report.json"));
    CHECK(std::filesystem::exists(dir / "const-1form-profile.csv"));
    std::ifstream in(dir / "const-1form-profile.csv");
    CHECK(read_profile_csv(in).radii.size() == 3);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("config files") {
    RunConfig rc = profile_run("inhomogeneous", "inhomogeneous-bump", "0.3:1.5:7:log");
    rc.lambda = 0.25;
    rc.gamma = 0.5;
    rc.seed = 42;
    const RunConfig back = parse_config_json(config_json(rc));
    CHECK(config_json(back) == config_json(rc));
    CHECK(back.examples == rc.examples);
    CHECK(back.radii->log);
    CHECK(*back.gamma == 0.5);
    CHECK_THROWS(parse_config_json(R"({"suite": "trace", "bogus": 1})"));
    CHECK_THROWS(parse_config_json("{not json"));
  }
}
