#include "helpers.hpp"

#include <set>

using namespace test;

TEST_SUITE("examples") {
  TEST_CASE("names, tags and configurations") {
    const std::set<std::string> expected = {"zero",       "const-1form",     "const-2form-ym",
                                            "radial-p-harmonic", "hyperbolic-harmonic", "instanton",
                                            "ymh-vacuum", "ymh-zero-higgs", "inhomogeneous-bump"};
    std::set<std::string> names;
    for (const ExampleField& f : catalog()) {
      names.insert(f.name);
      CAPTURE(f.name);
      CHECK_FALSE(f.description.empty());
      CHECK(f.tags != 0u);
      CHECK(f.center.size() == f.space.dim());
      CHECK(f.valid(f.center));
      CHECK(f.radius_min < f.radius_max);
      if (f.psi) {
        CHECK(f.psi->degree() == f.cfg.k);
        CHECK(f.cfg.n == f.space.dim());
        CHECK(f.cfg.n > f.cfg.k * f.cfg.p);
        CHECK(f.conn.rank() == f.psi->rank());
      }
      if (f.has(Tag::YmhPair)) CHECK(f.ymh.has_value());
      if (f.has(Tag::PHarmonic)) CHECK((f.has(Tag::Closed) && f.has(Tag::PCoclosed)));
      if (f.has(Tag::Inhomogeneous)) CHECK(f.gamma > 0.0);
    }
    CHECK(names == expected);
    CHECK(find_example("instanton").has(Tag::YmhPair));
    CHECK(find_example("instanton").tag_names() == std::vector<std::string>{"closed", "p-coclosed", "p-harmonic", "ymh-pair"});
  }

  TEST_CASE("tags hold at fresh sample points") {
    for (const ExampleField& f : catalog()) {
      CAPTURE(f.name);
      const TagCheck t = check_tags(f, 40, 99);
      if (f.has(Tag::Closed)) CHECK(t.closed <= kTagTolerance);
      if (f.has(Tag::PCoclosed)) CHECK(t.coclosed <= kTagTolerance);
      if (f.has(Tag::YmhPair)) {
        CHECK(t.ymh_gauge <= kTagTolerance);
        CHECK(t.ymh_higgs <= kTagTolerance);
      }
    }
    // The bump is not closed: its tag check must see that.
    CHECK(check_tags(find_example("inhomogeneous-bump"), 20).closed > 1e-3);
  }

  TEST_CASE("analytic jets agree with differences") {
    for (const ExampleField& f : catalog()) {
      CAPTURE(f.name);
      CHECK(jet_selftest(f) <= 1e-6);
    }
  }

  TEST_CASE("sample points are valid") {
    std::mt19937_64 rng(5);
    for (const ExampleField& f : catalog())
      for (int i = 0; i < 20; ++i) CHECK(f.valid(f.sample(rng)));
    const ExampleField& r = find_example("radial-p-harmonic");
    CHECK_FALSE(r.valid(ChartPoint::Zero(4)));
  }

  TEST_CASE("unknown names list the catalog") {
    try {
      find_example("nope");
      FAIL("no throw");
    } catch (const std::invalid_argument& e) {
      const std::string msg = e.what();
      for (const ExampleField& f : catalog()) CHECK(msg.find(f.name) != std::string::npos);
    }
    CHECK(catalog_listing().find("hyperbolic-harmonic") != std::string::npos);
  }

  TEST_CASE("'t Hooft symbols") {
    for (int a = 0; a < 3; ++a)
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
          CHECK(thooft_eta(a, mu, nu) == -thooft_eta(a, nu, mu));
          double dual = 0.0;
          for (int r = 0; r < 4; ++r)
            for (int s = 0; s < 4; ++s) dual += 0.5 * permutation_sign({mu, nu, r, s}) * thooft_eta(a, r, s);
          CHECK(dual == thooft_eta(a, mu, nu));
        }
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        double s = 0.0;
        for (int mu = 0; mu < 4; ++mu)
          for (int nu = 0; nu < 4; ++nu) s += thooft_eta(a, mu, nu) * thooft_eta(b, mu, nu);
        CHECK(s == (a == b ? 4.0 : 0.0));
      }
  }
}
