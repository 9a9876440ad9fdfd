#include "helpers.hpp"

using namespace test;

namespace {

QuadratureSpec nodes(int radial, int angular) {
  QuadratureSpec q;
  q.radial_nodes = radial;
  q.angular = angular;
  return q;
}

}  // namespace

TEST_SUITE("integrate") {
  TEST_CASE("ball and sphere volumes") {
    const auto e3 = ModelSpace::euclidean(3);
    const PointFunction one = [](const ChartPoint&) { return 1.0; };
    const ChartPoint o = ChartPoint::Zero(3);
    CHECK(ball_integral(e3, o, 1.3, one, nodes(8, 6)).value == doctest::Approx(4.0 * kPi / 3.0 * std::pow(1.3, 3)).epsilon(1e-13));
    CHECK(sphere_integral(e3, o, 1.3, one, nodes(8, 6)).value == doctest::Approx(4.0 * kPi * 1.69).epsilon(1e-13));
    // int_B |x|^2 = 4 pi R^5 / 5
    const PointFunction r2 = [](const ChartPoint& x) { return x.squaredNorm(); };
    CHECK(ball_integral(e3, point({0, 0, 0}), 0.9, r2, nodes(8, 6)).value ==
          doctest::Approx(4.0 * kPi * std::pow(0.9, 5) / 5.0).epsilon(1e-12));
    const auto h3 = ModelSpace::hyperbolic(3, 1.0);
    const ChartPoint c = point({0, 0, 1});
    CHECK(ball_integral(h3, c, 1.1, one, nodes(24, 8)).value == doctest::Approx(h3.ball_volume(1.1)).epsilon(1e-10));
    CHECK(h3.ball_volume(1.1) == doctest::Approx(kPi * (std::sinh(2.2) - 2.2)).epsilon(1e-12));
    const auto e5 = ModelSpace::euclidean(5);
    CHECK(ball_integral(e5, ChartPoint::Zero(5), 1.0, one, nodes(8, 6)).value ==
          doctest::Approx(8.0 * kPi * kPi / 15.0).epsilon(1e-12));
  }

  TEST_CASE("coarea: d/dR of the ball integral is the sphere integral") {
    const auto h3 = ModelSpace::hyperbolic(3, 1.0);
    const ChartPoint c = point({0.2, -0.1, 1.0});
    const PointFunction f = [](const ChartPoint& x) { return std::exp(x[0]) * x[2] + x[1] * x[1]; };
    const QuadratureSpec q = nodes(24, 12);
    for (double R : {0.3, 0.7, 1.2}) {
      const double h = 1e-2 * R;
      auto B = [&](double t) { return ball_integral(h3, c, R + t * h, f, q).value; };
      const double d = (B(-2) - 8 * B(-1) + 8 * B(1) - B(2)) / (12 * h);
      const double s = sphere_integral(h3, c, R, f, q).value;
      CHECK(std::abs(d - s) <= 1e-6 * std::abs(s));
    }
  }

  TEST_CASE("node refinement converges") {
    const auto e3 = ModelSpace::euclidean(3);
    const PointFunction f = [](const ChartPoint& x) { return std::exp(x[0] + 0.5 * x[1]) * std::cos(x[2]); };
    const ChartPoint o = point({0.1, 0.2, 0.3});
    const double exact = ball_integral(e3, o, 1.5, f, nodes(40, 30)).value;
    const double coarse = std::abs(ball_integral(e3, o, 1.5, f, nodes(4, 4)).value - exact);
    const double fine = std::abs(ball_integral(e3, o, 1.5, f, nodes(8, 8)).value - exact);
    CHECK(coarse >= 4.0 * fine);
    const QuadratureResult r = ball_integral(e3, o, 1.5, f, nodes(8, 8));
    CHECK(r.error_estimate > 0.0);
    CHECK(std::abs(r.value - exact) <= r.error_estimate);
  }

  TEST_CASE("quadrature spec validation") {
    QuadratureSpec q = nodes(3, 8);
    CHECK_THROWS(q.validate(3));
    q = nodes(8, 8);
    q.angle_nodes = {6};
    CHECK_THROWS(q.validate(3));
    q.angle_nodes = {6, 12};
    CHECK_NOTHROW(q.validate(3));
    CHECK(q.latitudes(3) == std::vector<int>{6});
    CHECK(q.longitude(3) == 12);
  }

  TEST_CASE("identity for dx1 on R3") {
    const ExampleField& f = find_example("const-1form");
    const EnergyModel m = form_energy_model(f.cfg, f.space, f.conn, *f.psi);
    const IdentityResult id = monotonicity_identity(m, f.space, f.center, 1.0, nodes(8, 6));
    CHECK(id.lhs == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-8));
    CHECK(id.rhs == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-8));
    CHECK(id.residual <= 1e-8);
    CHECK_FALSE(id.inconclusive);
  }

  TEST_CASE("identity for random fields") {
    const auto e5 = ModelSpace::euclidean(5);
    for (std::uint64_t seed : {1u, 2u}) {
      const BundleForm psi = random_polynomial_form(e5, 2, 1, seed);
      const double res = monotonicity_identity_residual({2.0, 2, 5}, e5, ConnectionField::trivial(5, 1), psi,
                                                        ChartPoint::Zero(5), 0.8, nodes(8, 6));
      CHECK(res <= 5e-3);
    }
    const auto h3 = ModelSpace::hyperbolic(3, 1.0);
    const BundleForm psi = random_polynomial_form(h3, 1, 1, 3);
    const double res = monotonicity_identity_residual({2.0, 1, 3}, h3, ConnectionField::trivial(3, 1), psi,
                                                      point({0, 0, 1}), 0.8, nodes(32, 16));
    CHECK(res <= 1e-2);
  }

  TEST_CASE("profiles of constant forms") {
    const ExampleField& f = find_example("const-1form");
    const std::vector<double> radii = {0.5, 1.0, 1.5, 2.0};
    const RadialProfile p = theta_profile(f.cfg, f.space, f.conn, *f.psi, f.center, radii, 0.0, nodes(8, 6), true);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      CHECK(p.theta[i] == doctest::Approx(2.0 * kPi / 3.0 * radii[i] * radii[i]).epsilon(1e-10));
      CHECK(p.raw_energy[i] == doctest::Approx(2.0 * kPi / 3.0 * std::pow(radii[i], 3)).epsilon(1e-10));
    }
    CHECK(p.violations.empty());
    CHECK(p.max_residual() <= 1e-8);
    const RadialProfile q = theta_profile(f.cfg, f.space, f.conn, *f.psi, f.center, radii, 0.0, nodes(8, 6), false);
    CHECK(std::isnan(q.identity_lhs[0]));
    CHECK_THROWS(theta_profile(f.cfg, f.space, f.conn, *f.psi, f.center, std::vector<double>{1.0, 0.5}, 0.0,
                               nodes(8, 6)));
  }

  TEST_CASE("volume weight integral") {
    const auto e3 = ModelSpace::euclidean(3);
    CHECK(volume_weight_integral(e3, 1.0, -1.0, 0.0) == doctest::Approx(4.0 * kPi / 3.0 * (std::exp(1.0) - 2.0)).epsilon(1e-12));
    CHECK(volume_weight_integral(e3, 0.0, -1.0, 0.0) == 0.0);
  }

  TEST_CASE("inhomogeneous profile") {
    const ExampleField& f = find_example("inhomogeneous-bump");
    const std::vector<double> radii = {0.5, 1.0, 1.5, 2.0};
    const RadialProfile p =
        inhomogeneous_profile(f.cfg, f.space, f.conn, *f.psi, f.center, radii, f.gamma, 0.0, nodes(12, 8));
    CHECK(p.combined.size() == radii.size());
    CHECK(p.violations.empty());
    CHECK_THROWS_AS(inhomogeneous_profile(f.cfg, f.space, f.conn, *f.psi, f.center, radii, 0.01, 0.0, nodes(12, 8)),
                    PreconditionError);
  }

  TEST_CASE("monotone checks") {
    RadialProfile p;
    p.radii = {1, 2, 3};
    p.theta = {3, 2, 1};
    CHECK(liouville_ratio_check(p).size() == 3);
    CHECK(monotone_violations(p.theta).size() == 2);
    p.theta = {1, 1 - 5e-7, 2};
    CHECK(monotone_violations(p.theta).empty());
    CHECK(liouville_ratio_check(p).empty());
  }

  TEST_CASE("YMH profile with vanishing Higgs field") {
    const ExampleField& f = find_example("ymh-zero-higgs");
    const std::vector<double> radii = {0.5, 1.0, 1.5};
    const RadialProfile p = ymh_identity_and_profile(*f.ymh, f.center, radii, 0.0, nodes(8, 6));
    for (std::size_t i = 0; i < radii.size(); ++i)
      CHECK(p.theta[i] == doctest::Approx(0.25 * 8.0 * kPi * kPi / 15.0 * std::pow(radii[i], 4)).epsilon(1e-10));
    CHECK(p.max_residual() <= 1e-8);
  }

  TEST_CASE("identity term signs for p-harmonic fields") {
    for (const char* name : {"const-1form", "radial-p-harmonic"}) {
      const ExampleField& f = find_example(name);
      const EnergyModel m = form_energy_model(f.cfg, f.space, f.conn, *f.psi);
      const TermSigns t = identity_term_signs(m, f.space, f.center, 0.5 * (f.radius_min + f.radius_max), nodes(8, 6));
      CHECK(t.min_bulk >= -1e-10);
      CHECK(t.min_boundary >= -1e-10);
    }
  }

  TEST_CASE("thread count does not change results") {
    const ExampleField& f = find_example("radial-p-harmonic");
    const std::vector<double> radii = {0.3, 0.6, 0.9};
    QuadratureSpec a = nodes(8, 6), b = a;
    b.threads = 3;
    const RadialProfile p = theta_profile(f.cfg, f.space, f.conn, *f.psi, f.center, radii, 0.0, a, true);
    const RadialProfile q = theta_profile(f.cfg, f.space, f.conn, *f.psi, f.center, radii, 0.0, b, true);
    CHECK(p.theta == q.theta);
    CHECK(p.identity_rhs == q.identity_rhs);
  }
}
