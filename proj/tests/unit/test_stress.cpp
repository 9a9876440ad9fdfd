#include "helpers.hpp"

using namespace test;

namespace {

BundleForm constant_form(const ModelSpace& s, int k, std::vector<double> comps) {
  return BundleForm::from_generic(s, k, 1, [comps](auto, auto out) {
    for (std::size_t i = 0; i < comps.size(); ++i) out[i] = comps[i];
  });
}

double rel_gap(const ModelSpace& s, const ChartPoint& x, const Vec& a, const Vec& b) {
  return covector_norm(s, x, a - b) / std::max({covector_norm(s, x, a), covector_norm(s, x, b), 1e-300});
}

}  // namespace

TEST_SUITE("stress") {
  TEST_CASE("energy configuration") {
    const EnergyConfig c = make_config(3.0, 1, 4);
    CHECK(c.conjugate() == doctest::Approx(1.5));
    CHECK(c.scaling_exponent() == doctest::Approx(-1.0));
    CHECK_THROWS(make_config(1.0, 1, 4));
    CHECK_THROWS(make_config(2.0, 5, 4));
    CHECK_THROWS_AS(make_config(3.0, 2, 4).require_standing_assumption(), std::invalid_argument);
    CHECK_NOTHROW(make_config(3.0, 1, 4).require_standing_assumption());
  }

  TEST_CASE("energy density examples") {
    const auto e = ModelSpace::euclidean(3);
    const ChartPoint x = point({0.1, 0.2, 0.3});
    CHECK(energy_density({2.0, 1, 3}, e, BundleForm::zero(e, 1, 1), x) == 0.0);
    CHECK(energy_density({2.0, 1, 3}, e, constant_form(e, 1, {1, 0, 0}), x) == doctest::Approx(0.5));
    CHECK(energy_density({3.0, 2, 3}, e, constant_form(e, 2, {2, 0, 0}), x) == doctest::Approx(8.0 / 3.0));
  }

  TEST_CASE("stress tensor examples") {
    const auto e = ModelSpace::euclidean(3);
    const ChartPoint x = point({0.1, 0.2, 0.3});
    const Mat T = stress_tensor({2.0, 1, 3}, e, constant_form(e, 1, {1, 0, 0}), x);
    Mat expect = Mat::Zero(3, 3);
    expect.diagonal() << 0.5, -0.5, -0.5;
    CHECK(max_abs(Mat(T - expect)) < 1e-15);
    CHECK(metric_trace(e, x, T) == doctest::Approx(-0.5));
    CHECK(max_abs(stress_tensor({3.0, 1, 3}, e, BundleForm::zero(e, 1, 1), x)) == 0.0);
    CHECK_THROWS_AS(stress_tensor({1.5, 1, 3}, e, BundleForm::zero(e, 1, 1), x), SingularWeightError);
  }

  TEST_CASE("trace identity and symmetry on random fields") {
    std::mt19937_64 rng(1);
    for (const auto& s : {ModelSpace::euclidean(4), ModelSpace::hyperbolic(3, 1.0), ModelSpace::hyperbolic(5, 0.5)}) {
      for (int t = 0; t < 40; ++t) {
        const int k = t % s.dim();
        const EnergyConfig cfg{1.5 + 0.5 * (t % 4), k, s.dim()};
        const BundleForm f = random_polynomial_form(s, k, 2, 10 + t);
        const ChartPoint x = random_point(s, rng);
        const Mat T = stress_tensor(cfg, s, f, x);
        CHECK(max_abs(Mat(T - T.transpose())) == 0.0);
        const double en = energy_density(cfg, s, f, x);
        CHECK(std::abs(metric_trace(s, x, T) - (k * cfg.p - s.dim()) * en) <= 1e-12 * std::max(1.0, en));
      }
    }
  }

  TEST_CASE("metric variation") {
    const auto e = ModelSpace::euclidean(3);
    const ChartPoint x = point({0.1, 0.2, 0.3});
    const BundleForm dx1 = constant_form(e, 1, {1, 0, 0});
    const EnergyConfig cfg{2.0, 1, 3};
    CHECK(metric_variation_residual(cfg, e, dx1, x, Mat::Zero(3, 3)) < 1e-14);
    const Mat g = Mat::Identity(3, 3);
    CHECK(metric_variation_residual(cfg, e, dx1, x, g) < 1e-10);
    CHECK(-0.5 * tensor_inner(e, x, stress_tensor(cfg, e, dx1, x), g) == doctest::Approx(0.25));
    CHECK_THROWS_AS(metric_variation_residual(cfg, e, dx1, x, -1e5 * g), PreconditionError);
    std::mt19937_64 rng(2);
    for (const auto& s : {ModelSpace::euclidean(4), ModelSpace::hyperbolic(3, 1.0)}) {
      double worst = 0.0;
      for (int t = 0; t < 100; ++t) {
        const int k = 1 + t % 2;
        const EnergyConfig c{2.0 + 0.5 * (t % 3), k, s.dim()};
        const ChartPoint y = random_point(s, rng);
        worst = std::max(worst, metric_variation_residual(c, s, random_polynomial_form(s, k, 2, 40 + t), y,
                                                          random_metric_perturbation(s, y, rng)));
      }
      CHECK(worst <= 1e-6);
    }
  }

  TEST_CASE("divergence of the stress tensor: closed-form example") {
    // psi = x^2 dx^1 on R^2, p = 2: T = diag(y^2/2, -y^2/2), div T = (0, -y).
    const auto e = ModelSpace::euclidean(2);
    const BundleForm f = BundleForm::from_generic(e, 1, 1, [](auto x, auto out) {
      out[0] = x[1];
      out[1] = x[0] * 0.0;
    });
    const EnergyConfig cfg{2.0, 1, 2};
    const ChartPoint x = point({0.3, 0.7});
    const Vec d = div_stress_direct(cfg, e, f, x);
    CHECK(std::abs(d[0]) < 1e-10);
    CHECK(d[1] == doctest::Approx(-0.7).epsilon(1e-10));
    const Vec i = div_stress_identity(cfg, e, ConnectionField::trivial(2, 1), f, x);
    CHECK(std::abs(i[0]) < 1e-10);
    CHECK(i[1] == doctest::Approx(-0.7).epsilon(1e-10));
    CHECK(max_abs(div_stress_direct(cfg, e, constant_form(e, 1, {1.0, -2.0}), x)) == 0.0);
  }

  TEST_CASE("divergence routes agree on random fields") {
    std::mt19937_64 rng(3);
    struct Case {
      ModelSpace s;
      int k;
      double p;
      double tol;
    };
    for (const Case& c : {Case{ModelSpace::euclidean(4), 2, 3.0, 1e-7}, Case{ModelSpace::hyperbolic(3, 1.0), 1, 2.5, 1e-6},
                          Case{ModelSpace::hyperbolic(4, 0.6), 2, 1.7, 1e-6}}) {
      for (int t = 0; t < 50; ++t) {
        const BundleForm f = random_polynomial_form(c.s, c.k, 2, 60 + t);
        const ConnectionField conn = random_connection(c.s, 2, 90 + t);
        const ChartPoint x = random_point(c.s, rng);
        const EnergyConfig cfg{c.p, c.k, c.s.dim()};
        CHECK(rel_gap(c.s, x, div_stress_direct(cfg, c.s, f, x), div_stress_identity(cfg, c.s, conn, f, x)) <= c.tol);
      }
    }
  }

  TEST_CASE("conservation for p-harmonic catalog fields") {
    for (const auto& f : catalog()) {
      if (!f.has(Tag::PHarmonic)) continue;
      std::mt19937_64 rng(4);
      double worst = 0.0;
      for (int t = 0; t < 100; ++t) {
        const ChartPoint x = f.sample(rng);
        worst = std::max(worst, covector_norm(f.space, x, div_stress_direct(f.cfg, f.space, *f.psi, x)));
      }
      INFO(f.name);
      CHECK(worst <= 1e-8);
    }
  }

  TEST_CASE("contraction rule") {
    const auto e2 = ModelSpace::euclidean(2);
    const SymTensorField g = SymTensorField::from_generic(e2, [](auto x, auto out) {
      out[0] = x[0] * 0.0 + 1.0;
      out[1] = x[0] * 0.0;
      out[2] = x[0] * 0.0;
      out[3] = x[0] * 0.0 + 1.0;
    });
    const VectorField X = VectorField::from_generic(e2, [](auto x, auto out) {
      out[0] = x[0];
      out[1] = x[0] * 0.0;
    });
    CHECK(contraction_divergence_residual(e2, g, X, point({0.4, -0.2})) == 0.0);
    std::mt19937_64 rng(5);
    const auto e3 = ModelSpace::euclidean(3);
    const auto h2 = ModelSpace::hyperbolic(2, 1.0);
    for (int t = 0; t < 100; ++t) {
      CHECK(contraction_divergence_residual(e3, random_sym_tensor(e3, t), random_vector_field(e3, 1000 + t),
                                            random_point(e3, rng)) <= 1e-10);
      CHECK(contraction_divergence_residual(h2, random_sym_tensor(h2, t), random_vector_field(h2, 1000 + t),
                                            random_point(h2, rng)) <= 1e-8);
    }
  }
}
