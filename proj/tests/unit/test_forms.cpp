#include "helpers.hpp"

using namespace test;

namespace {

FormValue basis_form(int n, std::vector<int> entries, double c = 1.0) {
  FormValue f(n, static_cast<int>(entries.size()), 1);
  std::uint32_t mask = 0;
  for (int i : entries) mask |= 1u << i;
  f.at(0, f.indices().position(mask)) = c;
  return f;
}

// Brute-force wedge of scalar alpha with E-valued beta through fully
// antisymmetric components: (a ^ b)_{i1..ik+l} = sum over tuples of
// sgn * a * b / (k! l!), read off at increasing indices.
FormValue wedge_oracle(const FormValue& a, const FormValue& b) {
  const int n = a.dim, k = a.degree, l = b.degree;
  FormValue out(n, k + l, b.rank);
  const auto& set = out.indices();
  for (int pos = 0; pos < set.size(); ++pos) {
    const std::vector<int> target = set.entries(pos);
    std::vector<int> perm(target.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<int> first, second, order;
      for (int i = 0; i < k; ++i) first.push_back(target[perm[i]]);
      for (int i = k; i < k + l; ++i) second.push_back(target[perm[i]]);
      for (int p : perm) order.push_back(p);
      const int sign = permutation_sign(order);
      for (int r = 0; r < b.rank; ++r)
        out.at(r, pos) += sign * full_component(a, 0, first) * full_component(b, r, second) / (factorial(k) * factorial(l));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

double max_diff(const FormValue& a, const FormValue& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.comps.size(); ++i) m = std::max(m, std::abs(a.comps[i] - b.comps[i]));
  return m;
}

}  // namespace

TEST_SUITE("forms") {
  TEST_CASE("multi-index enumeration is lexicographic with C(n,k) entries") {
    const auto& s = MultiIndexSet::get(5, 2);
    CHECK(s.size() == 10);
    std::vector<std::vector<int>> expect = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2},
                                            {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
    for (int i = 0; i < 10; ++i) CHECK(s.entries(i) == expect[i]);
    for (int n = 2; n <= 6; ++n)
      for (int k = 0; k <= n; ++k) {
        const auto& t = MultiIndexSet::get(n, k);
        CHECK(t.size() == binomial(n, k));
        for (int i = 0; i < t.size(); ++i) {
          CHECK(t.position(t.mask(i)) == i);
          if (i > 0) CHECK(t.entries(i - 1) < t.entries(i));
        }
      }
  }

  TEST_CASE("reordering signs") {
    CHECK(insertion_sign(0b010, 1) == 0);
    CHECK(insertion_sign(0b001, 1) == -1);
    CHECK(insertion_sign(0b100, 1) == 1);
    CHECK(shuffle_sign(0b001, 0b010) == 1);
    CHECK(shuffle_sign(0b010, 0b001) == -1);
    CHECK(shuffle_sign(0b011, 0b001) == 0);
    CHECK(shuffle_sign(0b1010, 0b0101) == permutation_sign({1, 3, 0, 2}));
  }

  TEST_CASE("wedge examples and the permutation oracle") {
    const FormValue dx1 = basis_form(3, {0}), dx2 = basis_form(3, {1});
    const FormValue w12 = wedge(dx1, dx2), w21 = wedge(dx2, dx1);
    CHECK(w12.comps[0] == 1.0);
    CHECK(w21.comps[0] == -1.0);
    FormValue a = basis_form(4, {0});
    a += basis_form(4, {1});
    const FormValue b = basis_form(4, {0, 2});
    CHECK(max_diff(wedge(a, b), wedge_oracle(a, b)) == 0.0);
    std::mt19937_64 rng(1);
    for (int t = 0; t < 40; ++t) {
      const int n = 2 + t % 4, k = t % 3 % n, l = (t / 3) % (n - k + 1);
      const FormValue x = random_form_value(n, k, 1, rng), y = random_form_value(n, l, 2, rng);
      CHECK(max_diff(wedge(x, y), wedge_oracle(x, y)) < 1e-14);
    }
    CHECK_THROWS_AS(wedge(basis_form(3, {0, 1}), basis_form(3, {1, 2})), ShapeError);
  }

  TEST_CASE("interior product examples and the antiderivation law") {
    const FormValue w = basis_form(3, {0, 1});
    const FormValue i1 = interior_axis(0, w), i2 = interior_axis(1, w);
    CHECK(i1.comps == std::vector<double>{0.0, 1.0, 0.0});
    CHECK(i2.comps == std::vector<double>{-1.0, 0.0, 0.0});
    CHECK_THROWS_AS(interior_axis(0, basis_form(3, {})), ShapeError);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 40; ++t) {
      const int n = 4, k = 1 + t % 2, l = 1 + (t / 2) % 2;
      const FormValue a = random_form_value(n, k, 1, rng), b = random_form_value(n, l, 1, rng);
      Vec X(n);
      for (int i = 0; i < n; ++i) X[i] = u(rng);
      FormValue rhs = wedge(interior(X, a), b);
      FormValue second = wedge(a, interior(X, b));
      second *= (k % 2 ? -1.0 : 1.0);
      rhs += second;
      CHECK(max_diff(interior(X, wedge(a, b)), rhs) < 1e-14);
    }
  }

  TEST_CASE("Gram-determinant inner product") {
    const auto e = ModelSpace::euclidean(3);
    const FormValue w = basis_form(3, {0, 1});
    CHECK(inner_product(e, point({0, 0, 0}), w, w) == 1.0);
    const auto h = ModelSpace::hyperbolic(2, 1.0);
    const FormValue dxdy = basis_form(2, {0, 1});
    CHECK(inner_product(h, point({0.0, 2.0}), dxdy, dxdy) == doctest::Approx(16.0));
    CHECK_THROWS_AS(inner_product(e, point({0, 0, 0}), w, basis_form(3, {0})), ShapeError);
  }

  TEST_CASE("inner product equals the brute-force tuple sum over k!") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 30; ++t) {
      const int n = 2 + t % 3, k = 1 + t % std::min(3, n), rank = 1 + t % 2;
      Mat A(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = u(rng);
      const Mat ginv = A * A.transpose() + 0.5 * Mat::Identity(n, n);
      const FormValue a = random_form_value(n, k, rank, rng), b = random_form_value(n, k, rank, rng);
      double brute = 0.0;
      const auto tuples = all_tuples(n, k);
      for (int r = 0; r < rank; ++r)
        for (const auto& I : tuples)
          for (const auto& J : tuples) {
            double prod = 1.0;
            for (int s = 0; s < k; ++s) prod *= ginv(I[s], J[s]);
            brute += full_component(a, r, I) * full_component(b, r, J) * prod;
          }
      brute /= factorial(k);
      CHECK(std::abs(inner_product(ginv, a, b) - brute) < 1e-12 * (1.0 + std::abs(brute)));
      CHECK(inner_product(ginv, a, a) > 0.0);
    }
  }

  TEST_CASE("orthonormal frames") {
    std::mt19937_64 rng(5);
    for (const auto& s : {ModelSpace::euclidean(3), ModelSpace::hyperbolic(3, 1.0), ModelSpace::hyperbolic(4, 2.0)}) {
      for (int t = 0; t < 20; ++t) {
        const ChartPoint x = random_point(s, rng);
        const OrthonormalFrame f = orthonormal_frame(s, x);
        const Mat g = metric_jet(s, x).g;
        CHECK(max_abs(Mat(f.frame.transpose() * g * f.frame - Mat::Identity(s.dim(), s.dim()))) < 1e-14);
        CHECK(max_abs(Mat(f.coframe * f.frame - Mat::Identity(s.dim(), s.dim()))) < 1e-14);
        if (!s.is_hyperbolic()) CHECK(max_abs(Mat(f.frame - Mat::Identity(3, 3))) == 0.0);
      }
    }
  }

  TEST_CASE("connections from the random generator are skew") {
    std::mt19937_64 rng(6);
    const auto s = ModelSpace::hyperbolic(3, 1.0);
    const ConnectionField c = random_connection(s, 3, 99);
    for (int t = 0; t < 20; ++t)
      for (const Mat& A : c.values(random_point(s, rng))) CHECK(max_abs(Mat(A + A.transpose())) == 0.0);
    CHECK(ConnectionField::trivial(3, 2).is_trivial());
  }

  TEST_CASE("bundle forms: component count, domain checks, jets against differences") {
    const auto s = ModelSpace::hyperbolic(4, 1.0);
    const BundleForm f = random_polynomial_form(s, 2, 3, 7);
    CHECK(f.value(point({0.1, 0.2, 0.3, 1.0})).comps.size() == static_cast<std::size_t>(3 * binomial(4, 2)));
    CHECK_THROWS_AS(f.value(point({0.1, 0.2, 0.3, -1.0})), DomainError);
    CHECK_THROWS_AS(f.jet(point({0.1, 0.2, 0.3, 0.0})), DomainError);
    const BundleForm fd = f.with_finite_difference_jets();
    std::mt19937_64 rng(8);
    for (int t = 0; t < 20; ++t) {
      const ChartPoint x = random_point(s, rng);
      const FormJet a = f.jet(x), b = fd.jet(x);
      for (std::size_t c = 0; c < a.comps.size(); ++c) {
        CHECK(std::abs(a.comps[c].value() - b.comps[c].value()) == 0.0);
        for (int i = 0; i < 4; ++i) {
          CHECK(std::abs(a.comps[c].grad(i) - b.comps[c].grad(i)) < 1e-8);
          for (int j = 0; j < 4; ++j) {
            CHECK(std::abs(a.comps[c].hess(i, j) - b.comps[c].hess(i, j)) < 1e-6);
            CHECK(b.comps[c].hess(i, j) == b.comps[c].hess(j, i));
          }
        }
      }
    }
  }

  TEST_CASE("jets: arithmetic and composition against closed forms") {
    const Jet x = Jet::variable(2, 0, 0.7), y = Jet::variable(2, 1, -0.4);
    const Jet f = exp(x * y) + pow(x, 3.0) / (1.0 + y * y);
    // d/dx = y e^{xy} + 3x^2 / (1+y^2); d2/dxdy = e^{xy}(1 + xy) - 6x^2 y / (1+y^2)^2
    const double e = std::exp(0.7 * -0.4);
    CHECK(f.grad(0) == doctest::Approx(-0.4 * e + 3 * 0.49 / 1.16).epsilon(1e-14));
    CHECK(f.hess(0, 1) == doctest::Approx(e * (1 - 0.28) + 6 * 0.49 * 0.4 / (1.16 * 1.16)).epsilon(1e-14));
    CHECK(f.hess(1, 0) == f.hess(0, 1));
    Jet z = x;
    z = 2.5;
    CHECK(z.dim() == 2);
    CHECK(z.grad(0) == 0.0);
    CHECK(z.hess(1, 1) == 0.0);
  }
}
