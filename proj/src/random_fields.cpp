#include "emt/random_fields.hpp"

#include <memory>
#include <vector>

namespace emt {

namespace {

// Quadratic polynomials in (x - c), one per output slot.
struct PolyBank {
  int n = 0;
  int outputs = 0;
  std::vector<double> c;  // center
  std::vector<double> coef;

  PolyBank(const ModelSpace& space, int outputs_, std::uint64_t seed, double scale = 1.0)
      : n(space.dim()), outputs(outputs_) {
    const ChartPoint x0 = sampling_center(space);
    c.assign(x0.data(), x0.data() + n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int per = 1 + n + n * n;
    coef.resize(static_cast<std::size_t>(outputs * per));
    for (int o = 0; o < outputs; ++o)
      for (int t = 0; t < per; ++t) coef[o * per + t] = scale * (t > n ? 0.3 : 1.0) * u(rng);
  }

  template <class S>
  S eval(std::span<const S> x, int o) const {
    const int per = 1 + n + n * n;
    const double* a = coef.data() + o * per;
    S v = x[0] * 0.0 + a[0];
    for (int i = 0; i < n; ++i) {
      const S di = x[i] - c[i];
      S row = di * 0.0 + a[1 + i];
      for (int j = 0; j < n; ++j) row += (x[j] - c[j]) * a[1 + n + i * n + j];
      v += di * row;
    }
    return v;
  }
};

}  // namespace

ChartPoint sampling_center(const ModelSpace& space) {
  ChartPoint x = ChartPoint::Zero(space.dim());
  if (space.is_hyperbolic()) x[space.dim() - 1] = 1.0;
  return x;
}

ChartPoint random_point(const ModelSpace& space, std::mt19937_64& rng, double half) {
  std::uniform_real_distribution<double> u(-half, half);
  ChartPoint x = sampling_center(space);
  for (int i = 0; i < space.dim(); ++i) x[i] += u(rng);
  if (space.is_hyperbolic()) {
    std::uniform_real_distribution<double> y(0.5, 2.0);
    x[space.dim() - 1] = y(rng);
  }
  return x;
}

BundleForm random_polynomial_form(const ModelSpace& space, int degree, int rank, std::uint64_t seed) {
  const int count = rank * binomial(space.dim(), degree);
  auto bank = std::make_shared<const PolyBank>(space, count, seed);
  return BundleForm::from_generic(space, degree, rank, [bank](auto x, auto out) {
    for (int o = 0; o < bank->outputs; ++o) out[o] = bank->eval(x, o);
  });
}

ConnectionField random_connection(const ModelSpace& space, int rank, std::uint64_t seed) {
  const int n = space.dim();
  auto bank = std::make_shared<const PolyBank>(space, n * rank * rank, seed, 0.5);
  return ConnectionField(n, rank, [bank, n, rank](std::span<const Jet> x, std::span<Jet> out) {
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < rank; ++a) {
        out[(i * rank + a) * rank + a] = 0.0;
        for (int b = a + 1; b < rank; ++b) {
          const Jet v = bank->eval(x, (i * rank + a) * rank + b);
          out[(i * rank + a) * rank + b] = v;
          out[(i * rank + b) * rank + a] = -v;
        }
      }
  });
}

SymTensorField random_sym_tensor(const ModelSpace& space, std::uint64_t seed) {
  const int n = space.dim();
  auto bank = std::make_shared<const PolyBank>(space, n * n, seed);
  return SymTensorField::from_generic(space, [bank](auto x, auto out) {
    for (int o = 0; o < bank->outputs; ++o) out[o] = bank->eval(x, o);
  });
}

VectorField random_vector_field(const ModelSpace& space, std::uint64_t seed) {
  auto bank = std::make_shared<const PolyBank>(space, space.dim(), seed);
  return VectorField::from_generic(space, [bank](auto x, auto out) {
    for (int o = 0; o < bank->outputs; ++o) out[o] = bank->eval(x, o);
  });
}

Mat random_metric_perturbation(const ModelSpace& space, const ChartPoint& x, std::mt19937_64& rng) {
  const int n = space.dim();
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) h(i, j) = h(j, i) = u(rng);
  h /= std::max(1.0, h.norm());
  const double s = space.frame_scale(x);
  return h / (s * s);
}

YmhPair random_ymh_pair(const ModelSpace& space, std::uint64_t seed) {
  const LieAlgebraAction action = LieAlgebraAction::so3_defining();
  const int n = space.dim();
  auto a_bank = std::make_shared<const PolyBank>(space, n * 3, seed, 0.5);
  auto u_bank = std::make_shared<const PolyBank>(space, 3, seed + 1);
  GaugePotential A = GaugePotential::from_generic(space, action.algebra, [a_bank](auto x, auto out) {
    for (int o = 0; o < a_bank->outputs; ++o) out[o] = a_bank->eval(x, o);
  });
  BundleForm u = BundleForm::from_generic(space, 0, 3, [u_bank](auto x, auto out) {
    for (int o = 0; o < 3; ++o) out[o] = u_bank->eval(x, o);
  });
  return make_ymh_pair(action, A, u, Potential::quartic());
}

}  // namespace emt
