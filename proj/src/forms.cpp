#include "emt/forms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <mutex>

namespace emt {

int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

MultiIndexSet::MultiIndexSet(int n, int k) : n_(n), k_(k), lookup_(std::size_t{1} << n, -1) {
  // Lexicographic enumeration of increasing tuples.
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::uint32_t m = 0;
    for (int v : idx) m |= 1u << v;
    lookup_[m] = static_cast<int>(masks_.size());
    masks_.push_back(m);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

const MultiIndexSet& MultiIndexSet::get(int n, int k) {
  if (n < 0 || n > kMaxDim || k < 0 || k > n) throw ShapeError("multi-index set out of range");
  static const auto tables = [] {
    std::vector<std::unique_ptr<MultiIndexSet>> t;
    for (int nn = 0; nn <= kMaxDim; ++nn)
      for (int kk = 0; kk <= kMaxDim; ++kk) t.push_back(kk <= nn ? std::make_unique<MultiIndexSet>(nn, kk) : nullptr);
    return t;
  }();
  return *tables[static_cast<std::size_t>(n * (kMaxDim + 1) + k)];
}

std::vector<int> MultiIndexSet::entries(int pos) const {
  std::vector<int> out;
  for (int i = 0; i < n_; ++i)
    if (masks_[pos] & (1u << i)) out.push_back(i);
  return out;
}

int shuffle_sign(std::uint32_t first, std::uint32_t second) {
  if (first & second) return 0;
  int inversions = 0;
  for (std::uint32_t m = first; m; m &= m - 1) {
    const int i = std::countr_zero(m);
    inversions += std::popcount(second & ((1u << i) - 1u));
  }
  return (inversions & 1) ? -1 : 1;
}

FormValue values_of(const FormJet& f) {
  FormValue out(f.dim, f.degree, f.rank);
  for (std::size_t i = 0; i < f.comps.size(); ++i) out.comps[i] = f.comps[i].value();
  return out;
}

double max_abs(const FormValue& f) {
  double m = 0.0;
  for (double c : f.comps) m = std::max(m, std::abs(c));
  return m;
}

double inner_product(const Mat& ginv, const FormValue& psi1, const FormValue& psi2) {
  if (psi1.degree != psi2.degree || psi1.rank != psi2.rank || psi1.dim != psi2.dim)
    throw ShapeError("inner product: degree/rank mismatch");
  const auto& set = psi1.indices();
  const int k = psi1.degree;
  double sum = 0.0;
  Mat sub(k, k);
  for (int I = 0; I < set.size(); ++I) {
    const auto ei = set.entries(I);
    for (int J = 0; J < set.size(); ++J) {
      const auto ej = set.entries(J);
      double gram = 1.0;
      if (k > 0) {
        for (int r = 0; r < k; ++r)
          for (int s = 0; s < k; ++s) sub(r, s) = ginv(ei[r], ej[s]);
        gram = sub.determinant();
      }
      if (gram == 0.0) continue;
      double fibre = 0.0;
      for (int a = 0; a < psi1.rank; ++a) fibre += psi1.at(a, I) * psi2.at(a, J);
      sum += fibre * gram;
    }
  }
  return sum;
}

double inner_product(const ModelSpace& space, const ChartPoint& x, const FormValue& psi1, const FormValue& psi2) {
  if (psi1.dim != space.dim()) throw ShapeError("inner product: form dimension differs from space");
  const double s = space.frame_scale(x);
  return inner_product(Mat(Mat::Identity(space.dim(), space.dim()) * (s * s)), psi1, psi2);
}

OrthonormalFrame orthonormal_frame(const ModelSpace& space, const ChartPoint& x) {
  space.require_in_domain(x);
  const double s = space.frame_scale(x);
  const int n = space.dim();
  return {Mat::Identity(n, n) * s, Mat::Identity(n, n) / s};
}

ConnectionField::ConnectionField(int dim, int rank, JetFn fn) : dim_(dim), rank_(rank), fn_(std::move(fn)) {
  if (rank < 1) throw std::invalid_argument("bundle rank must be at least 1");
}

ConnectionField ConnectionField::trivial(int dim, int rank) { return ConnectionField(dim, rank, nullptr); }

std::vector<Jet> ConnectionField::jets(const ChartPoint& x) const {
  std::vector<Jet> out(static_cast<std::size_t>(dim_ * rank_ * rank_), Jet(0.0, dim_));
  if (fn_) {
    const auto xs = coordinate_jets(x);
    fn_(xs, out);
  }
  return out;
}

std::vector<Mat> ConnectionField::values(const ChartPoint& x) const {
  std::vector<Mat> out(static_cast<std::size_t>(dim_), Mat::Zero(rank_, rank_));
  if (!fn_) return out;
  const auto j = jets(x);
  for (int i = 0; i < dim_; ++i)
    for (int a = 0; a < rank_; ++a)
      for (int b = 0; b < rank_; ++b) out[i](a, b) = j[(i * rank_ + a) * rank_ + b].value();
  return out;
}

BundleForm::BundleForm(ModelSpace space, int degree, int rank, JetFn jet_fn, ValueFn value_fn)
    : space_(space), degree_(degree), rank_(rank), jet_fn_(std::move(jet_fn)), value_fn_(std::move(value_fn)) {
  if (degree < 0 || degree > space.dim()) throw ShapeError("form degree outside [0, n]");
  if (rank < 1) throw ShapeError("bundle rank must be at least 1");
}

BundleForm BundleForm::zero(const ModelSpace& space, int degree, int rank) {
  return from_generic(space, degree, rank, [](auto, auto out) {
    for (auto& c : out) c = 0.0;
  });
}

FormJet BundleForm::jet(const ChartPoint& x) const {
  space_.require_in_domain(x);
  FormJet out(dim(), degree_, rank_);
  const auto xs = coordinate_jets(x);
  jet_fn_(xs, out.comps);
  return out;
}

FormValue BundleForm::value(const ChartPoint& x) const {
  space_.require_in_domain(x);
  FormValue out(dim(), degree_, rank_);
  value_fn_(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())), out.comps);
  return out;
}

std::vector<Jet> finite_difference_jets(const ModelSpace& space, const BundleForm::ValueFn& f, int outputs,
                                        const ChartPoint& x, double rel_step) {
  const int n = space.dim();
  double h = rel_step * (1.0 + x.norm());
  if (space.is_hyperbolic()) h = std::min(h, 0.25 * x[n - 1]);

  auto eval = [&](const ChartPoint& p) {
    std::vector<double> v(static_cast<std::size_t>(outputs));
    f(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())), v);
    return v;
  };
  const auto f0 = eval(x);
  auto shifted = [&](int i, double di, int j, double dj) {
    ChartPoint p = x;
    p[i] += di;
    if (j >= 0) p[j] += dj;
    return eval(p);
  };

  // Central differences at step t: first and second partials per output.
  struct Stencil {
    std::vector<double> d1;  // [o * n + i]
    std::vector<double> d2;  // [o * n * n + i * n + j]
  };
  auto stencil = [&](double t) {
    Stencil s{std::vector<double>(static_cast<std::size_t>(outputs * n)),
              std::vector<double>(static_cast<std::size_t>(outputs * n * n))};
    for (int i = 0; i < n; ++i) {
      const auto fp = shifted(i, t, -1, 0.0);
      const auto fm = shifted(i, -t, -1, 0.0);
      for (int o = 0; o < outputs; ++o) {
        s.d1[o * n + i] = (fp[o] - fm[o]) / (2.0 * t);
        s.d2[(o * n + i) * n + i] = (fp[o] - 2.0 * f0[o] + fm[o]) / (t * t);
      }
      for (int j = i + 1; j < n; ++j) {
        const auto fpp = shifted(i, t, j, t);
        const auto fpm = shifted(i, t, j, -t);
        const auto fmp = shifted(i, -t, j, t);
        const auto fmm = shifted(i, -t, j, -t);
        for (int o = 0; o < outputs; ++o) {
          const double m = (fpp[o] - fpm[o] - fmp[o] + fmm[o]) / (4.0 * t * t);
          s.d2[(o * n + i) * n + j] = m;
          s.d2[(o * n + j) * n + i] = m;
        }
      }
    }
    return s;
  };
  const Stencil coarse = stencil(h);
  const Stencil fine = stencil(0.5 * h);

  std::vector<Jet> out(static_cast<std::size_t>(outputs));
  for (int o = 0; o < outputs; ++o) {
    Jet j(f0[o], n);
    for (int i = 0; i < n; ++i) {
      j.grad(i) = (4.0 * fine.d1[o * n + i] - coarse.d1[o * n + i]) / 3.0;
      for (int k = i; k < n; ++k)
        j.hess(i, k) = (4.0 * fine.d2[(o * n + i) * n + k] - coarse.d2[(o * n + i) * n + k]) / 3.0;
    }
    out[o] = j;
  }
  return out;
}

BundleForm BundleForm::with_finite_difference_jets(double rel_step) const {
  const ModelSpace space = space_;
  const ValueFn values = value_fn_;
  const int outputs = rank_ * binomial(space_.dim(), degree_);
  JetFn jets = [space, values, outputs, rel_step](std::span<const Jet> x, std::span<Jet> out) {
    ChartPoint p(static_cast<int>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) p[static_cast<int>(i)] = x[i].value();
    const auto j = finite_difference_jets(space, values, outputs, p, rel_step);
    std::copy(j.begin(), j.end(), out.begin());
  };
  return BundleForm(space_, degree_, rank_, std::move(jets), value_fn_);
}

}  // namespace emt
