#pragma once

// Bundle-valued exterior forms: increasing multi-indices, pointwise form
// values over a scalar type (double or Jet), connections on the fibre, and
// fields that evaluate to 2-jets at chart points.

#include <bit>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "emt/manifold.hpp"
#include "emt/types.hpp"

namespace emt {

int binomial(int n, int k);

/// The increasing k-multi-indices of {0, ..., n-1} in lexicographic order.
/// A multi-index is stored as a bit mask of its entries.
class MultiIndexSet {
 public:
  static const MultiIndexSet& get(int n, int k);

  int dim() const { return n_; }
  int degree() const { return k_; }
  int size() const { return static_cast<int>(masks_.size()); }
  std::uint32_t mask(int pos) const { return masks_[pos]; }
  /// Position of a mask with popcount k, or -1.
  int position(std::uint32_t mask) const { return lookup_[mask]; }
  std::vector<int> entries(int pos) const;

  MultiIndexSet(int n, int k);

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<std::uint32_t> masks_;
  std::vector<int> lookup_;
};

/// Sign of moving `axis` from the front of (axis, J) into increasing order,
/// (-1)^#{j in J : j < axis}; zero if axis is already in J.
inline int insertion_sign(std::uint32_t mask, int axis) {
  if (mask & (1u << axis)) return 0;
  return (std::popcount(mask & ((1u << axis) - 1u)) & 1) ? -1 : 1;
}

/// Sign of the shuffle sorting the concatenation (I, J) of two disjoint
/// increasing multi-indices; zero if they intersect.
int shuffle_sign(std::uint32_t first, std::uint32_t second);

/// The value of an E-valued k-form at a point: components psi^a_I over the
/// fibre index a and increasing multi-indices I, in a chosen coframe.
template <class S>
struct Form {
  int dim = 0;
  int degree = 0;
  int rank = 1;
  std::vector<S> comps;  // comps[a * count + pos]

  Form() = default;
  Form(int dim_, int degree_, int rank_)
      : dim(dim_), degree(degree_), rank(rank_),
        comps(static_cast<std::size_t>(rank_ * binomial(dim_, degree_)), S(0.0)) {}

  int count() const { return binomial(dim, degree); }
  const MultiIndexSet& indices() const { return MultiIndexSet::get(dim, degree); }
  S& at(int a, int pos) { return comps[static_cast<std::size_t>(a * count() + pos)]; }
  const S& at(int a, int pos) const { return comps[static_cast<std::size_t>(a * count() + pos)]; }

  Form& operator+=(const Form& o) {
    for (std::size_t i = 0; i < comps.size(); ++i) comps[i] += o.comps[i];
    return *this;
  }
  Form& operator-=(const Form& o) {
    for (std::size_t i = 0; i < comps.size(); ++i) comps[i] -= o.comps[i];
    return *this;
  }
  template <class T>
  Form& operator*=(const T& s) {
    for (auto& c : comps) c *= s;
    return *this;
  }
};

using FormValue = Form<double>;
using FormJet = Form<Jet>;

FormValue values_of(const FormJet& f);
double max_abs(const FormValue& f);

/// Interior product with the coordinate vector d_axis:
/// (i_axis psi)_J = psi_{axis J}.
template <class S>
Form<S> interior_axis(int axis, const Form<S>& psi) {
  if (psi.degree < 1) throw ShapeError("interior product of a 0-form");
  Form<S> out(psi.dim, psi.degree - 1, psi.rank);
  const auto& lower = out.indices();
  const auto& upper = psi.indices();
  for (int pos = 0; pos < lower.size(); ++pos) {
    const int sign = insertion_sign(lower.mask(pos), axis);
    if (sign == 0) continue;
    const int src = upper.position(lower.mask(pos) | (1u << axis));
    for (int a = 0; a < psi.rank; ++a) {
      if (sign > 0)
        out.at(a, pos) += psi.at(a, src);
      else
        out.at(a, pos) -= psi.at(a, src);
    }
  }
  return out;
}

/// Interior product with a vector given by coordinate components.
template <class S, class V>
Form<S> interior(const V& vector, const Form<S>& psi) {
  if (psi.degree < 1) throw ShapeError("interior product of a 0-form");
  Form<S> out(psi.dim, psi.degree - 1, psi.rank);
  for (int i = 0; i < psi.dim; ++i) {
    Form<S> part = interior_axis(i, psi);
    for (std::size_t c = 0; c < out.comps.size(); ++c) out.comps[c] += part.comps[c] * vector[i];
  }
  return out;
}

/// alpha ^ beta for a scalar form alpha and an E-valued form beta.
template <class S>
Form<S> wedge(const Form<S>& alpha, const Form<S>& beta) {
  if (alpha.rank != 1) throw ShapeError("wedge: left factor must be scalar-valued");
  if (alpha.dim != beta.dim) throw ShapeError("wedge: dimension mismatch");
  if (alpha.degree + beta.degree > alpha.dim) throw ShapeError("wedge: degree exceeds dimension");
  Form<S> out(beta.dim, alpha.degree + beta.degree, beta.rank);
  const auto& left = alpha.indices();
  const auto& right = beta.indices();
  const auto& result = out.indices();
  for (int i = 0; i < left.size(); ++i)
    for (int j = 0; j < right.size(); ++j) {
      const int sign = shuffle_sign(left.mask(i), right.mask(j));
      if (sign == 0) continue;
      const int pos = result.position(left.mask(i) | right.mask(j));
      for (int a = 0; a < beta.rank; ++a) out.at(a, pos) += alpha.at(0, i) * beta.at(a, j) * static_cast<double>(sign);
    }
  return out;
}

/// Components in the orthonormal coframe of a conformally flat metric
/// g = s^-2 identity: psi(e_I) = s^k psi_I (with e_i = s d_i). The inverse
/// direction divides by s^k.
template <class S>
Form<S> to_orthonormal(Form<S> psi, const S& scale) {
  S factor(1.0);
  for (int i = 0; i < psi.degree; ++i) factor = factor * scale;
  for (auto& c : psi.comps) c = c * factor;
  return psi;
}

template <class S>
Form<S> from_orthonormal(Form<S> psi, const S& scale) {
  S factor(1.0);
  for (int i = 0; i < psi.degree; ++i) factor = factor * scale;
  for (auto& c : psi.comps) c = c / factor;
  return psi;
}

/// Euclidean dot product of components (the fibre and form inner product when
/// both forms are given in an orthonormal coframe).
template <class S>
S frame_dot(const Form<S>& a, const Form<S>& b) {
  if (a.comps.size() != b.comps.size() || a.degree != b.degree) throw ShapeError("inner product: shape mismatch");
  S sum(0.0);
  for (std::size_t i = 0; i < a.comps.size(); ++i) sum += a.comps[i] * b.comps[i];
  return sum;
}

/// Gram-determinant inner product of coordinate components for an arbitrary
/// inverse metric: sum_a sum_{I,J} psi1^a_I psi2^a_J det(ginv[I, J]).
double inner_product(const Mat& ginv, const FormValue& psi1, const FormValue& psi2);

/// The same with the metric of `space` at x.
double inner_product(const ModelSpace& space, const ChartPoint& x, const FormValue& psi1, const FormValue& psi2);

/// Orthonormal frame e_a (columns, coordinate components) and dual coframe
/// omega^a (rows).
struct OrthonormalFrame {
  Mat frame;
  Mat coframe;
};

OrthonormalFrame orthonormal_frame(const ModelSpace& space, const ChartPoint& x);

struct BundleSpec {
  int rank = 1;
};

/// Connection coefficient matrices A_i(x) on the fibre in an orthonormal
/// gauge. Metric compatibility means each A_i is skew-symmetric.
class ConnectionField {
 public:
  /// Writes the jet of (A_i)_ab to out[(i * rank + a) * rank + b].
  using JetFn = std::function<void(std::span<const Jet>, std::span<Jet>)>;

  ConnectionField(int dim, int rank, JetFn fn);
  static ConnectionField trivial(int dim, int rank);

  int dim() const { return dim_; }
  int rank() const { return rank_; }
  bool is_trivial() const { return !fn_; }

  std::vector<Jet> jets(const ChartPoint& x) const;
  /// A_i at x for i = 0..dim-1.
  std::vector<Mat> values(const ChartPoint& x) const;

 private:
  int dim_;
  int rank_;
  JetFn fn_;
};

/// An E-valued k-form field given in the coordinate coframe, evaluable to
/// 2-jets (through forward-mode jets) and to plain values.
class BundleForm {
 public:
  using JetFn = std::function<void(std::span<const Jet>, std::span<Jet>)>;
  using ValueFn = std::function<void(std::span<const double>, std::span<double>)>;

  BundleForm(ModelSpace space, int degree, int rank, JetFn jet_fn, ValueFn value_fn);

  /// Wraps a generic callable f(std::span<const S> x, std::span<S> out),
  /// instantiated for S = Jet and S = double.
  template <class F>
  static BundleForm from_generic(const ModelSpace& space, int degree, int rank, F f) {
    return BundleForm(
        space, degree, rank, [f](std::span<const Jet> x, std::span<Jet> out) { f(x, out); },
        [f](std::span<const double> x, std::span<double> out) { f(x, out); });
  }

  static BundleForm zero(const ModelSpace& space, int degree, int rank);

  const ModelSpace& space() const { return space_; }
  int dim() const { return space_.dim(); }
  int degree() const { return degree_; }
  int rank() const { return rank_; }
  BundleSpec bundle() const { return {rank_}; }

  FormJet jet(const ChartPoint& x) const;
  FormValue value(const ChartPoint& x) const;

  /// The same field with jets supplied by Richardson-extrapolated central
  /// differences of values (steps h and h/2, h = rel_step (1 + |x|), clamped
  /// to stay inside the chart).
  BundleForm with_finite_difference_jets(double rel_step = 1e-3) const;

 private:
  ModelSpace space_;
  int degree_;
  int rank_;
  JetFn jet_fn_;
  ValueFn value_fn_;
};

/// Central-difference 2-jets of a vector-valued map of the chart coordinates.
std::vector<Jet> finite_difference_jets(const ModelSpace& space, const BundleForm::ValueFn& f, int outputs,
                                        const ChartPoint& x, double rel_step = 1e-3);

}  // namespace emt
