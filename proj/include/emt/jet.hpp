#pragma once

// Second-order forward-mode jets: value, gradient and Hessian of a scalar
// with respect to up to kMaxDim chart coordinates.

#include <array>
#include <cmath>
#include <limits>
#include <ostream>

namespace emt {

inline constexpr int kMaxDim = 6;
inline constexpr int kMaxPacked = kMaxDim * (kMaxDim + 1) / 2;

/// Packed index of the symmetric entry (i, j); independent of the dimension.
constexpr int packed_index(int i, int j) {
  return i <= j ? j * (j + 1) / 2 + i : i * (i + 1) / 2 + j;
}

/// Truncated second-order Taylor expansion of a function of n variables.
///
/// Arithmetic follows the chain rule exactly, so evaluating an analytic
/// expression on coordinate jets yields exact first and second partials.
/// A jet produced by `partial()` has no valid second derivatives; its Hessian
/// is filled with NaN so that any accidental use is visible downstream.
class Jet {
 public:
  Jet() = default;
  explicit Jet(double value, int dim = 0) : value_(value), dim_(dim) {}

  static Jet variable(int dim, int index, double value) {
    Jet j(value, dim);
    j.grad_[index] = 1.0;
    return j;
  }
  static Jet constant(int dim, double value) { return Jet(value, dim); }

  /// Assigning a plain number makes the jet constant (dimension kept).
  Jet& operator=(double v) {
    value_ = v;
    grad_.fill(0.0);
    hess_.fill(0.0);
    return *this;
  }

  double value() const { return value_; }
  int dim() const { return dim_; }
  double grad(int i) const { return grad_[i]; }
  double hess(int i, int j) const { return hess_[packed_index(i, j)]; }
  double& grad(int i) { return grad_[i]; }
  double& hess(int i, int j) { return hess_[packed_index(i, j)]; }
  bool has_hessian() const { return !std::isnan(hess_[0]) || dim_ == 0; }

  /// The jet of ∂_i of this function: value and gradient exact, Hessian NaN.
  Jet partial(int i) const {
    Jet d(grad_[i], dim_);
    for (int j = 0; j < dim_; ++j) d.grad_[j] = hess(i, j);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int k = 0; k < dim_ * (dim_ + 1) / 2; ++k) d.hess_[k] = nan;
    return d;
  }

  /// Composition with a scalar function given f(v), f'(v), f''(v).
  Jet compose(double f0, double f1, double f2) const {
    Jet r(f0, dim_);
    for (int i = 0; i < dim_; ++i) r.grad_[i] = f1 * grad_[i];
    for (int j = 0; j < dim_; ++j)
      for (int i = 0; i <= j; ++i) {
        const int k = packed_index(i, j);
        r.hess_[k] = f1 * hess_[k] + f2 * grad_[i] * grad_[j];
      }
    return r;
  }

  Jet& operator+=(const Jet& b) {
    widen(b.dim_);
    value_ += b.value_;
    for (int i = 0; i < b.dim_; ++i) grad_[i] += b.grad_[i];
    for (int k = 0; k < b.dim_ * (b.dim_ + 1) / 2; ++k) hess_[k] += b.hess_[k];
    return *this;
  }
  Jet& operator-=(const Jet& b) {
    widen(b.dim_);
    value_ -= b.value_;
    for (int i = 0; i < b.dim_; ++i) grad_[i] -= b.grad_[i];
    for (int k = 0; k < b.dim_ * (b.dim_ + 1) / 2; ++k) hess_[k] -= b.hess_[k];
    return *this;
  }
  Jet& operator*=(double s) {
    value_ *= s;
    for (int i = 0; i < dim_; ++i) grad_[i] *= s;
    for (int k = 0; k < dim_ * (dim_ + 1) / 2; ++k) hess_[k] *= s;
    return *this;
  }
  Jet& operator+=(double s) {
    value_ += s;
    return *this;
  }
  Jet& operator-=(double s) {
    value_ -= s;
    return *this;
  }
  Jet& operator/=(double s) { return *this *= (1.0 / s); }
  Jet& operator*=(const Jet& b) { return *this = *this * b; }
  Jet& operator/=(const Jet& b) { return *this = *this / b; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    const int n = a.dim_ > b.dim_ ? a.dim_ : b.dim_;
    Jet r(a.value_ * b.value_, n);
    for (int i = 0; i < n; ++i) r.grad_[i] = a.value_ * b.grad_[i] + b.value_ * a.grad_[i];
    for (int j = 0; j < n; ++j)
      for (int i = 0; i <= j; ++i) {
        const int k = packed_index(i, j);
        r.hess_[k] = a.value_ * b.hess_[k] + b.value_ * a.hess_[k] +
                     a.grad_[i] * b.grad_[j] + a.grad_[j] * b.grad_[i];
      }
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
  friend Jet reciprocal(const Jet& b) {
    const double inv = 1.0 / b.value_;
    return b.compose(inv, -inv * inv, 2.0 * inv * inv * inv);
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) { return a *= -1.0; }
  friend Jet operator+(Jet a, double s) { return a += s; }
  friend Jet operator+(double s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, double s) { return a -= s; }
  friend Jet operator-(double s, const Jet& a) { return -a + s; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, double s) { return a /= s; }
  friend Jet operator/(double s, const Jet& a) { return s * reciprocal(a); }

  friend std::ostream& operator<<(std::ostream& os, const Jet& j) {
    os << "Jet(" << j.value_ << "; ";
    for (int i = 0; i < j.dim_; ++i) os << (i ? "," : "") << j.grad_[i];
    return os << ")";
  }

 private:
  void widen(int n) {
    if (n > dim_) dim_ = n;
  }

  double value_ = 0.0;
  int dim_ = 0;
  std::array<double, kMaxDim> grad_{};
  std::array<double, kMaxPacked> hess_{};
};

inline Jet sqrt(const Jet& a) {
  const double s = std::sqrt(a.value());
  return a.compose(s, 0.5 / s, -0.25 / (s * a.value()));
}
inline Jet pow(const Jet& a, double e) {
  const double v = a.value();
  const double p2 = std::pow(v, e - 2.0);
  return a.compose(p2 * v * v, e * p2 * v, e * (e - 1.0) * p2);
}
inline Jet exp(const Jet& a) {
  const double e = std::exp(a.value());
  return a.compose(e, e, e);
}
inline Jet log(const Jet& a) {
  const double v = a.value();
  return a.compose(std::log(v), 1.0 / v, -1.0 / (v * v));
}
inline Jet sin(const Jet& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return a.compose(s, c, -s);
}
inline Jet cos(const Jet& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return a.compose(c, -s, -c);
}
inline Jet sinh(const Jet& a) {
  const double s = std::sinh(a.value()), c = std::cosh(a.value());
  return a.compose(s, c, s);
}
inline Jet cosh(const Jet& a) {
  const double s = std::sinh(a.value()), c = std::cosh(a.value());
  return a.compose(c, s, c);
}
inline Jet asinh(const Jet& a) {
  const double v = a.value();
  const double q = 1.0 / std::sqrt(1.0 + v * v);
  return a.compose(std::asinh(v), q, -v * q * q * q);
}

// Overload set so templated field code can be written once for double and Jet.
using std::asinh;
using std::cos;
using std::cosh;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sinh;
using std::sqrt;

inline double value_of(double v) { return v; }
inline double value_of(const Jet& j) { return j.value(); }

}  // namespace emt
