#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "emt/catalog.hpp"
#include "emt/random_fields.hpp"

namespace test {

using namespace emt;

inline constexpr double kPi = 3.14159265358979323846;

inline ChartPoint point(std::initializer_list<double> v) {
  ChartPoint x(static_cast<int>(v.size()));
  int i = 0;
  for (double c : v) x[i++] = c;
  return x;
}

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }
inline double max_abs(const Vec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

inline FormValue random_form_value(int n, int k, int rank, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FormValue f(n, k, rank);
  for (auto& c : f.comps) c = u(rng);
  return f;
}

// Permutation sign of a sequence of distinct integers, 0 if there is a repeat.
inline int permutation_sign(std::vector<int> v) {
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (v[i] == v[j]) return 0;
      if (v[i] > v[j]) sign = -sign;
    }
  return sign;
}

// All index tuples of length k over [0, n).
inline std::vector<std::vector<int>> all_tuples(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(k, 0);
  if (k == 0) return {{}};
  while (true) {
    out.push_back(t);
    int pos = k - 1;
    while (pos >= 0 && ++t[pos] == n) t[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

// Fully antisymmetric component psi^a_{i1..ik} for an arbitrary tuple.
inline double full_component(const FormValue& f, int a, const std::vector<int>& tuple) {
  std::vector<int> sorted = tuple;
  std::sort(sorted.begin(), sorted.end());
  const int sign = permutation_sign(tuple);
  if (sign == 0) return 0.0;
  std::uint32_t mask = 0;
  for (int i : sorted) mask |= 1u << i;
  return sign * f.at(a, f.indices().position(mask));
}

inline double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace test
