#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "equidist/error.hpp"

namespace equidist {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double distance(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline Vec add(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline Vec sub(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline Vec scale(Vec a, double c) {
  for (double& v : a) v *= c;
  return a;
}

inline Vec axpy(double c, const Vec& x, Vec y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
  return y;
}

inline Vec matvec(const Mat& m, const Vec& v) {
  Vec out(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], v);
  return out;
}

/// Solves a small dense system in place (Gaussian elimination, partial pivoting).
/// Sized for the low-dimensional problems in this library.
Vec solve_dense(Mat a, Vec b);

inline bool all_finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace equidist
