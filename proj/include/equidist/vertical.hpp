#pragma once

#include <vector>

#include "equidist/focal.hpp"
#include "equidist/function.hpp"

namespace equidist {

/// Bracket for the last coordinate of equidistant points on the vertical line
/// through x, from the interior-ball argument: every root y satisfies
/// min{(|x-x*|^2 + y*^2 - u^2) / (2(y*-u)), y*} <= y < f(x), where (x*, y*) is
/// a point of K below the graph and u = min f over the ball |x - s| <= |x - x*|.
struct VerticalBounds {
  Vec x;
  double lower = 0.0;
  double upper = 0.0;
  double u = 0.0;
  Vec base_point;  // (x*, y*)
};

struct VerticalScan {
  Vec x;
  std::vector<double> roots;  // sorted
  double g_minus = 0.0;
  double g_plus = 0.0;
};

struct ScanOptions {
  int grid_n = 1024;
  double tol = defaults::tol;
  /// Residual magnitudes below this are treated as exact zeros, so scenes whose
  /// equidistant slice is a continuum report the whole cluster as roots.
  double zero_eps = 1e-12;
};

VerticalBounds vertical_bounds(const Vec& x, const FocalSet& k, const ConvexFunction& f);
inline VerticalBounds vertical_bounds(double x, const FocalSet& k, const ConvexFunction& f) {
  return vertical_bounds(Vec{x}, k, f);
}

/// All equidistant roots on the vertical line through x: samples the residual
/// over the Lemma bracket, bisects every sign change, and deduplicates roots
/// closer than 10*tol. L must be an epigraph-backed set.
VerticalScan scan_vertical(const Vec& x, const FocalSet& k, const FocalSet& l,
                           const ScanOptions& opts = {});
inline VerticalScan scan_vertical(double x, const FocalSet& k, const FocalSet& l,
                                  const ScanOptions& opts = {}) {
  return scan_vertical(Vec{x}, k, l, opts);
}

struct ExistenceReport {
  bool exists = false;
  double base_y = 0.0;     // minimal last coordinate of K
  double inf_estimate = 0.0;
  bool boundary_growth_ok = false;  // f larger on the box boundary than inside
  Vec box_lo, box_hi;
  explicit operator bool() const { return exists; }
};

/// Theorem-1 test: K (compact) has a point strictly below the graph of f.
/// The global infimum of f is estimated over the box (default [-50,50]^n).
ExistenceReport existence_check(const FocalSet& k, const ConvexFunction& f);
ExistenceReport existence_check(const FocalSet& k, const ConvexFunction& f, const Vec& lo,
                                const Vec& hi);

std::vector<VerticalScan> profile(const std::vector<Vec>& xs, const FocalSet& k,
                                  const FocalSet& l, const ScanOptions& opts = {});
std::vector<VerticalScan> profile(const std::vector<double>& xs, const FocalSet& k,
                                  const FocalSet& l, const ScanOptions& opts = {});

}  // namespace equidist
