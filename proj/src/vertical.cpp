#include "equidist/vertical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "equidist/detail/optimize.hpp"
#include "equidist/error.hpp"

namespace equidist {

namespace {

Vec default_box_lo(int n) { return Vec(n, -defaults::inf_box_half_width); }
Vec default_box_hi(int n) { return Vec(n, defaults::inf_box_half_width); }

const ConvexFunction& epigraph_function_of(const FocalSet& l) {
  const ConvexFunction* f = l.boundary_function();
  if (!f) throw invalid_input("scan_vertical: L must be the epigraph of a function");
  return *f;
}

}  // namespace

VerticalBounds vertical_bounds(const Vec& x, const FocalSet& k, const ConvexFunction& f) {
  const int n = f.dim();
  if (static_cast<int>(x.size()) != n) throw invalid_input("vertical_bounds: dimension mismatch");
  const auto base = k.lowest_point();
  if (!base) throw invalid_input("vertical_bounds: K does not expose a lowest point");
  const Vec base_xy = *base;
  const Vec base_base(base_xy.begin(), base_xy.end() - 1);
  const double y_star = base_xy.back();

  const double inf_f = infimum(f, default_box_lo(n), default_box_hi(n)).min;
  if (y_star >= inf_f) throw invalid_input("vertical_bounds: no base point below graph");

  const double reach = distance(x, base_base);
  // The numerical minimum over the ball only overestimates the true one; shade
  // it down so the Lemma bound stays valid.
  const double u_num = min_on_ball(f, x, reach).min;
  const double u = u_num - 1e-9 * (1.0 + std::abs(u_num));

  VerticalBounds vb;
  vb.x = x;
  vb.base_point = base_xy;
  vb.u = u_num;
  vb.upper = f.eval(x, 0).value;
  vb.lower = std::min((reach * reach + y_star * y_star - u * u) / (2.0 * (y_star - u)), y_star);
  return vb;
}

VerticalScan scan_vertical(const Vec& x, const FocalSet& k, const FocalSet& l,
                           const ScanOptions& opts) {
  if (opts.grid_n < 2) throw invalid_input("scan_vertical: grid_n must be at least 2");
  const ConvexFunction& f = epigraph_function_of(l);
  const VerticalBounds vb = vertical_bounds(x, k, f);

  auto residual = [&](double y) {
    Vec p = x;
    p.push_back(y);
    return equidistant_residual(p, k, l, opts.tol);
  };
  const double zero_eps = opts.zero_eps;
  auto sign_of = [&](double v) { return v > zero_eps ? 1 : (v < -zero_eps ? -1 : 0); };

  const int m = opts.grid_n;
  const double h = (vb.upper - vb.lower) / (m - 1);
  std::vector<double> ys(m), vals(m);
  for (int i = 0; i < m; ++i) {
    ys[i] = vb.lower + i * h;
    vals[i] = residual(ys[i]);
  }

  std::vector<double> roots;
  auto refine_cluster_edge = [&](double inside, double outside) {
    // Boundary of |residual| <= zero_eps between a zero sample and a signed one.
    return detail::bisect_indicator(
        [&](double y) { return std::abs(residual(y)) > zero_eps; }, inside, outside, opts.tol);
  };
  for (int i = 0; i < m; ++i) {
    const int s = sign_of(vals[i]);
    if (s == 0) {
      roots.push_back(ys[i]);
      if (i > 0 && sign_of(vals[i - 1]) != 0) roots.push_back(refine_cluster_edge(ys[i], ys[i - 1]));
      if (i + 1 < m && sign_of(vals[i + 1]) != 0)
        roots.push_back(refine_cluster_edge(ys[i], ys[i + 1]));
      continue;
    }
    if (i + 1 < m) {
      const int s_next = sign_of(vals[i + 1]);
      if (s_next != 0 && s_next != s)
        roots.push_back(detail::bisect_root(residual, ys[i], ys[i + 1], opts.tol));
    }
  }
  if (roots.empty()) {
    std::ostringstream os;
    os << "scan_vertical: no sign change over [" << vb.lower << ", " << vb.upper
       << "); try a larger grid_n than " << opts.grid_n;
    throw no_convergence(os.str(), vb.lower, vb.upper);
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> dedup;
  for (double r : roots)
    if (dedup.empty() || r - dedup.back() > 10.0 * opts.tol) dedup.push_back(r);

  VerticalScan scan;
  scan.x = x;
  scan.roots = std::move(dedup);
  scan.g_minus = scan.roots.front();
  scan.g_plus = scan.roots.back();
  return scan;
}

ExistenceReport existence_check(const FocalSet& k, const ConvexFunction& f) {
  return existence_check(k, f, default_box_lo(f.dim()), default_box_hi(f.dim()));
}

ExistenceReport existence_check(const FocalSet& k, const ConvexFunction& f, const Vec& lo,
                                const Vec& hi) {
  const auto base = k.lowest_point();
  if (!base) throw invalid_input("existence_check: K does not expose a lowest point");
  ExistenceReport report;
  report.base_y = base->back();
  report.box_lo = lo;
  report.box_hi = hi;
  const Extremum inf = infimum(f, lo, hi);
  report.inf_estimate = inf.min;
  report.exists = report.base_y < report.inf_estimate;

  // Growth probe: f on the box boundary should dominate the interior estimate,
  // otherwise the global infimum may escape the box.
  const int n = f.dim();
  double boundary_min = std::numeric_limits<double>::infinity();
  if (n == 1) {
    boundary_min = std::min(f.eval({lo[0]}, 0).value, f.eval({hi[0]}, 0).value);
  } else {
    const int probes = 16;
    for (int axis = 0; axis < n; ++axis) {
      for (int side = 0; side < 2; ++side) {
        for (int p = 0; p <= probes; ++p) {
          Vec t(n);
          for (int i = 0; i < n; ++i) {
            t[i] = (i == axis) ? (side ? hi[i] : lo[i])
                               : lo[i] + (hi[i] - lo[i]) * p / static_cast<double>(probes);
          }
          boundary_min = std::min(boundary_min, f.eval(t, 0).value);
        }
      }
    }
  }
  report.boundary_growth_ok = boundary_min > report.inf_estimate;
  return report;
}

std::vector<VerticalScan> profile(const std::vector<Vec>& xs, const FocalSet& k,
                                  const FocalSet& l, const ScanOptions& opts) {
  std::vector<VerticalScan> out;
  out.reserve(xs.size());
  for (const Vec& x : xs) out.push_back(scan_vertical(x, k, l, opts));
  return out;
}

std::vector<VerticalScan> profile(const std::vector<double>& xs, const FocalSet& k,
                                  const FocalSet& l, const ScanOptions& opts) {
  std::vector<VerticalScan> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(scan_vertical(x, k, l, opts));
  return out;
}

}  // namespace equidist
