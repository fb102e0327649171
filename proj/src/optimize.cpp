#include "equidist/detail/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "equidist/error.hpp"

namespace equidist::detail {

namespace {
constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5)-1)/2
}

double golden_section(const ScalarFn& fn, double lo, double hi, double arg_tol, int max_iter) {
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = fn(c), fd = fn(d);
  for (int it = 0; it < max_iter; ++it) {
    if (b - a <= arg_tol) return 0.5 * (a + b);
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = fn(d);
    }
  }
  if (b - a <= arg_tol * 16) return 0.5 * (a + b);
  throw no_convergence("golden_section: iteration cap reached", a, b);
}

double grid_refine_min(const ScalarFn& fn, double lo, double hi, double arg_tol, int grid_n) {
  if (grid_n < 3) grid_n = 3;
  const double h = (hi - lo) / (grid_n - 1);
  std::vector<double> vals(grid_n);
  for (int i = 0; i < grid_n; ++i) vals[i] = fn(lo + i * h);

  double best_arg = lo;
  double best_val = vals[0];
  auto consider = [&](double arg) {
    const double v = fn(arg);
    if (v < best_val) {
      best_val = v;
      best_arg = arg;
    }
  };
  for (int i = 0; i < grid_n; ++i) {
    const bool local_min = (i == 0 || vals[i] <= vals[i - 1]) &&
                           (i == grid_n - 1 || vals[i] <= vals[i + 1]);
    if (!local_min) continue;
    const double a = lo + std::max(0, i - 1) * h;
    const double b = lo + std::min(grid_n - 1, i + 1) * h;
    consider(a == b ? a : golden_section(fn, a, b, arg_tol));
  }
  return best_arg;
}

std::pair<double, double> expand_bracket(const ScalarFn& fn, double center, double initial_step,
                                         int max_doublings) {
  // Stop only when both flanks exceed the center value AND keep rising across
  // the last doubling, so every basin of a two-walled valley lies inside.
  double d = initial_step;
  const double fc = fn(center);
  double flo_half = fn(center - 0.5 * d);
  double fhi_half = fn(center + 0.5 * d);
  // An overflowed sample counts as risen: the objective has certainly passed
  // every basin once it leaves the representable range.
  auto risen = [](double outer, double inner) { return outer > inner || std::isinf(outer); };
  for (int i = 0; i < max_doublings; ++i) {
    const double flo = fn(center - d);
    const double fhi = fn(center + d);
    if (flo > fc && fhi > fc && risen(flo, flo_half) && risen(fhi, fhi_half))
      return {center - d, center + d};
    flo_half = flo;
    fhi_half = fhi;
    d *= 2.0;
  }
  throw no_convergence("expand_bracket: no enclosing bracket found", center - initial_step,
                       center + initial_step);
}

namespace {
double resolution_limit(double arg_tol, double lo, double hi) {
  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  return arg_tol + 4.0 * std::numeric_limits<double>::epsilon() * scale;
}
}  // namespace

double bisect_root(const ScalarFn& fn, double lo, double hi, double arg_tol, int max_iter) {
  double flo = fn(lo);
  double fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0))
    throw invalid_input("bisect_root: no sign change on the bracket");
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= resolution_limit(arg_tol, lo, hi)) return mid;
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  if (hi - lo <= resolution_limit(arg_tol, lo, hi) * 16) return 0.5 * (lo + hi);
  throw no_convergence("bisect_root: iteration cap reached", lo, hi);
}

double bisect_indicator(const std::function<bool(double)>& pred, double lo, double hi,
                        double arg_tol, int max_iter) {
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(hi - lo) <= resolution_limit(arg_tol, lo, hi)) break;
    const double mid = 0.5 * (lo + hi);
    if (pred(mid))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace equidist::detail
