#pragma once

#include <functional>
#include <utility>

#include "equidist/linalg.hpp"

namespace equidist::detail {

using ScalarFn = std::function<double(double)>;

/// Golden-section search for the minimum of a unimodal function on [lo, hi].
/// Returns the argmin located to within arg_tol. Throws no_convergence when the
/// iteration cap is exhausted before the bracket shrinks to arg_tol.
double golden_section(const ScalarFn& fn, double lo, double hi, double arg_tol,
                      int max_iter = 200);

/// Minimum of an arbitrary continuous function on [lo, hi]: dense grid scan
/// followed by golden-section refinement around every local basin.
double grid_refine_min(const ScalarFn& fn, double lo, double hi, double arg_tol,
                       int grid_n = 1025);

/// Expands a bracket [center - d, center + d] by doubling until the endpoint
/// values exceed an interior sample, so the minimum of a unimodal fn is inside.
std::pair<double, double> expand_bracket(const ScalarFn& fn, double center,
                                         double initial_step = 1.0, int max_doublings = 60);

/// Bisection for a sign change of fn on [lo, hi]; requires fn(lo) and fn(hi) of
/// opposite sign (or zero). Returns the midpoint of the final bracket of width
/// <= arg_tol.
double bisect_root(const ScalarFn& fn, double lo, double hi, double arg_tol,
                   int max_iter = 200);

/// Bisection on a monotone boolean indicator: pred is false on [lo, x*) and true
/// on (x*, hi]; requires !pred(lo) and pred(hi). Returns x* to within arg_tol.
double bisect_indicator(const std::function<bool(double)>& pred, double lo, double hi,
                        double arg_tol, int max_iter = 200);

}  // namespace equidist::detail
