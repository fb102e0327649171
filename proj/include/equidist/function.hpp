#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "equidist/linalg.hpp"

namespace equidist {

/// Value with derivatives at a point: f, grad f, and (when requested) the Hessian.
struct Jet {
  double value = 0.0;
  Vec grad;
  Mat hess;
};

/// A convex function f : R^n -> R described by its value and exact derivatives.
/// Convexity is a caller-side contract checked numerically via verify_convexity;
/// intentionally non-convex instances are allowed for negative tests.
class ConvexFunction {
 public:
  virtual ~ConvexFunction() = default;

  /// Dimension n of the base space.
  virtual int dim() const = 0;

  /// Highest derivative order available at t (2 for smooth closed forms).
  virtual int max_order(const Vec& t) const { (void)t; return 2; }

  /// True when the function is C^1 everywhere with a convex epigraph, so the
  /// squared distance to the epigraph is unimodal in the foot parameter.
  virtual bool smooth() const { return true; }

  virtual Jet eval(const Vec& t, int order) const = 0;

  virtual nlohmann::json to_json() const = 0;

  // 1D conveniences.
  double value(double t) const { return eval(Vec{t}, 0).value; }
  double slope(double t) const { return eval(Vec{t}, 1).grad[0]; }
  double curvature(double t) const { return eval(Vec{t}, 2).hess[0][0]; }
  double value(const Vec& t) const { return eval(t, 0).value; }
};

using FunctionRef = std::shared_ptr<const ConvexFunction>;

FunctionRef make_sqrt1p();
FunctionRef make_exp();
/// Coefficients in ascending order: coeffs[k] multiplies t^k.
FunctionRef make_poly1d(std::vector<double> coeffs);
/// f(t) = t'Qt + b't + c with Q symmetric positive semidefinite.
FunctionRef make_quadform(Mat q, Vec b, double c);
FunctionRef make_shifted_parabola(double center, double offset);
/// The piecewise scene boundary used by the fat-Cantor construction:
/// a line, a circular arc and a horizontal ray, glued convexly.
FunctionRef make_svc();
/// Piecewise-linear interpolant through knots; value-only, for negative tests.
FunctionRef make_tabulated(std::vector<std::pair<double, double>> knots);
/// Pointwise minimum of the members; value-only at crossings.
FunctionRef make_min_family(std::vector<FunctionRef> members);

FunctionRef function_from_json(const nlohmann::json& j);

inline Jet evaluate(const ConvexFunction& f, const Vec& t, int order) {
  return f.eval(t, order);
}

struct ConvexityReport {
  bool ok = false;
  double worst_second_difference = 0.0;
  /// Leading principal minors of the quadratic-form kernel, when applicable.
  std::vector<double> minors;
};

/// Samples second differences along axis and diagonal directions over the box.
ConvexityReport verify_convexity(const ConvexFunction& f, const Vec& lo, const Vec& hi,
                                 double grid_step);

struct Extremum {
  Vec argmin;
  double min = 0.0;
};

/// Global minimum over an axis-aligned box.
Extremum infimum(const ConvexFunction& f, const Vec& lo, const Vec& hi);

/// Minimum over the closed ball |t - center| <= radius.
Extremum min_on_ball(const ConvexFunction& f, const Vec& center, double radius);

namespace defaults {
inline constexpr double tol = 1e-10;
inline constexpr int max_iterations = 200;
inline constexpr double inf_box_half_width = 50.0;
}  // namespace defaults

}  // namespace equidist
