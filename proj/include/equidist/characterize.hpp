#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "equidist/circle.hpp"
#include "equidist/function.hpp"
#include "equidist/spline.hpp"

namespace equidist {

/// Candidate equidistant function G with its first derivative, either closed
/// form or a cubic-spline interpolant of traced samples.
class ScalarField {
 public:
  virtual ~ScalarField() = default;
  virtual double value(double x) const = 0;
  virtual double derivative(double x) const = 0;
  /// Domain of validity; unbounded for closed forms.
  virtual std::pair<double, double> domain() const;
};

using FieldRef = std::shared_ptr<const ScalarField>;

FieldRef make_field(FunctionRef g);
FieldRef make_field(std::function<double(double)> value, std::function<double(double)> slope);
FieldRef make_spline_field(std::vector<double> xs, std::vector<double> ys);
/// Spline field through the (x, y) coordinates of a traced curve.
FieldRef make_curve_field(const std::vector<ParamSample>& curve);

/// The characterization map: given the value and slope of G at x, returns the
/// foot parameter t of the would-be equidistant parameterization.
double h_map(double x, double g_value, double g_slope, double radius);
double h_map(const ScalarField& g, double radius, double x);

/// nD form; grad_g is the gradient of G at x.
Vec h_map_nd(const Vec& x, double g_value, const Vec& g_grad, double radius);

/// Inverts h by bracketed bisection (h is injective under the theorem's
/// hypotheses); returns x with |h(x) - t| <= residual_tol.
double invert_h(const ScalarField& g, double radius, double t,
                double residual_tol = 1e-10);

/// nD inversion by Newton iteration with a finite-difference Jacobian and a
/// damped fallback.
Vec invert_h_nd(const std::function<double(const Vec&)>& g_value,
                const std::function<Vec(const Vec&)>& g_grad, double radius, const Vec& t,
                double residual_tol = 1e-10);

struct CharacterizationReport {
  bool ok = false;
  bool h_injective_on_grid = false;
  bool cond_polar = false;       // (i)  r > R
  bool cond_gnorm = false;       // (ii) strengthened |g| < 1 inequality
  bool cond_monotone = false;    // (iii) g/sqrt(1-g^2) increasing on the grid
  double max_compat_residual = 0.0;
  bool recovered_positive = false;
  bool recovered_convex = false;
  std::vector<Reconstructed> recovered_f;  // (t, f, f') at the grid nodes
  double worst_equidistance_residual = 0.0;
  /// All certificates hold on the sampled grid hull only.
  std::string certified_on;
  nlohmann::json to_json() const;
};

/// Decides whether G is a circular equidistant function over the t grid:
/// inverts h, checks the three parameterization conditions, recovers f, and
/// arbitrates with a distance oracle against the recovered graph.
CharacterizationReport is_equidistant_function(const ScalarField& g, double radius,
                                               const std::vector<double>& t_grid,
                                               double tol = 1e-6);

}  // namespace equidist
