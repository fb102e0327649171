#pragma once

#include <vector>

#include "equidist/function.hpp"

namespace equidist {

/// One node of the plane equidistant parameterization: foot parameter t on the
/// graph of f, equidistant point (x, y), common distance s, signed tangent-line
/// distance alpha, auxiliary ratio g = (x-t)/(r-R) and polar distance r.
struct ParamSample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double s = 0.0;
  double alpha = 0.0;
  double g = 0.0;
  double r = 0.0;
};

/// Admissible parameter interval ]t_minus, t_plus[; infinities when the
/// corresponding critical parameters do not exist.
struct CriticalDomain {
  double t_minus = 0.0;
  double t_plus = 0.0;
  bool bounded_below() const { return std::isfinite(t_minus); }
  bool bounded_above() const { return std::isfinite(t_plus); }
};

/// Signed distance of the tangent line of f at t from the origin; negative when
/// the origin lies below the tangent line.
double tangent_line_distance(const ConvexFunction& f, double t);

/// Locates the critical parameters by bisecting the indicator [alpha >= R] on
/// each half-axis; membership in the critical sets is upward/downward closed,
/// so the first crossing of a sweep brackets the boundary.
CriticalDomain critical_domain(const ConvexFunction& f, double radius,
                               double search_radius = 1e3);

/// Closed-form equidistant point for the admissible foot parameter t.
ParamSample equidistant_point(const ConvexFunction& f, double radius, double t);

/// Samples the parameterization over the grid and checks that x is strictly
/// increasing across it.
std::vector<ParamSample> trace_curve(const ConvexFunction& f, double radius,
                                     const std::vector<double>& t_grid);

struct Reconstructed {
  double t = 0.0;
  double f_value = 0.0;
  double f_slope = 0.0;
};

/// Recovers f and f' at each node from (t, x, y, s) alone.
Reconstructed reconstruct_f(const ParamSample& sample);
std::vector<Reconstructed> reconstruct_f(const std::vector<ParamSample>& samples);

/// Compatibility residual (g - x/r) x' - (sqrt(1-g^2) + y/r) y' at the interior
/// nodes of a uniformly spaced trace; x', y' by central differences. r and g are
/// rederived from (t, x, y) so perturbed curves are measured honestly.
std::vector<double> compatibility_residuals(const std::vector<ParamSample>& samples,
                                            double radius);

/// Residual of the inclination identity theta_e = (theta_f + rho_e)/2 - pi/4
/// (mod pi); theta_e from central differences across the three nodes.
double angular_residual(const ParamSample& prev, const ParamSample& cur,
                        const ParamSample& next, const ConvexFunction& f);
std::vector<double> angular_residuals(const std::vector<ParamSample>& samples,
                                      const ConvexFunction& f);

struct HyperbolaResidual {
  double membership = 0.0;     // |dist(p, focus on graph) - dist(p, origin) + R|
  double orthogonality = 0.0;  // defect of the hyperbola gradient vs the unit tangent
};

double hyperbola_membership(const ParamSample& sample, const ConvexFunction& f, double radius);
HyperbolaResidual hyperbola_tangency(const ParamSample& prev, const ParamSample& cur,
                                     const ParamSample& next, const ConvexFunction& f,
                                     double radius);

/// Slope of the equidistant function at a traced node, in terms of the
/// parameterization only: (g - x/r) / (sqrt(1-g^2) + y/r).
double equid_slope(const ParamSample& sample);

}  // namespace equidist
