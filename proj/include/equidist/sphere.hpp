#pragma once

#include <utility>
#include <vector>

#include "equidist/function.hpp"

namespace equidist {

/// nD analogue of ParamSample: foot t in R^n, equidistant point (x, y) with
/// x in R^n, auxiliary vector g = (x - t)/(r - R).
struct ParamSampleND {
  Vec t;
  Vec x;
  double y = 0.0;
  double s = 0.0;
  double alpha = 0.0;
  Vec g;
  double r = 0.0;
};

/// Signed distance of the tangent hyperplane of f at t from the origin.
double tangent_plane_distance(const ConvexFunction& f, const Vec& t);

ParamSampleND equidistant_point_nd(const ConvexFunction& f, double radius, const Vec& t);

/// Tangent-line distance of the slit function phi(r) = f(r u) along the ray
/// direction u, with phi'(r) = <grad f(ru), u>.
double slit_alpha(const ConvexFunction& f, const Vec& u, double r);

/// Intersection of the admissible region with the ray {r u | 0 <= r <= r_max}:
/// the maximal segments where alpha(r u) < R, plus the slit critical parameter
/// t_u^+ (bisection on the monotone indicator alpha_u >= R; +inf when absent).
struct RaySegments {
  Vec direction;
  std::vector<std::pair<double, double>> segments;
  double t_u_plus = 0.0;
};

RaySegments ray_admissible_segments(const ConvexFunction& f, double radius, const Vec& u,
                                    double r_max, int grid_n = 4096);

/// Tensor-grid sample patch over [lo1, hi1] x [lo2, hi2] (n = 2 only); steps may
/// differ per coordinate to keep finite differences accurate for anisotropic f.
struct SampleGrid2 {
  std::vector<std::vector<ParamSampleND>> at;  // at[i][j] ~ (t1_i, t2_j)
  double h1 = 0.0;
  double h2 = 0.0;
};

SampleGrid2 sample_patch(const ConvexFunction& f, double radius, const Vec& lo, const Vec& hi,
                         int n1, int n2);

/// Per-node compatibility residual vector <g - x/r, d_i x> - (sqrt(1-|g|^2) + y/r) d_i y
/// at interior grid nodes; r and g are rederived from (t, x, y).
std::vector<Vec> compatibility_residual_nd(const SampleGrid2& grid, double radius);

/// Finite-difference Jacobian determinant of t -> x(t) at interior nodes.
std::vector<double> jacobian_determinants(const SampleGrid2& grid);

struct ReconstructedND {
  Vec t;
  double f_value = 0.0;
  Vec grad_f;
};

ReconstructedND reconstruct_f_nd(const ParamSampleND& sample);
std::vector<ReconstructedND> reconstruct_f_nd(const std::vector<ParamSampleND>& samples);

}  // namespace equidist
