#include "equidist/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "equidist/detail/optimize.hpp"
#include "equidist/error.hpp"

namespace equidist {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double tangent_plane_distance(const ConvexFunction& f, const Vec& t) {
  const Jet j = f.eval(t, 1);
  return (dot(t, j.grad) - j.value) / std::sqrt(1.0 + dot(j.grad, j.grad));
}

ParamSampleND equidistant_point_nd(const ConvexFunction& f, double radius, const Vec& t) {
  const Jet j = f.eval(t, 1);
  const double q = std::sqrt(1.0 + dot(j.grad, j.grad));
  const double alpha = (dot(t, j.grad) - j.value) / q;
  if (alpha >= radius) {
    std::ostringstream os;
    os << "equidistant_point_nd: critical parameter (alpha = " << alpha << " >= R = " << radius
       << ")";
    throw invalid_input(os.str());
  }
  const double sep = dot(t, t) + j.value * j.value - radius * radius;
  if (sep <= 0.0)
    throw invalid_input("equidistant_point_nd: focal sets are not disjoint at this parameter");

  ParamSampleND p;
  p.t = t;
  p.alpha = alpha;
  p.s = 0.5 * sep / (radius - alpha);
  p.x = axpy(p.s / q, j.grad, t);
  p.y = j.value - p.s / q;
  p.r = std::sqrt(dot(p.x, p.x) + p.y * p.y);
  p.g = scale(sub(p.x, t), 1.0 / (p.r - radius));
  if (std::abs(p.r - radius - p.s) > 1e-9)
    throw no_convergence("equidistant_point_nd: polar distance check failed", p.r - radius, p.s);
  return p;
}

double slit_alpha(const ConvexFunction& f, const Vec& u, double r) {
  if (r < 0.0) throw invalid_input("slit_alpha: ray parameter must be nonnegative");
  const Vec t = scale(u, r);
  const Jet j = f.eval(t, 1);
  const double phi_p = dot(j.grad, u);
  return (r * phi_p - j.value) / std::sqrt(1.0 + phi_p * phi_p);
}

RaySegments ray_admissible_segments(const ConvexFunction& f, double radius, const Vec& u,
                                    double r_max, int grid_n) {
  if (r_max <= 0.0) throw invalid_input("ray_admissible_segments: r_max must be positive");
  if (std::abs(norm(u) - 1.0) > 1e-12)
    throw invalid_input("ray_admissible_segments: direction must be a unit vector");
  if (grid_n < 2) throw invalid_input("ray_admissible_segments: grid_n must be at least 2");

  auto alpha_at = [&](double r) { return tangent_plane_distance(f, scale(u, r)); };
  auto critical = [&](double r) { return alpha_at(r) >= radius; };
  if (critical(0.0))
    throw invalid_input("ray_admissible_segments: alpha(0) >= R");

  RaySegments out;
  out.direction = u;

  const double h = r_max / (grid_n - 1);
  double seg_start = 0.0;
  bool inside = true;
  const double edge_tol = 1e-10 * std::max(1.0, r_max);
  for (int i = 1; i < grid_n; ++i) {
    const double r = i * h;
    const bool c = critical(r);
    if (inside && c) {
      const double edge = detail::bisect_root([&](double rr) { return alpha_at(rr) - radius; },
                                              r - h, r, edge_tol);
      out.segments.emplace_back(seg_start, edge);
      inside = false;
    } else if (!inside && !c) {
      seg_start = detail::bisect_root([&](double rr) { return alpha_at(rr) - radius; }, r - h, r,
                                      edge_tol);
      inside = true;
    }
  }
  if (inside) out.segments.emplace_back(seg_start, r_max);

  // Slit critical parameter along the same ray; the indicator is monotone.
  auto slit_critical = [&](double r) { return slit_alpha(f, u, r) >= radius; };
  out.t_u_plus = kInf;
  double prev = 0.0;
  for (int i = 1; i < grid_n; ++i) {
    const double r = i * h;
    if (slit_critical(r)) {
      out.t_u_plus = detail::bisect_indicator(slit_critical, prev, r, edge_tol);
      break;
    }
    prev = r;
  }

  // Containment D_u subset D on the grid (consequence of |alpha| <= |alpha_u|).
  for (int i = 0; i < grid_n; ++i) {
    const double r = i * h;
    if (r < out.t_u_plus && critical(r)) {
      std::ostringstream os;
      os << "ray_admissible_segments: containment violated at r = " << r
         << " (admissible for the slit function but critical for f)";
      throw std::logic_error(os.str());
    }
  }
  return out;
}

SampleGrid2 sample_patch(const ConvexFunction& f, double radius, const Vec& lo, const Vec& hi,
                         int n1, int n2) {
  if (f.dim() != 2) throw invalid_input("sample_patch: base dimension must be 2");
  if (n1 < 3 || n2 < 3) throw invalid_input("sample_patch: need at least 3 nodes per axis");
  SampleGrid2 grid;
  grid.h1 = (hi[0] - lo[0]) / (n1 - 1);
  grid.h2 = (hi[1] - lo[1]) / (n2 - 1);
  grid.at.resize(n1);
  for (int i = 0; i < n1; ++i) {
    grid.at[i].reserve(n2);
    for (int j = 0; j < n2; ++j)
      grid.at[i].push_back(
          equidistant_point_nd(f, radius, {lo[0] + i * grid.h1, lo[1] + j * grid.h2}));
  }
  return grid;
}

std::vector<Vec> compatibility_residual_nd(const SampleGrid2& grid, double radius) {
  const int n1 = static_cast<int>(grid.at.size());
  const int n2 = n1 ? static_cast<int>(grid.at.front().size()) : 0;
  if (n1 < 3 || n2 < 3) throw invalid_input("compatibility_residual_nd: grid too small");
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(n1 - 2) * (n2 - 2));
  for (int i = 1; i + 1 < n1; ++i) {
    for (int j = 1; j + 1 < n2; ++j) {
      const ParamSampleND& c = grid.at[i][j];
      const double r = std::sqrt(dot(c.x, c.x) + c.y * c.y);
      const Vec g = scale(sub(c.x, c.t), 1.0 / (r - radius));
      const double root = std::sqrt(std::max(0.0, 1.0 - dot(g, g)));
      const Vec lhs_vec = sub(g, scale(c.x, 1.0 / r));
      const double coef = root + c.y / r;

      const Vec dx1 = scale(sub(grid.at[i + 1][j].x, grid.at[i - 1][j].x), 0.5 / grid.h1);
      const double dy1 = (grid.at[i + 1][j].y - grid.at[i - 1][j].y) * 0.5 / grid.h1;
      const Vec dx2 = scale(sub(grid.at[i][j + 1].x, grid.at[i][j - 1].x), 0.5 / grid.h2);
      const double dy2 = (grid.at[i][j + 1].y - grid.at[i][j - 1].y) * 0.5 / grid.h2;

      out.push_back({dot(lhs_vec, dx1) - coef * dy1, dot(lhs_vec, dx2) - coef * dy2});
    }
  }
  return out;
}

std::vector<double> jacobian_determinants(const SampleGrid2& grid) {
  const int n1 = static_cast<int>(grid.at.size());
  const int n2 = n1 ? static_cast<int>(grid.at.front().size()) : 0;
  if (n1 < 3 || n2 < 3) throw invalid_input("jacobian_determinants: grid too small");
  std::vector<double> out;
  for (int i = 1; i + 1 < n1; ++i) {
    for (int j = 1; j + 1 < n2; ++j) {
      const Vec dx1 = scale(sub(grid.at[i + 1][j].x, grid.at[i - 1][j].x), 0.5 / grid.h1);
      const Vec dx2 = scale(sub(grid.at[i][j + 1].x, grid.at[i][j - 1].x), 0.5 / grid.h2);
      out.push_back(dx1[0] * dx2[1] - dx1[1] * dx2[0]);
    }
  }
  return out;
}

ReconstructedND reconstruct_f_nd(const ParamSampleND& sample) {
  const double g2 = dot(sample.g, sample.g);
  if (g2 >= 1.0) throw invalid_input("reconstruct_f_nd: |g| >= 1");
  const double root = std::sqrt(1.0 - g2);
  ReconstructedND rec;
  rec.t = sample.t;
  rec.f_value = sample.y + sample.s * root;  // s == r - R
  rec.grad_f = scale(sample.g, 1.0 / root);
  return rec;
}

std::vector<ReconstructedND> reconstruct_f_nd(const std::vector<ParamSampleND>& samples) {
  std::vector<ReconstructedND> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(reconstruct_f_nd(s));
  return out;
}

}  // namespace equidist
