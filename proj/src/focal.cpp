#include "equidist/focal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "equidist/detail/optimize.hpp"
#include "equidist/error.hpp"

namespace equidist {

BallSet::BallSet(double radius, Vec center) : radius_(radius), center_(std::move(center)) {
  if (radius_ <= 0.0) throw invalid_input("ball: radius must be positive");
  if (center_.empty()) throw invalid_input("ball: center must be nonempty");
}

BallSet::BallSet(double radius, int ambient_dim) : BallSet(radius, Vec(ambient_dim, 0.0)) {}

DistanceResult BallSet::distance(const Vec& p, double) const {
  if (static_cast<int>(p.size()) != ambient_dim())
    throw invalid_input("ball: query dimension mismatch");
  const Vec d = sub(p, center_);
  const double r = norm(d);
  if (r <= radius_) return {0.0, p};
  return {r - radius_, axpy(radius_ / r, d, center_)};
}

std::optional<Vec> BallSet::lowest_point() const {
  Vec p = center_;
  p.back() -= radius_;
  return p;
}

PointCloudSet::PointCloudSet(std::vector<Vec> points) : points_(std::move(points)) {
  if (points_.empty()) throw invalid_input("point cloud: must be nonempty");
  for (const Vec& p : points_)
    if (p.size() != points_.front().size())
      throw invalid_input("point cloud: points must share one dimension");
}

DistanceResult PointCloudSet::distance(const Vec& p, double) const {
  if (p.size() != points_.front().size())
    throw invalid_input("point cloud: query dimension mismatch");
  double best = std::numeric_limits<double>::infinity();
  const Vec* arg = nullptr;
  for (const Vec& q : points_) {
    const double d = equidist::distance(p, q);
    if (d < best) {
      best = d;
      arg = &q;
    }
  }
  return {best, *arg};
}

std::optional<Vec> PointCloudSet::lowest_point() const {
  const Vec* low = &points_.front();
  for (const Vec& p : points_)
    if (p.back() < low->back()) low = &p;
  return *low;
}

EpigraphSet::EpigraphSet(FunctionRef f) : f_(std::move(f)) {
  if (!f_) throw invalid_input("epigraph: null function");
}

namespace {

DistanceResult epigraph_distance_1d(const ConvexFunction& f, double px, double py, double tol) {
  auto sq = [&](double s) {
    const double dv = f.value(s) - py;
    return (px - s) * (px - s) + dv * dv;
  };
  // The squared graph distance of a convex function has at most two basins
  // (one per valley wall when the query sits beside the valley above its
  // floor), so a coarse probe pass picks every candidate basin before the
  // golden-section refinement. Non-smooth members get a dense probe pass.
  const auto [lo, hi] = detail::expand_bracket(sq, px);
  const double foot = detail::grid_refine_min(sq, lo, hi, tol, f.smooth() ? 65 : 1025);
  const double fv = f.value(foot);
  return {std::sqrt(sq(foot)), Vec{foot, fv}};
}

DistanceResult epigraph_distance_nd(const ConvexFunction& f, const Vec& base, double py,
                                    double tol) {
  const int n = f.dim();
  auto objective = [&](const Vec& s, int order) {
    Jet fj = f.eval(s, order);
    const double dv = fj.value - py;
    Jet out;
    out.value = dot(sub(s, base), sub(s, base)) + dv * dv;
    if (order >= 1) {
      out.grad = scale(sub(s, base), 2.0);
      out.grad = axpy(2.0 * dv, fj.grad, out.grad);
    }
    if (order >= 2) {
      out.hess = Mat(n, Vec(n, 0.0));
      for (int i = 0; i < n; ++i) {
        out.hess[i][i] = 2.0;
        for (int j = 0; j < n; ++j) {
          out.hess[i][j] += 2.0 * fj.grad[i] * fj.grad[j];
          if (!fj.hess.empty()) out.hess[i][j] += 2.0 * dv * fj.hess[i][j];
        }
      }
    }
    return out;
  };

  Vec s = base;
  Jet j = objective(s, 2);
  for (int it = 0; it < defaults::max_iterations; ++it) {
    Vec step;
    bool newton_ok = false;
    try {
      step = solve_dense(j.hess, scale(j.grad, -1.0));
      newton_ok = all_finite(step);
    } catch (const invalid_input&) {
      newton_ok = false;
    }
    if (!newton_ok) step = scale(j.grad, -1.0);
    double lambda = 1.0;
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      Vec cand = axpy(lambda, step, s);
      const double v = objective(cand, 0).value;
      if (v < j.value) {
        const double displacement = distance(cand, s);
        s = std::move(cand);
        j = objective(s, 2);
        moved = true;
        if (displacement <= tol) {
          const double fv = f.eval(s, 0).value;
          Vec nearest = s;
          nearest.push_back(fv);
          return {std::sqrt(j.value), nearest};
        }
        break;
      }
      lambda *= 0.5;
    }
    if (!moved) {
      const double fv = f.eval(s, 0).value;
      Vec nearest = s;
      nearest.push_back(fv);
      return {std::sqrt(j.value), nearest};
    }
  }
  throw no_convergence("epigraph projection: iteration cap reached", std::sqrt(j.value),
                       std::sqrt(j.value));
}

}  // namespace

DistanceResult EpigraphSet::distance(const Vec& p, double tol) const {
  if (static_cast<int>(p.size()) != ambient_dim())
    throw invalid_input("epigraph: query dimension mismatch");
  if (tol <= 0.0) throw invalid_input("epigraph: tolerance must be positive");
  Vec base(p.begin(), p.end() - 1);
  const double py = p.back();
  if (py >= f_->eval(base, 0).value) return {0.0, p};
  if (f_->dim() == 1) return epigraph_distance_1d(*f_, base[0], py, tol);
  return epigraph_distance_nd(*f_, base, py, tol);
}

double equidistant_residual(const Vec& p, const FocalSet& k, const FocalSet& l, double tol) {
  return k.distance(p, tol).distance - l.distance(p, tol).distance;
}

double hausdorff(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  if (a.empty() || b.empty()) throw invalid_input("hausdorff: sets must be nonempty");
  if (a.front().size() != b.front().size())
    throw invalid_input("hausdorff: dimension mismatch");
  auto directed = [](const std::vector<Vec>& from, const std::vector<Vec>& to) {
    double worst = 0.0;
    for (const Vec& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec& q : to) best = std::min(best, distance(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace equidist
