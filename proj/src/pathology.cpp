#include "equidist/pathology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "equidist/error.hpp"

namespace equidist {

namespace {

double point_segment_distance(const Vec& p, const Vec& a, const Vec& b) {
  const double vx = b[0] - a[0], vy = b[1] - a[1];
  const double len2 = vx * vx + vy * vy;
  double w = len2 > 0.0 ? ((p[0] - a[0]) * vx + (p[1] - a[1]) * vy) / len2 : 0.0;
  w = std::clamp(w, 0.0, 1.0);
  return std::hypot(p[0] - (a[0] + w * vx), p[1] - (a[1] + w * vy));
}

double point_ray_distance(const Vec& p, const Vec& origin, const Vec& dir) {
  const double w = std::max(0.0, (p[0] - origin[0]) * dir[0] + (p[1] - origin[1]) * dir[1]);
  return std::hypot(p[0] - (origin[0] + w * dir[0]), p[1] - (origin[1] + w * dir[1]));
}

}  // namespace

double FatCantor::kept_measure() const {
  double removed_len = 0.0;
  for (const auto& [a, b] : removed) removed_len += b - a;
  return 1.0 - removed_len;
}

bool FatCantor::in_removed(double u) const {
  for (const auto& [a, b] : removed)
    if (a < u && u < b) return true;
  return false;
}

FatCantor fat_cantor(int depth) {
  if (depth < 0) throw invalid_input("fat_cantor: depth must be nonnegative");
  FatCantor fc;
  fc.depth = depth;
  fc.kept = {{0.0, 1.0}};
  for (int n = 1; n <= depth; ++n) {
    const double len = std::pow(0.25, n);
    std::vector<std::pair<double, double>> next;
    for (const auto& [a, b] : fc.kept) {
      const double mid = 0.5 * (a + b);
      fc.removed.emplace_back(mid - 0.5 * len, mid + 0.5 * len);
      next.emplace_back(a, mid - 0.5 * len);
      next.emplace_back(mid + 0.5 * len, b);
    }
    fc.kept = std::move(next);
  }
  return fc;
}

SvcScene::SvcScene(int depth) : cantor_(fat_cantor(depth)), f_(make_svc()) {
  const double s3 = std::sqrt(3.0);
  x0_ = s3 / (s3 - 1.0);
  y0_ = 0.5 * (s3 + 1.0) / (s3 - 1.0);
  radius_ = 2.0;

  for (const auto& [a, b] : cantor_.removed) {
    Chord chord;
    chord.u_lo = a;
    chord.u_hi = b;
    chord.a = arc_point(a - 0.5);
    chord.b = arc_point(b - 0.5);
    chords_.push_back(chord);
  }

  // Kept arc portions in angle; theta decreases as t increases.
  for (const auto& [a, b] : cantor_.kept)
    kept_arc_angles_.emplace_back(arc_angle(b - 0.5), arc_angle(a - 0.5));
  std::sort(kept_arc_angles_.begin(), kept_arc_angles_.end());
}

double SvcScene::arc_angle(double t) const { return std::atan((y0_ - t) / x0_); }

Vec SvcScene::arc_point(double t) const {
  const double th = arc_angle(t);
  return {2.0 * x0_ - radius_ * std::cos(th), y0_ - radius_ * std::sin(th)};
}

Vec SvcScene::p1_prime() const { return arc_point(-0.5); }
Vec SvcScene::p2_prime() const { return arc_point(0.5); }

double SvcScene::boundary_value(double x, bool trimmed) const {
  if (trimmed) {
    for (const Chord& c : chords_) {
      if (x >= c.b[0] && x <= c.a[0]) {
        const double w = (x - c.b[0]) / (c.a[0] - c.b[0]);
        return (1.0 - w) * c.b[1] + w * c.a[1];
      }
    }
  }
  return f_->value(x);
}

double SvcScene::distance_disc(const Vec& p) const {
  const double d = std::hypot(p[0], p[1] - y0_);
  return std::max(d - radius_, 0.0);
}

namespace {

struct ArcQuery {
  double angle;     // polar angle of the circle point nearest to p
  double radial;    // |dist(p, Q2) - R|
  bool valid;       // nearest circle point lies on the lower-left branch
};

ArcQuery arc_query(const Vec& p, double cx, double cy, double radius) {
  const double dx = p[0] - cx, dy = p[1] - cy;
  const double d = std::hypot(dx, dy);
  ArcQuery q{0.0, std::abs(d - radius), false};
  if (d == 0.0) return q;
  // Arc points are Q2 + R(-cos th, -sin th); the radial foot has
  // th = atan2(-dy, -dx), meaningful when it lands in (0, pi/2).
  q.angle = std::atan2(-dy, -dx);
  q.valid = q.angle > 0.0 && q.angle < 1.5707963267948966;
  return q;
}

}  // namespace

double SvcScene::distance_convex(const Vec& p) const {
  if (p[1] >= boundary_value(p[0], false)) return 0.0;
  const double s3 = std::sqrt(3.0);
  const Vec p2p = p2_prime();
  const Vec p1p = p1_prime();
  // Left ray along the line of slope -sqrt(3) from P2', and the horizontal
  // right ray from P1'.
  double best = point_ray_distance(p, p2p, {-0.5, 0.5 * s3});
  best = std::min(best, point_ray_distance(p, p1p, {1.0, 0.0}));
  const ArcQuery q = arc_query(p, 2.0 * x0_, y0_, radius_);
  const double th_lo = arc_angle(0.5), th_hi = arc_angle(-0.5);  // [pi/6, pi/4]
  if (q.valid && q.angle >= th_lo && q.angle <= th_hi) {
    best = std::min(best, q.radial);
  } else {
    best = std::min({best, distance(p, p1p), distance(p, p2p)});
  }
  return best;
}

double SvcScene::distance_trimmed(const Vec& p) const {
  if (p[1] >= boundary_value(p[0], true)) return 0.0;
  const double s3 = std::sqrt(3.0);
  double best = point_ray_distance(p, p2_prime(), {-0.5, 0.5 * s3});
  best = std::min(best, point_ray_distance(p, p1_prime(), {1.0, 0.0}));
  const ArcQuery q = arc_query(p, 2.0 * x0_, y0_, radius_);
  for (const auto& [lo, hi] : kept_arc_angles_) {
    if (q.valid && q.angle >= lo && q.angle <= hi) {
      best = std::min(best, q.radial);
    } else {
      const Vec e1 = {2.0 * x0_ - radius_ * std::cos(lo), y0_ - radius_ * std::sin(lo)};
      const Vec e2 = {2.0 * x0_ - radius_ * std::cos(hi), y0_ - radius_ * std::sin(hi)};
      best = std::min({best, distance(p, e1), distance(p, e2)});
    }
  }
  for (const Chord& c : chords_) best = std::min(best, point_segment_distance(p, c.a, c.b));
  return best;
}

SvcScene build_scene(int depth) { return SvcScene(depth); }

MembershipResult segment_membership_test(const SvcScene& scene, double t, bool use_trimmed,
                                         double threshold) {
  if (t < -0.5 || t > 0.5)
    throw invalid_input("segment_membership_test: t must lie in [-1/2, 1/2]");
  const Vec p = {scene.x0(), t};
  const double dk = scene.distance_disc(p);
  const double dl = use_trimmed ? scene.distance_trimmed(p) : scene.distance_convex(p);
  MembershipResult res;
  res.residual = std::abs(dk - dl);
  res.is_equidistant = res.residual <= threshold;
  return res;
}

double measure_estimate(const SvcScene& scene) {
  if (scene.depth() < 1) throw invalid_input("measure_estimate: depth must be at least 1");
  return scene.cantor().kept_measure();
}

namespace {

/// Trimmed boundary as a value-only function, for the vertical solver.
class TrimmedBoundary final : public ConvexFunction {
 public:
  explicit TrimmedBoundary(std::shared_ptr<const SvcScene> scene) : scene_(std::move(scene)) {}
  int dim() const override { return 1; }
  bool smooth() const override { return false; }
  int max_order(const Vec&) const override { return 0; }
  Jet eval(const Vec& t, int order) const override {
    if (order >= 1)
      throw invalid_input("trimmed boundary: derivatives are not available");
    Jet j;
    j.value = scene_->boundary_value(t[0], true);
    return j;
  }
  nlohmann::json to_json() const override {
    return {{"kind", "svc_trimmed"}, {"depth", scene_->depth()}};
  }

 private:
  std::shared_ptr<const SvcScene> scene_;
};

class TrimmedEpigraphSet final : public FocalSet {
 public:
  explicit TrimmedEpigraphSet(std::shared_ptr<const SvcScene> scene)
      : scene_(std::move(scene)), boundary_(std::make_shared<TrimmedBoundary>(scene_)) {}
  int ambient_dim() const override { return 2; }
  DistanceResult distance(const Vec& p, double = defaults::tol) const override {
    return {scene_->distance_trimmed(p), std::nullopt};
  }
  const ConvexFunction* boundary_function() const override { return boundary_.get(); }

 private:
  std::shared_ptr<const SvcScene> scene_;
  std::shared_ptr<const TrimmedBoundary> boundary_;
};

}  // namespace

FocalRef make_trimmed_epigraph(std::shared_ptr<const SvcScene> scene) {
  return std::make_shared<TrimmedEpigraphSet>(std::move(scene));
}

}  // namespace equidist
