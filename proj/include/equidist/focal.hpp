#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "equidist/function.hpp"
#include "equidist/linalg.hpp"

namespace equidist {

struct DistanceResult {
  double distance = 0.0;
  std::optional<Vec> nearest;
};

/// A focal set in R^(n+1). Distance queries are pure and reentrant.
class FocalSet {
 public:
  virtual ~FocalSet() = default;
  virtual int ambient_dim() const = 0;
  virtual DistanceResult distance(const Vec& p, double tol = defaults::tol) const = 0;
  /// A point of the set with minimal last coordinate, when one is tracked.
  virtual std::optional<Vec> lowest_point() const { return std::nullopt; }
  /// The boundary function whose epigraph this set is, when it is one.
  virtual const ConvexFunction* boundary_function() const { return nullptr; }
};

using FocalRef = std::shared_ptr<const FocalSet>;

/// Solid ball of radius R; distance is max(|p - center| - R, 0).
class BallSet final : public FocalSet {
 public:
  explicit BallSet(double radius, Vec center);
  /// Origin-centered ball in R^(ambient_dim).
  BallSet(double radius, int ambient_dim);
  int ambient_dim() const override { return static_cast<int>(center_.size()); }
  DistanceResult distance(const Vec& p, double tol = defaults::tol) const override;
  std::optional<Vec> lowest_point() const override;
  double radius() const { return radius_; }
  const Vec& center() const { return center_; }

 private:
  double radius_;
  Vec center_;
};

class PointCloudSet final : public FocalSet {
 public:
  explicit PointCloudSet(std::vector<Vec> points);
  int ambient_dim() const override { return static_cast<int>(points_.front().size()); }
  DistanceResult distance(const Vec& p, double tol = defaults::tol) const override;
  std::optional<Vec> lowest_point() const override;
  const std::vector<Vec>& points() const { return points_; }

 private:
  std::vector<Vec> points_;
};

/// Epigraph {(t, y) : f(t) <= y} of a convex function. The projection of a
/// point below the graph is found by minimizing the squared distance over the
/// foot parameter: bracket expansion plus golden section in 1D, damped Newton
/// with gradient fallback in higher dimensions. Non-smooth members (pointwise
/// minima, tabulated data) fall back to a dense scan with local refinement.
class EpigraphSet final : public FocalSet {
 public:
  explicit EpigraphSet(FunctionRef f);
  int ambient_dim() const override { return f_->dim() + 1; }
  DistanceResult distance(const Vec& p, double tol = defaults::tol) const override;
  const ConvexFunction* boundary_function() const override { return f_.get(); }
  const FunctionRef& function() const { return f_; }

 private:
  FunctionRef f_;
};

/// d(p, K) - d(p, L); zero (within tolerance) at equidistant points.
double equidistant_residual(const Vec& p, const FocalSet& k, const FocalSet& l,
                            double tol = defaults::tol);

/// Symmetric Hausdorff distance between finite point sets.
double hausdorff(const std::vector<Vec>& a, const std::vector<Vec>& b);

}  // namespace equidist
