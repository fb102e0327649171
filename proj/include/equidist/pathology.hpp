#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "equidist/focal.hpp"
#include "equidist/function.hpp"

namespace equidist {

/// Finite-depth fat Cantor construction on [0,1]: step n removes the open
/// middle interval of length 4^-n from each of the 2^(n-1) kept intervals.
/// Removed intervals are recorded breadth-first.
struct FatCantor {
  int depth = 0;
  std::vector<std::pair<double, double>> kept;     // sorted closed intervals
  std::vector<std::pair<double, double>> removed;  // breadth-first open intervals
  double kept_measure() const;
  bool in_removed(double u) const;
};

FatCantor fat_cantor(int depth);

/// The fat-Cantor scene: disc K of radius 2 at Q1 = (0, y0), the convex
/// epigraph L bounded by a line, a circular arc around Q2 = (2 x0, y0) and a
/// horizontal ray, and the trimmed set L' in which the arc pieces over removed
/// fat-Cantor intervals are replaced by their chords.
class SvcScene {
 public:
  explicit SvcScene(int depth);

  int depth() const { return cantor_.depth; }
  const FatCantor& cantor() const { return cantor_; }
  double x0() const { return x0_; }
  double y0() const { return y0_; }
  double radius() const { return radius_; }
  Vec q1() const { return {0.0, y0_}; }
  Vec q2() const { return {2.0 * x0_, y0_}; }
  Vec p1_prime() const;
  Vec p2_prime() const;
  const FunctionRef& boundary() const { return f_; }

  struct Chord {
    Vec a;  // graph point at the removed interval's left endpoint
    Vec b;  // and at its right endpoint; a.x > b.x
    double u_lo = 0.0, u_hi = 0.0;
  };
  const std::vector<Chord>& chords() const { return chords_; }

  /// Graph point of the arc map g(t) for t in [-1/2, 1/2].
  Vec arc_point(double t) const;

  /// Boundary value of L (trimmed = false) or L' (trimmed = true) at x.
  double boundary_value(double x, bool trimmed) const;

  /// Exact piecewise distances (rays, clamped arcs, chords); no iteration.
  double distance_convex(const Vec& p) const;
  double distance_trimmed(const Vec& p) const;
  /// Distance to the disc K.
  double distance_disc(const Vec& p) const;

 private:
  double arc_angle(double t) const;
  double x0_, y0_, radius_;
  FatCantor cantor_;
  FunctionRef f_;
  std::vector<Chord> chords_;
  std::vector<std::pair<double, double>> kept_arc_angles_;  // [theta_lo, theta_hi]
};

SvcScene build_scene(int depth);

struct MembershipResult {
  bool is_equidistant = false;
  double residual = 0.0;
};

/// Distance verdict for the point (x0, t) on the critical vertical line,
/// against L (use_trimmed = false) or L' (use_trimmed = true); pre: |t| <= 1/2.
MembershipResult segment_membership_test(const SvcScene& scene, double t, bool use_trimmed,
                                         double threshold = 1e-9);

/// Total kept length of the scene's fat Cantor set; tends to 1/2 with depth.
double measure_estimate(const SvcScene& scene);

/// L' as a focal set, with the trimmed boundary exposed for vertical scans.
FocalRef make_trimmed_epigraph(std::shared_ptr<const SvcScene> scene);

}  // namespace equidist
