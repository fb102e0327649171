#include "equidist/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "equidist/characterize.hpp"
#include "equidist/circle.hpp"
#include "equidist/detail/optimize.hpp"
#include "equidist/error.hpp"
#include "equidist/focal.hpp"
#include "equidist/minop.hpp"
#include "equidist/pathology.hpp"
#include "equidist/sphere.hpp"
#include "equidist/vertical.hpp"

namespace equidist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Bisection-derived critical parameters, frozen from the defining equations
// e^t (t-1) = R sqrt(1+e^(2t)) and t^2 - 1 = R sqrt(1+4 t^2).
constexpr double kExpCritical = 1.5120072505676469;
constexpr double kPolyCritical = 1.6506801238857846;  // = sqrt((3+sqrt(6))/2)

// Boundary crossings of alpha(r, 0) = 0.3 for the quadratic-form example,
// and the slit critical parameter on the same ray.
constexpr double kQuadSegEnd1 = 1.4212631762151511;
constexpr double kQuadSegStart2 = 1.8653651593405028;
constexpr double kQuadSegEnd2 = 4.0933861424272799;
constexpr double kQuadSlitCritical = 1.3691421453477406;

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1.0);
  return out;
}

using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << "FAILED: " << what;
    }
  }
  template <typename T>
  void note(const std::string& key, T value) {
    if (detail.tellp() > 0) detail << "; ";
    detail << key << " = " << value;
  }
};

CriterionResult finish(const std::string& id, const std::string& name, Check& chk,
                       Clock::time_point start) {
  CriterionResult res;
  res.id = id;
  res.name = name;
  res.pass = chk.ok;
  res.detail = chk.detail.str();
  res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return res;
}

CriterionResult criterion_domains() {
  const auto start = Clock::now();
  Check chk;

  auto timed = [&](const std::function<CriticalDomain()>& run, const char* label) {
    const auto t0 = Clock::now();
    CriticalDomain dom = run();
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    chk.require(secs < 1.0, std::string(label) + " runtime under 1 s");
    return dom;
  };

  const CriticalDomain a =
      timed([] { return critical_domain(*make_sqrt1p(), 0.9, 1e3); }, "sqrt1p");
  chk.require(!a.bounded_below() && !a.bounded_above(),
              "sqrt1p R=0.9 has no critical parameters within |t| <= 1e3");

  const CriticalDomain b = timed([] { return critical_domain(*make_exp(), 0.5, 1e3); }, "exp");
  chk.require(!b.bounded_below(), "exp R=0.5 has no negative critical parameter");
  chk.require(std::abs(b.t_plus - kExpCritical) <= 1e-6, "exp t0+ within 1e-6 of reference");
  chk.note("exp t0+", b.t_plus);

  const CriticalDomain c =
      timed([] { return critical_domain(*make_poly1d({1.0, 0.0, 1.0}), 0.5, 1e3); }, "poly");
  chk.require(std::abs(c.t_plus - kPolyCritical) <= 1e-6, "poly t0+ within 1e-6 of reference");
  chk.require(std::abs(c.t_minus + kPolyCritical) <= 1e-6, "poly t0- within 1e-6 of reference");
  chk.require(std::abs(c.t_plus + c.t_minus) <= 1e-12, "poly critical parameters symmetric");
  chk.note("poly t0+", c.t_plus);

  return finish("domains", "Figure-4 domain taxonomy", chk, start);
}

CriterionResult criterion_quadform() {
  const auto start = Clock::now();
  Check chk;
  const FunctionRef f = paper_quadform();

  const Extremum inf = infimum(*f, {-3.0, -3.0}, {3.0, 3.0});
  chk.require(std::abs(inf.min - 0.75) <= 1e-12, "minimum value 3/4 to 1e-12");
  chk.require(std::abs(inf.argmin[0] + 1.0 / 6.0) <= 1e-12 &&
                  std::abs(inf.argmin[1] - 1.0 / 60.0) <= 1e-12,
              "argmin (-1/6, 1/60) to 1e-12");

  const RaySegments ray = ray_admissible_segments(*f, 0.3, {1.0, 0.0}, 6.0);
  chk.require(std::abs(ray.t_u_plus - 1.37) <= 0.01, "slit critical t_u+ = 1.37 +- 0.01");
  chk.require(std::abs(ray.t_u_plus - kQuadSlitCritical) <= 1e-6,
              "slit critical matches bisection reference");
  chk.require(ray.segments.size() == 2, "exactly two admissible segments on [0, 6]");
  if (ray.segments.size() == 2) {
    chk.require(ray.segments[0].first == 0.0, "first segment starts at 0");
    chk.require(std::abs(ray.segments[0].second - 1.425) <= 0.05 &&
                    std::abs(ray.segments[0].second - kQuadSegEnd1) <= 1e-6,
                "first segment ends near 1.425");
    chk.require(std::abs(ray.segments[1].first - 1.865) <= 0.05 &&
                    std::abs(ray.segments[1].first - kQuadSegStart2) <= 1e-6,
                "second segment starts near 1.865");
    chk.require(std::abs(ray.segments[1].second - 4.08) <= 0.05 &&
                    std::abs(ray.segments[1].second - kQuadSegEnd2) <= 1e-6,
                "second segment ends near 4.08");
    std::ostringstream seg;
    seg << "[0, " << ray.segments[0].second << "] [" << ray.segments[1].first << ", "
        << ray.segments[1].second << "]";
    chk.note("segments", seg.str());
    chk.note("t_u+", ray.t_u_plus);
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  chk.require(secs < 2.0, "runtime under 2 s");
  return finish("quadform", "Paper counterexample (anisotropic quadratic)", chk, start);
}

CriterionResult criterion_oracle() {
  const auto start = Clock::now();
  Check chk;
  double worst_dist = 0.0, worst_root = 0.0;

  for (const CatalogEntry& entry : catalog_1d()) {
    const BallSet ball(entry.radius, 2);
    const EpigraphSet epi(entry.f);
    for (double t : linspace(entry.t_lo, entry.t_hi, 121)) {
      const ParamSample p = equidistant_point(*entry.f, entry.radius, t);
      const Vec point = {p.x, p.y};
      worst_dist = std::max(worst_dist, std::abs(equidistant_residual(point, ball, epi)));
      const VerticalScan scan = scan_vertical(p.x, ball, epi);
      double best = kInf;
      for (double root : scan.roots) best = std::min(best, std::abs(root - p.y));
      worst_root = std::max(worst_root, best);
    }
  }

  const FunctionRef quad = paper_quadform();
  const BallSet ball(0.3, 3);
  const EpigraphSet epi(quad);
  std::vector<Vec> feet;
  for (double r : linspace(0.0, 1.3, 60)) feet.push_back({r, 0.0});
  for (double a : linspace(-0.25, 0.05, 10))
    for (double b : linspace(-0.03, 0.06, 6)) feet.push_back({a, b});
  for (const Vec& t : feet) {
    const ParamSampleND p = equidistant_point_nd(*quad, 0.3, t);
    Vec point = p.x;
    point.push_back(p.y);
    worst_dist = std::max(worst_dist, std::abs(equidistant_residual(point, ball, epi)));
    const VerticalScan scan = scan_vertical(p.x, ball, epi);
    double best = kInf;
    for (double root : scan.roots) best = std::min(best, std::abs(root - p.y));
    worst_root = std::max(worst_root, best);
  }

  chk.require(worst_dist <= 1e-7, "distance residual <= 1e-7 at every traced point");
  chk.require(worst_root <= 1e-7, "vertical-scan root matches y(t) to 1e-7");
  chk.note("worst distance residual", worst_dist);
  chk.note("worst root mismatch", worst_root);
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  chk.require(secs < 30.0, "runtime under 30 s");
  return finish("oracle", "Oracle equivalence (closed form vs distances)", chk, start);
}

CriterionResult criterion_compatibility(bool inject_perturbation) {
  const auto start = Clock::now();
  Check chk;

  double worst = 0.0, worst_perturbed = kInf;
  for (const CatalogEntry& entry : catalog_1d()) {
    const int n = static_cast<int>(std::lround((entry.t_hi - entry.t_lo) / 1e-3)) + 1;
    std::vector<ParamSample> curve =
        trace_curve(*entry.f, entry.radius, linspace(entry.t_lo, entry.t_hi, n));
    if (inject_perturbation)
      for (ParamSample& s : curve) s.y *= 1.0001;
    for (double r : compatibility_residuals(curve, entry.radius))
      worst = std::max(worst, std::abs(r));

    std::vector<ParamSample> perturbed = curve;
    for (ParamSample& s : perturbed) s.y *= 1.01;
    double w = 0.0;
    for (double r : compatibility_residuals(perturbed, entry.radius)) w = std::max(w, std::abs(r));
    worst_perturbed = std::min(worst_perturbed, w);
  }

  // nD: the radial instance meets the bound at the stated uniform step; the
  // anisotropic instance needs a finer step along its stiff coordinate.
  const FunctionRef radial = make_quadform({{1.0, 0.0}, {0.0, 1.0}}, {0.0, 0.0}, 1.0);
  {
    SampleGrid2 patch = sample_patch(*radial, 0.5, {-0.05, -0.05}, {0.05, 0.05}, 101, 101);
    if (inject_perturbation)
      for (auto& row : patch.at)
        for (ParamSampleND& s : row) s.y *= 1.0001;
    for (const Vec& res : compatibility_residual_nd(patch, 0.5))
      for (double r : res) worst = std::max(worst, std::abs(r));
  }
  {
    const FunctionRef quad = paper_quadform();
    SampleGrid2 patch =
        sample_patch(*quad, 0.3, {-0.02, -0.0005}, {0.02, 0.0005}, 41, 101);
    if (inject_perturbation)
      for (auto& row : patch.at)
        for (ParamSampleND& s : row) s.y *= 1.0001;
    for (const Vec& res : compatibility_residual_nd(patch, 0.3))
      for (double r : res) worst = std::max(worst, std::abs(r));

    SampleGrid2 perturbed = patch;
    for (auto& row : perturbed.at)
      for (ParamSampleND& s : row) s.y *= 1.01;
    double w = 0.0;
    for (const Vec& res : compatibility_residual_nd(perturbed, 0.3))
      for (double r : res) w = std::max(w, std::abs(r));
    worst_perturbed = std::min(worst_perturbed, w);
  }

  chk.require(worst <= 1e-5, "max residual <= 1e-5 at the stated grid steps");
  chk.require(worst_perturbed > 1e-3, "1% y perturbation raises the residual above 1e-3");
  chk.note("max residual", worst);
  chk.note("min perturbed residual", worst_perturbed);
  return finish("compatibility", "Compatibility residual + negative control", chk, start);
}

CriterionResult criterion_characterization() {
  const auto start = Clock::now();
  Check chk;

  double worst_round_trip = 0.0;
  for (const CatalogEntry& entry : catalog_1d()) {
    const auto curve = trace_curve(*entry.f, entry.radius, linspace(entry.t_lo, entry.t_hi, 201));
    for (const ParamSample& s : curve) {
      const double t = h_map(s.x, s.y, equid_slope(s), entry.radius);
      worst_round_trip = std::max(worst_round_trip, std::abs(t - s.t));
    }
  }
  {
    const FunctionRef radial = make_quadform({{1.0, 0.0}, {0.0, 1.0}}, {0.0, 0.0}, 1.0);
    SampleGrid2 patch = sample_patch(*radial, 0.5, {-0.3, -0.3}, {0.3, 0.3}, 21, 21);
    for (const auto& row : patch.at) {
      for (const ParamSampleND& s : row) {
        const double root = std::sqrt(1.0 - dot(s.g, s.g));
        const Vec grad_g =
            scale(sub(s.g, scale(s.x, 1.0 / s.r)), 1.0 / (root + s.y / s.r));
        const Vec t = h_map_nd(s.x, s.y, grad_g, 0.5);
        worst_round_trip = std::max(worst_round_trip, distance(t, s.t));
      }
    }
  }
  chk.require(worst_round_trip <= 1e-8, "h(x(t)) = t to 1e-8 on all traced samples");
  chk.note("worst h round trip", worst_round_trip);

  const CatalogEntry& sq = catalog_1d().front();
  const auto curve = trace_curve(*sq.f, sq.radius, linspace(-2.5, 2.5, 2001));
  const FieldRef g = make_curve_field(curve);
  const CharacterizationReport rep = is_equidistant_function(*g, sq.radius, linspace(-2.0, 2.0, 201));
  chk.require(rep.ok, "interpolated traced G accepted");
  chk.require(rep.worst_equidistance_residual <= 1e-6, "traced-G oracle residual <= 1e-6");
  chk.note("traced-G residual", rep.worst_equidistance_residual);

  const FieldRef concave = make_field(make_poly1d({0.75, 0.0, -0.1}));
  const CharacterizationReport bad = is_equidistant_function(*concave, 0.5, linspace(-1.2, 1.2, 49));
  chk.require(!bad.ok, "concave control rejected");

  return finish("characterization", "Characterization round trip", chk, start);
}

CriterionResult criterion_angular() {
  const auto start = Clock::now();
  Check chk;
  double worst = 0.0;
  for (const CatalogEntry& entry : catalog_1d()) {
    const int n = static_cast<int>(std::lround((entry.t_hi - entry.t_lo) / 1e-3)) + 1;
    const auto curve = trace_curve(*entry.f, entry.radius, linspace(entry.t_lo, entry.t_hi, n));
    for (double r : angular_residuals(curve, *entry.f)) worst = std::max(worst, std::abs(r));
  }
  chk.require(worst <= 1e-6, "theta_e = (theta_f + rho_e)/2 - pi/4 (mod pi) to 1e-6");
  chk.note("worst angular residual", worst);
  return finish("angular", "Angular identity across traced grids", chk, start);
}

CriterionResult criterion_minop() {
  const auto start = Clock::now();
  Check chk;
  const std::vector<FunctionRef> family = {make_shifted_parabola(1.0, 1.0),
                                           make_shifted_parabola(-1.0, 1.0)};
  const BallSet ball(0.5, 2);
  const auto xs = linspace(-2.0, 2.0, 41);
  const SandwichReport sandwich = sandwich_check(ball, family, xs);
  chk.require(sandwich.ok, "sandwich inequality holds at all 41 sample points");
  const CommuteReport commute = min_commute_check(ball, family, xs);
  chk.require(commute.ok, "G_min equals min_i G_i to 1e-7");
  chk.note("worst commute mismatch", commute.worst);
  return finish("minop", "Minimum operator (Theorem-2 sandwich)", chk, start);
}

CriterionResult criterion_svc() {
  const auto start = Clock::now();
  Check chk;
  const SvcScene scene = build_scene(3);

  int convex_failures = 0;
  for (double t : linspace(-0.5, 0.5, 101))
    if (!segment_membership_test(scene, t, false).is_equidistant) ++convex_failures;
  chk.require(convex_failures == 0, "101 segment points all equidistant to 1e-9");

  int disagreements = 0;
  for (int j = 0; j <= 256; ++j) {
    const double u = j / 256.0;
    const MembershipResult res = segment_membership_test(scene, u - 0.5, true);
    if (res.is_equidistant != !scene.cantor().in_removed(u)) ++disagreements;
  }
  chk.require(disagreements == 0,
              "trimmed verdict equals interval membership at 257 samples");
  chk.note("disagreements", disagreements);

  chk.require(measure_estimate(scene) == 0.5625, "kept measure at depth 3 is exactly 0.5625");
  const SvcScene deep = build_scene(20);
  chk.require(std::abs(measure_estimate(deep) - 0.5) <= 1e-5, "kept measure tends to 1/2");
  return finish("svc", "Fat-Cantor pathology", chk, start);
}

CriterionResult criterion_sweeps() {
  const auto start = Clock::now();
  Check chk;
  bool mono = true, coef_positive = true, g_bounded = true;
  for (const CatalogEntry& entry : catalog_1d()) {
    const auto curve = trace_curve(*entry.f, entry.radius, linspace(entry.t_lo, entry.t_hi, 801));
    for (std::size_t i = 0; i < curve.size(); ++i) {
      const ParamSample& s = curve[i];
      if (i > 0 && curve[i - 1].x >= s.x) mono = false;
      if (!(std::abs(s.g) < 1.0)) g_bounded = false;
      if (!(std::sqrt(1.0 - s.g * s.g) + s.y / s.r > 0.0)) coef_positive = false;
    }
    for (std::size_t i = 1; i + 1 < curve.size(); ++i)
      if (!(curve[i + 1].x - curve[i - 1].x > 0.0)) mono = false;
  }
  const FunctionRef quad = paper_quadform();
  SampleGrid2 patch = sample_patch(*quad, 0.3, {-0.05, -0.01}, {0.05, 0.01}, 21, 21);
  for (const auto& row : patch.at) {
    for (const ParamSampleND& s : row) {
      if (!(dot(s.g, s.g) < 1.0)) g_bounded = false;
      if (!(std::sqrt(1.0 - dot(s.g, s.g)) + s.y / s.r > 0.0)) coef_positive = false;
    }
  }
  double min_det = kInf;
  for (double d : jacobian_determinants(patch)) min_det = std::min(min_det, std::abs(d));
  chk.require(mono, "x(t) strictly increasing on every traced grid");
  chk.require(coef_positive, "sqrt(1-g^2) + y/r > 0 at every node");
  chk.require(g_bounded, "|g| < 1 everywhere");
  chk.require(min_det > 1e-3, "finite-difference Jacobian determinant bounded away from 0");
  chk.note("min |det J|", min_det);
  return finish("sweeps", "Monotonicity and positivity sweeps", chk, start);
}

CriterionResult criterion_convergence() {
  const auto start = Clock::now();
  Check chk;
  const FunctionRef f = make_poly1d({1.0, 0.0, 1.0});
  const double radius = 0.5;
  const EpigraphSet epi(f);
  const auto xs = linspace(-1.5, 1.5, 41);

  // Closed-form reference at the same base points, by inverting x(t).
  std::vector<Vec> reference;
  for (double x : xs) {
    const double t = detail::bisect_root(
        [&](double tt) { return equidistant_point(*f, radius, tt).x - x; }, -1.2, 1.2, 1e-12);
    const ParamSample p = equidistant_point(*f, radius, t);
    reference.push_back({p.x, p.y});
  }

  double previous = kInf;
  bool decreasing = true;
  std::ostringstream seq;
  for (int m : {10, 100, 1000}) {
    std::vector<Vec> pts;
    for (int k = 0; k < m; ++k) {
      const double th = -1.5707963267948966 + 2.0 * 3.14159265358979323846 * k / m;
      pts.push_back({radius * std::cos(th), radius * std::sin(th)});
    }
    const PointCloudSet cloud(std::move(pts));
    std::vector<Vec> profile_pts;
    for (double x : xs) {
      const VerticalScan scan = scan_vertical(x, cloud, epi);
      profile_pts.push_back({x, 0.5 * (scan.g_minus + scan.g_plus)});
    }
    const double h = hausdorff(profile_pts, reference);
    seq << (m == 10 ? "" : " > ") << h;
    if (h >= previous) decreasing = false;
    previous = h;
  }
  chk.require(decreasing, "Hausdorff distance decreases for 10/100/1000 cloud points");
  chk.note("sequence", seq.str());
  return finish("convergence", "Point-cloud convergence sanity", chk, start);
}

}  // namespace

const std::vector<CatalogEntry>& catalog_1d() {
  static const std::vector<CatalogEntry> entries = {
      {"sqrt1p", make_sqrt1p(), 0.9, -2.0, 2.0},
      {"exp", make_exp(), 0.5, -2.0, 1.0},
      {"poly_t2p1", make_poly1d({1.0, 0.0, 1.0}), 0.5, -1.3, 1.3},
      {"shifted_parabola", make_shifted_parabola(1.0, 1.0), 0.5, -1.1, 1.3},
  };
  return entries;
}

FunctionRef paper_quadform() {
  return make_quadform({{1.0, 10.0}, {10.0, 1000.0}}, {0.0, -30.0}, 1.0);
}

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts) {
  std::vector<std::pair<std::string, std::function<CriterionResult()>>> all = {
      {"domains", [] { return criterion_domains(); }},
      {"quadform", [] { return criterion_quadform(); }},
      {"oracle", [] { return criterion_oracle(); }},
      {"compatibility", [&] { return criterion_compatibility(opts.inject_perturbation); }},
      {"characterization", [] { return criterion_characterization(); }},
      {"angular", [] { return criterion_angular(); }},
      {"minop", [] { return criterion_minop(); }},
      {"svc", [] { return criterion_svc(); }},
      {"sweeps", [] { return criterion_sweeps(); }},
      {"convergence", [] { return criterion_convergence(); }},
  };
  std::vector<CriterionResult> results;
  for (auto& [id, run] : all) {
    if (!opts.only.empty() && id.find(opts.only) == std::string::npos) continue;
    results.push_back(run());
  }
  return results;
}

}  // namespace equidist
