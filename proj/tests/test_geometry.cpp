#include <doctest.h>

#include <cmath>
#include <random>

#include "equidist/detail/optimize.hpp"
#include "equidist/error.hpp"
#include "equidist/focal.hpp"
#include "equidist/pathology.hpp"

using namespace equidist;

TEST_SUITE_BEGIN("geometry");

TEST_CASE("ball distance is the radial formula") {
  const BallSet ball(0.9, 2);
  CHECK(ball.distance({0.0, 0.95}).distance == doctest::Approx(0.05).epsilon(1e-14));
  // Interior points are at distance zero from the solid ball.
  CHECK(ball.distance({0.0, 0.5}).distance == 0.0);
  CHECK(ball.distance({0.3, 0.4}).distance == 0.0);
  const auto far = ball.distance({3.0, 4.0});
  CHECK(far.distance == doctest::Approx(5.0 - 0.9).epsilon(1e-15));
  REQUIRE(far.nearest.has_value());
  CHECK(distance(*far.nearest, {3.0, 4.0}) == doctest::Approx(far.distance).epsilon(1e-12));
}

TEST_CASE("epigraph distance on the symmetry axis") {
  const EpigraphSet epi(make_sqrt1p());
  const auto res = epi.distance({0.0, 0.95});
  CHECK(res.distance == doctest::Approx(0.05).epsilon(1e-9));
  REQUIRE(res.nearest.has_value());
  CHECK((*res.nearest)[0] == doctest::Approx(0.0).epsilon(1e-8));
  CHECK((*res.nearest)[1] == doctest::Approx(1.0).epsilon(1e-8));
  // Points on or above the graph are inside the epigraph.
  CHECK(epi.distance({2.0, 5.0}).distance == 0.0);
}

TEST_CASE("epigraph distance against the dense-grid oracle") {
  const Vec p = {5.2485, -0.1243};
  // Independent oracle: dense scan of the squared distance over the foot
  // parameter, then golden-section refinement in the winning cell.
  auto sq = [&](double s) {
    const double fv = s * s + 1.0;
    return (p[0] - s) * (p[0] - s) + (fv - p[1]) * (fv - p[1]);
  };
  double best = 1e300, best_s = 0.0;
  for (double s = -10.0; s <= 10.0; s += 1e-5) {
    const double v = sq(s);
    if (v < best) {
      best = v;
      best_s = s;
    }
  }
  const double s_star = detail::golden_section(sq, best_s - 1e-5, best_s + 1e-5, 1e-14, 400);
  const double oracle = std::sqrt(sq(s_star));
  CHECK(oracle == doctest::Approx(4.75).epsilon(1e-5));

  const EpigraphSet epi(make_poly1d({1.0, 0.0, 1.0}));
  const auto res = epi.distance(p);
  CHECK(std::abs(res.distance - oracle) <= 1e-6);
  REQUIRE(res.nearest.has_value());
  CHECK((*res.nearest)[0] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK((*res.nearest)[1] == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("equidistant residual examples") {
  const BallSet ball(0.9, 2);
  const EpigraphSet epi(make_sqrt1p());
  CHECK(equidistant_residual({0.0, 0.95}, ball, epi) == doctest::Approx(0.0).epsilon(1e-9));
  // (0, 0.5) lies inside the solid ball, so d(p, K) = 0 and the residual is
  // minus the epigraph distance. Confirmed with dense sampling below.
  const double res = equidistant_residual({0.0, 0.5}, ball, epi);
  CHECK(res == doctest::Approx(-0.5).epsilon(1e-10));
  double oracle_l = 1e300;
  for (double s = -5.0; s <= 5.0; s += 1e-4)
    oracle_l = std::min(oracle_l, std::hypot(s, std::sqrt(s * s + 1.0) - 0.5));
  CHECK(res == doctest::Approx(-oracle_l).epsilon(1e-6));
}

TEST_CASE("svc scene: the critical vertical point is equidistant") {
  const SvcScene scene = build_scene(0);
  const BallSet disc(2.0, Vec{0.0, scene.y0()});
  const EpigraphSet epi(make_svc());
  const Vec p = {scene.x0(), 0.0};
  CHECK(std::abs(equidistant_residual(p, disc, epi)) <= 1e-9);
  const double expected = std::sqrt(scene.x0() * scene.x0() + scene.y0() * scene.y0()) - 2.0;
  CHECK(disc.distance(p).distance == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(1.0133249109450831).epsilon(1e-12));
}

TEST_CASE("hausdorff examples") {
  const std::vector<Vec> ab = {{0.0, 0.0}, {1.0, 0.0}};
  CHECK(hausdorff(ab, ab) == 0.0);
  CHECK(hausdorff({{0.0, 0.0}}, {{3.0, 4.0}}) == doctest::Approx(5.0));
  CHECK(hausdorff({{0.0, 0.0}, {2.0, 0.0}}, {{0.0, 0.0}}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(hausdorff({{0.0, 0.0}}, {{1.0, 2.0, 3.0}}), invalid_input);
  CHECK_THROWS_AS(hausdorff({}, {{1.0}}), invalid_input);
}

TEST_CASE("hausdorff symmetry and triangle inequality on sampled triples") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  auto random_set = [&](int n) {
    std::vector<Vec> pts;
    for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng)});
    return pts;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_set(5), b = random_set(7), c = random_set(4);
    const double hab = hausdorff(a, b);
    CHECK(hab == hausdorff(b, a));
    CHECK(hab <= hausdorff(a, c) + hausdorff(c, b) + 1e-12);
  }
}

TEST_CASE("distance functions are 1-Lipschitz") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> coord(-4.0, 4.0);
  const BallSet ball(0.7, 2);
  const PointCloudSet cloud({{0.0, -1.0}, {1.0, 2.0}, {-2.0, 0.5}});
  const EpigraphSet epi(make_poly1d({1.0, 0.0, 1.0}));
  const std::vector<const FocalSet*> sets = {&ball, &cloud, &epi};
  for (int trial = 0; trial < 60; ++trial) {
    const Vec p = {coord(rng), coord(rng)};
    const Vec q = {coord(rng), coord(rng)};
    for (const FocalSet* s : sets) {
      const double dp = s->distance(p).distance;
      const double dq = s->distance(q).distance;
      CHECK(std::abs(dp - dq) <= distance(p, q) + 1e-9);
    }
  }
}

TEST_CASE("epigraph projection satisfies the normal condition") {
  const double tol = defaults::tol;
  const EpigraphSet epi(make_exp());
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  const FunctionRef f = make_exp();
  for (int trial = 0; trial < 40; ++trial) {
    Vec p = {coord(rng), coord(rng)};
    if (p[1] >= f->value(p[0])) continue;
    const auto res = epi.distance(p, tol);
    REQUIRE(res.nearest.has_value());
    const double s = (*res.nearest)[0];
    const double fp = f->slope(s);
    const double defect = (p[0] - s) * 1.0 + (p[1] - f->value(s)) * fp;
    CHECK(std::abs(defect) <= 1e-6 * (1.0 + std::abs(fp)));
    CHECK(distance(p, *res.nearest) == doctest::Approx(res.distance).epsilon(1e-10));
  }
}

TEST_CASE("nD epigraph projection matches a brute-force scan") {
  const FunctionRef radial = make_quadform({{1.0, 0.0}, {0.0, 1.0}}, {0.0, 0.0}, 1.0);
  const EpigraphSet epi(radial);
  const Vec p = {0.4, -0.3, 0.2};
  const auto res = epi.distance(p);
  double best = 1e300;
  for (double a = -1.5; a <= 1.5; a += 2e-3) {
    for (double b = -1.5; b <= 1.5; b += 2e-3) {
      const double fv = a * a + b * b + 1.0;
      best = std::min(best, std::sqrt((p[0] - a) * (p[0] - a) + (p[1] - b) * (p[1] - b) +
                                      (fv - p[2]) * (fv - p[2])));
    }
  }
  CHECK(res.distance == doctest::Approx(best).epsilon(1e-5));
  CHECK(res.distance <= best + 1e-12);
}

TEST_CASE("projection reports non-convergence with the best bracket") {
  const EpigraphSet epi(make_sqrt1p());
  try {
    epi.distance({3.0, -2.0}, 1e-300);
    FAIL("expected no_convergence");
  } catch (const no_convergence& e) {
    CHECK(e.best_lo <= e.best_hi);
  }
}

TEST_SUITE_END();
