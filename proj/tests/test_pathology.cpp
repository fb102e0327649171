#include <doctest.h>

#include <cmath>
#include <memory>

#include "equidist/error.hpp"
#include "equidist/focal.hpp"
#include "equidist/function.hpp"
#include "equidist/pathology.hpp"

using namespace equidist;

TEST_SUITE_BEGIN("pathology");

TEST_CASE("scene constants") {
  const SvcScene scene = build_scene(0);
  const double s3 = std::sqrt(3.0);
  CHECK(scene.x0() == doctest::Approx((3.0 + s3) / 2.0).epsilon(1e-15));
  CHECK(scene.y0() == doctest::Approx((2.0 + s3) / 2.0).epsilon(1e-15));
  CHECK(scene.radius() == 2.0);
  CHECK(scene.x0() > scene.radius());
  CHECK(scene.y0() > 0.5);
  CHECK(scene.y0() < scene.radius());

  const Vec p2 = scene.p2_prime();
  CHECK(p2[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(p2[1] == doctest::Approx(s3 / 2.0).epsilon(1e-14));
  const Vec p1 = scene.p1_prime();
  CHECK(p1[0] == doctest::Approx(2.0 * scene.x0() - std::sqrt(2.0)).epsilon(1e-14));
  CHECK(p1[1] == doctest::Approx(scene.y0() - std::sqrt(2.0)).epsilon(1e-14));

  // The tangent line at P2' stays clear of the disc: d(Q1, l) > R.
  const double d_q1_l = std::abs(2.0 - s3 * scene.x0());
  CHECK(d_q1_l == doctest::Approx((3.0 * s3 - 1.0) / 2.0).epsilon(1e-13));
  CHECK(d_q1_l > 2.0);
}

TEST_CASE("fat cantor construction") {
  const FatCantor d1 = fat_cantor(1);
  REQUIRE(d1.removed.size() == 1);
  CHECK(d1.removed[0].first == doctest::Approx(3.0 / 8.0).epsilon(1e-15));
  CHECK(d1.removed[0].second == doctest::Approx(5.0 / 8.0).epsilon(1e-15));
  CHECK(d1.kept_measure() == doctest::Approx(0.75).epsilon(1e-15));

  // Breadth-first enumeration at depth 2.
  const FatCantor d2 = fat_cantor(2);
  REQUIRE(d2.removed.size() == 3);
  CHECK(d2.removed[1].first == doctest::Approx(5.0 / 32.0).epsilon(1e-15));
  CHECK(d2.removed[1].second == doctest::Approx(7.0 / 32.0).epsilon(1e-15));
  CHECK(d2.removed[2].first == doctest::Approx(25.0 / 32.0).epsilon(1e-15));
  CHECK(d2.removed[2].second == doctest::Approx(27.0 / 32.0).epsilon(1e-15));

  CHECK(fat_cantor(3).kept_measure() == 0.5625);
  // Kept measure follows 1/2 + 2^-(d+1) exactly, so the limit is 1/2.
  for (int d : {4, 8, 12, 16})
    CHECK(fat_cantor(d).kept_measure() ==
          doctest::Approx(0.5 + std::ldexp(1.0, -(d + 1))).epsilon(1e-14));
  CHECK(std::abs(fat_cantor(16).kept_measure() - 0.5) <= 1e-4);
  CHECK_THROWS_AS(fat_cantor(-1), invalid_input);
}

TEST_CASE("depth 0: the trimmed scene equals the convex scene") {
  const SvcScene scene = build_scene(0);
  CHECK(scene.chords().empty());
  for (double t = -0.5; t <= 0.5; t += 0.05) {
    const Vec p = {scene.x0(), t};
    CHECK(scene.distance_trimmed(p) == doctest::Approx(scene.distance_convex(p)).epsilon(1e-14));
  }
}

TEST_CASE("depth 1: chord endpoints sit on the arc map") {
  const SvcScene scene = build_scene(1);
  REQUIRE(scene.chords().size() == 1);
  const auto& chord = scene.chords()[0];
  CHECK(chord.u_lo == doctest::Approx(3.0 / 8.0));
  CHECK(chord.u_hi == doctest::Approx(5.0 / 8.0));
  CHECK(distance(chord.a, scene.arc_point(3.0 / 8.0 - 0.5)) <= 1e-15);
  CHECK(distance(chord.b, scene.arc_point(5.0 / 8.0 - 0.5)) <= 1e-15);
  // Chord endpoints lie on the circle around Q2.
  for (const Vec& e : {chord.a, chord.b})
    CHECK(std::hypot(e[0] - 2.0 * scene.x0(), e[1] - scene.y0()) ==
          doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("membership: convex scene segment") {
  const SvcScene scene = build_scene(3);
  for (int i = 0; i <= 100; ++i) {
    const double t = -0.5 + i / 100.0;
    const auto res = segment_membership_test(scene, t, false);
    CHECK(res.is_equidistant);
    CHECK(res.residual <= 1e-9);
  }
  CHECK_THROWS_AS(segment_membership_test(scene, 0.7, false), invalid_input);
}

TEST_CASE("membership: trimmed scene dichotomy") {
  const SvcScene scene = build_scene(1);
  // t = 0 maps to u = 1/2, the middle of the removed interval ]3/8, 5/8[.
  const auto mid = segment_membership_test(scene, 0.0, true);
  CHECK_FALSE(mid.is_equidistant);
  const Vec p = {scene.x0(), 0.0};
  CHECK(scene.distance_disc(p) < scene.distance_trimmed(p));

  // Chord endpoints are kept.
  CHECK(segment_membership_test(scene, -0.5, true).is_equidistant);
  CHECK(segment_membership_test(scene, 3.0 / 8.0 - 0.5, true).is_equidistant);

  const SvcScene deep = build_scene(3);
  int disagreements = 0;
  for (int j = 0; j <= 256; ++j) {
    const double u = j / 256.0;
    const auto res = segment_membership_test(deep, u - 0.5, true);
    if (res.is_equidistant != !deep.cantor().in_removed(u)) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("measure estimate") {
  CHECK(measure_estimate(build_scene(1)) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(measure_estimate(build_scene(3)) == 0.5625);
  CHECK_THROWS_AS(measure_estimate(build_scene(0)), invalid_input);
}

TEST_CASE("trimmed boundary stays convex") {
  const auto scene = std::make_shared<const SvcScene>(build_scene(3));
  const FocalRef trimmed = make_trimmed_epigraph(scene);
  REQUIRE(trimmed->boundary_function() != nullptr);
  const auto report = verify_convexity(*trimmed->boundary_function(), {0.5}, {6.0}, 0.002);
  CHECK(report.ok);
  // Chords replace arcs: the trimmed boundary is at or above the convex one.
  for (double x = 3.0; x <= 3.4; x += 0.001)
    CHECK(scene->boundary_value(x, true) >= scene->boundary_value(x, false) - 1e-14);
}

TEST_CASE("generic epigraph distance agrees with the exact piecewise distance") {
  const SvcScene scene = build_scene(0);
  const EpigraphSet epi(make_svc());
  for (double x : {0.5, 2.0, scene.x0(), 3.1, 4.0, 5.5}) {
    for (double y : {-1.0, 0.0, 0.3}) {
      const Vec p = {x, y};
      CHECK(std::abs(epi.distance(p).distance - scene.distance_convex(p)) <= 1e-9);
    }
  }
}

TEST_SUITE_END();
