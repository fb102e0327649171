#include <doctest.h>

#include <cmath>

#include "equidist/error.hpp"
#include "equidist/focal.hpp"
#include "equidist/minop.hpp"

using namespace equidist;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1.0);
  return out;
}

std::vector<FunctionRef> two_parabolas() {
  return {make_shifted_parabola(1.0, 1.0), make_shifted_parabola(-1.0, 1.0)};
}

ScanOptions fast_opts() {
  ScanOptions opts;
  opts.grid_n = 512;
  return opts;
}

}  // namespace

TEST_SUITE_BEGIN("minop");

TEST_CASE("epigraph union identity") {
  const auto family = two_parabolas();
  const EpigraphSet min_epi(min_family(family));
  const EpigraphSet left(family[0]), right(family[1]);
  for (double x : linspace(-2.5, 2.5, 11)) {
    for (double y : {-1.0, 0.0, 0.9, 1.4}) {
      const double direct = min_epi.distance({x, y}).distance;
      const double via_members =
          std::min(left.distance({x, y}).distance, right.distance({x, y}).distance);
      CHECK(std::abs(direct - via_members) <= 1e-9);
    }
  }
}

TEST_CASE("sandwich inequality for the two-parabola family") {
  const BallSet ball(0.5, 2);
  const auto report = sandwich_check(ball, two_parabolas(), linspace(-2.0, 2.0, 41), 1e-7, fast_opts());
  CHECK(report.ok);
  CHECK(report.violations.empty());
  REQUIRE(report.rows.size() == 41);
  for (const auto& row : report.rows) {
    CHECK(row.min_member_lower <= row.family_lower + 1e-7);
    CHECK(row.family_upper <= row.min_member_upper + 1e-7);
  }
}

TEST_CASE("sandwich degenerates to equality for a singleton family") {
  const BallSet ball(0.5, 2);
  const auto report =
      sandwich_check(ball, {make_poly1d({1.0, 0.0, 1.0})}, linspace(-1.0, 1.0, 9), 1e-7, fast_opts());
  CHECK(report.ok);
  for (const auto& row : report.rows) {
    CHECK(std::abs(row.min_member_lower - row.family_lower) <= 2e-7);
    CHECK(std::abs(row.min_member_upper - row.family_upper) <= 2e-7);
    CHECK(std::abs(row.family_lower - row.family_upper) <= 2e-7);
  }
}

TEST_CASE("nested epigraphs: the dominated member is inert") {
  const BallSet ball(0.5, 2);
  const std::vector<FunctionRef> nested = {make_poly1d({1.0, 0.0, 1.0}),
                                           make_poly1d({3.0, 0.0, 1.0})};
  const auto commute = min_commute_check(ball, nested, linspace(-1.5, 1.5, 13), 1e-7, fast_opts());
  CHECK(commute.ok);
  const EpigraphSet inner(nested[0]);
  for (std::size_t i = 0; i < commute.xs.size(); ++i) {
    const auto scan = scan_vertical(commute.xs[i], ball, inner);
    CHECK(std::abs(commute.family_g[i] - scan.roots.front()) <= 1e-7);
  }
}

TEST_CASE("commuting corollary for shifted parabolas") {
  const BallSet ball(0.5, 2);
  const auto family = two_parabolas();
  const auto report = min_commute_check(ball, family, linspace(-2.0, 2.0, 41), 1e-7, fast_opts());
  CHECK(report.ok);
  CHECK(report.worst <= 1e-7);

  // At x = 0 symmetry makes both members agree.
  const EpigraphSet left(family[0]), right(family[1]);
  const double g1 = scan_vertical(0.0, ball, left).roots.front();
  const double g2 = scan_vertical(0.0, ball, right).roots.front();
  CHECK(std::abs(g1 - g2) <= 1e-9);

  // At x = 2 the nearer parabola wins.
  const auto idx = std::size_t(40);  // x = 2.0
  CHECK(report.xs[idx] == doctest::Approx(2.0));
  const double nearer = scan_vertical(2.0, ball, left).roots.front();
  CHECK(std::abs(report.family_g[idx] - nearer) <= 1e-8);

  const std::vector<FunctionRef> three = {make_shifted_parabola(1.0, 1.0),
                                          make_shifted_parabola(-1.0, 1.0),
                                          make_shifted_parabola(0.0, 1.0)};
  CHECK(min_commute_check(ball, three, linspace(-2.0, 2.0, 21), 1e-7, fast_opts()).ok);
}

TEST_CASE("commute check rejects members with multiple roots") {
  // Stacked focal points beside a steep parabola produce three roots at
  // x = 0.3, violating the uniqueness precondition.
  const PointCloudSet cloud({{0.0, 0.0}, {0.0, 2.0}});
  const std::vector<FunctionRef> family = {make_poly1d({33.2, -80.0, 50.0})};
  CHECK_THROWS_WITH_AS(min_commute_check(cloud, family, {0.3}),
                       doctest::Contains("unique"), invalid_input);
}

TEST_SUITE_END();
