#include <doctest.h>

#include <cmath>

#include "equidist/circle.hpp"
#include "equidist/detail/optimize.hpp"
#include "equidist/error.hpp"
#include "equidist/focal.hpp"
#include "equidist/verify.hpp"

using namespace equidist;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1.0);
  return out;
}

// Frozen from bisection of the defining equations (see also the verify suite).
constexpr double kExpCritical = 1.5120072505676469;
constexpr double kPolyCritical = 1.6506801238857846;

}  // namespace

TEST_SUITE_BEGIN("circle");

TEST_CASE("alpha: signed tangent-line distance") {
  const FunctionRef sq = make_sqrt1p();
  for (double t : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
    CHECK(tangent_line_distance(*sq, t) ==
          doctest::Approx(-1.0 / std::sqrt(2.0 * t * t + 1.0)).epsilon(1e-12));
  }
  CHECK(tangent_line_distance(*make_poly1d({1.0, 0.0, 1.0}), 1.0) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(tangent_line_distance(*make_exp(), 0.0) ==
        doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("critical domain: the three trichotomy cases") {
  const CriticalDomain none = critical_domain(*make_sqrt1p(), 0.9, 1e3);
  CHECK_FALSE(none.bounded_below());
  CHECK_FALSE(none.bounded_above());

  const CriticalDomain pos = critical_domain(*make_exp(), 0.5, 1e3);
  CHECK_FALSE(pos.bounded_below());
  // Independent oracle in-place: bisection on e^t (t-1) - R sqrt(1+e^(2t)).
  const double exp_ref = detail::bisect_root(
      [](double t) { return std::exp(t) * (t - 1.0) - 0.5 * std::sqrt(1.0 + std::exp(2.0 * t)); },
      1.0, 2.0, 1e-13);
  CHECK(exp_ref == doctest::Approx(kExpCritical).epsilon(1e-12));
  CHECK(pos.t_plus == doctest::Approx(exp_ref).epsilon(1e-8));

  const CriticalDomain both = critical_domain(*make_poly1d({1.0, 0.0, 1.0}), 0.5, 1e3);
  const double poly_ref = std::sqrt((3.0 + std::sqrt(6.0)) / 2.0);
  CHECK(poly_ref == doctest::Approx(kPolyCritical).epsilon(1e-15));
  CHECK(both.t_plus == doctest::Approx(poly_ref).epsilon(1e-9));
  CHECK(both.t_minus == doctest::Approx(-poly_ref).epsilon(1e-9));
}

TEST_CASE("critical domain: rejected when alpha(0) >= R") {
  // Not positive-valued, so the separation precondition can fail.
  const FunctionRef dipped = make_poly1d({-2.0, 0.0, 1.0});
  CHECK_THROWS_AS(critical_domain(*dipped, 0.5, 10.0), invalid_input);
}

TEST_CASE("equidistant point: worked instances") {
  const FunctionRef poly = make_poly1d({1.0, 0.0, 1.0});
  const ParamSample a = equidistant_point(*poly, 0.5, 0.0);
  CHECK(a.s == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(a.x == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(a.y == doctest::Approx(0.75).epsilon(1e-15));

  const ParamSample b = equidistant_point(*poly, 0.5, 1.0);
  CHECK(b.s == doctest::Approx(4.75).epsilon(1e-12));
  CHECK(b.x == doctest::Approx(1.0 + 9.5 / std::sqrt(5.0)).epsilon(1e-12));
  CHECK(b.y == doctest::Approx(2.0 - 4.75 / std::sqrt(5.0)).epsilon(1e-12));
  CHECK(b.g == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-12));
  // Oracle: both focal distances equal s.
  const BallSet ball(0.5, 2);
  const EpigraphSet epi(poly);
  CHECK(ball.distance({b.x, b.y}).distance == doctest::Approx(b.s).epsilon(1e-10));
  CHECK(epi.distance({b.x, b.y}).distance == doctest::Approx(b.s).epsilon(1e-10));

  const ParamSample c = equidistant_point(*make_exp(), 0.5, 0.0);
  const double s_exp = 0.375 / (0.5 + 1.0 / std::sqrt(2.0));
  CHECK(c.s == doctest::Approx(s_exp).epsilon(1e-12));
  CHECK(c.x == doctest::Approx(s_exp / std::sqrt(2.0)).epsilon(1e-9));
  CHECK(c.y == doctest::Approx(1.0 - s_exp / std::sqrt(2.0)).epsilon(1e-9));
  CHECK(c.x == doctest::Approx(0.21966991411008938).epsilon(1e-9));
  CHECK(c.y == doctest::Approx(0.78033008588991067).epsilon(1e-9));
}

TEST_CASE("equidistant point: critical and disjointness errors") {
  const FunctionRef poly = make_poly1d({1.0, 0.0, 1.0});
  CHECK_THROWS_WITH_AS(equidistant_point(*poly, 0.5, 1.7), doctest::Contains("critical"),
                       invalid_input);
  CHECK_THROWS_WITH_AS(equidistant_point(*poly, 1.5, 0.0), doctest::Contains("disjoint"),
                       invalid_input);
}

TEST_CASE("trace curve") {
  const auto sq = trace_curve(*make_sqrt1p(), 0.9, linspace(-3.0, 3.0, 121));
  CHECK(sq.size() == 121);
  for (std::size_t i = 1; i < sq.size(); ++i) CHECK(sq[i].x > sq[i - 1].x);

  const auto poly = trace_curve(*make_poly1d({1.0, 0.0, 1.0}), 0.5, linspace(-1.6, 1.6, 101));
  CHECK(poly.front().x < -25.0);
  CHECK(poly.back().x > 25.0);

  const auto single = trace_curve(*make_poly1d({1.0, 0.0, 1.0}), 0.5, {0.0});
  CHECK(single.size() == 1);
  CHECK(single[0].y == doctest::Approx(0.75));
}

TEST_CASE("trace curve rejects a non-injective parameterization") {
  // A concave boundary breaks Theorem 7's hypothesis; x(t) backtracks.
  const FunctionRef concave = make_poly1d({2.0, 0.0, -1.0});
  CHECK_THROWS_AS(trace_curve(*concave, 0.5, {0.0, 0.5}), std::logic_error);
}

TEST_CASE("reconstruct f from samples") {
  const FunctionRef poly = make_poly1d({1.0, 0.0, 1.0});
  const auto rec = reconstruct_f(equidistant_point(*poly, 0.5, 1.0));
  CHECK(rec.f_value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rec.f_slope == doctest::Approx(2.0).epsilon(1e-12));

  ParamSample hand;
  hand.t = 0.0;
  hand.x = 0.0;
  hand.y = 0.75;
  hand.s = 0.25;
  hand.r = 0.75;
  const auto h = reconstruct_f(hand);
  CHECK(h.f_value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(h.f_slope == doctest::Approx(0.0).epsilon(1e-15));

  ParamSample corrupt = hand;
  corrupt.x = 1.0;  // |x - t| now exceeds s
  CHECK_THROWS_AS(reconstruct_f(corrupt), invalid_input);
}

TEST_CASE("round trip: reconstruct after equidistant_point is the identity") {
  for (const CatalogEntry& entry : catalog_1d()) {
    const auto curve = trace_curve(*entry.f, entry.radius, linspace(entry.t_lo, entry.t_hi, 41));
    for (const auto& s : curve) {
      const auto rec = reconstruct_f(s);
      CHECK(std::abs(rec.f_value - entry.f->value(s.t)) <= 1e-9);
      CHECK(std::abs(rec.f_slope - entry.f->slope(s.t)) <= 1e-9);
      CHECK(std::abs(s.g - entry.f->slope(s.t) / std::sqrt(1.0 + std::pow(entry.f->slope(s.t), 2))) <=
            1e-10);
      CHECK(std::abs(s.g) < 1.0);
      CHECK(std::sqrt(1.0 - s.g * s.g) + s.y / s.r > 0.0);
    }
  }
}

TEST_CASE("compatibility residual vanishes at O(h^2)") {
  const FunctionRef sq = make_sqrt1p();
  auto max_residual = [&](double h) {
    const int n = static_cast<int>(std::lround(2.0 / h)) + 1;
    const auto curve = trace_curve(*sq, 0.9, linspace(-1.0, 1.0, n));
    double worst = 0.0;
    for (double r : compatibility_residuals(curve, 0.9)) worst = std::max(worst, std::abs(r));
    return worst;
  };
  const double at_1e3 = max_residual(1e-3);
  CHECK(at_1e3 <= 1e-6);
  // Halving the step shrinks the residual about fourfold.
  CHECK(max_residual(5e-4) <= 0.35 * at_1e3);

  const auto exp_curve = trace_curve(*make_exp(), 0.5, linspace(-2.0, 0.5, 5001));
  double worst_exp = 0.0;
  for (double r : compatibility_residuals(exp_curve, 0.5)) worst_exp = std::max(worst_exp, std::abs(r));
  CHECK(worst_exp <= 1e-6);

  // Negative control: a 1% vertical inflation must be flagged.
  auto perturbed = trace_curve(*sq, 0.9, linspace(-1.0, 1.0, 2001));
  for (auto& s : perturbed) s.y *= 1.01;
  double worst = 0.0;
  for (double r : compatibility_residuals(perturbed, 0.9)) worst = std::max(worst, std::abs(r));
  CHECK(worst > 1e-3);
}

TEST_CASE("angular identity at the worked points") {
  auto residual_at = [&](const ConvexFunction& f, double radius, double t) {
    const double h = 1e-4;
    return angular_residual(equidistant_point(f, radius, t - h),
                            equidistant_point(f, radius, t),
                            equidistant_point(f, radius, t + h), f);
  };
  const FunctionRef poly = make_poly1d({1.0, 0.0, 1.0});
  CHECK(std::abs(residual_at(*poly, 0.5, 0.0)) <= 1e-6);
  CHECK(std::abs(residual_at(*make_exp(), 0.5, 0.0)) <= 1e-6);
  CHECK(std::abs(residual_at(*make_sqrt1p(), 0.9, 1.0)) <= 1e-6);

  // The axis symmetry forces a horizontal tangent at t = 0.
  const double h = 1e-4;
  const ParamSample prev = equidistant_point(*poly, 0.5, -h);
  const ParamSample next = equidistant_point(*poly, 0.5, h);
  CHECK(std::abs(std::atan2(next.y - prev.y, next.x - prev.x)) <= 1e-6);
}

TEST_CASE("hyperbola membership and tangency") {
  const FunctionRef poly = make_poly1d({1.0, 0.0, 1.0});
  const auto curve = trace_curve(*poly, 0.5, linspace(-1.0, 1.0, 2001));
  for (std::size_t i = 1; i + 1 < curve.size(); i += 100) {
    const auto res = hyperbola_tangency(curve[i - 1], curve[i], curve[i + 1], *poly, 0.5);
    CHECK(res.membership <= 1e-9);
    CHECK(res.orthogonality <= 1e-6);
  }
  ParamSample displaced = curve[1000];
  displaced.y += 0.1;
  CHECK(hyperbola_membership(displaced, *poly, 0.5) > 1e-3);
}

TEST_SUITE_END();
