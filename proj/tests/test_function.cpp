#include <doctest.h>

#include <cmath>
#include <random>

#include <json.hpp>

#include "equidist/error.hpp"
#include "equidist/function.hpp"
#include "equidist/verify.hpp"

using namespace equidist;

TEST_SUITE_BEGIN("function");

TEST_CASE("evaluate: closed-form jets") {
  const Jet a = evaluate(*make_sqrt1p(), {0.0}, 2);
  CHECK(a.value == 1.0);
  CHECK(a.grad[0] == 0.0);
  CHECK(a.hess[0][0] == 1.0);

  const Jet b = evaluate(*paper_quadform(), {-1.0 / 6.0, 1.0 / 60.0}, 1);
  CHECK(b.value == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(std::abs(b.grad[0]) <= 1e-14);
  CHECK(std::abs(b.grad[1]) <= 1e-13);

  const Jet c = evaluate(*make_poly1d({1.0, 0.0, 1.0}), {1.0}, 1);
  CHECK(c.value == 2.0);
  CHECK(c.grad[0] == 2.0);
}

TEST_CASE("verify_convexity") {
  const auto a = verify_convexity(*make_sqrt1p(), {-10.0}, {10.0}, 0.01);
  CHECK(a.ok);

  const auto b = verify_convexity(*paper_quadform(), {-3.0, -3.0}, {3.0, 3.0}, 0.1);
  CHECK(b.ok);
  REQUIRE(b.minors.size() == 2);
  CHECK(b.minors[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.minors[1] == doctest::Approx(900.0).epsilon(1e-12));

  const auto c = verify_convexity(
      *make_tabulated({{-1.0, 1.0}, {0.0, 1.5}, {1.0, 1.0}}), {-1.0}, {1.0}, 0.25);
  CHECK_FALSE(c.ok);
  CHECK(c.worst_second_difference < -1e-3);
}

TEST_CASE("infimum over boxes") {
  const auto a = infimum(*make_sqrt1p(), {-5.0}, {5.0});
  CHECK(std::abs(a.argmin[0]) <= 5e-8);  // sqrt(eps) floor near a smooth minimum
  CHECK(a.min == doctest::Approx(1.0).epsilon(1e-14));

  const auto b = infimum(*paper_quadform(), {-3.0, -3.0}, {3.0, 3.0});
  CHECK(std::abs(b.min - 0.75) <= 1e-12);
  CHECK(std::abs(b.argmin[0] + 1.0 / 6.0) <= 1e-12);
  CHECK(std::abs(b.argmin[1] - 1.0 / 60.0) <= 1e-12);

  const auto c = infimum(*make_exp(), {-2.0}, {2.0});
  CHECK(c.argmin[0] == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(c.min == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("gradients and hessians match finite differences") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> coord(-1.5, 1.5);
  const double h = 1e-5;
  std::vector<FunctionRef> catalog = {make_sqrt1p(), make_exp(), make_poly1d({1.0, 0.0, 1.0}),
                                      make_shifted_parabola(1.0, 1.0), paper_quadform()};
  for (const FunctionRef& f : catalog) {
    for (int trial = 0; trial < 25; ++trial) {
      Vec t(f->dim());
      for (double& v : t) v = coord(rng);
      const Jet j = f->eval(t, 2);
      for (int i = 0; i < f->dim(); ++i) {
        Vec tp = t, tm = t;
        tp[i] += h;
        tm[i] -= h;
        const double fd = (f->eval(tp, 0).value - f->eval(tm, 0).value) / (2.0 * h);
        const double scale_ref = std::max(1.0, std::abs(j.grad[i]));
        CHECK(std::abs(fd - j.grad[i]) / scale_ref <= 1e-6);
        const Jet jp = f->eval(tp, 1);
        const Jet jm = f->eval(tm, 1);
        for (int k = 0; k < f->dim(); ++k) {
          const double hd = (jp.grad[k] - jm.grad[k]) / (2.0 * h);
          CHECK(std::abs(hd - j.hess[i][k]) / std::max(1.0, std::abs(j.hess[i][k])) <= 1e-6);
        }
      }
    }
  }
}

TEST_CASE("svc boundary: continuity, convexity, breakpoint errors") {
  const FunctionRef f = make_svc();
  const double s3 = std::sqrt(3.0);
  const double x0 = s3 / (s3 - 1.0);
  const double bp1 = 2.0 * x0 - s3;
  const double bp2 = 2.0 * x0 - std::sqrt(2.0);
  for (double bp : {bp1, bp2}) {
    const double left = f->value(std::nextafter(bp, -1e9));
    const double right = f->value(std::nextafter(bp, 1e9));
    CHECK(std::abs(left - right) <= 1e-12);
  }
  CHECK(verify_convexity(*f, {0.0}, {6.0}, 0.005).ok);
  CHECK(f->max_order({bp2}) == 0);
  CHECK_THROWS_WITH_AS(f->slope(bp2), doctest::Contains("breakpoint"), invalid_input);
  // The line/arc junction is C^1, but the second derivative jumps there, so
  // derivative queries are refused at both breakpoints.
  CHECK_THROWS_AS(f->slope(bp1), invalid_input);
  CHECK(f->slope(1.0) == doctest::Approx(-s3).epsilon(1e-14));
  CHECK(f->slope(5.0) == 0.0);
  CHECK(f->value(100.0) == doctest::Approx((2.0 + s3) / 2.0 - std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("json schema round trips with exact field names") {
  const std::vector<std::string> specs = {
      R"({"kind":"sqrt1p"})",
      R"({"kind":"exp"})",
      R"({"kind":"poly1d","coeffs":[1,0,1]})",
      R"({"kind":"quadform","Q":[[1,10],[10,1000]],"b":[0,-30],"c":1})",
      R"({"kind":"svc"})",
      R"({"kind":"shifted_parabola","center":1,"offset":1})",
      R"({"kind":"tabulated","knots":[[-1,1],[0,0.9],[1,1]]})",
      R"({"kind":"min","members":[{"kind":"exp"},{"kind":"sqrt1p"}]})",
  };
  for (const std::string& text : specs) {
    const FunctionRef f = function_from_json(nlohmann::json::parse(text));
    const FunctionRef g = function_from_json(f->to_json());
    Vec t(f->dim(), 0.3);
    CHECK(f->eval(t, 0).value == g->eval(t, 0).value);
  }
  CHECK_THROWS_WITH_AS(function_from_json(nlohmann::json::parse(R"({"kind":"warp"})")),
                       doctest::Contains("unknown kind"), invalid_input);
  CHECK_THROWS_WITH_AS(function_from_json(nlohmann::json::parse(R"({"coeffs":[1]})")),
                       doctest::Contains("kind"), invalid_input);
  CHECK_THROWS_WITH_AS(function_from_json(nlohmann::json::parse(R"({"kind":"poly1d"})")),
                       doctest::Contains("poly1d"), invalid_input);
}

TEST_CASE("quadform validation") {
  CHECK_THROWS_AS(make_quadform({{1.0, 2.0}, {3.0, 1.0}}, {0.0, 0.0}, 0.0), invalid_input);
  CHECK_THROWS_AS(make_quadform({{1.0, 10.0}, {10.0, 1000.0}}, {0.0}, 0.0), invalid_input);
}

TEST_CASE("min family evaluation") {
  const std::vector<FunctionRef> members = {make_shifted_parabola(1.0, 1.0),
                                            make_shifted_parabola(-1.0, 1.0)};
  const FunctionRef fmin = make_min_family(members);
  CHECK(fmin->value(0.0) == doctest::Approx(2.0));
  CHECK(fmin->value(2.0) == doctest::Approx(2.0));
  CHECK(fmin->value(-2.0) == doctest::Approx(2.0));
  CHECK_FALSE(fmin->smooth());
  // Away from the crossing the active member's derivatives are exposed.
  CHECK(fmin->slope(2.0) == doctest::Approx(2.0));
  CHECK(fmin->max_order({0.0}) == 0);
  CHECK_THROWS_WITH_AS(fmin->slope(0.0), doctest::Contains("crossing"), invalid_input);

  const FunctionRef single = make_min_family({make_poly1d({1.0, 0.0, 1.0})});
  CHECK(single->value(0.7) == doctest::Approx(1.49));
}

TEST_CASE("min_on_ball handles the Lemma-1 window") {
  // The window collapses to the center itself when the reach is zero.
  const auto a = min_on_ball(*make_sqrt1p(), {0.0}, 0.0);
  CHECK(a.min == doctest::Approx(1.0));
  const auto b = min_on_ball(*make_sqrt1p(), {2.0}, 1.0);
  CHECK(b.min == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  const auto c = min_on_ball(*paper_quadform(), {1.0, 0.0}, 0.25);
  // The unconstrained minimizer (-1/6, 1/60) is outside this ball, so the
  // minimum sits on the boundary circle.
  CHECK(std::abs(std::hypot(c.argmin[0] - 1.0, c.argmin[1]) - 0.25) <= 1e-6);
}

TEST_SUITE_END();
