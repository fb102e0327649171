#include "equidist/characterize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "equidist/detail/optimize.hpp"
#include "equidist/error.hpp"

namespace equidist {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

class FunctionField final : public ScalarField {
 public:
  explicit FunctionField(FunctionRef g) : g_(std::move(g)) {}
  double value(double x) const override { return g_->value(x); }
  double derivative(double x) const override { return g_->slope(x); }

 private:
  FunctionRef g_;
};

class LambdaField final : public ScalarField {
 public:
  LambdaField(std::function<double(double)> v, std::function<double(double)> s)
      : value_(std::move(v)), slope_(std::move(s)) {}
  double value(double x) const override { return value_(x); }
  double derivative(double x) const override { return slope_(x); }

 private:
  std::function<double(double)> value_, slope_;
};

class SplineField final : public ScalarField {
 public:
  SplineField(std::vector<double> xs, std::vector<double> ys)
      : spline_(std::move(xs), std::move(ys)) {}
  double value(double x) const override { return spline_.value(x); }
  double derivative(double x) const override { return spline_.derivative(x); }
  std::pair<double, double> domain() const override {
    return {spline_.x_min(), spline_.x_max()};
  }

 private:
  CubicSpline spline_;
};

}  // namespace

std::pair<double, double> ScalarField::domain() const { return {-kInf, kInf}; }

FieldRef make_field(FunctionRef g) { return std::make_shared<FunctionField>(std::move(g)); }

FieldRef make_field(std::function<double(double)> value, std::function<double(double)> slope) {
  return std::make_shared<LambdaField>(std::move(value), std::move(slope));
}

FieldRef make_spline_field(std::vector<double> xs, std::vector<double> ys) {
  return std::make_shared<SplineField>(std::move(xs), std::move(ys));
}

FieldRef make_curve_field(const std::vector<ParamSample>& curve) {
  std::vector<double> xs, ys;
  xs.reserve(curve.size());
  ys.reserve(curve.size());
  for (const ParamSample& s : curve) {
    xs.push_back(s.x);
    ys.push_back(s.y);
  }
  return make_spline_field(std::move(xs), std::move(ys));
}

double h_map(double x, double g_value, double g_slope, double radius) {
  const double rho = std::hypot(x, g_value);
  if (rho <= radius) throw invalid_input("h_map: point inside the focal sphere");
  const double gp2 = g_slope * g_slope;
  return x - ((rho - radius) / rho) * (x * (1.0 - gp2) + 2.0 * g_value * g_slope) / (1.0 + gp2);
}

double h_map(const ScalarField& g, double radius, double x) {
  return h_map(x, g.value(x), g.derivative(x), radius);
}

Vec h_map_nd(const Vec& x, double g_value, const Vec& g_grad, double radius) {
  const double rho = std::sqrt(dot(x, x) + g_value * g_value);
  if (rho <= radius) throw invalid_input("h_map_nd: point inside the focal sphere");
  const double denom = 1.0 + dot(g_grad, g_grad);
  Vec inner = axpy(2.0 * (g_value - dot(x, g_grad)) / denom, g_grad, x);
  return sub(x, scale(inner, (rho - radius) / rho));
}

double invert_h(const ScalarField& g, double radius, double t, double residual_tol) {
  const auto [dom_lo, dom_hi] = g.domain();
  auto res = [&](double x) { return h_map(g, radius, x) - t; };

  // Expand a bracket around x = t, clamped to the field's domain.
  double lo = std::clamp(t - 0.5, dom_lo, dom_hi);
  double hi = std::clamp(t + 0.5, dom_lo, dom_hi);
  double step = 1.0;
  for (int i = 0; i < 80 && (res(lo) > 0.0 || res(hi) < 0.0); ++i) {
    if (res(lo) > 0.0) lo = std::max(dom_lo, lo - step);
    if (res(hi) < 0.0) hi = std::min(dom_hi, hi + step);
    step *= 2.0;
    if (lo == dom_lo && hi == dom_hi) break;
  }
  if (res(lo) > 0.0 || res(hi) < 0.0) {
    std::ostringstream os;
    os << "invert_h: t = " << t << " is outside the sampled range of h";
    throw invalid_input(os.str());
  }
  const double x = detail::bisect_root(res, lo, hi, 0.0, 200);
  if (std::abs(res(x)) > residual_tol)
    throw no_convergence("invert_h: residual tolerance not reached", lo, hi);
  return x;
}

Vec invert_h_nd(const std::function<double(const Vec&)>& g_value,
                const std::function<Vec(const Vec&)>& g_grad, double radius, const Vec& t,
                double residual_tol) {
  const int n = static_cast<int>(t.size());
  auto res = [&](const Vec& x) { return sub(h_map_nd(x, g_value(x), g_grad(x), radius), t); };

  Vec x = t;
  Vec r = res(x);
  double rn = norm(r);
  for (int it = 0; it < defaults::max_iterations; ++it) {
    if (rn <= residual_tol) return x;
    // Finite-difference Jacobian, column by column.
    Mat jac(n, Vec(n, 0.0));
    for (int c = 0; c < n; ++c) {
      const double h = 1e-6 * (1.0 + std::abs(x[c]));
      Vec xp = x, xm = x;
      xp[c] += h;
      xm[c] -= h;
      const Vec rp = res(xp);
      const Vec rm = res(xm);
      for (int rrow = 0; rrow < n; ++rrow) jac[rrow][c] = (rp[rrow] - rm[rrow]) / (2.0 * h);
    }
    Vec step;
    bool newton_ok = true;
    try {
      step = solve_dense(jac, scale(r, -1.0));
      newton_ok = all_finite(step);
    } catch (const invalid_input&) {
      newton_ok = false;
    }
    if (!newton_ok) step = scale(r, -0.5);  // damped fixed point: h is near identity
    double lambda = 1.0;
    bool moved = false;
    for (int bt = 0; bt < 40; ++bt) {
      Vec cand = axpy(lambda, step, x);
      Vec rc = res(cand);
      const double rcn = norm(rc);
      if (rcn < rn) {
        x = std::move(cand);
        r = std::move(rc);
        rn = rcn;
        moved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!moved)
      throw no_convergence("invert_h_nd: stalled before reaching tolerance", rn, rn);
  }
  throw no_convergence("invert_h_nd: iteration cap reached", rn, rn);
}

namespace {

/// Distance from p to the polyline graph through (ts, fs).
double polyline_distance(const std::vector<double>& ts, const std::vector<double>& fs,
                         double px, double py) {
  double best = kInf;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    const double ax = ts[i], ay = fs[i];
    const double bx = ts[i + 1], by = fs[i + 1];
    const double vx = bx - ax, vy = by - ay;
    const double len2 = vx * vx + vy * vy;
    double w = len2 > 0.0 ? ((px - ax) * vx + (py - ay) * vy) / len2 : 0.0;
    w = std::clamp(w, 0.0, 1.0);
    best = std::min(best, std::hypot(px - (ax + w * vx), py - (ay + w * vy)));
  }
  return best;
}

}  // namespace

CharacterizationReport is_equidistant_function(const ScalarField& g, double radius,
                                               const std::vector<double>& t_grid, double tol) {
  if (t_grid.size() < 5) throw invalid_input("is_equidistant_function: grid too small");
  std::vector<double> ts = t_grid;
  std::sort(ts.begin(), ts.end());

  CharacterizationReport rep;
  {
    std::ostringstream os;
    os << "sampled hull t in [" << ts.front() << ", " << ts.back() << "], " << ts.size()
       << " nodes";
    rep.certified_on = os.str();
  }

  struct Node {
    double t, x, y, r, g, fp;
  };
  std::vector<Node> nodes;
  nodes.reserve(ts.size());
  rep.h_injective_on_grid = true;
  rep.cond_polar = true;
  rep.cond_gnorm = true;
  double prev_x = -kInf;
  for (double t : ts) {
    Node n;
    n.t = t;
    n.x = invert_h(g, radius, t);
    n.y = g.value(n.x);
    n.r = std::hypot(n.x, n.y);
    if (n.x <= prev_x) rep.h_injective_on_grid = false;
    prev_x = n.x;
    if (n.r <= radius) {
      rep.cond_polar = false;
      n.g = 0.0;
      n.fp = 0.0;
      nodes.push_back(n);
      continue;
    }
    n.g = (n.x - t) / (n.r - radius);
    const double strengthened =
        n.g * n.g + (n.y < 0.0 ? n.y * n.y / ((n.r - radius) * (n.r - radius)) : 0.0);
    if (!(strengthened < 1.0)) rep.cond_gnorm = false;
    n.fp = std::abs(n.g) < 1.0 ? n.g / std::sqrt(1.0 - n.g * n.g) : 0.0;
    nodes.push_back(n);
  }

  rep.cond_monotone = rep.cond_polar && rep.cond_gnorm;
  for (std::size_t i = 1; i < nodes.size() && rep.cond_monotone; ++i)
    if (nodes[i].fp < nodes[i - 1].fp - 1e-10) rep.cond_monotone = false;

  // Compatibility residual from local central differences of the inverted
  // parameterization.
  rep.max_compat_residual = 0.0;
  if (rep.cond_polar && rep.cond_gnorm) {
    const double h = 1e-3;
    for (const Node& n : nodes) {
      try {
        const double xm = invert_h(g, radius, n.t - h);
        const double xp = invert_h(g, radius, n.t + h);
        const double dxdt = (xp - xm) / (2.0 * h);
        const double dydt = (g.value(xp) - g.value(xm)) / (2.0 * h);
        const double root = std::sqrt(std::max(0.0, 1.0 - n.g * n.g));
        const double res = (n.g - n.x / n.r) * dxdt - (root + n.y / n.r) * dydt;
        rep.max_compat_residual = std::max(rep.max_compat_residual, std::abs(res));
      } catch (const invalid_input&) {
        // Node at the very edge of the sampled range; skip its derivative probe.
      }
    }
  }

  // Recovered focal function on the grid.
  rep.recovered_positive = true;
  std::vector<double> rec_t, rec_f;
  for (const Node& n : nodes) {
    const double root = std::sqrt(std::max(0.0, 1.0 - n.g * n.g));
    const double fv = n.y + (n.r - radius) * root;
    rep.recovered_f.push_back({n.t, fv, n.fp});
    rec_t.push_back(n.t);
    rec_f.push_back(fv);
    if (fv <= 0.0) rep.recovered_positive = false;
  }
  rep.recovered_convex = true;
  for (std::size_t i = 1; i + 1 < rec_t.size(); ++i) {
    // Non-uniform-safe second difference (divided differences).
    const double h0 = rec_t[i] - rec_t[i - 1];
    const double h1 = rec_t[i + 1] - rec_t[i];
    const double second =
        2.0 * (rec_f[i + 1] * h0 - rec_f[i] * (h0 + h1) + rec_f[i - 1] * h1) / (h0 * h1 * (h0 + h1));
    if (second < -1e-6) rep.recovered_convex = false;
  }

  // Distance oracle: the common distance r - R must match the distance to the
  // recovered graph. The graph is densified so the polyline error stays far
  // below the tolerance.
  rep.worst_equidistance_residual = 0.0;
  if (rep.cond_polar && rep.cond_gnorm && rep.h_injective_on_grid) {
    std::vector<double> dense_t, dense_f;
    const int dense_n = 4001;
    const double lo = ts.front(), hi = ts.back();
    for (int i = 0; i < dense_n; ++i) {
      const double t = lo + (hi - lo) * i / (dense_n - 1.0);
      try {
        const double x = invert_h(g, radius, t);
        const double y = g.value(x);
        const double r = std::hypot(x, y);
        const double gg = (x - t) / (r - radius);
        dense_t.push_back(t);
        dense_f.push_back(y + (r - radius) * std::sqrt(std::max(0.0, 1.0 - gg * gg)));
      } catch (const invalid_input&) {
      }
    }
    for (const Node& n : nodes) {
      const double d_graph = polyline_distance(dense_t, dense_f, n.x, n.y);
      rep.worst_equidistance_residual =
          std::max(rep.worst_equidistance_residual, std::abs((n.r - radius) - d_graph));
    }
  } else {
    rep.worst_equidistance_residual = kInf;
  }

  rep.ok = rep.h_injective_on_grid && rep.cond_polar && rep.cond_gnorm && rep.cond_monotone &&
           rep.max_compat_residual <= tol && rep.recovered_positive && rep.recovered_convex &&
           rep.worst_equidistance_residual <= tol;
  return rep;
}

nlohmann::json CharacterizationReport::to_json() const {
  nlohmann::json rec = nlohmann::json::array();
  for (const Reconstructed& r : recovered_f) rec.push_back({{"t", r.t}, {"f", r.f_value}});
  return {{"ok", ok},
          {"h_injective_on_grid", h_injective_on_grid},
          {"conditions",
           {{"i", cond_polar}, {"ii", cond_gnorm}, {"iii", cond_monotone}}},
          {"max_compat_residual", max_compat_residual},
          {"recovered_positive", recovered_positive},
          {"recovered_convex", recovered_convex},
          {"recovered_f", rec},
          {"worst_equidistance_residual", worst_equidistance_residual},
          {"certified_on", certified_on}};
}

}  // namespace equidist
