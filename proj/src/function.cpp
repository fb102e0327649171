#include "equidist/function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "equidist/detail/optimize.hpp"
#include "equidist/error.hpp"

namespace equidist {

namespace {

Mat zeros(int n) { return Mat(n, Vec(n, 0.0)); }

void require_dim(const Vec& t, int n, const char* who) {
  if (static_cast<int>(t.size()) != n) {
    std::ostringstream os;
    os << who << ": expected " << n << " coordinates, got " << t.size();
    throw invalid_input(os.str());
  }
}

class Sqrt1p final : public ConvexFunction {
 public:
  int dim() const override { return 1; }
  Jet eval(const Vec& t, int order) const override {
    require_dim(t, 1, "sqrt1p");
    const double x = t[0];
    const double q = std::sqrt(x * x + 1.0);
    Jet j;
    j.value = q;
    if (order >= 1) j.grad = {x / q};
    if (order >= 2) j.hess = {{1.0 / (q * q * q)}};
    return j;
  }
  nlohmann::json to_json() const override { return {{"kind", "sqrt1p"}}; }
};

class ExpFn final : public ConvexFunction {
 public:
  int dim() const override { return 1; }
  Jet eval(const Vec& t, int order) const override {
    require_dim(t, 1, "exp");
    const double e = std::exp(t[0]);
    Jet j;
    j.value = e;
    if (order >= 1) j.grad = {e};
    if (order >= 2) j.hess = {{e}};
    return j;
  }
  nlohmann::json to_json() const override { return {{"kind", "exp"}}; }
};

class Poly1D final : public ConvexFunction {
 public:
  explicit Poly1D(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw invalid_input("poly1d: coeffs must be nonempty");
  }
  int dim() const override { return 1; }
  Jet eval(const Vec& t, int order) const override {
    require_dim(t, 1, "poly1d");
    const double x = t[0];
    double p = 0.0, dp = 0.0, ddp = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      ddp = ddp * x + 2.0 * dp;
      dp = dp * x + p;
      p = p * x + *it;
    }
    Jet j;
    j.value = p;
    if (order >= 1) j.grad = {dp};
    if (order >= 2) j.hess = {{ddp}};
    return j;
  }
  nlohmann::json to_json() const override { return {{"kind", "poly1d"}, {"coeffs", coeffs_}}; }

 private:
  std::vector<double> coeffs_;
};

class QuadFormND final : public ConvexFunction {
 public:
  QuadFormND(Mat q, Vec b, double c) : q_(std::move(q)), b_(std::move(b)), c_(c) {
    const int n = static_cast<int>(q_.size());
    if (n == 0) throw invalid_input("quadform: Q must be nonempty");
    for (const Vec& row : q_)
      if (static_cast<int>(row.size()) != n) throw invalid_input("quadform: Q must be square");
    if (static_cast<int>(b_.size()) != n) throw invalid_input("quadform: b size must match Q");
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::abs(q_[i][j] - q_[j][i]) > 1e-12 * (1.0 + std::abs(q_[i][j])))
          throw invalid_input("quadform: Q must be symmetric");
  }
  int dim() const override { return static_cast<int>(q_.size()); }
  Jet eval(const Vec& t, int order) const override {
    require_dim(t, dim(), "quadform");
    const Vec qt = matvec(q_, t);
    Jet j;
    j.value = dot(t, qt) + dot(b_, t) + c_;
    if (order >= 1) {
      j.grad = axpy(2.0, qt, b_);
    }
    if (order >= 2) {
      j.hess = q_;
      for (Vec& row : j.hess)
        for (double& v : row) v *= 2.0;
    }
    return j;
  }
  nlohmann::json to_json() const override {
    return {{"kind", "quadform"}, {"Q", q_}, {"b", b_}, {"c", c_}};
  }
  const Mat& kernel() const { return q_; }

 private:
  Mat q_;
  Vec b_;
  double c_;
};

class ShiftedParabola final : public ConvexFunction {
 public:
  ShiftedParabola(double center, double offset) : center_(center), offset_(offset) {}
  int dim() const override { return 1; }
  Jet eval(const Vec& t, int order) const override {
    require_dim(t, 1, "shifted_parabola");
    const double d = t[0] - center_;
    Jet j;
    j.value = d * d + offset_;
    if (order >= 1) j.grad = {2.0 * d};
    if (order >= 2) j.hess = {{2.0}};
    return j;
  }
  nlohmann::json to_json() const override {
    return {{"kind", "shifted_parabola"}, {"center", center_}, {"offset", offset_}};
  }

 private:
  double center_;
  double offset_;
};

// Scene boundary for the fat-Cantor example: a line of slope -sqrt(3) up to
// x = 2*x0 - sqrt(3) = 3, then the lower arc of the circle of radius 2 centered
// at (2*x0, y0), then the constant y0 - sqrt(2). C^1 at x = 3, kink at the
// arc/constant junction.
class SvcBoundary final : public ConvexFunction {
 public:
  SvcBoundary() {
    const double s3 = std::sqrt(3.0);
    x0_ = s3 / (s3 - 1.0);
    y0_ = 0.5 * (s3 + 1.0) / (s3 - 1.0);
    bp1_ = 2.0 * x0_ - s3;  // == 3
    bp2_ = 2.0 * x0_ - std::sqrt(2.0);
  }
  int dim() const override { return 1; }
  bool smooth() const override { return false; }
  int max_order(const Vec& t) const override { return at_breakpoint(t[0]) ? 0 : 2; }
  Jet eval(const Vec& t, int order) const override {
    require_dim(t, 1, "svc");
    const double x = t[0];
    if (order >= 1 && at_breakpoint(x)) {
      std::ostringstream os;
      os << "svc: derivative requested at breakpoint x = " << (near(x, bp1_) ? bp1_ : bp2_);
      throw invalid_input(os.str());
    }
    Jet j;
    if (x <= bp1_) {
      const double s3 = std::sqrt(3.0);
      j.value = -s3 * x + 2.0 * s3 * x0_ + y0_ - 4.0;
      if (order >= 1) j.grad = {-s3};
      if (order >= 2) j.hess = {{0.0}};
    } else if (x < bp2_) {
      const double u = x - 2.0 * x0_;
      const double w = std::sqrt(4.0 - u * u);
      j.value = y0_ - w;
      if (order >= 1) j.grad = {u / w};
      if (order >= 2) j.hess = {{4.0 / (w * w * w)}};
    } else {
      j.value = y0_ - std::sqrt(2.0);
      if (order >= 1) j.grad = {0.0};
      if (order >= 2) j.hess = {{0.0}};
    }
    return j;
  }
  nlohmann::json to_json() const override { return {{"kind", "svc"}}; }

 private:
  static bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }
  bool at_breakpoint(double x) const { return near(x, bp1_) || near(x, bp2_); }
  double x0_, y0_, bp1_, bp2_;
};

class Tabulated final : public ConvexFunction {
 public:
  explicit Tabulated(std::vector<std::pair<double, double>> knots) : knots_(std::move(knots)) {
    if (knots_.size() < 2) throw invalid_input("tabulated: need at least two knots");
    std::sort(knots_.begin(), knots_.end());
  }
  int dim() const override { return 1; }
  bool smooth() const override { return false; }
  int max_order(const Vec&) const override { return 0; }
  Jet eval(const Vec& t, int order) const override {
    require_dim(t, 1, "tabulated");
    if (order >= 1) throw invalid_input("tabulated: derivatives are not available");
    const double x = std::clamp(t[0], knots_.front().first, knots_.back().first);
    auto hi = std::upper_bound(knots_.begin(), knots_.end(), std::make_pair(x, std::numeric_limits<double>::infinity()));
    if (hi == knots_.begin()) ++hi;
    if (hi == knots_.end()) --hi;
    auto lo = hi - 1;
    const double w = (x - lo->first) / (hi->first - lo->first);
    Jet j;
    j.value = (1.0 - w) * lo->second + w * hi->second;
    return j;
  }
  nlohmann::json to_json() const override {
    nlohmann::json k = nlohmann::json::array();
    for (const auto& [a, b] : knots_) k.push_back({a, b});
    return {{"kind", "tabulated"}, {"knots", k}};
  }

 private:
  std::vector<std::pair<double, double>> knots_;
};

class MinFamily final : public ConvexFunction {
 public:
  explicit MinFamily(std::vector<FunctionRef> members) : members_(std::move(members)) {
    if (members_.empty()) throw invalid_input("min: family must be nonempty");
    for (const auto& m : members_)
      if (m->dim() != members_.front()->dim())
        throw invalid_input("min: members must share one dimension");
  }
  int dim() const override { return members_.front()->dim(); }
  bool smooth() const override { return false; }
  int max_order(const Vec& t) const override {
    int best = 0;
    double v = std::numeric_limits<double>::infinity(), second = v;
    for (std::size_t i = 0; i < members_.size(); ++i) {
      const double m = members_[i]->eval(t, 0).value;
      if (m < v) {
        second = v;
        v = m;
        best = static_cast<int>(i);
      } else {
        second = std::min(second, m);
      }
    }
    const double margin = 1e-12 * std::max(1.0, std::abs(v));
    if (members_.size() > 1 && second - v <= margin) return 0;
    return members_[best]->max_order(t);
  }
  Jet eval(const Vec& t, int order) const override {
    std::size_t best = 0;
    double v = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < members_.size(); ++i) {
      const double m = members_[i]->eval(t, 0).value;
      if (m < v) {
        v = m;
        best = i;
      }
    }
    if (order == 0) {
      Jet j;
      j.value = v;
      return j;
    }
    if (max_order(t) < order)
      throw invalid_input("min: derivative requested at a crossing of the family");
    return members_[best]->eval(t, order);
  }
  nlohmann::json to_json() const override {
    nlohmann::json m = nlohmann::json::array();
    for (const auto& f : members_) m.push_back(f->to_json());
    return {{"kind", "min"}, {"members", m}};
  }

 private:
  std::vector<FunctionRef> members_;
};

double leading_minor(const Mat& q, int k) {
  Mat a(k, Vec(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) a[i][j] = q[i][j];
  double det = 1.0;
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int r = col + 1; r < k; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    if (a[col][col] == 0.0) return 0.0;
    det *= a[col][col];
    for (int r = col + 1; r < k; ++r) {
      const double m = a[r][col] / a[col][col];
      for (int c = col; c < k; ++c) a[r][c] -= m * a[col][c];
    }
  }
  return det;
}

}  // namespace

Vec solve_dense(Mat a, Vec b) {
  const int n = static_cast<int>(a.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-300) throw invalid_input("solve_dense: singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < n; ++r) {
      const double m = a[r][col] / a[col][col];
      b[r] -= m * b[col];
      for (int c = col; c < n; ++c) a[r][c] -= m * a[col][c];
    }
  }
  Vec x(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return x;
}

FunctionRef make_sqrt1p() { return std::make_shared<Sqrt1p>(); }
FunctionRef make_exp() { return std::make_shared<ExpFn>(); }
FunctionRef make_poly1d(std::vector<double> coeffs) {
  return std::make_shared<Poly1D>(std::move(coeffs));
}
FunctionRef make_quadform(Mat q, Vec b, double c) {
  return std::make_shared<QuadFormND>(std::move(q), std::move(b), c);
}
FunctionRef make_shifted_parabola(double center, double offset) {
  return std::make_shared<ShiftedParabola>(center, offset);
}
FunctionRef make_svc() { return std::make_shared<SvcBoundary>(); }
FunctionRef make_tabulated(std::vector<std::pair<double, double>> knots) {
  return std::make_shared<Tabulated>(std::move(knots));
}
FunctionRef make_min_family(std::vector<FunctionRef> members) {
  return std::make_shared<MinFamily>(std::move(members));
}

FunctionRef function_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw invalid_input("function spec: missing field \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "sqrt1p") return make_sqrt1p();
    if (kind == "exp") return make_exp();
    if (kind == "poly1d") return make_poly1d(j.at("coeffs").get<std::vector<double>>());
    if (kind == "quadform")
      return make_quadform(j.at("Q").get<Mat>(), j.at("b").get<Vec>(), j.at("c").get<double>());
    if (kind == "shifted_parabola")
      return make_shifted_parabola(j.at("center").get<double>(), j.at("offset").get<double>());
    if (kind == "svc") return make_svc();
    if (kind == "tabulated") {
      std::vector<std::pair<double, double>> knots;
      for (const auto& k : j.at("knots")) knots.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
      return make_tabulated(std::move(knots));
    }
    if (kind == "min") {
      std::vector<FunctionRef> members;
      for (const auto& m : j.at("members")) members.push_back(function_from_json(m));
      return make_min_family(std::move(members));
    }
  } catch (const nlohmann::json::exception& e) {
    throw invalid_input(std::string("function spec \"") + kind + "\": " + e.what());
  }
  throw invalid_input("function spec: unknown kind \"" + kind + "\"");
}

ConvexityReport verify_convexity(const ConvexFunction& f, const Vec& lo, const Vec& hi,
                                 double grid_step) {
  const int n = f.dim();
  if (static_cast<int>(lo.size()) != n || static_cast<int>(hi.size()) != n)
    throw invalid_input("verify_convexity: box dimension mismatch");
  ConvexityReport report;
  report.worst_second_difference = std::numeric_limits<double>::infinity();

  std::vector<Vec> dirs;
  for (int i = 0; i < n; ++i) {
    Vec e(n, 0.0);
    e[i] = 1.0;
    dirs.push_back(e);
    for (int j = i + 1; j < n; ++j) {
      Vec d1(n, 0.0), d2(n, 0.0);
      d1[i] = d1[j] = 1.0 / std::sqrt(2.0);
      d2[i] = 1.0 / std::sqrt(2.0);
      d2[j] = -d2[i];
      dirs.push_back(d1);
      dirs.push_back(d2);
    }
  }

  std::vector<int> counts(n);
  long total = 1;
  for (int i = 0; i < n; ++i) {
    counts[i] = std::max(1, static_cast<int>(std::floor((hi[i] - lo[i]) / grid_step)) + 1);
    total *= counts[i];
  }
  for (long idx = 0; idx < total; ++idx) {
    Vec p(n);
    long rem = idx;
    for (int i = 0; i < n; ++i) {
      p[i] = lo[i] + (rem % counts[i]) * grid_step;
      rem /= counts[i];
    }
    for (const Vec& d : dirs) {
      const Vec pp = axpy(grid_step, d, p);
      const Vec pm = axpy(-grid_step, d, p);
      bool in_box = true;
      for (int i = 0; i < n; ++i)
        if (pp[i] < lo[i] || pp[i] > hi[i] || pm[i] < lo[i] || pm[i] > hi[i]) in_box = false;
      if (!in_box) continue;
      const double second =
          f.eval(pm, 0).value - 2.0 * f.eval(p, 0).value + f.eval(pp, 0).value;
      report.worst_second_difference = std::min(report.worst_second_difference, second);
    }
  }
  if (!std::isfinite(report.worst_second_difference)) report.worst_second_difference = 0.0;
  report.ok = report.worst_second_difference >= -1e-8;

  if (const auto* quad = dynamic_cast<const QuadFormND*>(&f)) {
    for (int k = 1; k <= n; ++k) report.minors.push_back(leading_minor(quad->kernel(), k));
  }
  return report;
}

namespace {

Extremum minimize_smooth_nd(const ConvexFunction& f, Vec start,
                            const std::function<Vec(const Vec&)>& project) {
  // Damped Newton when the Hessian is available, gradient steps with
  // backtracking otherwise.
  Vec t = project(start);
  Jet j = f.eval(t, 2);
  for (int it = 0; it < defaults::max_iterations; ++it) {
    Vec step;
    bool have_newton = false;
    if (!j.hess.empty()) {
      try {
        step = solve_dense(j.hess, scale(j.grad, -1.0));
        have_newton = all_finite(step);
      } catch (const invalid_input&) {
        have_newton = false;
      }
    }
    if (!have_newton) step = scale(j.grad, -1.0);
    double lambda = 1.0;
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      Vec cand = project(axpy(lambda, step, t));
      const double v = f.eval(cand, 0).value;
      if (v < j.value - 1e-18) {
        const double displacement = distance(cand, t);
        t = std::move(cand);
        j = f.eval(t, 2);
        moved = true;
        if (displacement <= defaults::tol) return {t, j.value};
        break;
      }
      lambda *= 0.5;
    }
    if (!moved) return {t, j.value};
  }
  throw no_convergence("infimum: iteration cap reached", j.value, j.value);
}

}  // namespace

Extremum infimum(const ConvexFunction& f, const Vec& lo, const Vec& hi) {
  const int n = f.dim();
  if (static_cast<int>(lo.size()) != n || static_cast<int>(hi.size()) != n)
    throw invalid_input("infimum: box dimension mismatch");
  if (n == 1) {
    const double arg = detail::grid_refine_min([&](double s) { return f.value(s); }, lo[0],
                                               hi[0], defaults::tol);
    return {Vec{arg}, f.value(arg)};
  }
  auto clamp_box = [&](const Vec& p) {
    Vec q = p;
    for (int i = 0; i < n; ++i) q[i] = std::clamp(q[i], lo[i], hi[i]);
    return q;
  };
  Vec mid(n);
  for (int i = 0; i < n; ++i) mid[i] = 0.5 * (lo[i] + hi[i]);
  return minimize_smooth_nd(f, mid, clamp_box);
}

Extremum min_on_ball(const ConvexFunction& f, const Vec& center, double radius) {
  const int n = f.dim();
  if (static_cast<int>(center.size()) != n) throw invalid_input("min_on_ball: dimension mismatch");
  if (radius <= 0.0) return {center, f.eval(center, 0).value};
  if (n == 1) {
    const double arg = detail::grid_refine_min([&](double s) { return f.value(s); },
                                               center[0] - radius, center[0] + radius,
                                               defaults::tol);
    return {Vec{arg}, f.value(arg)};
  }
  auto project = [&](const Vec& p) {
    Vec d = sub(p, center);
    const double r = norm(d);
    if (r <= radius) return p;
    return axpy(radius / r, d, center);
  };
  Extremum best = minimize_smooth_nd(f, center, project);
  if (n == 2) {
    // The projected minimum may sit on the sphere; sweep the boundary circle as
    // well since the restriction of f to it need not be unimodal.
    auto on_circle = [&](double th) {
      return f.eval({center[0] + radius * std::cos(th), center[1] + radius * std::sin(th)}, 0)
          .value;
    };
    const double th = detail::grid_refine_min(on_circle, 0.0, 2.0 * 3.14159265358979323846,
                                              1e-12, 721);
    if (on_circle(th) < best.min)
      best = {{center[0] + radius * std::cos(th), center[1] + radius * std::sin(th)},
              on_circle(th)};
  }
  return best;
}

}  // namespace equidist
