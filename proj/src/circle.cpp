#include "equidist/circle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "equidist/detail/optimize.hpp"
#include "equidist/error.hpp"

namespace equidist {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

double wrap_mod_pi(double a) { return a - kPi * std::round(a / kPi); }
}  // namespace

double tangent_line_distance(const ConvexFunction& f, double t) {
  const Jet j = f.eval({t}, 1);
  const double fp = j.grad[0];
  return (t * fp - j.value) / std::sqrt(1.0 + fp * fp);
}

CriticalDomain critical_domain(const ConvexFunction& f, double radius, double search_radius) {
  if (radius <= 0.0) throw invalid_input("critical_domain: radius must be positive");
  if (search_radius <= 0.0) throw invalid_input("critical_domain: search radius must be positive");
  if (tangent_line_distance(f, 0.0) >= radius)
    throw invalid_input("critical_domain: alpha(0) >= R; focal sets are not separated");

  auto critical = [&](double t) { return tangent_line_distance(f, t) >= radius; };
  auto boundary_on = [&](double direction) -> double {
    const int sweep_n = 4096;
    double prev = 0.0;
    for (int i = 1; i <= sweep_n; ++i) {
      const double t = direction * search_radius * i / static_cast<double>(sweep_n);
      if (critical(t))
        return detail::bisect_indicator(critical, prev, t,
                                        1e-10 * std::max(1.0, std::min(std::abs(prev), std::abs(t))),
                                        200);
      prev = t;
    }
    return direction * kInf;
  };

  CriticalDomain dom;
  dom.t_plus = boundary_on(+1.0);
  dom.t_minus = boundary_on(-1.0);
  return dom;
}

ParamSample equidistant_point(const ConvexFunction& f, double radius, double t) {
  const Jet j = f.eval({t}, 1);
  const double fv = j.value;
  const double fp = j.grad[0];
  const double q = std::sqrt(1.0 + fp * fp);
  const double alpha = (t * fp - fv) / q;
  if (alpha >= radius) {
    std::ostringstream os;
    os << "equidistant_point: critical parameter t = " << t << " (alpha = " << alpha
       << " >= R = " << radius << ")";
    throw invalid_input(os.str());
  }
  const double sep = t * t + fv * fv - radius * radius;
  if (sep <= 0.0)
    throw invalid_input("equidistant_point: focal sets are not disjoint at this parameter");

  ParamSample p;
  p.t = t;
  p.alpha = alpha;
  p.s = 0.5 * sep / (radius - alpha);
  p.x = t + p.s * fp / q;
  p.y = fv - p.s / q;
  p.r = std::hypot(p.x, p.y);
  p.g = (p.x - t) / (p.r - radius);
  if (std::abs(p.r - radius - p.s) > 1e-9)
    throw no_convergence("equidistant_point: polar distance check failed", p.r - radius, p.s);
  return p;
}

std::vector<ParamSample> trace_curve(const ConvexFunction& f, double radius,
                                     const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw invalid_input("trace_curve: empty grid");
  std::vector<double> ts = t_grid;
  std::sort(ts.begin(), ts.end());
  std::vector<ParamSample> out;
  out.reserve(ts.size());
  for (double t : ts) {
    out.push_back(equidistant_point(f, radius, t));
    if (out.size() > 1 && out[out.size() - 2].x >= out.back().x) {
      std::ostringstream os;
      os << "trace_curve: x(t) not strictly increasing between t = " << out[out.size() - 2].t
         << " and t = " << out.back().t;
      throw std::logic_error(os.str());
    }
  }
  return out;
}

Reconstructed reconstruct_f(const ParamSample& sample) {
  const double offset = sample.x - sample.t;
  const double radicand = sample.s * sample.s - offset * offset;
  if (radicand <= 0.0)
    throw invalid_input("reconstruct_f: not an equidistant parameterization (radicand <= 0)");
  const double w = std::sqrt(radicand);
  return {sample.t, sample.y + w, offset / w};
}

std::vector<Reconstructed> reconstruct_f(const std::vector<ParamSample>& samples) {
  std::vector<Reconstructed> out;
  out.reserve(samples.size());
  for (const ParamSample& s : samples) out.push_back(reconstruct_f(s));
  return out;
}

namespace {

void require_uniform(const std::vector<ParamSample>& samples) {
  if (samples.size() < 3)
    throw invalid_input("need at least three samples on a uniform grid");
  const double h = samples[1].t - samples[0].t;
  for (std::size_t i = 2; i < samples.size(); ++i)
    if (std::abs(samples[i].t - samples[i - 1].t - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw invalid_input("samples must lie on a uniform t grid");
}

}  // namespace

std::vector<double> compatibility_residuals(const std::vector<ParamSample>& samples,
                                            double radius) {
  require_uniform(samples);
  const double h = samples[1].t - samples[0].t;
  std::vector<double> out;
  out.reserve(samples.size() - 2);
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    const ParamSample& c = samples[i];
    const double xp = (samples[i + 1].x - samples[i - 1].x) / (2.0 * h);
    const double yp = (samples[i + 1].y - samples[i - 1].y) / (2.0 * h);
    const double r = std::hypot(c.x, c.y);
    const double g = (c.x - c.t) / (r - radius);
    const double root = std::sqrt(std::max(0.0, 1.0 - g * g));
    out.push_back((g - c.x / r) * xp - (root + c.y / r) * yp);
  }
  return out;
}

double angular_residual(const ParamSample& prev, const ParamSample& cur, const ParamSample& next,
                        const ConvexFunction& f) {
  const double xp = next.x - prev.x;
  const double yp = next.y - prev.y;
  const double theta_e = std::atan2(yp, xp);
  const double theta_f = std::atan(f.slope(cur.t));
  const double rho_e = std::atan2(cur.y, cur.x);
  return wrap_mod_pi(theta_e - (0.5 * (theta_f + rho_e) - 0.25 * kPi));
}

std::vector<double> angular_residuals(const std::vector<ParamSample>& samples,
                                      const ConvexFunction& f) {
  require_uniform(samples);
  std::vector<double> out;
  out.reserve(samples.size() - 2);
  for (std::size_t i = 1; i + 1 < samples.size(); ++i)
    out.push_back(angular_residual(samples[i - 1], samples[i], samples[i + 1], f));
  return out;
}

double hyperbola_membership(const ParamSample& sample, const ConvexFunction& f, double radius) {
  const double fv = f.value(sample.t);
  const double to_focus = std::hypot(sample.x - sample.t, sample.y - fv);
  return std::abs(to_focus - std::hypot(sample.x, sample.y) + radius);
}

HyperbolaResidual hyperbola_tangency(const ParamSample& prev, const ParamSample& cur,
                                     const ParamSample& next, const ConvexFunction& f,
                                     double radius) {
  HyperbolaResidual res;
  res.membership = hyperbola_membership(cur, f, radius);
  const double r = std::hypot(cur.x, cur.y);
  const double g = (cur.x - cur.t) / (r - radius);
  const double grad_x = g - cur.x / r;
  const double grad_y = -(std::sqrt(std::max(0.0, 1.0 - g * g)) + cur.y / r);
  double tx = next.x - prev.x;
  double ty = next.y - prev.y;
  const double len = std::hypot(tx, ty);
  tx /= len;
  ty /= len;
  res.orthogonality = std::abs(grad_x * tx + grad_y * ty);
  return res;
}

double equid_slope(const ParamSample& sample) {
  const double root = std::sqrt(std::max(0.0, 1.0 - sample.g * sample.g));
  return (sample.g - sample.x / sample.r) / (root + sample.y / sample.r);
}

}  // namespace equidist
