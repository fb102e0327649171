#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "equidist/characterize.hpp"
#include "equidist/circle.hpp"
#include "equidist/error.hpp"
#include "equidist/focal.hpp"
#include "equidist/format.hpp"
#include "equidist/function.hpp"
#include "equidist/minop.hpp"
#include "equidist/pathology.hpp"
#include "equidist/sphere.hpp"
#include "equidist/verify.hpp"
#include "equidist/vertical.hpp"

namespace {

using nlohmann::json;

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;
};

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  char c1 = 0, c2 = 0;
  std::istringstream is(text);
  is >> g.lo >> c1 >> g.hi >> c2 >> g.n;
  if (is.fail() || c1 != ':' || c2 != ':' || !(is >> std::ws).eof())
    throw equidist::invalid_input("grid: expected lo:hi:n, got \"" + text + "\"");
  if (g.n < 2) throw equidist::invalid_input("grid: n must be at least 2");
  if (!(g.hi > g.lo)) throw equidist::invalid_input("grid: hi must exceed lo");
  return g;
}

struct RaySpec {
  equidist::Vec u;
  double r_max = 0.0;
  int n = 0;
};

RaySpec parse_ray(const std::string& text) {
  const auto colon = text.find(':');
  const auto colon2 = text.rfind(':');
  if (colon == std::string::npos || colon2 == colon)
    throw equidist::invalid_input("ray: expected u1,u2,...:rmax:n, got \"" + text + "\"");
  RaySpec r;
  std::istringstream comps(text.substr(0, colon));
  std::string item;
  while (std::getline(comps, item, ',')) r.u.push_back(std::stod(item));
  r.r_max = std::stod(text.substr(colon + 1, colon2 - colon - 1));
  r.n = std::stoi(text.substr(colon2 + 1));
  if (r.u.empty()) throw equidist::invalid_input("ray: empty direction");
  if (r.r_max <= 0.0) throw equidist::invalid_input("ray: rmax must be positive");
  if (r.n < 2) throw equidist::invalid_input("ray: n must be at least 2");
  const double len = equidist::norm(r.u);
  if (len == 0.0) throw equidist::invalid_input("ray: zero direction");
  r.u = equidist::scale(r.u, 1.0 / len);
  return r;
}

std::vector<double> grid_values(const GridSpec& g) {
  std::vector<double> out(g.n);
  for (int i = 0; i < g.n; ++i) out[i] = g.lo + (g.hi - g.lo) * i / (g.n - 1.0);
  return out;
}

equidist::FunctionRef parse_function(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw equidist::invalid_input(std::string("function spec: invalid JSON: ") + e.what());
  }
  return equidist::function_from_json(j);
}

double tolerance_from_env() {
  if (const char* env = std::getenv("EQUIDIST_TOL")) {
    try {
      const double t = std::stod(env);
      if (t > 0.0) return t;
    } catch (...) {
    }
    throw equidist::invalid_input("EQUIDIST_TOL: not a positive number");
  }
  return equidist::defaults::tol;
}

void emit_json(const json& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw equidist::invalid_input("cannot open output file " + out_path);
  out << payload.dump(2) << "\n";
}

int run_curve(const std::string& fn_text, double radius, const std::string& grid_text,
              const std::string& ray_text, const std::string& out_path, double tol) {
  const equidist::FunctionRef f = parse_function(fn_text);
  std::vector<std::string> provenance = {"equidist curve", "fn=" + f->to_json().dump(),
                                         "R=" + equidist::format_double(radius),
                                         "tol=" + equidist::format_double(tol)};
  if (f->dim() == 1) {
    if (grid_text.empty()) throw equidist::invalid_input("curve: --grid required for 1D functions");
    const auto samples = equidist::trace_curve(*f, radius, grid_values(parse_grid(grid_text)));
    equidist::CsvWriter csv(out_path, provenance,
                            {"t", "x", "y", "s", "alpha", "g", "r", "f", "f_slope"});
    for (const auto& s : samples) {
      const auto rec = equidist::reconstruct_f(s);
      csv.row({s.t, s.x, s.y, s.s, s.alpha, s.g, s.r, rec.f_value, rec.f_slope});
    }
    return 0;
  }
  if (ray_text.empty())
    throw equidist::invalid_input("curve: --ray required for higher-dimensional functions");
  const RaySpec ray = parse_ray(ray_text);
  if (static_cast<int>(ray.u.size()) != f->dim())
    throw equidist::invalid_input("curve: ray direction dimension mismatch");
  std::vector<std::string> cols;
  const int n = f->dim();
  for (int i = 0; i < n; ++i) cols.push_back("t" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i) cols.push_back("x" + std::to_string(i + 1));
  cols.insert(cols.end(), {"y", "s", "alpha"});
  for (int i = 0; i < n; ++i) cols.push_back("g" + std::to_string(i + 1));
  cols.push_back("r");
  equidist::CsvWriter csv(out_path, provenance, cols);
  for (int i = 0; i < ray.n; ++i) {
    const double rr = ray.r_max * i / (ray.n - 1.0);
    const auto s = equidist::equidistant_point_nd(*f, radius, equidist::scale(ray.u, rr));
    std::vector<double> row;
    for (double v : s.t) row.push_back(v);
    for (double v : s.x) row.push_back(v);
    row.insert(row.end(), {s.y, s.s, s.alpha});
    for (double v : s.g) row.push_back(v);
    row.push_back(s.r);
    csv.row(row);
  }
  return 0;
}

int run_domain(const std::string& fn_text, double radius, double search_radius,
               const std::string& ray_text, const std::string& out_path) {
  const equidist::FunctionRef f = parse_function(fn_text);
  if (!ray_text.empty()) {
    const RaySpec ray = parse_ray(ray_text);
    if (static_cast<int>(ray.u.size()) != f->dim())
      throw equidist::invalid_input("domain: ray direction dimension mismatch");
    const auto segs = equidist::ray_admissible_segments(*f, radius, ray.u, ray.r_max, ray.n);
    std::vector<std::string> provenance = {"equidist domain", "fn=" + f->to_json().dump(),
                                           "R=" + equidist::format_double(radius)};
    std::vector<std::string> cols;
    for (std::size_t i = 0; i < ray.u.size(); ++i) cols.push_back("u" + std::to_string(i + 1));
    cols.insert(cols.end(), {"r_start", "r_end", "t_u_plus"});
    equidist::CsvWriter csv(out_path.empty() ? "/dev/stdout" : out_path, provenance, cols);
    for (const auto& [a, b] : segs.segments) {
      std::vector<double> row(ray.u.begin(), ray.u.end());
      row.insert(row.end(), {a, b, segs.t_u_plus});
      csv.row(row);
    }
    return 0;
  }
  if (f->dim() != 1)
    throw equidist::invalid_input("domain: --ray required for higher-dimensional functions");
  const auto dom = equidist::critical_domain(*f, radius, search_radius);
  json payload = {{"fn", f->to_json()},
                  {"R", radius},
                  {"search_radius", search_radius},
                  {"t_minus", dom.bounded_below() ? json(dom.t_minus) : json(nullptr)},
                  {"t_plus", dom.bounded_above() ? json(dom.t_plus) : json(nullptr)}};
  emit_json(payload, out_path);
  return 0;
}

int run_vertical(const std::string& fn_text, double radius, const std::string& xs_text,
                 int grid_n, const std::string& out_path, double tol) {
  const equidist::FunctionRef f = parse_function(fn_text);
  if (f->dim() != 1) throw equidist::invalid_input("vertical: 1D functions only");
  const equidist::BallSet ball(radius, 2);
  const equidist::EpigraphSet epi(f);
  equidist::ScanOptions opts;
  opts.grid_n = grid_n;
  opts.tol = tol;
  std::vector<std::string> provenance = {"equidist vertical", "fn=" + f->to_json().dump(),
                                         "R=" + equidist::format_double(radius),
                                         "tol=" + equidist::format_double(tol)};
  equidist::CsvWriter csv(out_path, provenance, {"x", "n_roots", "g_minus", "g_plus"});
  for (double x : grid_values(parse_grid(xs_text))) {
    const auto scan = equidist::scan_vertical(x, ball, epi, opts);
    csv.row({x, static_cast<double>(scan.roots.size()), scan.g_minus, scan.g_plus});
  }
  return 0;
}

int run_characterize(const std::string& g_text, const std::string& curve_path, double radius,
                     const std::string& grid_text, const std::string& out_path, double tol) {
  equidist::FieldRef field;
  json source;
  if (!g_text.empty()) {
    const equidist::FunctionRef g = parse_function(g_text);
    if (g->dim() != 1) throw equidist::invalid_input("characterize: 1D candidates only");
    field = equidist::make_field(g);
    source = g->to_json();
  } else if (!curve_path.empty()) {
    std::ifstream in(curve_path);
    if (!in) throw equidist::invalid_input("characterize: cannot open " + curve_path);
    std::vector<double> xs, ys;
    std::string line;
    int x_col = -1, y_col = -1;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream cells(line);
      std::string cell;
      if (x_col < 0) {
        int idx = 0;
        while (std::getline(cells, cell, ',')) {
          if (cell == "x") x_col = idx;
          if (cell == "y") y_col = idx;
          ++idx;
        }
        if (x_col < 0 || y_col < 0)
          throw equidist::invalid_input("characterize: curve file lacks x/y columns");
        continue;
      }
      int idx = 0;
      double xv = 0.0, yv = 0.0;
      while (std::getline(cells, cell, ',')) {
        if (idx == x_col) xv = std::stod(cell);
        if (idx == y_col) yv = std::stod(cell);
        ++idx;
      }
      xs.push_back(xv);
      ys.push_back(yv);
    }
    field = equidist::make_spline_field(std::move(xs), std::move(ys));
    source = curve_path;
  } else {
    throw equidist::invalid_input("characterize: provide --G or --from-curve");
  }
  const auto report =
      equidist::is_equidistant_function(*field, radius, grid_values(parse_grid(grid_text)), tol);
  json payload = report.to_json();
  payload["source"] = source;
  payload["R"] = radius;
  emit_json(payload, out_path);
  return 0;  // a negative verdict is still a successful run
}

int run_minop(const std::string& fns_text, double radius, const std::string& xs_text,
              const std::string& out_path, double tol) {
  json j;
  try {
    j = json::parse(fns_text);
  } catch (const json::exception& e) {
    throw equidist::invalid_input(std::string("minop: invalid JSON list: ") + e.what());
  }
  if (!j.is_array() || j.empty())
    throw equidist::invalid_input("minop: --fns must be a nonempty JSON array");
  std::vector<equidist::FunctionRef> family;
  for (const auto& spec : j) family.push_back(equidist::function_from_json(spec));

  const equidist::BallSet ball(radius, 2);
  const auto xs = grid_values(parse_grid(xs_text));
  const auto commute = equidist::min_commute_check(ball, family, xs, 1e-7);

  std::vector<std::string> provenance = {"equidist minop", "fns=" + j.dump(),
                                         "R=" + equidist::format_double(radius),
                                         "tol=" + equidist::format_double(tol),
                                         std::string("commute_ok=") + (commute.ok ? "true" : "false")};
  std::vector<std::string> cols = {"x", "G_min"};
  for (std::size_t i = 0; i < family.size(); ++i) cols.push_back("G_" + std::to_string(i + 1));
  equidist::CsvWriter csv(out_path, provenance, cols);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<double> row = {xs[i], commute.family_g[i]};
    for (const auto& f : family) {
      const equidist::EpigraphSet epi(f);
      row.push_back(equidist::scan_vertical(xs[i], ball, epi).roots.front());
    }
    csv.row(row);
  }
  return 0;
}

int run_pathology(bool svc, int depth, int samples, const std::string& out_path) {
  if (!svc) throw equidist::invalid_input("pathology: only the --svc scene is available");
  const equidist::SvcScene scene = equidist::build_scene(depth);
  std::vector<std::string> provenance = {
      "equidist pathology", "scene=svc", "depth=" + std::to_string(depth),
      "kept_measure=" + equidist::format_double(scene.cantor().kept_measure()),
      "schedule=remove 2^(n-1) middle intervals of length 4^-n, breadth-first"};
  equidist::CsvWriter csv(out_path, provenance,
                          {"t", "residual_convex", "residual_trimmed", "in_fat_cantor"});
  for (int i = 0; i < samples; ++i) {
    const double t = -0.5 + i / (samples - 1.0);
    const auto convex = equidist::segment_membership_test(scene, t, false);
    const auto trimmed = equidist::segment_membership_test(scene, t, true);
    csv.row({t, convex.residual, trimmed.residual,
             scene.cantor().in_removed(t + 0.5) ? 0.0 : 1.0});
  }
  return 0;
}

int run_verify(const std::string& only, bool inject, const std::string& out_path) {
  equidist::VerifyOptions opts;
  opts.only = only;
  opts.inject_perturbation = inject;
  const auto results = equidist::run_acceptance(opts);
  json criteria = json::array();
  bool all_pass = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.id << ": " << r.name;
    if (!r.detail.empty()) std::cout << "  [" << r.detail << "]";
    std::cout << "  (" << r.seconds << " s)\n";
    criteria.push_back({{"id", r.id},
                        {"name", r.name},
                        {"pass", r.pass},
                        {"detail", r.detail},
                        {"seconds", r.seconds}});
    all_pass = all_pass && r.pass;
  }
  if (results.empty()) throw equidist::invalid_input("verify: no criterion matches --only filter");
  json payload = {{"criteria", criteria}, {"all_pass", all_pass}};
  if (!out_path.empty()) emit_json(payload, out_path);
  return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equidistant sets with a circular/spherical focal set: closed-form "
               "parameterizations, vertical scans, characterization and pathologies"};
  app.require_subcommand(1);

  std::string fn_text, g_text, fns_text, grid_text, xs_text, ray_text, curve_path, out_path, only;
  double radius = 0.5, search_radius = 1e3;
  int grid_n = 1024, depth = 3, samples = 257;
  bool svc = false, inject = false;

  auto* curve = app.add_subcommand("curve", "Trace the equidistant parameterization to CSV");
  curve->add_option("--fn", fn_text, "Function spec (JSON)")->required();
  curve->add_option("--R", radius, "Focal circle/sphere radius")->required();
  curve->add_option("--grid", grid_text, "Foot parameter grid lo:hi:n (1D)");
  curve->add_option("--ray", ray_text, "Ray spec u1,u2,...:rmax:n (nD)");
  curve->add_option("--out", out_path, "Output CSV path")->required();

  auto* domain = app.add_subcommand("domain", "Critical parameters / admissible segments");
  domain->add_option("--fn", fn_text, "Function spec (JSON)")->required();
  domain->add_option("--R", radius, "Focal circle/sphere radius")->required();
  domain->add_option("--search-radius", search_radius, "Half-width of the 1D sweep");
  domain->add_option("--ray", ray_text, "Ray spec u1,u2,...:rmax:n (nD)");
  domain->add_option("--out", out_path, "Output path (JSON for 1D, CSV for rays)");

  auto* vertical = app.add_subcommand("vertical", "Scan vertical lines for equidistant roots");
  vertical->add_option("--fn", fn_text, "Function spec (JSON)")->required();
  vertical->add_option("--R", radius, "Focal circle radius")->required();
  vertical->add_option("--xs", xs_text, "Base points lo:hi:n")->required();
  vertical->add_option("--grid-n", grid_n, "Scan grid size");
  vertical->add_option("--out", out_path, "Output CSV path")->required();

  auto* characterize = app.add_subcommand("characterize", "Decide whether G is equidistant");
  characterize->add_option("--G", g_text, "Candidate G as a function spec (JSON)");
  characterize->add_option("--from-curve", curve_path, "Interpolate G from a curve CSV");
  characterize->add_option("--R", radius, "Focal circle radius")->required();
  characterize->add_option("--grid", grid_text, "Foot grid lo:hi:n")->required();
  characterize->add_option("--out", out_path, "Output JSON path (default stdout)");

  auto* minop = app.add_subcommand("minop", "Pointwise-minimum family scan");
  minop->add_option("--fns", fns_text, "JSON array of function specs")->required();
  minop->add_option("--R", radius, "Focal circle radius")->required();
  minop->add_option("--xs", xs_text, "Base points lo:hi:n")->required();
  minop->add_option("--out", out_path, "Output CSV path")->required();

  auto* pathology = app.add_subcommand("pathology", "Fat-Cantor scene verdicts");
  pathology->add_flag("--svc", svc, "Run the fat-Cantor scene");
  pathology->add_option("--depth", depth, "Construction depth");
  pathology->add_option("--samples", samples, "Number of t samples on the segment");
  pathology->add_option("--out", out_path, "Output CSV path")->required();

  auto* verify = app.add_subcommand("verify", "Run the acceptance property suite");
  verify->add_option("--only", only, "Run only criteria whose id contains this substring");
  verify->add_flag("--inject-perturbation", inject,
                   "Test hook: corrupt samples so the suite fails");
  verify->add_option("--out", out_path, "Write the JSON report here");

  try {
    app.parse(argc, argv);
    const double tol = tolerance_from_env();
    if (curve->parsed()) return run_curve(fn_text, radius, grid_text, ray_text, out_path, tol);
    if (domain->parsed()) return run_domain(fn_text, radius, search_radius, ray_text, out_path);
    if (vertical->parsed())
      return run_vertical(fn_text, radius, xs_text, grid_n, out_path, tol);
    if (characterize->parsed())
      return run_characterize(g_text, curve_path, radius, grid_text, out_path, 1e-6);
    if (minop->parsed()) return run_minop(fns_text, radius, xs_text, out_path, tol);
    if (pathology->parsed()) return run_pathology(svc, depth, samples, out_path);
    if (verify->parsed()) return run_verify(only, inject, out_path);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  } catch (const equidist::invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
