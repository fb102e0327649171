#include <memory>
#include <stdexcept>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "equidist/characterize.hpp"
#include "equidist/circle.hpp"
#include "equidist/error.hpp"
#include "equidist/focal.hpp"
#include "equidist/function.hpp"
#include "equidist/minop.hpp"
#include "equidist/pathology.hpp"
#include "equidist/sphere.hpp"
#include "equidist/vertical.hpp"

namespace py = pybind11;
using namespace equidist;

namespace {

FunctionRef parse_fn(const std::string& spec) {
  return function_from_json(nlohmann::json::parse(spec));
}

py::dict sample_to_dict(const ParamSample& s) {
  py::dict d;
  d["t"] = s.t;
  d["x"] = s.x;
  d["y"] = s.y;
  d["s"] = s.s;
  d["alpha"] = s.alpha;
  d["g"] = s.g;
  d["r"] = s.r;
  return d;
}

py::dict sample_nd_to_dict(const ParamSampleND& s) {
  py::dict d;
  d["t"] = s.t;
  d["x"] = s.x;
  d["y"] = s.y;
  d["s"] = s.s;
  d["alpha"] = s.alpha;
  d["g"] = s.g;
  d["r"] = s.r;
  return d;
}

std::shared_ptr<const FocalSet> focal_from_spec(const py::object& spec) {
  // A function-spec string means an epigraph; dicts select a ball or a cloud.
  if (py::isinstance<py::str>(spec)) {
    return std::make_shared<EpigraphSet>(parse_fn(spec.cast<std::string>()));
  }
  const py::dict d = spec.cast<py::dict>();
  if (d.contains("ball")) {
    const py::dict b = d["ball"].cast<py::dict>();
    const double radius = b["R"].cast<double>();
    if (b.contains("center")) return std::make_shared<BallSet>(radius, b["center"].cast<Vec>());
    return std::make_shared<BallSet>(radius, b["dim"].cast<int>() + 1);
  }
  if (d.contains("points"))
    return std::make_shared<PointCloudSet>(d["points"].cast<std::vector<Vec>>());
  throw invalid_input(
      "focal spec: expected a function-spec string, {'ball': ...} or {'points': ...}");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Equidistant sets with a circular or spherical focal set";

  py::register_exception<invalid_input>(m, "InvalidInput", PyExc_ValueError);

  m.def(
      "evaluate",
      [](const std::string& spec, const Vec& t, int order) {
        const Jet j = parse_fn(spec)->eval(t, order);
        py::dict d;
        d["value"] = j.value;
        if (order >= 1) d["grad"] = j.grad;
        if (order >= 2) d["hess"] = j.hess;
        return d;
      },
      py::arg("fn"), py::arg("t"), py::arg("order") = 0,
      "Evaluate a JSON function spec with derivatives up to the given order");

  m.def(
      "dist_point_set",
      [](const Vec& p, const py::object& focal, double tol) {
        const auto set = focal_from_spec(focal);
        const DistanceResult res = set->distance(p, tol);
        py::dict d;
        d["distance"] = res.distance;
        if (res.nearest) d["nearest"] = *res.nearest;
        return d;
      },
      py::arg("p"), py::arg("focal"), py::arg("tol") = defaults::tol);

  m.def(
      "equidistant_residual",
      [](const Vec& p, const py::object& k, const py::object& l, double tol) {
        return equidistant_residual(p, *focal_from_spec(k), *focal_from_spec(l), tol);
      },
      py::arg("p"), py::arg("k"), py::arg("l"), py::arg("tol") = defaults::tol);

  m.def("hausdorff", &hausdorff, py::arg("a"), py::arg("b"));

  m.def(
      "alpha",
      [](const std::string& fn, double t) { return tangent_line_distance(*parse_fn(fn), t); },
      py::arg("fn"), py::arg("t"), "Signed tangent-line distance from the origin");

  m.def(
      "critical_domain",
      [](const std::string& fn, double radius, double search_radius) {
        const CriticalDomain dom = critical_domain(*parse_fn(fn), radius, search_radius);
        py::dict d;
        d["t_minus"] = dom.bounded_below() ? py::cast(dom.t_minus) : py::none();
        d["t_plus"] = dom.bounded_above() ? py::cast(dom.t_plus) : py::none();
        return d;
      },
      py::arg("fn"), py::arg("R"), py::arg("search_radius") = 1e3);

  m.def(
      "equidistant_point",
      [](const std::string& fn, double radius, double t) {
        return sample_to_dict(equidistant_point(*parse_fn(fn), radius, t));
      },
      py::arg("fn"), py::arg("R"), py::arg("t"));

  m.def(
      "trace_curve",
      [](const std::string& fn, double radius, const std::vector<double>& grid) {
        py::list out;
        for (const ParamSample& s : trace_curve(*parse_fn(fn), radius, grid))
          out.append(sample_to_dict(s));
        return out;
      },
      py::arg("fn"), py::arg("R"), py::arg("grid"));

  m.def(
      "scan_vertical",
      [](const Vec& x, const py::object& k, const py::object& l, int grid_n, double tol) {
        ScanOptions opts;
        opts.grid_n = grid_n;
        opts.tol = tol;
        const VerticalScan scan = scan_vertical(x, *focal_from_spec(k), *focal_from_spec(l), opts);
        py::dict d;
        d["roots"] = scan.roots;
        d["g_minus"] = scan.g_minus;
        d["g_plus"] = scan.g_plus;
        return d;
      },
      py::arg("x"), py::arg("k"), py::arg("l"), py::arg("grid_n") = 1024,
      py::arg("tol") = defaults::tol);

  m.def(
      "alpha_nd",
      [](const std::string& fn, const Vec& t) { return tangent_plane_distance(*parse_fn(fn), t); },
      py::arg("fn"), py::arg("t"));

  m.def(
      "equidistant_point_nd",
      [](const std::string& fn, double radius, const Vec& t) {
        return sample_nd_to_dict(equidistant_point_nd(*parse_fn(fn), radius, t));
      },
      py::arg("fn"), py::arg("R"), py::arg("t"));

  m.def(
      "ray_admissible_segments",
      [](const std::string& fn, double radius, const Vec& u, double r_max, int grid_n) {
        const RaySegments segs = ray_admissible_segments(*parse_fn(fn), radius, u, r_max, grid_n);
        py::dict d;
        d["segments"] = segs.segments;
        d["t_u_plus"] = segs.t_u_plus;
        return d;
      },
      py::arg("fn"), py::arg("R"), py::arg("u"), py::arg("r_max"), py::arg("grid_n") = 4096);

  m.def(
      "is_equidistant_function",
      [](const std::string& g_spec, double radius, const std::vector<double>& grid, double tol) {
        const FieldRef g = make_field(parse_fn(g_spec));
        const auto rep = is_equidistant_function(*g, radius, grid, tol);
        return py::module_::import("json").attr("loads")(rep.to_json().dump());
      },
      py::arg("g"), py::arg("R"), py::arg("grid"), py::arg("tol") = 1e-6);

  m.def(
      "svc_membership",
      [](int depth, double t, bool trimmed) {
        const SvcScene scene = build_scene(depth);
        const auto res = segment_membership_test(scene, t, trimmed);
        py::dict d;
        d["is_equidistant"] = res.is_equidistant;
        d["residual"] = res.residual;
        d["in_fat_cantor"] = !scene.cantor().in_removed(t + 0.5);
        return d;
      },
      py::arg("depth"), py::arg("t"), py::arg("trimmed") = true);

  m.def(
      "svc_measure", [](int depth) { return fat_cantor(depth).kept_measure(); }, py::arg("depth"));
}
