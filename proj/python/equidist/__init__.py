"""Equidistant sets whose focal sets are an origin-centered circle/sphere and a
convex epigraph: closed-form parameterizations, vertical-line scans, the
characterization map, and the fat-Cantor pathology scene."""

from equidist._core import (
    alpha,
    alpha_nd,
    critical_domain,
    dist_point_set,
    equidistant_point,
    equidistant_point_nd,
    equidistant_residual,
    evaluate,
    hausdorff,
    is_equidistant_function,
    ray_admissible_segments,
    scan_vertical,
    svc_measure,
    svc_membership,
    trace_curve,
    InvalidInput,
)

__all__ = [
    "alpha",
    "alpha_nd",
    "critical_domain",
    "dist_point_set",
    "equidistant_point",
    "equidistant_point_nd",
    "equidistant_residual",
    "evaluate",
    "hausdorff",
    "is_equidistant_function",
    "ray_admissible_segments",
    "scan_vertical",
    "svc_measure",
    "svc_membership",
    "trace_curve",
    "InvalidInput",
]
