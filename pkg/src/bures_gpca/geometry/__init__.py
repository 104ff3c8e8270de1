"""Geometry module - Bures-Wasserstein operations, coordinates, geodesics and SO_d descent."""

from bures_gpca.geometry.coords import (
    cone_to_spd,
    planar_rotation,
    spd_to_cone,
    spd_to_spectral,
    spectral_to_cone,
    spectral_to_spd,
)
from bures_gpca.geometry.geodesic import (
    DEFAULT_EPSILON,
    EndpointSegment,
    admissible_interval,
    clip_time,
    geodesic_eval,
    make_segment,
    projection_time,
    residual,
    segment_from_endpoints,
)
from bures_gpca.geometry.rotations import (
    DescentResult,
    FiberDistanceObjective,
    procrustes_init,
    riemannian_grad,
    rotation_descent,
    so_exp,
)
from bures_gpca.geometry.spd import (
    HorizontalCheck,
    align,
    bures_wasserstein_sq,
    bw_distance,
    bw_exp,
    bw_log,
    bw_metric_inner,
    bw_metric_norm,
    commuting_geodesic,
    dpi,
    fiber_project,
    horizontal_check,
    horizontal_lift,
    monge_map,
    optimal_rotation,
    spd_sqrt,
    vertical_lift,
)

__all__ = [
    "DEFAULT_EPSILON",
    "DescentResult",
    "EndpointSegment",
    "FiberDistanceObjective",
    "HorizontalCheck",
    "admissible_interval",
    "align",
    "bures_wasserstein_sq",
    "bw_distance",
    "bw_exp",
    "bw_log",
    "bw_metric_inner",
    "bw_metric_norm",
    "clip_time",
    "commuting_geodesic",
    "cone_to_spd",
    "dpi",
    "fiber_project",
    "geodesic_eval",
    "horizontal_check",
    "horizontal_lift",
    "make_segment",
    "monge_map",
    "optimal_rotation",
    "planar_rotation",
    "procrustes_init",
    "projection_time",
    "residual",
    "riemannian_grad",
    "rotation_descent",
    "segment_from_endpoints",
    "so_exp",
    "spd_sqrt",
    "spd_to_cone",
    "spd_to_spectral",
    "spectral_to_cone",
    "spectral_to_spd",
    "vertical_lift",
]
