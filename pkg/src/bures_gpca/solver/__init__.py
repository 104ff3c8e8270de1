"""Solver module - geodesic PCA, tangent PCA and the one-dimensional oracle."""

from bures_gpca.solver.config import DescentConfig, SolverConfig
from bures_gpca.solver.gpca import (
    DispersionEntry,
    DispersionReport,
    aligned_rotations,
    evaluate_segment,
    explained_dispersion,
    fit_components,
    fit_first_component,
    fit_higher_component,
    fit_second_component,
    objective_F,
    tpca_seed_segment,
)
from bures_gpca.solver.tpca import (
    BarycenterResult,
    DistortionRatio,
    bw_barycenter,
    bw_sectional_term,
    curvature_value,
    distortion_ratio,
    fit_tpca,
    linearized_bw,
    tpca_component_as_segment,
)
from bures_gpca.solver.univariate import (
    CrosscheckReport,
    Line1DFit,
    crosscheck_with_solver,
    fit_1d_gpca,
    quantile_l2_distance,
    w2_1d,
)

__all__ = [
    "BarycenterResult",
    "CrosscheckReport",
    "DescentConfig",
    "DispersionEntry",
    "DispersionReport",
    "DistortionRatio",
    "Line1DFit",
    "SolverConfig",
    "aligned_rotations",
    "bw_barycenter",
    "bw_sectional_term",
    "crosscheck_with_solver",
    "curvature_value",
    "distortion_ratio",
    "evaluate_segment",
    "explained_dispersion",
    "fit_1d_gpca",
    "fit_components",
    "fit_first_component",
    "fit_higher_component",
    "fit_second_component",
    "fit_tpca",
    "linearized_bw",
    "objective_F",
    "quantile_l2_distance",
    "tpca_component_as_segment",
    "tpca_seed_segment",
    "w2_1d",
]
