"""bures-gpca: exact geodesic PCA of centered Gaussians under the Bures-Wasserstein metric."""

import logging

# The application configures handlers; the library only emits records.
logging.getLogger(__name__).addHandler(logging.NullHandler())

# Core types
from bures_gpca.core import (  # noqa: E402
    ConeCoords,
    ContractViolation,
    DatasetParseError,
    DegenerateDirectionError,
    DomainError,
    Gaussian1D,
    GaussianDataset,
    GeodesicSegment,
    GpcaError,
    NoRemainingDirectionsError,
    NumericError,
    PrincipalComponent,
    SpectralCoords,
    TimeRangeError,
    TpcaResult,
    UnsupportedDimensionError,
)

# Experiments
from bures_gpca.experiments import (  # noqa: E402
    CircleConfig,
    DistortionCurveConfig,
    GridConfig,
    RandomTrialsConfig,
    gen_circle,
    gen_grid,
    gen_random_spectral,
    load_dataset,
    run_comparison,
    run_distortion_curve,
    run_random_trials,
    save_dataset,
)

# Geometry
from bures_gpca.geometry import (  # noqa: E402
    admissible_interval,
    align,
    bures_wasserstein_sq,
    bw_distance,
    bw_exp,
    bw_log,
    bw_metric_inner,
    clip_time,
    cone_to_spd,
    dpi,
    fiber_project,
    geodesic_eval,
    horizontal_check,
    horizontal_lift,
    monge_map,
    optimal_rotation,
    procrustes_init,
    projection_time,
    residual,
    riemannian_grad,
    rotation_descent,
    so_exp,
    spd_sqrt,
    spd_to_cone,
    spd_to_spectral,
    spectral_to_spd,
)

# Reporting
from bures_gpca.reporting import ExperimentReport, save_report  # noqa: E402

# Solvers
from bures_gpca.solver import (  # noqa: E402
    DescentConfig,
    SolverConfig,
    bw_barycenter,
    crosscheck_with_solver,
    curvature_value,
    distortion_ratio,
    explained_dispersion,
    fit_1d_gpca,
    fit_components,
    fit_first_component,
    fit_higher_component,
    fit_second_component,
    fit_tpca,
    linearized_bw,
    objective_F,
    tpca_component_as_segment,
    w2_1d,
)

__all__ = [
    # Core
    "ConeCoords",
    "ContractViolation",
    "DatasetParseError",
    "DegenerateDirectionError",
    "DomainError",
    "Gaussian1D",
    "GaussianDataset",
    "GeodesicSegment",
    "GpcaError",
    "NoRemainingDirectionsError",
    "NumericError",
    "PrincipalComponent",
    "SpectralCoords",
    "TimeRangeError",
    "TpcaResult",
    "UnsupportedDimensionError",
    # Geometry
    "admissible_interval",
    "align",
    "bures_wasserstein_sq",
    "bw_distance",
    "bw_exp",
    "bw_log",
    "bw_metric_inner",
    "clip_time",
    "cone_to_spd",
    "dpi",
    "fiber_project",
    "geodesic_eval",
    "horizontal_check",
    "horizontal_lift",
    "monge_map",
    "optimal_rotation",
    "procrustes_init",
    "projection_time",
    "residual",
    "riemannian_grad",
    "rotation_descent",
    "so_exp",
    "spd_sqrt",
    "spd_to_cone",
    "spd_to_spectral",
    "spectral_to_spd",
    # Solvers
    "DescentConfig",
    "SolverConfig",
    "bw_barycenter",
    "crosscheck_with_solver",
    "curvature_value",
    "distortion_ratio",
    "explained_dispersion",
    "fit_1d_gpca",
    "fit_components",
    "fit_first_component",
    "fit_higher_component",
    "fit_second_component",
    "fit_tpca",
    "linearized_bw",
    "objective_F",
    "tpca_component_as_segment",
    "w2_1d",
    # Experiments
    "CircleConfig",
    "DistortionCurveConfig",
    "GridConfig",
    "RandomTrialsConfig",
    "gen_circle",
    "gen_grid",
    "gen_random_spectral",
    "load_dataset",
    "run_comparison",
    "run_distortion_curve",
    "run_random_trials",
    "save_dataset",
    # Reporting
    "ExperimentReport",
    "save_report",
]

from importlib.metadata import PackageNotFoundError  # noqa: E402
from importlib.metadata import version as _get_version  # noqa: E402

try:
    __version__ = _get_version("bures-gpca")
except PackageNotFoundError:
    __version__ = "0+unknown"
