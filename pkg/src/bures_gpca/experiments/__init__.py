"""Experiments module - dataset generators, dataset I/O and GPCA/TPCA comparisons."""

from bures_gpca.experiments.config import (
    CircleConfig,
    DistortionCurveConfig,
    GridConfig,
    RandomTrialsConfig,
)
from bures_gpca.experiments.datasets import (
    gen_circle,
    gen_grid,
    gen_random_spectral,
    load_dataset,
    save_dataset,
)
from bures_gpca.experiments.runner import (
    distance_to_point,
    improvement_pct,
    predicted_distortion,
    run_circle,
    run_comparison,
    run_distortion_curve,
    run_grid,
    run_oracle_1d,
    run_random_trials,
)

__all__ = [
    "CircleConfig",
    "DistortionCurveConfig",
    "GridConfig",
    "RandomTrialsConfig",
    "distance_to_point",
    "gen_circle",
    "gen_grid",
    "gen_random_spectral",
    "improvement_pct",
    "load_dataset",
    "predicted_distortion",
    "run_circle",
    "run_comparison",
    "run_distortion_curve",
    "run_grid",
    "run_oracle_1d",
    "run_random_trials",
    "save_dataset",
]
