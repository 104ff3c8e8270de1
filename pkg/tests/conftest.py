"""Shared fixtures for the bures-gpca test suite."""

from __future__ import annotations

import numpy as np
import pytest

from bures_gpca.core.types import GaussianDataset
from bures_gpca.experiments.datasets import gen_circle, gen_grid
from bures_gpca.solver.config import SolverConfig


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(0)


@pytest.fixture
def fast_config() -> SolverConfig:
    """Few restarts and a short outer loop; enough for the small datasets below."""
    return SolverConfig(restarts=2, outer_max_iters=40, seed=0)


@pytest.fixture
def small_grid() -> GaussianDataset:
    return gen_grid((1.0, 1.5), (1.0, 1.2), 3, 2)


@pytest.fixture
def small_circle() -> GaussianDataset:
    return gen_circle(1.8, 0.2, 8, 0.05)
