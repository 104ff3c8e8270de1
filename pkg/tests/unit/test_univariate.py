"""Tests for the closed-form one-dimensional fit."""

from __future__ import annotations

import math

import numpy as np
import pytest

from bures_gpca.core.errors import ContractViolation
from bures_gpca.core.types import Gaussian1D
from bures_gpca.solver.config import SolverConfig
from bures_gpca.solver.univariate import (
    crosscheck_with_solver,
    fit_1d_gpca,
    quantile_l2_distance,
    w2_1d,
)
from bures_gpca.testing import line_fit_grid


class TestDistance:
    def test_closed_form(self) -> None:
        assert w2_1d(Gaussian1D(0.0, 1.0), Gaussian1D(1.0, 2.0)) == pytest.approx(math.sqrt(2.0))

    def test_identity(self) -> None:
        g = Gaussian1D(0.3, 1.7)
        assert w2_1d(g, g) == 0.0

    def test_quantile_isometry(self, rng: np.random.Generator) -> None:
        for _ in range(5):
            g1 = Gaussian1D(float(rng.normal()), float(rng.uniform(0.2, 3.0)))
            g2 = Gaussian1D(float(rng.normal()), float(rng.uniform(0.2, 3.0)))
            assert quantile_l2_distance(g1, g2) == pytest.approx(w2_1d(g1, g2), rel=1e-6)

    def test_triangle_inequality(self, rng: np.random.Generator) -> None:
        gs = [Gaussian1D(float(rng.normal()), float(rng.uniform(0.2, 3.0))) for _ in range(3)]
        assert w2_1d(gs[0], gs[2]) <= w2_1d(gs[0], gs[1]) + w2_1d(gs[1], gs[2]) + 1e-12


class TestLineFit:
    """Orthogonal-distance regression in the (m, σ) half-plane."""

    def test_collinear_points_cost_nothing(self) -> None:
        fit = fit_1d_gpca([Gaussian1D(0.0, s) for s in (1.0, 2.0, 3.0)])
        assert fit.cost == pytest.approx(0.0, abs=1e-20)
        assert fit.direction == pytest.approx((0.0, 1.0))
        assert fit.projection_times == pytest.approx((-1.0, 0.0, 1.0))

    def test_centered_data_follow_sigma_axis(self, rng: np.random.Generator) -> None:
        sigmas = rng.uniform(0.5, 3.0, size=7)
        fit = fit_1d_gpca([Gaussian1D(0.0, float(s)) for s in sigmas])
        assert fit.projection_times == pytest.approx(tuple(sigmas - sigmas.mean()))

    def test_matches_grid_oracle(self, rng: np.random.Generator) -> None:
        pts = np.column_stack([rng.normal(size=6), rng.uniform(0.5, 2.0, size=6)])
        fit = fit_1d_gpca([Gaussian1D(float(m), float(s)) for m, s in pts])
        grid = line_fit_grid(pts, n_angles=720, n_offsets=400, sigma_floor=1e-3)
        assert fit.cost == pytest.approx(grid, rel=5e-2, abs=5e-3)

    def test_line_stays_in_half_plane(self) -> None:
        # steep cloud whose line would cross σ = 0 inside the data span
        gs = [Gaussian1D(m, s) for m, s in ((-3.0, 0.1), (0.0, 0.2), (3.0, 0.1), (0.0, 3.0))]
        fit = fit_1d_gpca(gs, sigma_floor=1e-3)
        for t in fit.projection_times:
            assert fit.point_at(t).sigma >= 1e-3 - 1e-12

    def test_identical_points_are_degenerate(self) -> None:
        fit = fit_1d_gpca([Gaussian1D(1.0, 2.0)] * 3)
        assert fit.degenerate
        assert fit.cost == 0.0

    def test_needs_two(self) -> None:
        with pytest.raises(ContractViolation, match="at least two"):
            fit_1d_gpca([Gaussian1D(0.0, 1.0)])

    def test_dict_encodes_infinite_bounds(self) -> None:
        fit = fit_1d_gpca([Gaussian1D(0.0, s) for s in (1.0, 2.0)])
        data = fit.to_dict()
        assert data["t_max"] == "inf"
        assert data["degenerate"] is False


class TestCrosscheck:
    def test_solver_agrees_with_closed_form(self, rng: np.random.Generator) -> None:
        gs = [Gaussian1D(0.0, float(s)) for s in rng.uniform(0.5, 3.0, size=5)]
        report = crosscheck_with_solver(gs, SolverConfig(restarts=2, outer_max_iters=30))
        assert report.agrees
        assert report.cost_gap <= 1e-6
        assert report.time_gap <= 1e-6

    def test_rejects_nonzero_means(self) -> None:
        with pytest.raises(ContractViolation, match="centered"):
            crosscheck_with_solver([Gaussian1D(1.0, 1.0), Gaussian1D(0.0, 2.0)])
