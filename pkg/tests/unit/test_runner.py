"""Tests for the experiment runners."""

from __future__ import annotations

import json
import math

import numpy as np
import pytest

from bures_gpca.core.types import Gaussian1D, GaussianDataset
from bures_gpca.experiments.config import DistortionCurveConfig, RandomTrialsConfig
from bures_gpca.experiments.runner import (
    distance_to_point,
    improvement_pct,
    predicted_distortion,
    run_comparison,
    run_distortion_curve,
    run_oracle_1d,
    run_random_trials,
)
from bures_gpca.geometry.geodesic import make_segment
from bures_gpca.solver.config import SolverConfig


class TestHelpers:
    def test_improvement(self) -> None:
        assert improvement_pct(2.0, 1.5) == pytest.approx(25.0)
        assert improvement_pct(0.0, 0.0) == 0.0

    def test_predicted_distortion_average(self) -> None:
        # the mean of cos² over a half turn is 1/2
        assert predicted_distortion(0.6) == pytest.approx(1.0 - 0.18)

    def test_distance_to_point_on_segment(self) -> None:
        seg = make_segment(np.eye(2), np.eye(2) / math.sqrt(2.0))
        assert distance_to_point(seg, 4.0 * np.eye(2)) == pytest.approx(0.0, abs=1e-7)

    def test_distance_to_point_off_segment(self) -> None:
        seg = make_segment(np.eye(2), np.eye(2) / math.sqrt(2.0))
        # the closest isotropic matrix to diag(4, 1) is 2.25 I
        assert distance_to_point(seg, np.diag([4.0, 1.0])) == pytest.approx(
            1.0 / math.sqrt(2.0), abs=1e-6
        )


class TestComparison:
    def test_report_fields(self, small_grid: GaussianDataset, fast_config: SolverConfig) -> None:
        report = run_comparison(small_grid, fast_config, components=1, experiment="grid")
        assert report.experiment == "grid"
        assert set(report.costs) == {"gpca", "tpca"}
        assert report.costs["gpca"][0] <= report.costs["tpca"][0] + 1e-9
        assert len(report.table) == small_grid.size
        assert set(report.table[0]) == {"index", "gpca_t1", "tpca_t1"}
        assert report.summary["n"] == small_grid.size
        assert report.summary["barycenter_gradient_norm"] <= 1e-8
        assert report.config["solver"]["seed"] == 0
        assert report.dataset is not None and report.dataset["dim"] == 2
        json.dumps(report.to_dict(), allow_nan=False)

    def test_json_is_reproducible_without_timings(
        self, small_grid: GaussianDataset, fast_config: SolverConfig
    ) -> None:
        first = run_comparison(small_grid, fast_config, components=1)
        second = run_comparison(small_grid, fast_config, components=1)
        assert json.dumps(first.to_dict(include_timings=False)) == json.dumps(
            second.to_dict(include_timings=False)
        )
        assert "timings" not in first.to_dict(include_timings=False)


class TestSweeps:
    def test_distortion_curve_rows(self) -> None:
        curve = DistortionCurveConfig(ratios=(0.3, 0.7), n=6)
        report = run_distortion_curve(curve, SolverConfig(restarts=1, outer_max_iters=15))
        assert [row["ratio"] for row in report.table] == [0.3, 0.7]
        for row in report.table:
            assert row["gpca_cost"] <= row["tpca_cost"] + 1e-9
            assert set(row) == {
                "ratio",
                "tpca_cost",
                "gpca_cost",
                "improvement_pct",
                "predicted_distortion",
            }

    def test_random_trials_summary(self) -> None:
        trials = RandomTrialsConfig(trials=2, n=5)
        report = run_random_trials(trials, SolverConfig(restarts=1, outer_max_iters=15))
        assert len(report.table) == 2
        assert report.summary["max_improvement_pct"] >= report.summary["median_improvement_pct"]
        assert all(p >= -1e-7 for p in report.improvement_pct)


class TestOracle:
    def test_centered_runs_crosscheck(self) -> None:
        gs = [Gaussian1D(0.0, s) for s in (0.7, 1.3, 2.2)]
        report = run_oracle_1d(gs, SolverConfig(restarts=2, outer_max_iters=30))
        assert report.converged
        assert report.summary["crosscheck"]["agrees"] is True
        assert set(report.costs) == {"oracle", "gpca"}

    def test_general_means_skip_solver(self) -> None:
        gs = [Gaussian1D(m, s) for m, s in ((0.0, 1.0), (1.0, 2.0), (2.0, 3.0))]
        report = run_oracle_1d(gs)
        assert "crosscheck" not in report.summary
        assert report.costs["oracle"][0] == pytest.approx(0.0, abs=1e-20)
        assert [row["index"] for row in report.table] == [0, 1, 2]
