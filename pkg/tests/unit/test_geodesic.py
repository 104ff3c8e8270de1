"""Tests for geodesic segments: admissible interval, evaluation and projections."""

from __future__ import annotations

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from bures_gpca.core.errors import ContractViolation, DegenerateDirectionError, TimeRangeError
from bures_gpca.geometry.geodesic import (
    admissible_interval,
    clip_time,
    geodesic_eval,
    make_segment,
    projection_time,
    residual,
    segment_from_endpoints,
)
from bures_gpca.geometry.spd import bw_distance, spd_sqrt
from bures_gpca.testing import projection_time_grid, random_segment, random_spd

_ROOT2 = math.sqrt(2.0)


class TestAdmissibleInterval:
    """Times where A + tX keeps full rank, shrunk by the margin."""

    def test_two_sided(self) -> None:
        x = np.diag([1.0, -1.0]) / _ROOT2
        t_min, t_max = admissible_interval(np.eye(2), x, epsilon=1e-3)
        assert t_min == pytest.approx(-_ROOT2 + 1e-3)
        assert t_max == pytest.approx(_ROOT2 - 1e-3)

    def test_one_sided_is_unbounded(self) -> None:
        t_min, t_max = admissible_interval(np.eye(2), np.eye(2) / _ROOT2, epsilon=1e-3)
        assert t_min == pytest.approx(-_ROOT2 + 1e-3)
        assert t_max == math.inf

    def test_zero_direction(self) -> None:
        with pytest.raises(DegenerateDirectionError, match="zero"):
            admissible_interval(np.eye(2), np.zeros((2, 2)))

    def test_margin_too_large(self) -> None:
        x = np.diag([1.0, -1.0]) / _ROOT2
        with pytest.raises(DegenerateDirectionError, match="empty interval"):
            admissible_interval(np.eye(2), x, epsilon=2.0)

    def test_rejects_non_horizontal(self) -> None:
        with pytest.raises(ContractViolation, match="not horizontal"):
            admissible_interval(np.eye(2), np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_interval_keeps_rank(self, rng: np.random.Generator) -> None:
        for _ in range(10):
            seg = random_segment(rng, 3)
            lo, hi = seg.window()
            for t in np.linspace(lo, hi, 25):
                assert np.linalg.eigvalsh(geodesic_eval(seg, float(t)))[0] > 0


class TestEvaluation:
    def test_base_point(self, rng: np.random.Generator) -> None:
        seg = random_segment(rng, 2)
        assert_allclose(geodesic_eval(seg, 0.0), seg.base @ seg.base.T, atol=1e-14)

    def test_outside_interval(self) -> None:
        seg = make_segment(np.eye(2), np.diag([1.0, -1.0]) / _ROOT2)
        with pytest.raises(TimeRangeError):
            geodesic_eval(seg, 5.0)
        assert clip_time(seg, 5.0) == seg.t_max

    def test_normalize(self) -> None:
        seg = make_segment(np.eye(2), 3.0 * np.eye(2), normalize=True)
        assert float(np.linalg.norm(seg.direction)) == pytest.approx(1.0)

    def test_geodesic_has_unit_speed(self, rng: np.random.Generator) -> None:
        seg = random_segment(rng, 2)
        lo, hi = seg.window()
        t0, t1 = lo + 0.25 * (hi - lo), lo + 0.5 * (hi - lo)
        # locally the lifted segment is a minimal geodesic
        assert bw_distance(geodesic_eval(seg, t0), geodesic_eval(seg, t1)) == pytest.approx(
            t1 - t0, rel=1e-6
        )


class TestProjection:
    def test_matches_grid_search(self, rng: np.random.Generator) -> None:
        seg = random_segment(rng, 2)
        lo, hi = seg.window()
        b = seg.lift(0.5 * (lo + hi)) + 0.1 * rng.standard_normal((2, 2))
        t_grid, _ = projection_time_grid(seg, b)
        t = clip_time(seg, projection_time(seg, b))
        assert t == pytest.approx(t_grid, abs=2.0 * (hi - lo) / 20_000)

    def test_residual_zero_on_segment(self, rng: np.random.Generator) -> None:
        seg = random_segment(rng, 2)
        lo, hi = seg.window()
        m = seg.lift(0.5 * (lo + hi))
        s = m @ m.T
        # the polar rotation of the lifted point
        q = np.linalg.solve(spd_sqrt(s), m)
        assert residual(seg, s, q) == pytest.approx(0.0, abs=1e-20)

    def test_projection_is_unclipped(self) -> None:
        seg = make_segment(np.eye(2), np.diag([1.0, -1.0]) / _ROOT2)
        far = np.eye(2) + 10.0 * seg.direction
        assert projection_time(seg, far) == pytest.approx(10.0)


class TestEndpoints:
    def test_segment_through_two_points(self, rng: np.random.Generator) -> None:
        s1, s2 = random_spd(rng, 3), random_spd(rng, 3)
        seg, t_start, t_end = segment_from_endpoints(s1, s2)
        assert t_start == 0.0
        assert t_end == pytest.approx(bw_distance(s1, s2))
        assert_allclose(geodesic_eval(seg, 0.0), s1, atol=1e-10)
        assert_allclose(geodesic_eval(seg, t_end), s2, atol=1e-9)

    def test_coincident_endpoints(self) -> None:
        with pytest.raises(DegenerateDirectionError, match="coincide"):
            segment_from_endpoints(np.eye(2), np.eye(2))
