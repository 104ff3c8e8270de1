"""Tests for the geodesic PCA solver."""

from __future__ import annotations

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from bures_gpca.core.errors import ContractViolation, NoRemainingDirectionsError
from bures_gpca.core.types import GaussianDataset, PrincipalComponent
from bures_gpca.geometry.geodesic import geodesic_eval, make_segment
from bures_gpca.geometry.spd import bw_distance, horizontal_check
from bures_gpca.solver.config import SolverConfig
from bures_gpca.solver.gpca import (
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
from bures_gpca.testing import random_rotation, random_spd


def _assert_rotations(component: PrincipalComponent) -> None:
    for q in component.rotations:
        assert_allclose(q.T @ q, np.eye(q.shape[0]), atol=1e-9)
        assert np.linalg.det(q) == pytest.approx(1.0)


def _assert_monotone(trace: tuple[float, ...]) -> None:
    assert all(b <= a + 1e-12 for a, b in zip(trace, trace[1:], strict=False))


def _flat_scatter_eigenvalues(dataset: GaussianDataset) -> np.ndarray:
    """Ascending eigenvalues of the scatter of the square-root diagonals."""
    pts = np.array([np.sqrt(np.diag(s)) for s in dataset.matrices])
    centered = pts - pts.mean(axis=0)
    return np.linalg.eigvalsh(centered.T @ centered)


class TestObjective:
    """Contracts of the residual cost F."""

    def test_rotation_count(self, small_grid: GaussianDataset) -> None:
        seg = tpca_seed_segment(small_grid)
        with pytest.raises(ContractViolation, match="one rotation per datum"):
            objective_F(seg.base, seg.direction, [np.eye(2)], small_grid, 1e-3)

    def test_unit_direction(self, small_grid: GaussianDataset) -> None:
        seg = tpca_seed_segment(small_grid)
        rotations = [np.eye(2)] * small_grid.size
        with pytest.raises(ContractViolation, match="norm"):
            objective_F(seg.base, 2.0 * seg.direction, rotations, small_grid, 1e-3)

    def test_horizontal_direction(self, small_grid: GaussianDataset) -> None:
        rotations = [np.eye(2)] * small_grid.size
        x = np.array([[0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(ContractViolation, match="not horizontal"):
            objective_F(np.eye(2), x, rotations, small_grid, 1e-3)

    def test_zero_for_points_on_segment(self) -> None:
        # diag(t², t²) for t = 1, 2, 3 lie on the segment A = I, X = I/√2
        data = GaussianDataset.from_matrices([np.eye(2) * t * t for t in (1.0, 2.0, 3.0)])
        rotations = [np.eye(2)] * 3
        value = objective_F(np.eye(2), np.eye(2) / math.sqrt(2.0), rotations, data, 1e-3)
        assert value == pytest.approx(0.0, abs=1e-20)

    def test_aligned_rotations_reach_fiber_distance(self, small_circle: GaussianDataset) -> None:
        seg = tpca_seed_segment(small_circle)
        s_base = seg.base @ seg.base.T
        for root, q, s in zip(
            small_circle.roots,
            aligned_rotations(seg.base, small_circle),
            small_circle.matrices,
            strict=True,
        ):
            assert float(np.linalg.norm(root @ q - seg.base)) == pytest.approx(
                bw_distance(s_base, s), abs=1e-8
            )


class TestFirstComponent:
    def test_never_worse_than_tangent_pca(
        self, small_circle: GaussianDataset, fast_config: SolverConfig
    ) -> None:
        tpca = evaluate_segment(tpca_seed_segment(small_circle, fast_config), small_circle, fast_config)
        gpca = fit_first_component(small_circle, fast_config)
        assert gpca.cost <= tpca.cost + 1e-9

    def test_component_contracts(
        self, small_circle: GaussianDataset, fast_config: SolverConfig
    ) -> None:
        comp = fit_first_component(small_circle, fast_config)
        assert comp.order == 1
        assert len(comp.projection_times) == small_circle.size
        assert all(comp.segment.contains(t) for t in comp.projection_times)
        assert horizontal_check(comp.segment.base, comp.segment.direction).is_horizontal
        _assert_rotations(comp)
        _assert_monotone(comp.trace)
        assert comp.trace[-1] == pytest.approx(comp.cost, rel=1e-9)

    def test_orientation_follows_top_eigenvalue(self, fast_config: SolverConfig) -> None:
        data = GaussianDataset.from_matrices([np.diag([s, 1.0]) for s in (1.0, 2.0, 4.0, 8.0)])
        comp = fit_first_component(data, fast_config)
        times = comp.projection_times
        assert times[0] < times[-1]

    def test_collinear_data_costs_nothing(self, fast_config: SolverConfig) -> None:
        data = GaussianDataset.from_matrices([np.eye(2) * t * t for t in (1.0, 1.5, 2.0, 3.0)])
        comp = fit_first_component(data, fast_config)
        assert comp.cost == pytest.approx(0.0, abs=1e-10)

    def test_needs_two_matrices(self) -> None:
        with pytest.raises(ContractViolation, match="at least two"):
            fit_first_component(GaussianDataset.from_matrices([np.eye(2)]))

    def test_deterministic_across_workers(self, small_circle: GaussianDataset) -> None:
        serial = fit_first_component(small_circle, SolverConfig(restarts=3, outer_max_iters=20))
        threaded = fit_first_component(
            small_circle, SolverConfig(restarts=3, outer_max_iters=20, workers=3)
        )
        assert threaded.cost == serial.cost
        assert threaded.projection_times == serial.projection_times

    def test_invariant_to_fiber_rotation(
        self, small_circle: GaussianDataset, rng: np.random.Generator
    ) -> None:
        config = SolverConfig(restarts=1, outer_max_iters=60)
        seed = tpca_seed_segment(small_circle, config)
        q = random_rotation(rng, 2)
        rotated = make_segment(seed.base @ q, seed.direction @ q, seed.epsilon)
        plain = fit_first_component(small_circle, config, init=seed)
        turned = fit_first_component(small_circle, config, init=rotated)
        assert turned.cost == pytest.approx(plain.cost, abs=1e-8)

    def test_flat_grid_matches_planar_regression(
        self, small_grid: GaussianDataset, fast_config: SolverConfig
    ) -> None:
        # commuting data: BW distances are Euclidean in the square-root eigenvalues
        comp = fit_first_component(small_grid, fast_config)
        smallest = _flat_scatter_eigenvalues(small_grid)[0]
        assert comp.cost == pytest.approx(smallest, abs=1e-6)

    def test_one_dimensional(self, fast_config: SolverConfig) -> None:
        data = GaussianDataset.from_matrices([[[s * s]] for s in (0.5, 1.0, 2.5)])
        comp = fit_first_component(data, fast_config)
        assert comp.cost == pytest.approx(0.0, abs=1e-12)
        spread = np.array(comp.projection_times) - np.mean(comp.projection_times)
        assert_allclose(np.abs(spread), np.abs(np.array([0.5, 1.0, 2.5]) - 4.0 / 3.0), atol=1e-8)


class TestHigherComponents:
    """Orthogonality and crossing contracts of components of order ≥ 2."""

    def test_second_component_crosses_first(
        self, small_circle: GaussianDataset, fast_config: SolverConfig
    ) -> None:
        first = fit_first_component(small_circle, fast_config)
        second = fit_second_component(small_circle, first, fast_config)
        assert second.order == 2
        assert second.intersection_time is not None
        assert max(second.orthogonality_residuals()) <= 1e-6
        crossing = geodesic_eval(first.segment, second.intersection_time)
        assert bw_distance(geodesic_eval(second.segment, 0.0), crossing) <= 1e-6
        _assert_rotations(second)
        _assert_monotone(second.trace)

    def test_third_component_frame(self, rng: np.random.Generator) -> None:
        data = GaussianDataset.from_matrices([random_spd(rng, 3, 0.5) for _ in range(6)])
        config = SolverConfig(restarts=1, outer_max_iters=10)
        components = fit_components(data, 3, config)
        assert [c.order for c in components] == [1, 2, 3]
        third = components[2]
        assert len(third.frame) == 2
        assert max(third.orthogonality_residuals()) <= 1e-6
        assert third.intersection_time == components[1].intersection_time

    def test_no_direction_left_in_one_dimension(self, fast_config: SolverConfig) -> None:
        data = GaussianDataset.from_matrices([[[1.0]], [[4.0]], [[9.0]]])
        first = fit_first_component(data, fast_config)
        with pytest.raises(NoRemainingDirectionsError):
            fit_second_component(data, first, fast_config)

    def test_second_needs_first(
        self, small_grid: GaussianDataset, fast_config: SolverConfig
    ) -> None:
        first = fit_first_component(small_grid, fast_config)
        other = GaussianDataset.from_matrices(small_grid.matrices[:3])
        with pytest.raises(ContractViolation, match="expects the first component"):
            fit_second_component(other, first, fast_config)

    def test_higher_needs_two_previous(
        self, small_grid: GaussianDataset, fast_config: SolverConfig
    ) -> None:
        first = fit_first_component(small_grid, fast_config)
        with pytest.raises(ContractViolation, match="two previous"):
            fit_higher_component(small_grid, [first], fast_config)

    def test_fit_components_rejects_zero(self, small_grid: GaussianDataset) -> None:
        with pytest.raises(ContractViolation):
            fit_components(small_grid, 0)


class TestDispersion:
    def test_fractions(self, small_circle: GaussianDataset, fast_config: SolverConfig) -> None:
        comps = fit_components(small_circle, 2, fast_config)
        report = explained_dispersion(small_circle, comps)
        assert not report.zero_dispersion
        assert report.total_dispersion > 0
        for entry in report.entries:
            assert entry.fraction <= 1.0
        assert report.entries[0].fraction == pytest.approx(
            1.0 - comps[0].cost / report.total_dispersion
        )

    def test_data_at_barycenter(self) -> None:
        data = GaussianDataset.from_matrices([np.eye(2), np.eye(2)])
        report = explained_dispersion(data, [])
        assert report.zero_dispersion
        assert report.total_dispersion == pytest.approx(0.0, abs=1e-12)
