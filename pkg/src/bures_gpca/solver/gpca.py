"""Exact geodesic PCA of centered Gaussians by alternating minimization in the fiber bundle.

A component is the projection of a horizontal segment t ↦ A + tX. Its cost is

    F = Σ_i ‖A + p(t_i) X − Σ_i^{1/2} Q_i‖²,

with t_i the projection time of Σ_i^{1/2} Q_i on the line and p the clip to the
admissible interval. The solver alternates between the rotations Q_i (one SO_d
descent per datum) and the segment. Every accepted step lowers F, so the
objective trace is non-increasing.

Components of order k ≥ 2 are based on the fiber over a point of the previous
component, A_k = P R, with directions X_k = K P R / ‖K P‖ constrained to be
orthogonal to the lifted previous directions (the frame).
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import TypeVar

import numpy as np
import scipy.linalg
import scipy.optimize
from numpy.typing import ArrayLike, NDArray

from bures_gpca.core.errors import (
    ContractViolation,
    GpcaError,
    NoRemainingDirectionsError,
)
from bures_gpca.core.matrices import (
    FiberRepresentative,
    Matrix,
    Rotation,
    TangentMatrix,
    as_invertible,
    as_square,
    nearest_rotation,
    sym,
    symmetric_basis,
)
from bures_gpca.core.types import (
    UNIT_NORM_TOL,
    GaussianDataset,
    GeodesicSegment,
    PrincipalComponent,
)
from bures_gpca.geometry.geodesic import (
    admissible_interval,
    clip_time,
    lifted_residual,
    make_segment,
)
from bures_gpca.geometry.rotations import procrustes_init, rotation_descent
from bures_gpca.geometry.spd import bures_wasserstein_sq, monge_map, require_horizontal
from bures_gpca.solver.config import DescentConfig, SolverConfig
from bures_gpca.solver.tpca import (
    BarycenterResult,
    bw_barycenter,
    fit_tpca,
    tpca_component_as_segment,
)

_logger = logging.getLogger(__name__)

_PENALTY_FACTOR = 1e6
_TINY = 1e-14

_T = TypeVar("_T")


# ---------------------------------------------------------------------------
# Result types
# ---------------------------------------------------------------------------


@dataclass(slots=True, frozen=True)
class DispersionEntry:
    order: int
    cost: float
    fraction: float


@dataclass(slots=True, frozen=True)
class DispersionReport:
    """Per-component residual cost and explained fraction 1 − F_k / F_0.

    ``zero_dispersion`` is set when the data sit at their barycenter (F_0 ≈ 0);
    fractions are then reported as 1.
    """

    entries: tuple[DispersionEntry, ...]
    total_dispersion: float
    zero_dispersion: bool


# ---------------------------------------------------------------------------
# Objective and the rotation block
# ---------------------------------------------------------------------------


def _fiber_points(dataset: GaussianDataset, rotations: Sequence[Rotation]) -> list[Matrix]:
    return [b @ q for b, q in zip(dataset.roots, rotations, strict=True)]


def _segment_cost(
    seg: GeodesicSegment, points: Sequence[FiberRepresentative]
) -> tuple[list[float], float]:
    times: list[float] = []
    cost = 0.0
    for b in points:
        t, r = lifted_residual(seg, b)
        times.append(t)
        cost += r
    return times, cost


def objective_F(
    a: ArrayLike,
    x: ArrayLike,
    rotations: Sequence[Rotation],
    dataset: GaussianDataset,
    epsilon: float,
) -> float:
    """Residual cost of the segment A + tX for the fiber points Σ_i^{1/2} Q_i."""
    aarr = as_invertible(a, "A")
    xarr = as_square(x, "X")
    if len(rotations) != dataset.size:
        raise ContractViolation("objective_F", "one rotation per datum is required")
    norm = float(np.linalg.norm(xarr))
    if abs(norm - 1.0) > UNIT_NORM_TOL:
        raise ContractViolation("objective_F", f"direction norm is {norm:.12g}, expected 1")
    require_horizontal(aarr, xarr, "objective_F")
    seg = make_segment(aarr, xarr, epsilon)
    return _segment_cost(seg, _fiber_points(dataset, rotations))[1]


@dataclass(slots=True, frozen=True, eq=False)
class _LineResidual:
    """g(Q) = ‖A + p(t)X − BQ‖²; its Euclidean gradient is 2Bᵀ(BQ − A − p(t)X)."""

    segment: GeodesicSegment
    root: Matrix

    def __call__(self, q: Rotation) -> float:
        return lifted_residual(self.segment, self.root @ q)[1]

    def gradient(self, q: Rotation) -> Matrix:
        b = self.root @ q
        t, _ = lifted_residual(self.segment, b)
        return 2.0 * self.root.T @ (b - self.segment.lift(t))


def aligned_rotations(base: FiberRepresentative, dataset: GaussianDataset) -> list[Rotation]:
    """Q_i with Σ_i^{1/2} Q_i = T_i A, the point of each fiber closest to A."""
    s = sym(base @ base.T)
    out = []
    for sigma, root in zip(dataset.matrices, dataset.roots, strict=True):
        aligned = monge_map(s, sigma) @ base
        out.append(nearest_rotation(np.linalg.solve(root, aligned)))
    return out


def _rotation_step(
    seg: GeodesicSegment,
    dataset: GaussianDataset,
    rotations: Sequence[Rotation],
    descent: DescentConfig,
) -> tuple[list[Rotation], int]:
    """Minimize each datum's residual over its rotation, never increasing it."""
    updated: list[Rotation] = []
    stalled = 0
    for root, q in zip(dataset.roots, rotations, strict=True):
        objective = _LineResidual(seg, root)
        t, _ = lifted_residual(seg, root @ q)
        start = q
        candidate = procrustes_init(seg.lift(t), root)
        if objective(candidate) < objective(q):
            start = candidate
        result = rotation_descent(objective, start, descent, euclidean_grad=objective.gradient)
        stalled += int(result.stalled)
        updated.append(result.rotation)
    return updated, stalled


# ---------------------------------------------------------------------------
# Orientation, evaluation
# ---------------------------------------------------------------------------


def _orientation_slope(dataset: GaussianDataset, times: Sequence[float]) -> float:
    top = np.array([np.linalg.eigvalsh(s)[-1] for s in dataset.matrices])
    ranks = np.argsort(np.argsort(top, kind="stable"), kind="stable").astype(float)
    t = np.asarray(times)
    return float(np.sum((ranks - ranks.mean()) * (t - t.mean())))


def _oriented(component: PrincipalComponent, dataset: GaussianDataset) -> PrincipalComponent:
    if _orientation_slope(dataset, component.projection_times) >= 0:
        return component
    return replace(
        component,
        segment=component.segment.flipped(),
        projection_times=tuple(-t for t in component.projection_times),
    )


def evaluate_segment(
    segment: GeodesicSegment,
    dataset: GaussianDataset,
    config: SolverConfig | None = None,
    *,
    order: int = 1,
) -> PrincipalComponent:
    """Exact residual cost of a fixed segment: rotations optimized from aligned starts."""
    config = config or SolverConfig()
    rotations, stalled = _rotation_step(
        segment, dataset, aligned_rotations(segment.base, dataset), config.descent
    )
    times, cost = _segment_cost(segment, _fiber_points(dataset, rotations))
    return PrincipalComponent(
        order=order,
        segment=segment,
        rotations=tuple(rotations),
        projection_times=tuple(times),
        cost=cost,
        converged=stalled == 0,
        trace=(cost,),
    )


# ---------------------------------------------------------------------------
# Segment block
# ---------------------------------------------------------------------------


def _line_terms(
    a: Matrix, k: Matrix, points: Sequence[Matrix], epsilon: float
) -> tuple[float, Matrix, Matrix] | None:
    """Cost of the line A + tKA/‖KA‖ with gradients in A and in K (None if invalid).

    Clipped times contribute no derivative through t; the interval bounds are held fixed.
    """
    y = k @ a
    ny = float(np.linalg.norm(y))
    if ny <= _TINY:
        return None
    x = y / ny
    try:
        t_min, t_max = admissible_interval(a, x, epsilon)
    except GpcaError:
        return None
    value = 0.0
    grad_a = np.zeros_like(a)
    grad_x = np.zeros_like(a)
    for c in points:
        p = min(max(float(np.sum((c - a) * x)), t_min), t_max)
        r = a + p * x - c
        value += float(np.sum(r * r))
        grad_a += 2.0 * r
        grad_x += 2.0 * p * r
    grad_y = (grad_x - float(np.sum(grad_x * x)) * x) / ny
    return value, grad_a + k.T @ grad_y, grad_y @ a.T


def _sym_coords(k: Matrix, basis: Sequence[Matrix]) -> NDArray[np.float64]:
    return np.array([float(np.sum(k * e)) for e in basis])


def _from_coords(coords: NDArray[np.float64], basis: Sequence[Matrix]) -> Matrix:
    out = np.zeros_like(basis[0])
    for c, e in zip(coords, basis, strict=True):
        out += c * e
    return out


def _try_segment(a: Matrix, x: Matrix, epsilon: float) -> GeodesicSegment | None:
    try:
        return make_segment(a, x, epsilon, normalize=True)
    except GpcaError:
        return None


def _base_direction_step(
    seg: GeodesicSegment,
    points: Sequence[Matrix],
    cost: float,
    config: SolverConfig,
) -> tuple[GeodesicSegment, float]:
    """Minimize over (A, K) with X = KA/‖KA‖ by L-BFGS; keep the old segment unless F drops."""
    d = seg.dim
    basis = symmetric_basis(d)
    a0 = seg.base
    k0 = sym(seg.direction @ np.linalg.inv(a0))
    x0 = np.concatenate([a0.ravel(), _sym_coords(k0, basis)])
    penalty = _PENALTY_FACTOR * (1.0 + cost)

    def fun(v: NDArray[np.float64]) -> tuple[float, NDArray[np.float64]]:
        a = v[: d * d].reshape(d, d)
        k = _from_coords(v[d * d :], basis)
        terms = _line_terms(a, k, points, seg.epsilon)
        if terms is None:
            return penalty, np.zeros_like(v)
        value, grad_a, grad_k = terms
        return value, np.concatenate([grad_a.ravel(), _sym_coords(grad_k, basis)])

    result = scipy.optimize.minimize(
        fun, x0, jac=True, method="L-BFGS-B", options={"maxiter": config.step2_max_iters}
    )
    a = result.x[: d * d].reshape(d, d)
    k = _from_coords(result.x[d * d :], basis)
    candidate = _try_segment(a, k @ a, seg.epsilon)
    if candidate is None:
        return seg, cost
    new_cost = _segment_cost(candidate, points)[1]
    if new_cost < cost:
        return candidate, new_cost
    return seg, cost


# ---------------------------------------------------------------------------
# First component
# ---------------------------------------------------------------------------


@dataclass(slots=True)
class _Run:
    segment: GeodesicSegment
    rotations: list[Rotation]
    cost: float
    trace: list[float] = field(default_factory=list)
    converged: bool = False
    stalled: int = 0


def _relative_decrease(previous: float, current: float) -> float:
    if previous <= 0.0:
        return 0.0
    return (previous - current) / previous


def _alternate_first(
    dataset: GaussianDataset,
    seg: GeodesicSegment,
    rotations: list[Rotation],
    config: SolverConfig,
    label: str,
) -> _Run:
    cost = _segment_cost(seg, _fiber_points(dataset, rotations))[1]
    run = _Run(segment=seg, rotations=rotations, cost=cost, trace=[cost])
    for it in range(1, config.outer_max_iters + 1):
        previous = run.cost
        run.rotations, stalled = _rotation_step(
            run.segment, dataset, run.rotations, config.descent
        )
        run.stalled += stalled
        points = _fiber_points(dataset, run.rotations)
        run.cost = _segment_cost(run.segment, points)[1]
        run.segment, run.cost = _base_direction_step(run.segment, points, run.cost, config)
        run.trace.append(run.cost)
        _logger.debug("%s iteration %d: F = %.12g", label, it, run.cost)
        if _relative_decrease(previous, run.cost) < config.outer_tol:
            run.converged = True
            break
    return run


def _random_horizontal(rng: np.random.Generator, a: Matrix) -> TangentMatrix:
    x = sym(rng.standard_normal(a.shape)) @ a
    return x / np.linalg.norm(x)


def _perturbed_start(
    seg: GeodesicSegment, rng: np.random.Generator, scale: float, config: SolverConfig
) -> GeodesicSegment:
    """Random horizontal moves of the base and the direction of ``seg``."""
    a = seg.base
    d = seg.dim
    k_base = sym(_random_horizontal(rng, a) @ np.linalg.inv(a))
    eta = config.perturbation * scale
    while np.linalg.eigvalsh(np.eye(d) + eta * k_base)[0] < 0.5:
        eta *= 0.5
    new_base = (np.eye(d) + eta * k_base) @ a
    mixed = seg.direction + config.perturbation * _random_horizontal(rng, a)
    k_dir = sym(mixed @ np.linalg.inv(a))
    candidate = _try_segment(new_base, k_dir @ new_base, seg.epsilon)
    return candidate if candidate is not None else seg


def _require_fit_size(dataset: GaussianDataset) -> None:
    if dataset.size < 2:
        raise ContractViolation("gpca", "a component needs at least two matrices")


def _seed_streams(seed: int, count: int) -> list[np.random.Generator]:
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(count)]


def _run_restarts(tasks: Sequence[Callable[[], _T]], workers: int) -> list[_T]:
    if workers <= 1 or len(tasks) <= 1:
        return [task() for task in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(task) for task in tasks]
        return [f.result() for f in futures]


def _best_run(runs: Sequence[_Run], order: int) -> _Run:
    best = min(runs, key=lambda r: r.cost)
    if not any(r.converged for r in runs):
        _logger.warning(
            "Component %d: no restart converged; returning best iterate (F = %.6g)",
            order,
            best.cost,
        )
    return best


def tpca_seed_segment(
    dataset: GaussianDataset,
    config: SolverConfig | None = None,
    *,
    barycenter: BarycenterResult | None = None,
) -> GeodesicSegment:
    """First tangent PCA geodesic, the deterministic start of restart 1."""
    config = config or SolverConfig()
    bary = barycenter or bw_barycenter(
        dataset, config.barycenter_tol, config.barycenter_max_iters
    )
    return tpca_component_as_segment(fit_tpca(dataset, 1, barycenter=bary), 0, config.epsilon)


def fit_first_component(
    dataset: GaussianDataset,
    config: SolverConfig | None = None,
    *,
    init: GeodesicSegment | None = None,
) -> PrincipalComponent:
    """Best-of-restarts geodesic minimizing the residual cost F.

    The first restart starts from the tangent PCA geodesic (or ``init``) with aligned
    rotations, so the result never costs more than that geodesic; the others start
    from random horizontal perturbations of it.
    """
    config = config or SolverConfig()
    _require_fit_size(dataset)
    bary = bw_barycenter(dataset, config.barycenter_tol, config.barycenter_max_iters)
    start: GeodesicSegment = init or tpca_seed_segment(dataset, config, barycenter=bary)
    dispersion = sum(bures_wasserstein_sq(bary.matrix, s) for s in dataset.matrices)
    scale = math.sqrt(dispersion / dataset.size) or 0.1 * float(np.linalg.norm(start.base))
    streams = _seed_streams(config.seed, config.restarts)

    def task(index: int) -> Callable[[], _Run]:
        def run() -> _Run:
            seg = start if index == 0 else _perturbed_start(start, streams[index], scale, config)
            label = f"component 1 restart {index + 1}"
            result = _alternate_first(
                dataset, seg, aligned_rotations(seg.base, dataset), config, label
            )
            _logger.info(
                "%s: F = %.10g after %d iterations%s",
                label,
                result.cost,
                len(result.trace) - 1,
                "" if result.converged else " (not converged)",
            )
            return result

        return run

    runs = _run_restarts([task(i) for i in range(config.restarts)], config.workers)
    best = _best_run(runs, 1)
    times, cost = _segment_cost(best.segment, _fiber_points(dataset, best.rotations))
    component = PrincipalComponent(
        order=1,
        segment=best.segment,
        rotations=tuple(best.rotations),
        projection_times=tuple(times),
        cost=cost,
        converged=best.converged,
        trace=tuple(best.trace),
    )
    return _oriented(component, dataset)


# ---------------------------------------------------------------------------
# Components of order ≥ 2
# ---------------------------------------------------------------------------


@dataclass(slots=True, eq=False)
class _ConstrainedProblem:
    """Base fiber and orthogonality constraints of a component of order ≥ 2.

    For order 2 the base point P(t) = A₁ + tX₁ moves along the first component;
    for higher orders it is the previous component's base.
    """

    order: int
    dataset: GaussianDataset
    constraints: tuple[TangentMatrix, ...]
    anchor: FiberRepresentative
    along: TangentMatrix | None
    parent: GeodesicSegment | None
    epsilon: float

    def base(self, t: float | None) -> FiberRepresentative:
        if self.along is None or t is None:
            return self.anchor
        return self.anchor + t * self.along

    def null_space(self, p: Matrix) -> tuple[list[Matrix], NDArray[np.float64]]:
        """Orthonormal coordinates (in the symmetric basis) of the admissible K."""
        basis = symmetric_basis(p.shape[0])
        rows = np.array([_sym_coords(sym(f @ p.T), basis) for f in self.constraints])
        space = scipy.linalg.null_space(rows, rcond=1e-10)
        if space.shape[1] == 0:
            raise NoRemainingDirectionsError(self.order, 0)
        return basis, space

    def project(self, k: Matrix, p: Matrix) -> Matrix:
        basis, space = self.null_space(p)
        return _from_coords(space @ (space.T @ _sym_coords(k, basis)), basis)

    def segment(self, t: float | None, r: Rotation, k: Matrix) -> GeodesicSegment | None:
        a = self.base(t) @ r
        return _try_segment(a, k @ a, self.epsilon)


@dataclass(slots=True)
class _ConstrainedRun:
    t: float | None
    r: Rotation
    k: Matrix
    segment: GeodesicSegment
    rotations: list[Rotation]
    cost: float
    trace: list[float] = field(default_factory=list)
    converged: bool = False
    stalled: int = 0


def _lift_direction(problem: _ConstrainedProblem, t: float | None) -> Matrix:
    """Top principal direction of the horizontal log lifts (T_i − I)P in the admissible space."""
    p = problem.base(t)
    basis, space = problem.null_space(p)
    s = sym(p @ p.T)
    gens = [_from_coords(space[:, j], basis) @ p for j in range(space.shape[1])]
    gram = np.array([[float(np.sum(g * h)) for h in gens] for g in gens])
    # orthonormalize the generators K_j P
    chol = np.linalg.cholesky(gram)
    inv = np.linalg.inv(chol)
    eye = np.eye(p.shape[0])
    lifts = [(monge_map(s, sigma) - eye) @ p for sigma in problem.dataset.matrices]
    coeffs = np.array([[float(np.sum(lift * g)) for g in gens] for lift in lifts]) @ inv.T
    _, _, vt = np.linalg.svd(coeffs, full_matrices=False)
    z = inv.T @ vt[0]
    return _from_coords(space @ z, basis)


def _rotation_gauge_step(
    problem: _ConstrainedProblem, run: _ConstrainedRun, config: SolverConfig
) -> None:
    """Minimize over R with the fiber points fixed; P R and K P R move together."""
    p = problem.base(run.t)
    seg0 = problem.segment(run.t, np.eye(p.shape[0]), run.k)
    if seg0 is None:
        return
    points = _fiber_points(problem.dataset, run.rotations)

    def objective(r: Rotation) -> float:
        return sum(lifted_residual(seg0, c @ r.T)[1] for c in points)

    def gradient(r: Rotation) -> Matrix:
        g = np.zeros_like(r)
        for c in points:
            t, _ = lifted_residual(seg0, c @ r.T)
            m = seg0.lift(t)
            g += 2.0 * m.T @ (m @ r - c)
        return g

    start = run.r
    target = sum(seg0.lift(lifted_residual(seg0, c @ run.r.T)[0]).T @ c for c in points)
    candidate = nearest_rotation(target)
    if objective(candidate) < objective(start):
        start = candidate
    result = rotation_descent(objective, start, config.descent, euclidean_grad=gradient)
    seg = problem.segment(run.t, result.rotation, run.k)
    if seg is None:
        return
    cost = _segment_cost(seg, points)[1]
    if cost <= run.cost:
        run.r, run.segment, run.cost = result.rotation, seg, cost


def _crossing_step(problem: _ConstrainedProblem, run: _ConstrainedRun) -> None:
    """Bounded scalar search of the crossing time on the first component."""
    parent = problem.parent
    if parent is None or run.t is None:
        return
    points = _fiber_points(problem.dataset, run.rotations)
    span = max(3.0, 2.0 * max(abs(run.t), 1.0))
    lo, hi = parent.window(span)

    def cost_at(t: float) -> float:
        k = problem.project(run.k, problem.base(t))
        seg = problem.segment(t, run.r, k)
        if seg is None:
            return math.inf
        return _segment_cost(seg, points)[1]

    result = scipy.optimize.minimize_scalar(cost_at, bounds=(lo, hi), method="bounded")
    t_new = clip_time(parent, float(result.x))
    k_new = problem.project(run.k, problem.base(t_new))
    seg = problem.segment(t_new, run.r, k_new)
    if seg is None:
        return
    cost = _segment_cost(seg, points)[1]
    if cost < run.cost:
        run.t, run.k, run.segment, run.cost = t_new, k_new, seg, cost


def _direction_step(
    problem: _ConstrainedProblem, run: _ConstrainedRun, config: SolverConfig
) -> None:
    """L-BFGS over the admissible K with the base fixed."""
    p = problem.base(run.t)
    a = p @ run.r
    basis, space = problem.null_space(p)
    points = _fiber_points(problem.dataset, run.rotations)
    z0 = space.T @ _sym_coords(run.k, basis)
    penalty = _PENALTY_FACTOR * (1.0 + run.cost)

    def fun(z: NDArray[np.float64]) -> tuple[float, NDArray[np.float64]]:
        k = _from_coords(space @ z, basis)
        terms = _line_terms(a, k, points, problem.epsilon)
        if terms is None:
            return penalty, np.zeros_like(z)
        value, _, grad_k = terms
        return value, space.T @ _sym_coords(grad_k, basis)

    result = scipy.optimize.minimize(
        fun, z0, jac=True, method="L-BFGS-B", options={"maxiter": config.step2_max_iters}
    )
    k_new = _from_coords(space @ result.x, basis)
    seg = problem.segment(run.t, run.r, k_new)
    if seg is None:
        return
    cost = _segment_cost(seg, points)[1]
    if cost < run.cost:
        run.k, run.segment, run.cost = k_new, seg, cost


def _alternate_constrained(
    problem: _ConstrainedProblem, run: _ConstrainedRun, config: SolverConfig, label: str
) -> _ConstrainedRun:
    run.trace = [run.cost]
    for it in range(1, config.outer_max_iters + 1):
        previous = run.cost
        run.rotations, stalled = _rotation_step(
            run.segment, problem.dataset, run.rotations, config.descent
        )
        run.stalled += stalled
        run.cost = _segment_cost(
            run.segment, _fiber_points(problem.dataset, run.rotations)
        )[1]
        _rotation_gauge_step(problem, run, config)
        _crossing_step(problem, run)
        _direction_step(problem, run, config)
        run.trace.append(run.cost)
        _logger.debug("%s iteration %d: F = %.12g", label, it, run.cost)
        if _relative_decrease(previous, run.cost) < config.outer_tol:
            run.converged = True
            break
    return run


def _initial_run(
    problem: _ConstrainedProblem, t: float | None, k: Matrix
) -> _ConstrainedRun | None:
    d = problem.dataset.dim
    r = np.eye(d)
    seg = problem.segment(t, r, k)
    if seg is None:
        return None
    rotations = aligned_rotations(seg.base, problem.dataset)
    cost = _segment_cost(seg, _fiber_points(problem.dataset, rotations))[1]
    return _ConstrainedRun(t=t, r=r, k=k, segment=seg, rotations=rotations, cost=cost)


def _fit_constrained(
    problem: _ConstrainedProblem, t0: float | None, config: SolverConfig
) -> PrincipalComponent:
    k0 = _lift_direction(problem, t0)
    streams = _seed_streams(config.seed + problem.order, config.restarts)
    basis, space = problem.null_space(problem.base(t0))

    def task(index: int) -> Callable[[], _ConstrainedRun | None]:
        def run() -> _ConstrainedRun | None:
            k = k0
            if index > 0:
                z = streams[index].standard_normal(space.shape[1])
                k_rand = _from_coords(space @ z, basis)
                k = k0 / max(np.linalg.norm(k0), _TINY) + config.perturbation * k_rand / max(
                    np.linalg.norm(k_rand), _TINY
                )
            start = _initial_run(problem, t0, k)
            if start is None:
                return None
            label = f"component {problem.order} restart {index + 1}"
            result = _alternate_constrained(problem, start, config, label)
            _logger.info("%s: F = %.10g", label, result.cost)
            return result

        return run

    results = _run_restarts([task(i) for i in range(config.restarts)], config.workers)
    runs = [r for r in results if r is not None]
    if not runs:
        raise NoRemainingDirectionsError(problem.order, space.shape[1])
    best = min(runs, key=lambda r: r.cost)
    if not any(r.converged for r in runs):
        _logger.warning(
            "Component %d: no restart converged; returning best iterate (F = %.6g)",
            problem.order,
            best.cost,
        )
    times, cost = _segment_cost(best.segment, _fiber_points(problem.dataset, best.rotations))
    frame = tuple(f @ best.r for f in problem.constraints)
    return PrincipalComponent(
        order=problem.order,
        segment=best.segment,
        rotations=tuple(best.rotations),
        projection_times=tuple(times),
        cost=cost,
        intersection_time=best.t,
        frame=frame,
        converged=best.converged,
        trace=tuple(best.trace),
    )


def fit_second_component(
    dataset: GaussianDataset,
    first: PrincipalComponent,
    config: SolverConfig | None = None,
) -> PrincipalComponent:
    """Geodesic crossing the first component orthogonally at a free time t*.

    Based at A₂ = (A₁ + t*X₁)R with ⟨X₂, X₁R⟩ = 0; fresh rotations are fitted.
    """
    config = config or SolverConfig()
    _require_fit_size(dataset)
    if first.order != 1 or len(first.projection_times) != dataset.size:
        raise ContractViolation("fit_second_component", "expects the first component of dataset")
    parent = first.segment
    problem = _ConstrainedProblem(
        order=2,
        dataset=dataset,
        constraints=(parent.direction,),
        anchor=parent.base,
        along=parent.direction,
        parent=parent,
        epsilon=config.epsilon,
    )
    t0 = clip_time(parent, float(np.mean(first.projection_times)))
    return _oriented(_fit_constrained(problem, t0, config), dataset)


def fit_higher_component(
    dataset: GaussianDataset,
    previous: Sequence[PrincipalComponent],
    config: SolverConfig | None = None,
) -> PrincipalComponent:
    """Component k ≥ 3 through the crossing of the first two, orthogonal to all before it."""
    config = config or SolverConfig()
    _require_fit_size(dataset)
    order = len(previous) + 1
    if order < 3:
        raise ContractViolation("fit_higher_component", "needs at least two previous components")
    last = previous[-1]
    problem = _ConstrainedProblem(
        order=order,
        dataset=dataset,
        constraints=(last.segment.direction, *last.frame),
        anchor=last.segment.base,
        along=None,
        parent=None,
        epsilon=config.epsilon,
    )
    component = _fit_constrained(problem, None, config)
    component = replace(component, intersection_time=previous[1].intersection_time)
    return _oriented(component, dataset)


def fit_components(
    dataset: GaussianDataset, k: int, config: SolverConfig | None = None
) -> list[PrincipalComponent]:
    """Fit components 1..k in order."""
    if k < 1:
        raise ContractViolation("fit_components", f"k must be ≥ 1, got {k}")
    config = config or SolverConfig()
    components = [fit_first_component(dataset, config)]
    if k >= 2:
        components.append(fit_second_component(dataset, components[0], config))
    while len(components) < k:
        components.append(fit_higher_component(dataset, components, config))
    return components


def explained_dispersion(
    dataset: GaussianDataset,
    components: Sequence[PrincipalComponent],
    barycenter: ArrayLike | None = None,
) -> DispersionReport:
    """Residual cost per component against the total dispersion about the barycenter."""
    s_bar = barycenter if barycenter is not None else bw_barycenter(dataset).matrix
    total = sum(bures_wasserstein_sq(s_bar, s) for s in dataset.matrices)
    scale = sum(float(np.trace(s)) for s in dataset.matrices)
    zero = total <= 1e-12 * max(scale, 1.0)
    entries = tuple(
        DispersionEntry(
            order=c.order,
            cost=c.cost,
            fraction=1.0 if zero else 1.0 - c.cost / total,
        )
        for c in components
    )
    return DispersionReport(entries=entries, total_dispersion=total, zero_dispersion=zero)
