"""Experiment runners: GPCA against TPCA on generated or user datasets."""

from __future__ import annotations

import logging
import math
import time
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import Any, TypeVar

import numpy as np
import scipy.integrate
import scipy.optimize

from bures_gpca.core.types import Gaussian1D, GaussianDataset, GeodesicSegment, PrincipalComponent
from bures_gpca.experiments.config import (
    CircleConfig,
    DistortionCurveConfig,
    GridConfig,
    RandomTrialsConfig,
)
from bures_gpca.experiments.datasets import gen_circle, gen_grid, gen_random_spectral
from bures_gpca.geometry.geodesic import geodesic_eval
from bures_gpca.geometry.spd import bw_distance
from bures_gpca.reporting.report import ExperimentReport
from bures_gpca.solver.config import SolverConfig
from bures_gpca.solver.gpca import (
    evaluate_segment,
    explained_dispersion,
    fit_components,
    fit_first_component,
)
from bures_gpca.solver.tpca import bw_barycenter, fit_tpca, tpca_component_as_segment
from bures_gpca.solver.univariate import crosscheck_with_solver, fit_1d_gpca

_logger = logging.getLogger(__name__)

_T = TypeVar("_T")


def improvement_pct(tpca_cost: float, gpca_cost: float) -> float:
    """(TPCA − GPCA)/TPCA in percent; 0 when TPCA already fits exactly."""
    if tpca_cost <= 1e-15:
        return 0.0
    return 100.0 * (tpca_cost - gpca_cost) / tpca_cost


def predicted_distortion(ratio: float) -> float:
    """Average over θ ∈ [0, π) of the leading-order ratio 1 − r² cos²θ."""
    value, _ = scipy.integrate.quad(lambda th: 1.0 - ratio**2 * math.cos(th) ** 2, 0.0, math.pi)
    return value / math.pi


def distance_to_point(segment: GeodesicSegment, target: np.ndarray) -> float:
    """Smallest BW distance from the points of ``segment`` to ``target``."""
    lo, hi = segment.window(fallback=10.0)
    result = scipy.optimize.minimize_scalar(
        lambda t: bw_distance(geodesic_eval(segment, t), target),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": 1e-10},
    )
    ends = [bw_distance(geodesic_eval(segment, t), target) for t in (lo, hi)]
    return float(min(result.fun, *ends))


def _map_ordered(tasks: Sequence[Callable[[], _T]], workers: int) -> list[_T]:
    if workers <= 1 or len(tasks) <= 1:
        return [task() for task in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return [f.result() for f in [pool.submit(task) for task in tasks]]


def _first_component_costs(
    dataset: GaussianDataset, config: SolverConfig
) -> tuple[float, float, bool]:
    """TPCA and GPCA first-component costs; GPCA starts from the same TPCA geodesic."""
    bary = bw_barycenter(dataset, config.barycenter_tol, config.barycenter_max_iters)
    tpca_seg = tpca_component_as_segment(fit_tpca(dataset, 1, barycenter=bary), 0, config.epsilon)
    tpca_cost = evaluate_segment(tpca_seg, dataset, config).cost
    gpca = fit_first_component(dataset, config, init=tpca_seg)
    return tpca_cost, gpca.cost, gpca.converged


def run_comparison(
    dataset: GaussianDataset,
    config: SolverConfig | None = None,
    *,
    components: int = 2,
    experiment: str = "fit",
    extra_config: dict[str, Any] | None = None,
) -> ExperimentReport:
    """Fit TPCA and GPCA components 1..``components`` and compare their residual costs.

    Both methods are scored with the same exact cost: the TPCA geodesics are evaluated
    with optimized rotations, like the GPCA iterates.
    """
    config = config or SolverConfig()
    timings: dict[str, float] = {}
    _logger.info("Experiment %s: %d matrices, d = %d", experiment, dataset.size, dataset.dim)

    start = time.perf_counter()
    bary = bw_barycenter(dataset, config.barycenter_tol, config.barycenter_max_iters)
    tpca = fit_tpca(dataset, components, barycenter=bary)
    tpca_components: list[PrincipalComponent] = [
        evaluate_segment(
            tpca_component_as_segment(tpca, j, config.epsilon), dataset, config, order=j + 1
        )
        for j in range(components)
    ]
    timings["tpca"] = time.perf_counter() - start

    start = time.perf_counter()
    gpca_components = fit_components(dataset, components, config)
    timings["gpca"] = time.perf_counter() - start

    tpca_costs = [c.cost for c in tpca_components]
    gpca_costs = [c.cost for c in gpca_components]
    improvements = [improvement_pct(t, g) for t, g in zip(tpca_costs, gpca_costs, strict=True)]
    if improvements[0] < -1e-9:
        _logger.warning("GPCA first component costs more than TPCA (%.3e %%)", improvements[0])

    dispersion = explained_dispersion(dataset, gpca_components, bary.matrix)
    table = []
    for i in range(dataset.size):
        row: dict[str, Any] = {"index": i}
        for c in gpca_components:
            row[f"gpca_t{c.order}"] = c.projection_times[i]
        for c in tpca_components:
            row[f"tpca_t{c.order}"] = c.projection_times[i]
        table.append(row)

    first = gpca_components[0].segment
    summary: dict[str, Any] = {
        "n": dataset.size,
        "dim": dataset.dim,
        "total_dispersion": dispersion.total_dispersion,
        "explained_fraction": [e.fraction for e in dispersion.entries],
        "tpca_eigenvalues": list(tpca.eigenvalues),
        "barycenter_gradient_norm": bary.gradient_norm,
        "gpca_distance_to_barycenter": distance_to_point(first, bary.matrix),
        "orthogonality_residuals": [
            max(c.orthogonality_residuals(), default=0.0) for c in gpca_components
        ],
    }
    converged = bary.converged and all(c.converged for c in gpca_components)
    report = ExperimentReport(
        experiment=experiment,
        config={**(extra_config or {}), "solver": config.model_dump(), "components": components},
        costs={"gpca": gpca_costs, "tpca": tpca_costs},
        improvement_pct=improvements,
        components={
            "gpca": [c.to_dict() for c in gpca_components],
            "tpca": [c.to_dict() for c in tpca_components],
        },
        table=table,
        summary=summary,
        dataset=dataset.to_dict(),
        converged=converged,
        timings=timings,
    )
    _logger.info(
        "Experiment %s: GPCA %s, TPCA %s, improvement %s",
        experiment,
        ", ".join(f"{c:.6g}" for c in gpca_costs),
        ", ".join(f"{c:.6g}" for c in tpca_costs),
        ", ".join(f"{p:.3f}%" for p in improvements),
    )
    return report


def run_grid(
    grid: GridConfig | None = None,
    config: SolverConfig | None = None,
    *,
    components: int = 2,
) -> ExperimentReport:
    grid = grid or GridConfig()
    dataset = gen_grid(grid.a_range, grid.b_range, grid.na, grid.nb)
    return run_comparison(
        dataset,
        config,
        components=components,
        experiment="grid",
        extra_config={"grid": grid.model_dump()},
    )


def run_circle(
    circle: CircleConfig | None = None,
    config: SolverConfig | None = None,
    *,
    components: int = 2,
) -> ExperimentReport:
    circle = circle or CircleConfig()
    dataset = gen_circle(circle.a, circle.b, circle.n, circle.opening)
    return run_comparison(
        dataset,
        config,
        components=components,
        experiment="circle",
        extra_config={"circle": circle.model_dump(), "ratio": circle.ratio},
    )


def run_distortion_curve(
    curve: DistortionCurveConfig | None = None,
    config: SolverConfig | None = None,
) -> ExperimentReport:
    """First-component improvement per ratio (a − b)/(a + b), best of the trials per ratio."""
    curve = curve or DistortionCurveConfig()
    config = config or SolverConfig()
    start = time.perf_counter()
    jobs: list[tuple[float, int]] = [
        (ratio, trial) for ratio in curve.ratios for trial in range(curve.trials_per_ratio)
    ]

    def task(ratio: float, trial: int) -> Callable[[], tuple[float, float, bool]]:
        def run() -> tuple[float, float, bool]:
            circle = curve.circle(ratio)
            dataset = gen_circle(circle.a, circle.b, circle.n, circle.opening)
            solver = config.model_copy(update={"seed": config.seed + trial, "workers": 1})
            return _first_component_costs(dataset, solver)

        return run

    results = _map_ordered([task(r, t) for r, t in jobs], config.workers)
    table = []
    converged = True
    for ratio in curve.ratios:
        runs = [res for (r, _), res in zip(jobs, results, strict=True) if r == ratio]
        tpca_cost = runs[0][0]
        gpca_cost = min(g for _, g, _ in runs)
        converged = converged and all(ok for _, _, ok in runs)
        table.append(
            {
                "ratio": ratio,
                "tpca_cost": tpca_cost,
                "gpca_cost": gpca_cost,
                "improvement_pct": improvement_pct(tpca_cost, gpca_cost),
                "predicted_distortion": predicted_distortion(ratio),
            }
        )
        _logger.info("Ratio %.3g: improvement %.4f%%", ratio, table[-1]["improvement_pct"])
    return ExperimentReport(
        experiment="distortion-curve",
        config={"curve": curve.model_dump(), "solver": config.model_dump()},
        costs={
            "gpca": [row["gpca_cost"] for row in table],
            "tpca": [row["tpca_cost"] for row in table],
        },
        improvement_pct=[row["improvement_pct"] for row in table],
        table=table,
        converged=converged,
        timings={"total": time.perf_counter() - start},
    )


def run_random_trials(
    trials: RandomTrialsConfig | None = None,
    config: SolverConfig | None = None,
) -> ExperimentReport:
    """First-component improvement on independent uniform spectral samples."""
    trials = trials or RandomTrialsConfig()
    config = config or SolverConfig()
    start = time.perf_counter()
    seeds = np.random.SeedSequence(config.seed).spawn(trials.trials)

    def task(index: int) -> Callable[[], tuple[float, float, bool]]:
        def run() -> tuple[float, float, bool]:
            dataset = gen_random_spectral(
                trials.n, trials.a_range, trials.b_range, trials.theta_range, seeds[index]
            )
            return _first_component_costs(dataset, config.model_copy(update={"workers": 1}))

        return run

    results = _map_ordered([task(i) for i in range(trials.trials)], config.workers)
    table = [
        {
            "trial": i,
            "tpca_cost": t,
            "gpca_cost": g,
            "improvement_pct": improvement_pct(t, g),
        }
        for i, (t, g, _) in enumerate(results)
    ]
    improvements = [row["improvement_pct"] for row in table]
    return ExperimentReport(
        experiment="random-trials",
        config={"trials": trials.model_dump(), "solver": config.model_dump()},
        costs={"gpca": [g for _, g, _ in results], "tpca": [t for t, _, _ in results]},
        improvement_pct=improvements,
        table=table,
        summary={
            "mean_improvement_pct": float(np.mean(improvements)),
            "median_improvement_pct": float(np.median(improvements)),
            "max_improvement_pct": float(np.max(improvements)),
        },
        converged=all(ok for _, _, ok in results),
        timings={"total": time.perf_counter() - start},
    )


def run_oracle_1d(
    gaussians: Sequence[Gaussian1D], config: SolverConfig | None = None
) -> ExperimentReport:
    """Closed-form 1D fit, plus the solver crosscheck when every mean is zero."""
    config = config or SolverConfig()
    start = time.perf_counter()
    fit = fit_1d_gpca(gaussians, sigma_floor=config.epsilon)
    summary: dict[str, Any] = {"oracle": fit.to_dict()}
    converged = True
    costs = {"oracle": [fit.cost]}
    if all(g.mean == 0.0 for g in gaussians):
        check = crosscheck_with_solver(gaussians, config)
        summary["crosscheck"] = {
            "cost_gap": check.cost_gap,
            "time_gap": check.time_gap,
            "agrees": check.agrees,
        }
        costs["gpca"] = [check.solver_cost]
        converged = check.agrees
    table = [
        {"index": i, "mean": g.mean, "sigma": g.sigma, "t": t}
        for i, (g, t) in enumerate(zip(gaussians, fit.projection_times, strict=True))
    ]
    return ExperimentReport(
        experiment="oracle-1d",
        config={
            "gaussians": [[g.mean, g.sigma] for g in gaussians],
            "solver": config.model_dump(),
        },
        costs=costs,
        table=table,
        summary=summary,
        converged=converged,
        timings={"total": time.perf_counter() - start},
    )
