"""One-dimensional Gaussians: exact geodesic PCA through the quantile isometry.

N(m, σ²) has quantile function m + σ F₀⁻¹, and the Wasserstein distance between
two such Gaussians is the Euclidean distance of (m, σ). Geodesic PCA is then an
orthogonal-distance line fit in the half-plane σ > 0.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np
import scipy.integrate
import scipy.special

from bures_gpca.core.errors import ContractViolation
from bures_gpca.core.serialization import encode_float
from bures_gpca.core.types import Gaussian1D, GaussianDataset
from bures_gpca.solver.config import SolverConfig

_logger = logging.getLogger(__name__)

DEFAULT_SIGMA_FLOOR = 1e-3
AGREEMENT_TOL = 1e-6


def w2_1d(g1: Gaussian1D, g2: Gaussian1D) -> float:
    return math.hypot(g1.mean - g2.mean, g1.sigma - g2.sigma)


def quantile_l2_distance(g1: Gaussian1D, g2: Gaussian1D) -> float:
    """L²([0, 1]) distance of the quantile functions, by adaptive quadrature."""
    dm = g1.mean - g2.mean
    ds = g1.sigma - g2.sigma

    def integrand(u: float) -> float:
        return (dm + ds * float(scipy.special.ndtri(u))) ** 2

    value, _ = scipy.integrate.quad(integrand, 0.0, 1.0, limit=200, epsabs=1e-13, epsrel=1e-12)
    return math.sqrt(max(value, 0.0))


@dataclass(slots=True, frozen=True)
class Line1DFit:
    """Fitted line c + t·u in (m, σ) coordinates with the clipped projection times."""

    center: tuple[float, float]
    direction: tuple[float, float]
    t_min: float
    t_max: float
    projection_times: tuple[float, ...]
    cost: float
    degenerate: bool

    def point_at(self, t: float) -> Gaussian1D:
        t = min(max(t, self.t_min), self.t_max)
        return Gaussian1D(
            mean=self.center[0] + t * self.direction[0],
            sigma=self.center[1] + t * self.direction[1],
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "center": list(self.center),
            "direction": list(self.direction),
            "t_min": encode_float(self.t_min),
            "t_max": encode_float(self.t_max),
            "projection_times": list(self.projection_times),
            "cost": self.cost,
            "degenerate": self.degenerate,
        }


def _sigma_range(center_sigma: float, u_sigma: float, floor: float) -> tuple[float, float]:
    if u_sigma > 0:
        return (floor - center_sigma) / u_sigma, math.inf
    if u_sigma < 0:
        return -math.inf, (floor - center_sigma) / u_sigma
    return -math.inf, math.inf


def fit_1d_gpca(
    gaussians: Sequence[Gaussian1D], sigma_floor: float = DEFAULT_SIGMA_FLOOR
) -> Line1DFit:
    """Orthogonal-distance regression line of the (m_i, σ_i), clipped to σ ≥ ``sigma_floor``."""
    if len(gaussians) < 2:
        raise ContractViolation("fit_1d_gpca", "needs at least two Gaussians")
    pts = np.array([[g.mean, g.sigma] for g in gaussians])
    center = pts.mean(axis=0)
    centered = pts - center
    scatter = centered.T @ centered
    degenerate = bool(np.allclose(scatter, 0.0, atol=1e-24))
    if degenerate:
        u = np.array([0.0, 1.0])
    else:
        w, v = np.linalg.eigh(scatter)
        u = v[:, int(np.argmax(w))]
        if u[1] < 0 or (u[1] == 0 and u[0] < 0):
            u = -u
    t_min, t_max = _sigma_range(float(center[1]), float(u[1]), sigma_floor)
    times = np.clip(centered @ u, t_min, t_max)
    residuals = center + np.outer(times, u) - pts
    cost = float(np.sum(residuals * residuals))
    return Line1DFit(
        center=(float(center[0]), float(center[1])),
        direction=(float(u[0]), float(u[1])),
        t_min=t_min,
        t_max=t_max,
        projection_times=tuple(float(t) for t in times),
        cost=cost,
        degenerate=degenerate,
    )


@dataclass(slots=True, frozen=True)
class CrosscheckReport:
    """Agreement between the closed-form 1D fit and the general solver at d = 1.

    ``time_gap`` is measured after the best affine match t ↦ ±t + c of the time
    parameterizations.
    """

    oracle_cost: float
    solver_cost: float
    oracle_times: tuple[float, ...]
    solver_times: tuple[float, ...]
    cost_gap: float
    time_gap: float
    agrees: bool


def _affine_gap(reference: np.ndarray, other: np.ndarray) -> float:
    best = math.inf
    for sign in (1.0, -1.0):
        shift = float(np.mean(other - sign * reference))
        best = min(best, float(np.max(np.abs(other - sign * reference - shift))))
    return best


def crosscheck_with_solver(
    gaussians: Sequence[Gaussian1D],
    config: SolverConfig | None = None,
    tol: float = AGREEMENT_TOL,
) -> CrosscheckReport:
    """Run the general solver on the 1×1 covariances σ_i² and compare with :func:`fit_1d_gpca`."""
    from bures_gpca.solver.gpca import fit_first_component

    if any(g.mean != 0.0 for g in gaussians):
        raise ContractViolation("crosscheck_with_solver", "only centered Gaussians (m = 0)")
    config = config or SolverConfig()
    oracle = fit_1d_gpca(gaussians, sigma_floor=config.epsilon)
    dataset = GaussianDataset.from_matrices([[[g.sigma**2]] for g in gaussians])
    component = fit_first_component(dataset, config)
    oracle_times = np.asarray(oracle.projection_times)
    solver_times = np.asarray(component.projection_times)
    cost_gap = abs(oracle.cost - component.cost)
    time_gap = _affine_gap(oracle_times, solver_times)
    agrees = cost_gap <= tol and time_gap <= tol
    if not agrees:
        _logger.warning(
            "1D crosscheck mismatch: cost gap %.3e, time gap %.3e", cost_gap, time_gap
        )
    return CrosscheckReport(
        oracle_cost=oracle.cost,
        solver_cost=component.cost,
        oracle_times=tuple(float(t) for t in oracle_times),
        solver_times=tuple(float(t) for t in solver_times),
        cost_gap=cost_gap,
        time_gap=time_gap,
        agrees=agrees,
    )
