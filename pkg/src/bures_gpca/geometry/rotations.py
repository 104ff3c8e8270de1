"""First-order optimization on the special orthogonal group SO_d.

Tangent vectors at Q are written QV with V antisymmetric; the exponential map is
Q ↦ Q expm(V).
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from bures_gpca.core.errors import ContractViolation, NumericError
from bures_gpca.core.matrices import (
    Matrix,
    Rotation,
    SkewMatrix,
    as_rotation,
    as_skew,
    as_square,
    check_same_shape,
    nearest_rotation,
    skew,
)

if TYPE_CHECKING:
    from bures_gpca.solver.config import DescentConfig

_logger = logging.getLogger(__name__)

FD_STEP = 1e-6

Objective = Callable[[Rotation], float]
EuclideanGradient = Callable[[Rotation], Matrix]


@dataclass(slots=True, frozen=True)
class DescentResult:
    """Outcome of :func:`rotation_descent`.

    ``trace`` holds the objective value at every accepted iterate, starting with Q0.
    ``stalled`` is set when the line search could not find a decreasing step.
    """

    rotation: Rotation
    value: float
    iterations: int
    converged: bool
    stalled: bool
    gradient_norm: float
    trace: tuple[float, ...]


def so_exp(q: ArrayLike, v: ArrayLike) -> Rotation:
    """Q · expm(V) for antisymmetric V."""
    qarr = as_square(q, "Q")
    varr = as_skew(v, "V")
    check_same_shape(qarr, varr, operation="so_exp")
    d = qarr.shape[0]
    if d == 1:
        return qarr.copy()
    if d == 2:
        theta = float(varr[1, 0])
        c, s = math.cos(theta), math.sin(theta)
        return qarr @ np.array([[c, -s], [s, c]])
    return qarr @ scipy.linalg.expm(varr)


def skew_basis(d: int) -> list[SkewMatrix]:
    """Frobenius-orthonormal basis of the antisymmetric d×d matrices."""
    basis: list[SkewMatrix] = []
    for i in range(d):
        for j in range(i + 1, d):
            e = np.zeros((d, d))
            e[i, j] = -1.0 / math.sqrt(2.0)
            e[j, i] = 1.0 / math.sqrt(2.0)
            basis.append(e)
    return basis


def riemannian_grad(
    objective: Objective,
    q: ArrayLike,
    euclidean_grad: EuclideanGradient | None = None,
) -> SkewMatrix:
    """Skew V with QV the Riemannian gradient of ``objective`` at Q.

    Uses skew(QᵀG) when the Euclidean gradient G is available, central finite
    differences along an orthonormal skew basis otherwise.
    """
    qarr = as_square(q, "Q")
    if euclidean_grad is not None:
        return skew(qarr.T @ euclidean_grad(qarr))
    d = qarr.shape[0]
    v = np.zeros((d, d))
    for e in skew_basis(d):
        forward = objective(so_exp(qarr, FD_STEP * e))
        backward = objective(so_exp(qarr, -FD_STEP * e))
        v += (forward - backward) / (2.0 * FD_STEP) * e
    return v


def rotation_descent(
    objective: Objective,
    q0: ArrayLike,
    config: DescentConfig | None = None,
    *,
    euclidean_grad: EuclideanGradient | None = None,
) -> DescentResult:
    """Riemannian gradient descent with Armijo backtracking along :func:`so_exp`.

    The objective sequence is non-increasing; on line-search failure the best
    iterate is returned with ``stalled`` set.
    """
    if config is None:
        from bures_gpca.solver.config import DescentConfig

        config = DescentConfig()

    q = as_rotation(q0, "Q0")
    value = float(objective(q))
    trace = [value]
    grad_norm = math.inf
    stalled = False
    iterations = 0

    for iterations in range(config.max_iters + 1):
        v = riemannian_grad(objective, q, euclidean_grad)
        grad_norm = float(np.linalg.norm(v))
        if grad_norm < config.tol or iterations == config.max_iters:
            break
        step = config.initial_step
        sq = grad_norm * grad_norm
        for _ in range(config.max_halvings):
            candidate = nearest_rotation(so_exp(q, -step * v))
            cand_value = float(objective(candidate))
            if cand_value <= value - config.sufficient_decrease * step * sq:
                break
            step *= config.backtrack
        else:
            stalled = True
            break
        q, value = candidate, cand_value
        trace.append(value)

    converged = grad_norm < config.tol
    if stalled:
        log = _logger.warning if grad_norm > math.sqrt(config.tol) else _logger.debug
        log(
            "Rotation descent stalled after %d iterations (value %.6g, gradient %.3e)",
            iterations,
            value,
            grad_norm,
        )
    return DescentResult(
        rotation=q,
        value=value,
        iterations=iterations,
        converged=converged,
        stalled=stalled,
        gradient_norm=grad_norm,
        trace=tuple(trace),
    )


@dataclass(slots=True, frozen=True, eq=False)
class FiberDistanceObjective:
    """f(Q) = ‖M − CQ‖² with Euclidean gradient −2Cᵀ(M − CQ)."""

    target: Matrix
    factor: Matrix

    def __call__(self, q: Rotation) -> float:
        r = self.target - self.factor @ q
        return float(np.sum(r * r))

    def gradient(self, q: Rotation) -> Matrix:
        return -2.0 * self.factor.T @ (self.target - self.factor @ q)


def procrustes_init(m: ArrayLike, c: ArrayLike) -> Rotation:
    """argmin over SO_d of ‖M − CQ‖ from the SVD of CᵀM with determinant correction."""
    marr = as_square(m, "M")
    carr = as_square(c, "C")
    check_same_shape(marr, carr, operation="procrustes_init")
    s = np.linalg.svd(carr, compute_uv=False)
    if s[0] == 0.0 or s[-1] <= 1e-12 * s[0]:
        raise NumericError("procrustes_init: C is rank deficient")
    return nearest_rotation(carr.T @ marr)


def rotation_angle(q: ArrayLike) -> float:
    """Angle θ ∈ (−π, π] with Q = P_θ (d = 2 only)."""
    qarr = as_rotation(q)
    if qarr.shape != (2, 2):
        raise ContractViolation("rotation_angle", "defined for 2×2 rotations only")
    return math.atan2(qarr[1, 0], qarr[0, 0])
