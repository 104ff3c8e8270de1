"""Tangent PCA at the Bures-Wasserstein barycenter, and the linearization analysis tools.

Data are embedded as T_i − I where T_i is the Monge map from the barycenter Σ̄ to Σ_i;
the tangent space carries the weighted inner product ⟨K, K'⟩ = tr(K Σ̄ K').
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike

from bures_gpca.core.errors import ContractViolation, DomainError
from bures_gpca.core.matrices import (
    Matrix,
    SpdMatrix,
    as_symmetric,
    psd_sqrt,
    spd_eigh,
    sym,
    sym_power,
    symmetric_basis,
)
from bures_gpca.core.types import GaussianDataset, GeodesicSegment, TpcaResult
from bures_gpca.geometry.coords import planar_rotation
from bures_gpca.geometry.geodesic import DEFAULT_EPSILON, make_segment
from bures_gpca.geometry.spd import (
    bures_wasserstein_sq,
    bw_log,
    monge_map,
    spd_sqrt,
    symmetric_multiplier,
)

_logger = logging.getLogger(__name__)

_ISOTROPY_TOL = 1e-9


@dataclass(slots=True, frozen=True, eq=False)
class BarycenterResult:
    """Fixed-point barycenter with its first-order optimality residual."""

    matrix: SpdMatrix
    iterations: int
    converged: bool
    gradient_norm: float


class DistortionRatio(NamedTuple):
    exact: float
    approx: float


def _as_matrices(data: GaussianDataset | Sequence[ArrayLike]) -> GaussianDataset:
    if isinstance(data, GaussianDataset):
        return data
    return GaussianDataset.from_matrices(data)


def barycenter_gradient_norm(barycenter: ArrayLike, dataset: GaussianDataset) -> float:
    """‖(1/n) Σ_i Log_Σ̄(Σ_i)‖_F, zero at the barycenter."""
    total = sum(bw_log(barycenter, s) for s in dataset.matrices)
    return float(np.linalg.norm(total)) / dataset.size


def bw_barycenter(
    data: GaussianDataset | Sequence[ArrayLike],
    tol: float = 1e-12,
    max_iters: int = 1000,
) -> BarycenterResult:
    """Bures-Wasserstein barycenter by the fixed-point iteration

    Σ ← Σ^{-1/2} ((1/n) Σ_i (Σ^{1/2} Σ_i Σ^{1/2})^{1/2})² Σ^{-1/2},

    started from the isotropic matrix with the average trace.
    """
    dataset = _as_matrices(data)
    d = dataset.dim
    mean_trace = float(np.mean([np.trace(s) for s in dataset.matrices]))
    sigma = (mean_trace / d) * np.eye(d)
    converged = False
    iterations = 0

    for iterations in range(1, max_iters + 1):
        w, v = spd_eigh(sigma, "barycenter iterate")
        root = sym_power(w, v, 0.5)
        inv_root = sym_power(w, v, -0.5)
        avg = sum(psd_sqrt(root @ s @ root) for s in dataset.matrices) / dataset.size
        new = sym(inv_root @ avg @ avg @ inv_root)
        step = float(np.linalg.norm(new - sigma))
        sigma = new
        if step < tol * max(1.0, float(np.linalg.norm(sigma))):
            converged = True
            break

    grad = barycenter_gradient_norm(sigma, dataset)
    _logger.debug("Barycenter: %d iterations, gradient norm %.3e", iterations, grad)
    if not converged:
        _logger.warning(
            "Barycenter iteration did not converge in %d iterations (gradient norm %.3e)",
            max_iters,
            grad,
        )
    return BarycenterResult(
        matrix=sigma, iterations=iterations, converged=converged, gradient_norm=grad
    )


def weighted_inner(s_bar: Matrix, k1: Matrix, k2: Matrix) -> float:
    """tr(K1 Σ̄ K2ᵀ)."""
    return float(np.trace(k1 @ s_bar @ k2.T))


def linearized_bw(s_bar: ArrayLike, s1: ArrayLike, s2: ArrayLike) -> float:
    """‖T1 − T2‖_Σ̄ with T_i the Monge maps from Σ̄."""
    base = as_symmetric(s_bar, "Sbar")
    diff = monge_map(base, s1) - monge_map(base, s2)
    return math.sqrt(max(weighted_inner(base, diff, diff), 0.0))


def weighted_symmetric_basis(s_bar: Matrix) -> list[Matrix]:
    """Gram-Schmidt of the canonical symmetric basis under tr(K Σ̄ K')."""
    basis: list[Matrix] = []
    for e in symmetric_basis(s_bar.shape[0]):
        k = e.copy()
        for b in basis:
            k = k - weighted_inner(s_bar, k, b) * b
        norm = math.sqrt(weighted_inner(s_bar, k, k))
        basis.append(k / norm)
    return basis


def fit_tpca(
    data: GaussianDataset | Sequence[ArrayLike],
    k: int | None = None,
    *,
    barycenter: BarycenterResult | None = None,
) -> TpcaResult:
    """Euclidean PCA of the centered embeddings T_i − I under ⟨·,·⟩_Σ̄.

    ``k`` defaults to the full d(d+1)/2 directions.
    """
    dataset = _as_matrices(data)
    d = dataset.dim
    m = d * (d + 1) // 2
    k = m if k is None else k
    if not 1 <= k <= m:
        raise ContractViolation("fit_tpca", f"k must lie in [1, {m}] for d = {d}, got {k}")
    bary = barycenter if barycenter is not None else bw_barycenter(dataset)
    s_bar = bary.matrix
    eye = np.eye(d)
    embedded = tuple(monge_map(s_bar, s) - eye for s in dataset.matrices)

    basis = weighted_symmetric_basis(s_bar)
    coords = np.array([[weighted_inner(s_bar, e, b) for b in basis] for e in embedded])
    mean = coords.mean(axis=0)
    centered = coords - mean
    cov = centered.T @ centered / dataset.size
    w, v = np.linalg.eigh(sym(cov))
    order = np.argsort(w)[::-1]
    w = np.clip(w[order], 0.0, None)
    v = v[:, order]

    directions = tuple(sym(sum(c * b for c, b in zip(v[:, j], basis, strict=True))) for j in range(k))
    mean_embedding = sym(sum(c * b for c, b in zip(mean, basis, strict=True)))
    return TpcaResult(
        barycenter=s_bar,
        embedded=embedded,
        principal_directions=directions,
        eigenvalues=tuple(float(x) for x in w[:k]),
        scores=centered @ v[:, :k],
        mean_embedding=mean_embedding,
        barycenter_converged=bary.converged,
    )


def tpca_component_as_segment(
    result: TpcaResult, j: int = 0, epsilon: float = DEFAULT_EPSILON
) -> GeodesicSegment:
    """Geodesic through Σ̄ along TPCA direction ``j``: A = Σ̄^{1/2}, X = K_j A."""
    if not 0 <= j < result.k:
        raise ContractViolation("tpca_component_as_segment", f"index {j} outside [0, {result.k})")
    base = spd_sqrt(result.barycenter)
    return make_segment(base, result.principal_directions[j] @ base, epsilon, normalize=True)


def _circle_pair(a: float, b: float, theta: float) -> tuple[Matrix, Matrix, Matrix]:
    if not (a > 0 and b > 0):
        raise DomainError(f"a and b must be positive, got a={a}, b={b}")
    sigma = np.diag([a * a, b * b])
    p = planar_rotation(theta)
    rotated = sym(p @ sigma @ p.T)
    s_bar = ((a + b) / 2.0) ** 2 * np.eye(2)
    return sigma, rotated, s_bar


def distortion_ratio(a: float, b: float, theta: float) -> DistortionRatio:
    """BW₂²/linearized² for Σ = diag(a², b²) and its rotation by θ, linearized at
    Σ̄ = ((a + b)/2)² I, against the leading terms 1 − ((a − b)/(a + b))² cos²θ.
    """
    if a == b:
        raise DomainError("distortion_ratio is undefined for a == b (all matrices coincide)")
    sigma, rotated, s_bar = _circle_pair(a, b, theta)
    lin_sq = linearized_bw(s_bar, sigma, rotated) ** 2
    if lin_sq <= 1e-15 * (a * a + b * b):
        raise DomainError(f"theta={theta:.6g} gives a zero linearized distance")
    exact = bures_wasserstein_sq(sigma, rotated) / lin_sq
    approx = 1.0 - ((a - b) / (a + b)) ** 2 * math.cos(theta) ** 2
    return DistortionRatio(exact, approx)


def bw_sectional_term(s_base: ArrayLike, u: ArrayLike, v: ArrayLike) -> float:
    """Curvature term R(U, V, U, V) at an isotropic base point Σ = c²I.

    With U₀, V₀ solving Σ U₀ + U₀ Σ = U (resp. V) and d_i the eigenvalues of Σ,
    R = (3/2) Σ_ij d_i d_j / (d_i + d_j) [U₀, V₀]_ij².
    """
    w, basis = spd_eigh(s_base, "Sbase")
    if w[-1] - w[0] > _ISOTROPY_TOL * w[-1]:
        raise DomainError("bw_sectional_term is only available at isotropic base points")
    root = sym_power(w, basis, 0.5)
    u0 = symmetric_multiplier(root, u)
    v0 = symmetric_multiplier(root, v)
    bracket = basis.T @ (u0 @ v0 - v0 @ u0) @ basis
    weights = np.outer(w, w) / (w[:, None] + w[None, :])
    return 1.5 * float(np.sum(weights * bracket * bracket))


def curvature_value(a: float, b: float, theta: float) -> float:
    """R_Σ̄(U, U', U, U') for the logs U, U' of diag(a², b²) and its rotation by θ.

    Equals (3/2)(a − b)⁴/(a + b)² sin²(2θ).
    """
    sigma, rotated, s_bar = _circle_pair(a, b, theta)
    return bw_sectional_term(s_bar, bw_log(s_bar, sigma), bw_log(s_bar, rotated))
