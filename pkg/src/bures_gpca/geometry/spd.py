"""Bures-Wasserstein geometry of SPD matrices through the fiber bundle π(A) = AAᵀ.

All SPD-returning functions symmetrize their result. Square roots and inverse
square roots come from a symmetric eigendecomposition.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from bures_gpca.core.errors import ContractViolation, DomainError, NumericError
from bures_gpca.core.matrices import (
    FiberRepresentative,
    Matrix,
    Rotation,
    SkewMatrix,
    SpdMatrix,
    TangentMatrix,
    as_invertible,
    as_skew,
    as_square,
    as_symmetric,
    check_same_shape,
    nearest_rotation,
    psd_sqrt,
    spd_eigh,
    sym,
    sym_power,
)
from bures_gpca.core.types import HORIZONTAL_TOL, horizontal_residual


class HorizontalCheck(NamedTuple):
    is_horizontal: bool
    residual: float


def spd_sqrt(s: ArrayLike) -> SpdMatrix:
    """Unique SPD square root."""
    w, v = spd_eigh(s)
    return sym_power(w, v, 0.5)


def spd_inv_sqrt(s: ArrayLike) -> SpdMatrix:
    w, v = spd_eigh(s)
    return sym_power(w, v, -0.5)


def bures_wasserstein_sq(s1: ArrayLike, s2: ArrayLike) -> float:
    """Squared BW distance tr[S1 + S2 − 2(S1^{1/2} S2 S1^{1/2})^{1/2}], clamped at 0."""
    w1, v1 = spd_eigh(s1, "S1")
    spd_eigh(s2, "S2")
    a = np.asarray(s1, dtype=np.float64)
    b = np.asarray(s2, dtype=np.float64)
    r1 = sym_power(w1, v1, 0.5)
    cross = psd_sqrt(r1 @ b @ r1)
    value = float(np.trace(a) + np.trace(b) - 2.0 * np.trace(cross))
    return max(value, 0.0)


def bw_distance(s1: ArrayLike, s2: ArrayLike) -> float:
    return math.sqrt(bures_wasserstein_sq(s1, s2))


def monge_map(s1: ArrayLike, s2: ArrayLike) -> SpdMatrix:
    """Optimal transport map T from N(0, S1) to N(0, S2); satisfies T S1 T = S2."""
    w1, v1 = spd_eigh(s1, "S1")
    spd_eigh(s2, "S2")
    r1 = sym_power(w1, v1, 0.5)
    r1_inv = sym_power(w1, v1, -0.5)
    middle = psd_sqrt(r1 @ np.asarray(s2, dtype=np.float64) @ r1)
    return sym(r1_inv @ middle @ r1_inv)


def fiber_project(a: ArrayLike) -> SpdMatrix:
    """π(A) = AAᵀ."""
    arr = as_invertible(a, "fiber representative")
    return sym(arr @ arr.T)


def dpi(a: ArrayLike, x: ArrayLike) -> Matrix:
    """Differential of π at A: XAᵀ + AXᵀ."""
    arr = as_square(a, "A")
    xarr = as_square(x, "X")
    check_same_shape(arr, xarr, operation="dpi")
    return sym(xarr @ arr.T + arr @ xarr.T)


def horizontal_check(a: ArrayLike, x: ArrayLike, tol: float = HORIZONTAL_TOL) -> HorizontalCheck:
    """Whether X is orthogonal to the fiber through A, i.e. XᵀA symmetric."""
    arr = as_square(a, "A")
    xarr = as_square(x, "X")
    check_same_shape(arr, xarr, operation="horizontal_check")
    residual = horizontal_residual(arr, xarr)
    return HorizontalCheck(residual <= tol, residual)


def require_horizontal(a: Matrix, x: Matrix, operation: str) -> None:
    check = horizontal_check(a, x)
    if not check.is_horizontal:
        raise ContractViolation(operation, "direction is not horizontal", residual=check.residual)


def symmetric_multiplier(a: ArrayLike, u: ArrayLike) -> Matrix:
    """Symmetric K solving K(AAᵀ) + (AAᵀ)K = U."""
    arr = as_invertible(a, "A")
    uarr = as_symmetric(u, "U")
    check_same_shape(arr, uarr, operation="horizontal_lift")
    s = sym(arr @ arr.T)
    try:
        k = scipy.linalg.solve_sylvester(s, s, uarr)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericError(f"Sylvester solve failed: {exc}") from exc
    if not np.all(np.isfinite(k)):
        raise NumericError("Sylvester solve produced non-finite values")
    return sym(k)


def horizontal_lift(a: ArrayLike, u: ArrayLike) -> TangentMatrix:
    """The horizontal X = KA at A with dπ_A(X) = U."""
    k = symmetric_multiplier(a, u)
    return k @ np.asarray(a, dtype=np.float64)


def vertical_lift(a: ArrayLike, k: ArrayLike) -> TangentMatrix:
    """Vertical vector K(Aᵀ)⁻¹ at A for antisymmetric K."""
    arr = as_invertible(a, "A")
    karr: SkewMatrix = as_skew(k, "K")
    return karr @ np.linalg.inv(arr.T)


def align(a1: ArrayLike, s2: ArrayLike) -> FiberRepresentative:
    """Point T·A1 of the fiber over S2 closest to A1."""
    arr = as_invertible(a1, "A1")
    t = monge_map(sym(arr @ arr.T), s2)
    return t @ arr


def optimal_rotation(s1: ArrayLike, s2: ArrayLike) -> Rotation:
    """Q* = S2^{-1/2} T S1^{1/2}, the minimizer of ‖S1^{1/2} − S2^{1/2} Q‖ over SO_d."""
    w2, v2 = spd_eigh(s2, "S2")
    q = sym_power(w2, v2, -0.5) @ monge_map(s1, s2) @ spd_sqrt(s1)
    return nearest_rotation(q)


def bw_log(s_base: ArrayLike, s: ArrayLike) -> Matrix:
    """Riemannian logarithm (T − I)Σ + Σ(T − I) at Σ = ``s_base``."""
    base = as_symmetric(s_base, "Sbase")
    t = monge_map(base, s) - np.eye(base.shape[0])
    return sym(t @ base + base @ t)


def bw_exp(s_base: ArrayLike, u: ArrayLike) -> SpdMatrix:
    """Riemannian exponential: π(Σ^{1/2} + X) with X the horizontal lift of U.

    Inverse of :func:`bw_log` while Σ^{1/2} + X stays invertible along the way.
    """
    root = spd_sqrt(s_base)
    m = root + horizontal_lift(root, u)
    return sym(m @ m.T)


def bw_metric_inner(s_base: ArrayLike, u: ArrayLike, v: ArrayLike) -> float:
    """g_Σ(U, V) = ½ Σ_ij U'_ij V'_ij / (d_i + d_j) in an eigenbasis of Σ."""
    w, basis = spd_eigh(s_base, "Sbase")
    uarr = as_symmetric(u, "U")
    varr = as_symmetric(v, "V")
    check_same_shape(basis, uarr, varr, operation="bw_metric_inner")
    up = basis.T @ uarr @ basis
    vp = basis.T @ varr @ basis
    denom = w[:, None] + w[None, :]
    return 0.5 * float(np.sum(up * vp / denom))


def bw_metric_norm(s_base: ArrayLike, u: ArrayLike) -> float:
    return math.sqrt(max(bw_metric_inner(s_base, u, u), 0.0))


def commuting_geodesic(
    a1: float, b1: float, a2: float, b2: float, t: float, basis: ArrayLike | None = None
) -> SpdMatrix:
    """Geodesic between P diag(a1², b1²) Pᵀ and P diag(a2², b2²) Pᵀ at time t ∈ [0, 1].

    The square roots of the eigenvalues interpolate linearly.
    """
    if min(a1, b1, a2, b2) <= 0:
        raise DomainError("commuting_geodesic needs positive spectral parameters")
    a = (1.0 - t) * a1 + t * a2
    b = (1.0 - t) * b1 + t * b2
    p = np.eye(2) if basis is None else as_square(basis, "P")
    return sym(p @ np.diag([a * a, b * b]) @ p.T)
