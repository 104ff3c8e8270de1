"""Geodesic segments of SPD matrices as projections of horizontal lines A + tX."""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike

from bures_gpca.core.errors import DegenerateDirectionError, TimeRangeError
from bures_gpca.core.matrices import (
    FiberRepresentative,
    Rotation,
    SpdMatrix,
    TangentMatrix,
    as_invertible,
    as_square,
    check_same_shape,
    sym,
)
from bures_gpca.core.types import GeodesicSegment
from bures_gpca.geometry.spd import align, require_horizontal, spd_sqrt

DEFAULT_EPSILON = 1e-3
ZERO_EIGENVALUE_TOL = 1e-12


class EndpointSegment(NamedTuple):
    segment: GeodesicSegment
    t_start: float
    t_end: float


def admissible_interval(
    a: ArrayLike, x: ArrayLike, epsilon: float = DEFAULT_EPSILON
) -> tuple[float, float]:
    """Times t for which A + tX stays invertible, shrunk by ``epsilon`` at finite ends.

    XA⁻¹ is symmetric for horizontal X, so its spectrum is real; with λ_min, λ_max its
    extreme eigenvalues the line loses rank at t = −1/λ.
    """
    arr = as_invertible(a, "A")
    xarr = as_square(x, "X")
    check_same_shape(arr, xarr, operation="admissible_interval")
    require_horizontal(arr, xarr, "admissible_interval")
    m = sym(xarr @ np.linalg.inv(arr))
    lam = np.linalg.eigvalsh(m)
    positive = lam[lam > ZERO_EIGENVALUE_TOL]
    negative = lam[lam < -ZERO_EIGENVALUE_TOL]
    if positive.size == 0 and negative.size == 0:
        raise DegenerateDirectionError("direction is zero; no geodesic is defined")
    t_min = -1.0 / float(positive.max()) + epsilon if positive.size else -math.inf
    t_max = -1.0 / float(negative.min()) - epsilon if negative.size else math.inf
    if t_min > t_max:
        raise DegenerateDirectionError(
            f"margin epsilon={epsilon} leaves an empty interval [{t_min:.6g}, {t_max:.6g}]"
        )
    return t_min, t_max


def make_segment(
    a: ArrayLike,
    x: ArrayLike,
    epsilon: float = DEFAULT_EPSILON,
    *,
    normalize: bool = False,
) -> GeodesicSegment:
    """Build a segment from a base and a horizontal direction, computing its interval."""
    arr = as_invertible(a, "A")
    xarr = as_square(x, "X")
    if normalize:
        norm = float(np.linalg.norm(xarr))
        if norm == 0.0:
            raise DegenerateDirectionError("direction is zero; no geodesic is defined")
        xarr = xarr / norm
    t_min, t_max = admissible_interval(arr, xarr, epsilon)
    return GeodesicSegment(base=arr, direction=xarr, t_min=t_min, t_max=t_max, epsilon=epsilon)


def clip_time(seg: GeodesicSegment, t: float) -> float:
    return min(max(float(t), seg.t_min), seg.t_max)


def geodesic_eval(seg: GeodesicSegment, t: float) -> SpdMatrix:
    """Σ(t) = (A + tX)(A + tX)ᵀ."""
    if not seg.contains(t):
        raise TimeRangeError(t, seg.t_min, seg.t_max)
    m = seg.lift(t)
    return sym(m @ m.T)


def projection_time(seg: GeodesicSegment, b: ArrayLike) -> float:
    """Unclipped parameter of the orthogonal projection of B onto the line A + tX."""
    barr = np.asarray(b, dtype=np.float64)
    x = seg.direction
    return float(np.sum((barr - seg.base) * x)) / float(np.sum(x * x))


def lifted_residual(seg: GeodesicSegment, b: FiberRepresentative) -> tuple[float, float]:
    """(clipped projection time, ‖A + p(t)X − B‖²) for a fiber point B."""
    t = clip_time(seg, projection_time(seg, b))
    diff = seg.lift(t) - b
    return t, float(np.sum(diff * diff))


def residual(seg: GeodesicSegment, s: ArrayLike, q: Rotation) -> float:
    """Squared distance from S^{1/2}Q to its clipped projection on the lifted segment."""
    b = spd_sqrt(s) @ np.asarray(q, dtype=np.float64)
    return lifted_residual(seg, b)[1]


def segment_from_endpoints(
    s1: ArrayLike, s2: ArrayLike, epsilon: float = DEFAULT_EPSILON
) -> EndpointSegment:
    """Segment through S1 (at t = 0) and S2 (at t = BW₂(S1, S2)).

    Based at A = S1^{1/2}, directed along the aligned difference (T − I)A.
    """
    base = spd_sqrt(s1)
    delta: TangentMatrix = align(base, s2) - base
    length = float(np.linalg.norm(delta))
    if length <= ZERO_EIGENVALUE_TOL * (1.0 + float(np.linalg.norm(base))):
        raise DegenerateDirectionError("endpoints coincide; no direction is defined")
    seg = make_segment(base, delta / length, epsilon)
    return EndpointSegment(seg, 0.0, length)
