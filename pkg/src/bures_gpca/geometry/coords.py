"""Spectral and cone coordinate systems for 2×2 SPD matrices."""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import ArrayLike

from bures_gpca.core.errors import DomainError, UnsupportedDimensionError
from bures_gpca.core.matrices import Matrix, SpdMatrix, as_spd, sym
from bures_gpca.core.types import ConeCoords, SpectralCoords

_ISOTROPIC_TOL = 1e-12


def planar_rotation(theta: float) -> Matrix:
    """P_θ = [[cos θ, −sin θ], [sin θ, cos θ]]."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def spectral_to_spd(c: SpectralCoords) -> SpdMatrix:
    p = planar_rotation(c.theta)
    return sym(p @ np.diag([c.a * c.a, c.b * c.b]) @ p.T)


def spd_to_spectral(s: ArrayLike) -> SpectralCoords:
    """Canonical spectral coordinates: a ≥ b and θ ∈ [0, π) (θ = 0 when a = b)."""
    arr = np.asarray(s, dtype=np.float64)
    if arr.shape != (2, 2):
        raise UnsupportedDimensionError("spd_to_spectral", int(arr.shape[0]) if arr.ndim else 1)
    arr = as_spd(arr)
    w, v = np.linalg.eigh(arr)
    b, a = math.sqrt(w[0]), math.sqrt(w[1])
    if w[1] - w[0] <= _ISOTROPIC_TOL * w[1]:
        return SpectralCoords(a=a, b=b, theta=0.0)
    theta = math.atan2(v[1, 1], v[0, 1]) % math.pi
    # fold the rounding edge back into [0, π)
    if theta >= math.pi:
        theta = 0.0
    return SpectralCoords(a=a, b=b, theta=theta)


def cone_to_spd(c: ConeCoords) -> SpdMatrix:
    if not c.is_interior:
        raise DomainError(f"cone point ({c.x}, {c.y}, {c.z}) is outside the SPD cone")
    return np.array([[c.x + c.y, c.z], [c.z, c.x - c.y]])


def spd_to_cone(s: ArrayLike) -> ConeCoords:
    arr = np.asarray(s, dtype=np.float64)
    if arr.shape != (2, 2):
        raise UnsupportedDimensionError("spd_to_cone", int(arr.shape[0]) if arr.ndim else 1)
    arr = as_spd(arr)
    return ConeCoords(
        x=0.5 * (arr[0, 0] + arr[1, 1]),
        y=0.5 * (arr[0, 0] - arr[1, 1]),
        z=float(arr[0, 1]),
    )


def spectral_to_cone(c: SpectralCoords) -> ConeCoords:
    half = 0.5 * (c.a * c.a - c.b * c.b)
    return ConeCoords(
        x=0.5 * (c.a * c.a + c.b * c.b),
        y=half * math.cos(2.0 * c.theta),
        z=half * math.sin(2.0 * c.theta),
    )
