"""Seeded random generators of SPD matrices, rotations and horizontal directions."""

from __future__ import annotations

import numpy as np
import scipy.stats

from bures_gpca.core.matrices import (
    FiberRepresentative,
    Matrix,
    Rotation,
    SpdMatrix,
    TangentMatrix,
    sym,
)
from bures_gpca.core.types import GeodesicSegment
from bures_gpca.geometry.geodesic import DEFAULT_EPSILON, make_segment


def random_rotation(rng: np.random.Generator, d: int) -> Rotation:
    """Haar-distributed element of SO_d."""
    if d == 1:
        return np.ones((1, 1))
    return np.asarray(scipy.stats.special_ortho_group.rvs(d, random_state=rng))


def random_spd(rng: np.random.Generator, d: int, log_spread: float = 1.0) -> SpdMatrix:
    """Q diag(exp(u)) Qᵀ with u uniform on [−log_spread, log_spread]."""
    q = random_rotation(rng, d)
    w = np.exp(rng.uniform(-log_spread, log_spread, size=d))
    return sym(q @ np.diag(w) @ q.T)


def random_invertible(rng: np.random.Generator, d: int) -> FiberRepresentative:
    """A random fiber representative Σ^{1/2} Q with Σ = :func:`random_spd`."""
    w, v = np.linalg.eigh(random_spd(rng, d))
    return (v * np.sqrt(w)) @ v.T @ random_rotation(rng, d)


def random_symmetric(rng: np.random.Generator, d: int) -> Matrix:
    return sym(rng.standard_normal((d, d)))


def random_horizontal(rng: np.random.Generator, a: Matrix) -> TangentMatrix:
    """Unit-norm KA with K a random symmetric matrix."""
    x = random_symmetric(rng, a.shape[0]) @ a
    return x / np.linalg.norm(x)


def random_commuting_pair(
    rng: np.random.Generator, d: int
) -> tuple[SpdMatrix, SpdMatrix, np.ndarray, np.ndarray]:
    """Σ₁ = P diag(λ²) Pᵀ, Σ₂ = P diag(μ²) Pᵀ sharing the eigenbasis P; returns (Σ₁, Σ₂, λ, μ)."""
    p = random_rotation(rng, d)
    lam = rng.uniform(0.3, 3.0, size=d)
    mu = rng.uniform(0.3, 3.0, size=d)
    return (
        sym(p @ np.diag(lam**2) @ p.T),
        sym(p @ np.diag(mu**2) @ p.T),
        lam,
        mu,
    )


def random_segment(
    rng: np.random.Generator, d: int, epsilon: float = DEFAULT_EPSILON
) -> GeodesicSegment:
    a = random_invertible(rng, d)
    return make_segment(a, random_horizontal(rng, a), epsilon)
