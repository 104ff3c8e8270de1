"""Domain value types shared across the geometry, solver and reporting layers."""

from __future__ import annotations

import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

from bures_gpca.core.errors import ContractViolation, DegenerateDirectionError, DomainError
from bures_gpca.core.matrices import (
    FiberRepresentative,
    Matrix,
    Rotation,
    SpdMatrix,
    TangentMatrix,
    as_invertible,
    as_square,
    spd_eigh,
    sym,
    sym_power,
)
from bures_gpca.core.serialization import (
    decode_float,
    decode_matrix,
    encode_float,
    encode_matrix,
    serialize_dataclass,
)

UNIT_NORM_TOL = 1e-10
HORIZONTAL_TOL = 1e-9


def horizontal_residual(a: Matrix, x: Matrix) -> float:
    """‖XᵀA − AᵀX‖ relative to ‖X‖‖A‖ (0 for X = 0)."""
    scale = float(np.linalg.norm(x) * np.linalg.norm(a))
    if scale == 0.0:
        return 0.0
    return float(np.linalg.norm(x.T @ a - a.T @ x)) / scale


@dataclass(slots=True, frozen=True)
class SpectralCoords:
    """Spectral parameters (a, b, θ) of Σ = P_θ diag(a², b²) P_θᵀ."""

    a: float
    b: float
    theta: float

    def __post_init__(self) -> None:
        if not (self.a > 0 and self.b > 0):
            raise DomainError(f"spectral coordinates need a, b > 0, got a={self.a}, b={self.b}")
        if not math.isfinite(self.theta):
            raise DomainError(f"theta must be finite, got {self.theta}")


@dataclass(slots=True, frozen=True)
class ConeCoords:
    """Cone coordinates (x, y, z) of [[x + y, z], [z, x − y]]."""

    x: float
    y: float
    z: float

    @property
    def is_interior(self) -> bool:
        """Whether the image is SPD: x > 0 and x² > y² + z²."""
        return self.x > 0 and self.x**2 > self.y**2 + self.z**2


@dataclass(slots=True, frozen=True)
class Gaussian1D:
    """Univariate Gaussian N(mean, sigma²)."""

    mean: float
    sigma: float

    def __post_init__(self) -> None:
        if not self.sigma > 0:
            raise DomainError(f"sigma must be positive, got {self.sigma}")


@dataclass(slots=True, frozen=True, eq=False)
class GeodesicSegment:
    """Projection of the horizontal line segment t ↦ A + tX, t ∈ [t_min, t_max].

    ``t_min``/``t_max`` may be infinite on the side where A + tX never loses rank.
    """

    base: FiberRepresentative
    direction: TangentMatrix
    t_min: float
    t_max: float
    epsilon: float

    def __post_init__(self) -> None:
        base = as_invertible(self.base, "segment base")
        direction = as_square(self.direction, "segment direction")
        if base.shape != direction.shape:
            raise ContractViolation("GeodesicSegment", "base and direction shapes differ")
        norm = float(np.linalg.norm(direction))
        if abs(norm - 1.0) > UNIT_NORM_TOL:
            raise ContractViolation("GeodesicSegment", f"direction norm is {norm:.12g}, expected 1")
        residual = horizontal_residual(base, direction)
        if residual > HORIZONTAL_TOL:
            raise ContractViolation(
                "GeodesicSegment", "direction is not horizontal at base", residual=residual
            )
        if not self.epsilon > 0:
            raise ContractViolation("GeodesicSegment", f"epsilon must be positive: {self.epsilon}")
        if not self.t_min <= self.t_max:
            raise DegenerateDirectionError(
                f"empty admissible interval [{self.t_min:.6g}, {self.t_max:.6g}]"
            )
        base.flags.writeable = False
        direction.flags.writeable = False
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "direction", direction)
        object.__setattr__(self, "t_min", float(self.t_min))
        object.__setattr__(self, "t_max", float(self.t_max))

    @property
    def dim(self) -> int:
        return int(self.base.shape[0])

    def contains(self, t: float) -> bool:
        return self.t_min <= t <= self.t_max

    def lift(self, t: float) -> FiberRepresentative:
        """A + tX (no range check)."""
        return self.base + t * self.direction

    def window(self, fallback: float = 3.0) -> tuple[float, float]:
        """Finite sub-interval for plotting and 1D searches; infinite ends become ±fallback."""
        if math.isfinite(self.t_min):
            lo = self.t_min
        else:
            lo = min(-fallback, self.t_max - fallback)
        hi = self.t_max if math.isfinite(self.t_max) else max(fallback, lo + fallback)
        return lo, hi

    def sample(self, n: int, window: tuple[float, float] | None = None) -> list[SpdMatrix]:
        """π(A + tX) at ``n`` evenly spaced times of ``window`` (default: :meth:`window`)."""
        lo, hi = window if window is not None else self.window()
        lo, hi = max(lo, self.t_min), min(hi, self.t_max)
        out = []
        for t in np.linspace(lo, hi, n):
            m = self.lift(float(t))
            out.append(sym(m @ m.T))
        return out

    def flipped(self) -> GeodesicSegment:
        """Same geodesic traversed backwards: X ↦ −X, [t_min, t_max] ↦ [−t_max, −t_min]."""
        return GeodesicSegment(
            base=self.base.copy(),
            direction=-self.direction,
            t_min=-self.t_max,
            t_max=-self.t_min,
            epsilon=self.epsilon,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "dim": self.dim,
            "A": encode_matrix(self.base),
            "X": encode_matrix(self.direction),
            "t_min": encode_float(self.t_min),
            "t_max": encode_float(self.t_max),
            "epsilon": self.epsilon,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> GeodesicSegment:
        dim = int(data["dim"])
        return cls(
            base=decode_matrix(data["A"], dim),
            direction=decode_matrix(data["X"], dim),
            t_min=decode_float(data["t_min"]),
            t_max=decode_float(data["t_max"]),
            epsilon=float(data["epsilon"]),
        )


@dataclass(slots=True, frozen=True, eq=False)
class GaussianDataset:
    """Covariance matrices Σ₁…Σ_n of a common dimension with their SPD square roots."""

    matrices: tuple[SpdMatrix, ...]
    roots: tuple[SpdMatrix, ...] = field(default=())

    def __post_init__(self) -> None:
        if len(self.matrices) == 0:
            raise ContractViolation("GaussianDataset", "dataset is empty")
        dims = {np.shape(m) for m in self.matrices}
        if len(dims) != 1:
            raise ContractViolation("GaussianDataset", f"mixed dimensions {sorted(dims)}")
        mats: list[SpdMatrix] = []
        roots: list[SpdMatrix] = []
        for i, m in enumerate(self.matrices):
            w, v = spd_eigh(m, "covariance", index=i)
            mats.append(sym(np.asarray(m, dtype=np.float64)))
            roots.append(sym_power(w, v, 0.5))
        for arr in (*mats, *roots):
            arr.flags.writeable = False
        object.__setattr__(self, "matrices", tuple(mats))
        object.__setattr__(self, "roots", tuple(roots))

    @classmethod
    def from_matrices(cls, matrices: Sequence[ArrayLike]) -> GaussianDataset:
        return cls(matrices=tuple(np.atleast_2d(np.asarray(m, dtype=np.float64)) for m in matrices))

    @property
    def dim(self) -> int:
        return int(self.matrices[0].shape[0])

    @property
    def size(self) -> int:
        return len(self.matrices)

    def __len__(self) -> int:
        return len(self.matrices)

    def __iter__(self) -> Iterator[SpdMatrix]:
        return iter(self.matrices)

    def to_dict(self) -> dict[str, Any]:
        return {"dim": self.dim, "matrices": [encode_matrix(m) for m in self.matrices]}


@dataclass(slots=True, frozen=True, eq=False)
class PrincipalComponent:
    """A fitted geodesic component with its per-datum projection data.

    ``cost`` is the residual sum over the dataset. For order ≥ 2, ``frame`` holds the
    lifted previous directions the component is orthogonal to and ``intersection_time``
    the crossing time on the previous component.
    """

    order: int
    segment: GeodesicSegment
    rotations: tuple[Rotation, ...]
    projection_times: tuple[float, ...]
    cost: float
    intersection_time: float | None = None
    frame: tuple[TangentMatrix, ...] = ()
    converged: bool = True
    trace: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ContractViolation("PrincipalComponent", f"order must be ≥ 1, got {self.order}")
        if len(self.rotations) != len(self.projection_times):
            raise ContractViolation(
                "PrincipalComponent", "rotations and projection_times lengths differ"
            )
        if self.cost < 0:
            raise ContractViolation("PrincipalComponent", f"negative cost {self.cost}")

    def orthogonality_residuals(self) -> list[float]:
        """|⟨X_k, F⟩| for every frame vector F."""
        return [abs(float(np.sum(self.segment.direction * f))) for f in self.frame]

    def to_dict(self) -> dict[str, Any]:
        data = self.segment.to_dict()
        data.update(
            {
                "order": self.order,
                "cost": self.cost,
                "projection_times": [encode_float(t) for t in self.projection_times],
                "intersection_time": (
                    None if self.intersection_time is None else encode_float(self.intersection_time)
                ),
                "converged": self.converged,
                "trace": serialize_dataclass(list(self.trace)),
            }
        )
        return data


@dataclass(slots=True, frozen=True, eq=False)
class TpcaResult:
    """Tangent PCA at the barycenter.

    ``embedded`` are the Monge-map embeddings T_i − I, ``principal_directions`` are
    orthonormal for ⟨K, K'⟩ = tr(K Σ̄ K'), and ``scores`` is the n×k matrix of
    coordinates of the centered embeddings along them.
    """

    barycenter: SpdMatrix
    embedded: tuple[Matrix, ...]
    principal_directions: tuple[Matrix, ...]
    eigenvalues: tuple[float, ...]
    scores: Matrix
    mean_embedding: Matrix
    barycenter_converged: bool = True

    @property
    def k(self) -> int:
        return len(self.principal_directions)

    def to_dict(self) -> dict[str, Any]:
        return {
            "barycenter": encode_matrix(self.barycenter),
            "eigenvalues": [float(v) for v in self.eigenvalues],
            "principal_directions": [encode_matrix(k) for k in self.principal_directions],
            "scores": encode_matrix(self.scores) if self.scores.size else [],
            "barycenter_converged": self.barycenter_converged,
        }
