"""Matrix validation and eigendecomposition primitives.

Matrices are plain ``numpy`` arrays. The aliases below only document intent;
operations validate their inputs on entry with the ``as_*`` helpers, which
return a float64 copy (symmetrized where the type is symmetric).
"""

from __future__ import annotations

from typing import TypeAlias

import numpy as np
from numpy.typing import ArrayLike, NDArray

from bures_gpca.core.errors import ContractViolation, DomainError

Matrix: TypeAlias = NDArray[np.float64]
#: Symmetric positive definite matrix (a centered Gaussian covariance).
SpdMatrix: TypeAlias = Matrix
#: Invertible matrix A with A Aᵀ = Σ, a point of the fiber over Σ.
FiberRepresentative: TypeAlias = Matrix
#: Special orthogonal matrix.
Rotation: TypeAlias = Matrix
#: Tangent vector of GL_d (any d×d matrix); horizontal ones are K A with K symmetric.
TangentMatrix: TypeAlias = Matrix
#: Antisymmetric matrix (Lie algebra of SO_d).
SkewMatrix: TypeAlias = Matrix

SYMMETRY_TOL = 1e-10
SPD_TOL = 1e-12
INVERTIBLE_TOL = 1e-12
ROTATION_TOL = 1e-10
SKEW_TOL = 1e-12


def sym(m: ArrayLike) -> Matrix:
    """Symmetric part (M + Mᵀ)/2."""
    arr = np.asarray(m, dtype=np.float64)
    return 0.5 * (arr + arr.T)


def skew(m: ArrayLike) -> Matrix:
    """Antisymmetric part (M - Mᵀ)/2."""
    arr = np.asarray(m, dtype=np.float64)
    return 0.5 * (arr - arr.T)


def as_square(m: ArrayLike, name: str = "matrix") -> Matrix:
    arr = np.array(m, dtype=np.float64)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ContractViolation(name, f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} has non-finite entries")
    return arr


def check_same_shape(*mats: Matrix, operation: str) -> None:
    shapes = {m.shape for m in mats}
    if len(shapes) != 1:
        raise ContractViolation(operation, f"shape mismatch {sorted(shapes)}")


def is_symmetric(m: Matrix, tol: float = SYMMETRY_TOL) -> bool:
    return bool(np.max(np.abs(m - m.T)) <= tol * (1.0 + np.max(np.abs(m))))


def as_symmetric(m: ArrayLike, name: str = "matrix") -> Matrix:
    arr = as_square(m, name)
    if not is_symmetric(arr):
        raise DomainError(f"{name} is not symmetric")
    return sym(arr)


def spd_eigh(
    m: ArrayLike,
    name: str = "matrix",
    *,
    index: int | None = None,
    tol: float = SPD_TOL,
) -> tuple[NDArray[np.float64], Matrix]:
    """Validate an SPD matrix and return its eigendecomposition (ascending eigenvalues).

    Admission requires the smallest eigenvalue to exceed ``tol`` times the largest.
    """
    arr = as_square(m, name)
    if not is_symmetric(arr):
        raise DomainError(f"{name} is not symmetric", index=index)
    w, v = np.linalg.eigh(sym(arr))
    largest = float(w[-1])
    if largest <= 0.0 or float(w[0]) <= tol * largest:
        raise DomainError(f"{name} is not positive definite", eigenvalue=float(w[0]), index=index)
    return w, v


def as_spd(m: ArrayLike, name: str = "matrix", *, index: int | None = None) -> SpdMatrix:
    spd_eigh(m, name, index=index)
    return sym(as_square(m, name))


def sym_power(w: NDArray[np.float64], v: Matrix, p: float) -> Matrix:
    """V diag(w^p) Vᵀ from an eigendecomposition, symmetrized."""
    return sym((v * w**p) @ v.T)


def spd_power(m: ArrayLike, p: float, name: str = "matrix") -> SpdMatrix:
    w, v = spd_eigh(m, name)
    return sym_power(w, v, p)


def psd_sqrt(m: ArrayLike) -> Matrix:
    """Square root of a symmetric positive semidefinite matrix, clamping roundoff negatives."""
    w, v = np.linalg.eigh(sym(m))
    return sym_power(np.clip(w, 0.0, None), v, 0.5)


def as_invertible(
    m: ArrayLike,
    name: str = "matrix",
    *,
    tol: float = INVERTIBLE_TOL,
) -> FiberRepresentative:
    arr = as_square(m, name)
    s = np.linalg.svd(arr, compute_uv=False)
    if s[0] == 0.0 or s[-1] <= tol * s[0]:
        raise DomainError(f"{name} is singular", eigenvalue=float(s[-1]))
    return arr


def as_rotation(m: ArrayLike, name: str = "rotation", *, tol: float = ROTATION_TOL) -> Rotation:
    arr = as_square(m, name)
    d = arr.shape[0]
    if np.linalg.norm(arr.T @ arr - np.eye(d)) > tol:
        raise DomainError(f"{name} is not orthogonal")
    if abs(np.linalg.det(arr) - 1.0) > tol:
        raise DomainError(f"{name} has determinant {np.linalg.det(arr):.6g}, expected +1")
    return arr


def as_skew(m: ArrayLike, name: str = "skew", *, tol: float = SKEW_TOL) -> SkewMatrix:
    arr = as_square(m, name)
    if np.max(np.abs(arr + arr.T)) > tol * (1.0 + np.max(np.abs(arr))):
        raise ContractViolation(name, "matrix is not antisymmetric")
    return skew(arr)


def nearest_rotation(m: ArrayLike) -> Rotation:
    """Closest special orthogonal matrix in Frobenius norm (polar factor with det fix)."""
    u, _, vt = np.linalg.svd(np.asarray(m, dtype=np.float64))
    d = np.ones(u.shape[0])
    d[-1] = np.sign(np.linalg.det(u @ vt)) or 1.0
    return (u * d) @ vt


def frobenius_inner(x: ArrayLike, y: ArrayLike) -> float:
    return float(np.sum(np.asarray(x) * np.asarray(y)))


def symmetric_basis(d: int) -> list[Matrix]:
    """Frobenius-orthonormal basis of the d(d+1)/2-dimensional space of symmetric matrices."""
    basis: list[Matrix] = []
    for i in range(d):
        for j in range(i, d):
            e = np.zeros((d, d))
            if i == j:
                e[i, i] = 1.0
            else:
                e[i, j] = e[j, i] = 1.0 / np.sqrt(2.0)
            basis.append(e)
    return basis
