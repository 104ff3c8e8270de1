"""Dataset generators for the 2×2 experiments and dataset file I/O.

File formats:

- JSON: ``{"dim": d, "matrices": [[row-major entries], ...]}``; nested d×d rows are
  accepted on load as well.
- CSV: a first line ``dim=d`` followed by one matrix per row, d² row-major entries.
"""

from __future__ import annotations

import csv
import json
import logging
import math
from pathlib import Path
from typing import Any

import numpy as np

from bures_gpca.core.errors import ContractViolation, DatasetParseError, DomainError
from bures_gpca.core.types import GaussianDataset, SpectralCoords
from bures_gpca.geometry.coords import spectral_to_spd

_logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def gen_grid(
    a_range: tuple[float, float],
    b_range: tuple[float, float],
    na: int,
    nb: int,
) -> GaussianDataset:
    """diag(a_i², b_j²) for equally spaced a_i, b_j; a varies slowest."""
    if na < 2 or nb < 2:
        raise ContractViolation("gen_grid", f"need na, nb ≥ 2, got {na}, {nb}")
    if min(*a_range, *b_range) <= 0:
        raise ContractViolation("gen_grid", "ranges must be positive")
    return GaussianDataset.from_matrices(
        [
            np.diag([a * a, b * b])
            for a in np.linspace(a_range[0], a_range[1], na)
            for b in np.linspace(b_range[0], b_range[1], nb)
        ]
    )


def gen_circle(a: float, b: float, n: int, opening: float) -> GaussianDataset:
    """Σ(a, b, θ_i) with θ_i = iπ(1 − opening)/n: a circle of constant trace and determinant."""
    if not a > b > 0:
        raise ContractViolation("gen_circle", f"need a > b > 0, got a={a}, b={b}")
    if n < 2 or n % 2:
        raise ContractViolation("gen_circle", f"n must be even and ≥ 2, got {n}")
    if not 0 <= opening < 1:
        raise ContractViolation("gen_circle", f"opening must lie in [0, 1), got {opening}")
    step = math.pi * (1.0 - opening) / n
    return GaussianDataset.from_matrices(
        [spectral_to_spd(SpectralCoords(a, b, i * step)) for i in range(n)]
    )


def gen_random_spectral(
    n: int,
    a_range: tuple[float, float] = (0.5, 2.0),
    b_range: tuple[float, float] = (0.5, 2.0),
    theta_range: tuple[float, float] = (0.0, math.pi),
    seed: int | np.random.SeedSequence = 0,
) -> GaussianDataset:
    """Σ(a, b, θ) with a, b, θ i.i.d. uniform on their ranges."""
    if n < 1:
        raise ContractViolation("gen_random_spectral", f"n must be ≥ 1, got {n}")
    if min(*a_range, *b_range) <= 0:
        raise ContractViolation("gen_random_spectral", "a and b ranges must be positive")
    rng = np.random.default_rng(seed)
    a = rng.uniform(*a_range, size=n)
    b = rng.uniform(*b_range, size=n)
    theta = rng.uniform(*theta_range, size=n)
    return GaussianDataset.from_matrices(
        [
            spectral_to_spd(SpectralCoords(float(ai), float(bi), float(ti)))
            for ai, bi, ti in zip(a, b, theta, strict=True)
        ]
    )


# ---------------------------------------------------------------------------
# I/O
# ---------------------------------------------------------------------------


def _flat_to_matrix(values: list[float], dim: int, path: str, line: int | None, field: str) -> Any:
    if len(values) != dim * dim:
        raise DatasetParseError(
            path, f"expected {dim * dim} entries, got {len(values)}", line=line, field=field
        )
    return np.asarray(values, dtype=np.float64).reshape(dim, dim)


def _parse_dim(raw: Any, path: str, line: int | None) -> int:
    try:
        dim = int(raw)
    except (TypeError, ValueError):
        raise DatasetParseError(path, f"invalid dimension {raw!r}", line=line, field="dim") from None
    if dim < 1:
        raise DatasetParseError(path, f"dimension must be ≥ 1, got {dim}", line=line, field="dim")
    return dim


def _build(matrices: list[Any], path: str, lines: list[int | None]) -> GaussianDataset:
    try:
        return GaussianDataset.from_matrices(matrices)
    except DomainError as e:
        index = e.index if e.index is not None else 0
        raise DatasetParseError(
            path, str(e), line=lines[index], field=f"matrices[{index}]"
        ) from e


def _load_json(path: Path) -> GaussianDataset:
    name = str(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise DatasetParseError(name, e.msg, line=e.lineno) from e
    if not isinstance(data, dict) or "matrices" not in data or "dim" not in data:
        raise DatasetParseError(name, 'expected an object with "dim" and "matrices"')
    dim = _parse_dim(data["dim"], name, None)
    rows = data["matrices"]
    if not isinstance(rows, list) or not rows:
        raise DatasetParseError(name, "no matrices", field="matrices")
    matrices = []
    for i, row in enumerate(rows):
        field = f"matrices[{i}]"
        try:
            arr = np.asarray(row, dtype=np.float64)
        except (TypeError, ValueError):
            raise DatasetParseError(name, "non-numeric entry", field=field) from None
        if arr.shape == (dim, dim):
            matrices.append(arr)
        else:
            matrices.append(_flat_to_matrix(arr.ravel().tolist(), dim, name, None, field))
    return _build(matrices, name, [None] * len(matrices))


def _load_csv(path: Path) -> GaussianDataset:
    name = str(path)
    with path.open(newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    if not rows or len(rows[0]) != 1 or not rows[0][0].strip().startswith("dim="):
        raise DatasetParseError(name, 'first line must be "dim=d"', line=1)
    dim = _parse_dim(rows[0][0].strip()[4:], name, 1)
    matrices = []
    lines: list[int | None] = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        values = []
        for col, cell in enumerate(row):
            try:
                values.append(float(cell))
            except ValueError:
                raise DatasetParseError(
                    name, f"non-numeric entry {cell!r}", line=lineno, field=f"column {col + 1}"
                ) from None
        matrices.append(_flat_to_matrix(values, dim, name, lineno, f"matrices[{len(matrices)}]"))
        lines.append(lineno)
    if not matrices:
        raise DatasetParseError(name, "no matrices", line=2)
    return _build(matrices, name, lines)


def load_dataset(path: str | Path) -> GaussianDataset:
    """Read a dataset from ``.json`` or ``.csv``; every matrix is validated SPD."""
    path = Path(path)
    if not path.exists():
        raise DatasetParseError(str(path), "file not found")
    if path.suffix.lower() == ".csv":
        dataset = _load_csv(path)
    else:
        dataset = _load_json(path)
    _logger.info("Loaded %d matrices of dimension %d from %s", dataset.size, dataset.dim, path)
    return dataset


def save_dataset(dataset: GaussianDataset, path: str | Path) -> None:
    """Write ``dataset`` in the format implied by the suffix (CSV for ``.csv``, JSON otherwise)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    flat = [m.ravel().tolist() for m in dataset.matrices]
    if path.suffix.lower() == ".csv":
        with path.open("w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow([f"dim={dataset.dim}"])
            writer.writerows(flat)
    else:
        payload = {"dim": dataset.dim, "matrices": flat}
        path.write_text(json.dumps(payload, indent=2), encoding="utf-8")
    _logger.info("Wrote %d matrices to %s", dataset.size, path)
