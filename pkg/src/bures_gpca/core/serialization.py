"""Serialization helpers for dataclasses and matrices to JSON-compatible values."""

from __future__ import annotations

import math
from dataclasses import fields, is_dataclass
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

from bures_gpca.core.matrices import Matrix

_INFINITIES = {"inf": math.inf, "+inf": math.inf, "-inf": -math.inf}


def encode_float(value: float) -> float | str:
    """Encode a float for strict JSON: infinities become ``"inf"`` / ``"-inf"``."""
    value = float(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if math.isnan(value):
        return "nan"
    return value


def decode_float(value: float | int | str) -> float:
    if isinstance(value, str):
        key = value.strip().lower()
        if key in _INFINITIES:
            return _INFINITIES[key]
        if key == "nan":
            return math.nan
    return float(value)


def encode_matrix(m: ArrayLike) -> list[list[float]]:
    """Row-major nested lists."""
    return np.asarray(m, dtype=np.float64).tolist()


def decode_matrix(rows: Any, dim: int | None = None) -> Matrix:
    arr = np.asarray(rows, dtype=np.float64)
    if dim is not None:
        arr = arr.reshape(dim, dim)
    return arr


def serialize_dataclass(obj: Any) -> Any:
    """Convert dataclass to dict recursively, handling special types.

    Excludes private fields (prefixed with _) from serialization.
    Encodes ndarrays as nested lists and non-finite floats as strings.
    Objects that define ``to_dict`` serialize themselves.
    """
    to_dict = getattr(obj, "to_dict", None)
    if callable(to_dict) and not isinstance(obj, type):
        return to_dict()
    if is_dataclass(obj) and not isinstance(obj, type):
        result = {}
        for f in fields(obj):
            if f.name.startswith("_"):
                continue
            result[f.name] = serialize_dataclass(getattr(obj, f.name))
        return result
    elif isinstance(obj, np.ndarray):
        return serialize_dataclass(obj.tolist())
    elif isinstance(obj, (list, tuple)):
        return [serialize_dataclass(item) for item in obj]
    elif isinstance(obj, dict):
        return {k: serialize_dataclass(v) for k, v in obj.items()}
    elif isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    elif isinstance(obj, (int, np.integer)):
        return int(obj)
    elif isinstance(obj, (float, np.floating)):
        return encode_float(float(obj))
    else:
        # For strings, None, etc.
        return obj
