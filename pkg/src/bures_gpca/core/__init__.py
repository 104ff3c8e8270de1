"""Core module - errors, matrix validation and value types."""

from bures_gpca.core.errors import (
    ContractViolation,
    DatasetParseError,
    DegenerateDirectionError,
    DomainError,
    GpcaError,
    NoRemainingDirectionsError,
    NumericError,
    TimeRangeError,
    UnsupportedDimensionError,
)
from bures_gpca.core.matrices import (
    FiberRepresentative,
    Matrix,
    Rotation,
    SkewMatrix,
    SpdMatrix,
    TangentMatrix,
    as_invertible,
    as_rotation,
    as_skew,
    as_spd,
)
from bures_gpca.core.types import (
    ConeCoords,
    Gaussian1D,
    GaussianDataset,
    GeodesicSegment,
    PrincipalComponent,
    SpectralCoords,
    TpcaResult,
)

__all__ = [
    "ConeCoords",
    "ContractViolation",
    "DatasetParseError",
    "DegenerateDirectionError",
    "DomainError",
    "FiberRepresentative",
    "Gaussian1D",
    "GaussianDataset",
    "GeodesicSegment",
    "GpcaError",
    "Matrix",
    "NoRemainingDirectionsError",
    "NumericError",
    "PrincipalComponent",
    "Rotation",
    "SkewMatrix",
    "SpdMatrix",
    "SpectralCoords",
    "TangentMatrix",
    "TimeRangeError",
    "TpcaResult",
    "UnsupportedDimensionError",
    "as_invertible",
    "as_rotation",
    "as_skew",
    "as_spd",
]
