"""Custom exceptions for bures-gpca."""

from __future__ import annotations


class GpcaError(Exception):
    """Base exception for bures-gpca errors."""


class DomainError(GpcaError, ValueError):
    """Input outside the mathematical domain of an operation (non-SPD, singular, ...)."""

    def __init__(
        self,
        message: str,
        *,
        eigenvalue: float | None = None,
        index: int | None = None,
    ) -> None:
        self.eigenvalue = eigenvalue
        self.index = index
        prefix = f"matrix {index}: " if index is not None else ""
        suffix = f" (offending eigenvalue {eigenvalue:.6g})" if eigenvalue is not None else ""
        super().__init__(f"{prefix}{message}{suffix}")


class UnsupportedDimensionError(DomainError):
    """Operation only defined for a specific matrix dimension."""

    def __init__(self, operation: str, dim: int, expected: int = 2) -> None:
        self.operation = operation
        self.dim = dim
        self.expected = expected
        super().__init__(f"{operation} requires d = {expected}, got d = {dim}")


class ContractViolation(GpcaError, ValueError):
    """A precondition of an operation does not hold (e.g. a non-horizontal direction)."""

    def __init__(self, operation: str, message: str, *, residual: float | None = None) -> None:
        self.operation = operation
        self.residual = residual
        detail = f" (residual {residual:.3e})" if residual is not None else ""
        super().__init__(f"{operation}: {message}{detail}")


class DegenerateDirectionError(GpcaError, ValueError):
    """Direction cannot define a geodesic segment (zero, or empty admissible interval)."""


class TimeRangeError(GpcaError, ValueError):
    """Time parameter outside the admissible interval of a segment."""

    def __init__(self, t: float, t_min: float, t_max: float) -> None:
        self.t = t
        self.t_min = t_min
        self.t_max = t_max
        super().__init__(f"t = {t:.6g} outside admissible interval [{t_min:.6g}, {t_max:.6g}]")


class NumericError(GpcaError, ArithmeticError):
    """A numerical routine failed (ill-conditioned system, rank deficiency)."""


class NoRemainingDirectionsError(GpcaError):
    """No horizontal direction is left that is orthogonal to the previous components."""

    def __init__(self, order: int, available: int) -> None:
        self.order = order
        self.available = available
        super().__init__(
            f"Cannot fit component {order}: only {available} orthogonal horizontal "
            "direction(s) remain"
        )


class DatasetParseError(GpcaError, ValueError):
    """Malformed dataset file."""

    def __init__(
        self,
        path: str,
        message: str,
        *,
        line: int | None = None,
        field: str | None = None,
    ) -> None:
        self.path = path
        self.line = line
        self.field = field
        where = path
        if line is not None:
            where += f":{line}"
        if field is not None:
            where += f" [{field}]"
        super().__init__(f"{where}: {message}")
