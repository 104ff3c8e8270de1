"""Experiment parameter models. Every report echoes ``model_dump()`` of the config it ran."""

from __future__ import annotations

import math

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


def _check_range(value: tuple[float, float], *, positive: bool = True) -> tuple[float, float]:
    lo, hi = value
    if positive and lo <= 0:
        raise ValueError(f"range must be positive, got {value}")
    if hi < lo:
        raise ValueError(f"range upper bound below lower bound: {value}")
    return value


class GridConfig(BaseModel):
    """Diagonal matrices diag(a², b²) on an equally spaced na × nb grid of (a, b)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    a_range: tuple[float, float] = (1.0, math.sqrt(3.0))
    b_range: tuple[float, float] = (1.0, math.sqrt(2.0))
    na: int = Field(default=5, ge=2)
    nb: int = Field(default=5, ge=2)

    @field_validator("a_range", "b_range")
    @classmethod
    def _positive(cls, v: tuple[float, float]) -> tuple[float, float]:
        return _check_range(v)


class CircleConfig(BaseModel):
    """Rotations of diag(a², b²) by θ_i = iπ(1 − opening)/n."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    a: float = Field(default=1.8, gt=0)
    b: float = Field(default=0.2, gt=0)
    n: int = Field(default=20, ge=2)
    opening: float = Field(default=0.05, ge=0, lt=1)

    @model_validator(mode="after")
    def _shape(self) -> CircleConfig:
        if not self.a > self.b:
            raise ValueError(f"need a > b, got a={self.a}, b={self.b}")
        if self.n % 2:
            raise ValueError(f"n must be even, got {self.n}")
        return self

    @property
    def ratio(self) -> float:
        return (self.a - self.b) / (self.a + self.b)


class RandomTrialsConfig(BaseModel):
    """Repeated GPCA/TPCA comparisons on uniformly sampled spectral parameters."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    trials: int = Field(default=100, ge=1)
    n: int = Field(default=50, ge=2)
    a_range: tuple[float, float] = (0.5, 2.0)
    b_range: tuple[float, float] = (0.5, 2.0)
    theta_range: tuple[float, float] = (0.0, math.pi)

    @field_validator("a_range", "b_range")
    @classmethod
    def _positive(cls, v: tuple[float, float]) -> tuple[float, float]:
        return _check_range(v)

    @field_validator("theta_range")
    @classmethod
    def _ordered(cls, v: tuple[float, float]) -> tuple[float, float]:
        return _check_range(v, positive=False)


class DistortionCurveConfig(BaseModel):
    """First-component improvement on open circles with a + b fixed, per ratio (a − b)/(a + b)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    ratios: tuple[float, ...] = (0.2, 0.4, 0.6, 0.8)
    n: int = Field(default=20, ge=2)
    trials_per_ratio: int = Field(default=1, ge=1)
    scale: float = Field(default=2.0, gt=0, description="The fixed sum a + b")
    opening: float = Field(default=0.05, ge=0, lt=1)

    @field_validator("ratios")
    @classmethod
    def _in_unit_interval(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        if not v:
            raise ValueError("at least one ratio is required")
        for r in v:
            if not 0 < r < 1:
                raise ValueError(f"ratios must lie in (0, 1), got {r}")
        return v

    @model_validator(mode="after")
    def _even(self) -> DistortionCurveConfig:
        if self.n % 2:
            raise ValueError(f"n must be even, got {self.n}")
        return self

    def circle(self, ratio: float) -> CircleConfig:
        a = 0.5 * self.scale * (1.0 + ratio)
        b = 0.5 * self.scale * (1.0 - ratio)
        return CircleConfig(a=a, b=b, n=self.n, opening=self.opening)
