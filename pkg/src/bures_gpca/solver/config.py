"""Solver configuration models."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field


class DescentConfig(BaseModel):
    """Riemannian gradient descent on SO_d with Armijo backtracking."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    initial_step: float = Field(default=1.0, gt=0, description="First trial step length")
    sufficient_decrease: float = Field(default=1e-4, gt=0, lt=1, description="Armijo constant")
    backtrack: float = Field(default=0.5, gt=0, lt=1, description="Step shrink factor")
    max_halvings: int = Field(default=50, gt=0, description="Line-search budget per iteration")
    tol: float = Field(default=1e-8, gt=0, description="Stop when the gradient norm drops below")
    max_iters: int = Field(default=500, gt=0)


class SolverConfig(BaseModel):
    """Alternating-minimization settings for geodesic PCA."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    epsilon: float = Field(default=1e-3, gt=0, description="Safety margin of the time interval")
    restarts: int = Field(default=5, gt=0, description="Initializations tried; the best is kept")
    outer_max_iters: int = Field(default=200, gt=0)
    outer_tol: float = Field(default=1e-8, gt=0, description="Relative cost decrease to stop")
    descent: DescentConfig = Field(default_factory=DescentConfig)
    seed: int = Field(default=0, ge=0, description="Seed of the restart perturbations")
    workers: int = Field(default=1, ge=1, description="Threads used for restarts and trials")
    step2_max_iters: int = Field(default=100, gt=0, description="L-BFGS budget per base update")
    perturbation: float = Field(
        default=0.5, gt=0, description="Size of the random horizontal restart perturbations"
    )
    barycenter_tol: float = Field(default=1e-12, gt=0)
    barycenter_max_iters: int = Field(default=1000, gt=0)
