"""Poisson process: independent points at constant density."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

from corrinv.models.base import CorrelationModel
from corrinv.registry import ModelDef, register_model
from corrinv.ruelle import Points

POISSON_MAX_ORDER = 12


class PoissonParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    rho: float = Field(gt=0, description="Density")
    dim: int = Field(default=1, ge=1, le=3)


class PoissonModel(CorrelationModel):
    """rho^(n) = rho^n; every truncated function beyond order 1 vanishes."""

    kind = "poisson"

    def __init__(self, rho: float, dim: int = 1) -> None:
        super().__init__(dim=dim, density=rho, max_order=POISSON_MAX_ORDER, ruelle_xi=rho)

    def _rho(self, pts: Points) -> float:
        return self.density ** len(pts)

    def _rho_t(self, pts: Points) -> float:
        return self.density if len(pts) == 1 else 0.0


def poisson_model(rho: float, dim: int = 1) -> PoissonModel:
    return PoissonModel(rho, dim)


def _build(params: PoissonParams) -> PoissonModel:
    return PoissonModel(params.rho, params.dim)


register_model(
    ModelDef(
        name="poisson",
        description="Ideal gas: independent points, no truncated correlations beyond order 1",
        params_model=PoissonParams,
        build=_build,
    )
)
