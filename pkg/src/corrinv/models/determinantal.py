"""Determinantal point process with a translation-invariant kernel."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field

from corrinv.combinatorics import MAX_CYCLE_LENGTH, cyclic_permutations
from corrinv.models.base import CorrelationModel
from corrinv.models.functions import Gaussian
from corrinv.registry import ModelDef, register_model
from corrinv.ruelle import Points


class DeterminantalParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    z: float = Field(gt=0, description="Kernel scale, equal to the density")
    length: float = Field(default=1.0, gt=0, description="kappa(r) = exp(-r^2 / (2 length^2))")
    dim: int = Field(default=1, ge=1, le=3)


@lru_cache(maxsize=None)
def cycle_table(n: int) -> npt.NDArray[np.intp]:
    """All single n-cycles as rows of one-line notation."""
    table = np.array(list(cyclic_permutations(n)), dtype=np.intp).reshape(-1, n)
    table.setflags(write=False)
    return table


def gaussian_kernel(length: float = 1.0) -> Gaussian:
    return Gaussian(amplitude=1.0, width=math.sqrt(2.0) * length)


class DeterminantalModel(CorrelationModel):
    """rho^(n) = z^n det[kappa(x_i - x_j)].

    The truncated functions are signed sums over cyclic permutations. The
    backend assumes kappa is even, positive definite and bounded by kappa(0) = 1;
    none of this is checked beyond kappa(0).
    """

    kind = "determinantal"

    def __init__(self, z: float, kappa: Gaussian, dim: int = 1) -> None:
        if z <= 0:
            raise ValueError(f"z must be positive, got {z}")
        if kappa.amplitude != 1.0:
            raise ValueError(f"kappa(0) must be 1, got {kappa.amplitude}")
        super().__init__(
            dim=dim,
            density=z,
            max_order=MAX_CYCLE_LENGTH,
            ruelle_xi=z,
            correlation_length=kappa.width,
        )
        self.z = z
        self.kappa = kappa

    def _gram(self, pts: Points) -> npt.NDArray[np.float64]:
        disp = pts[:, None, :] - pts[None, :, :]
        return np.asarray(self.kappa(disp), dtype=np.float64)

    def _rho(self, pts: Points) -> float:
        n = len(pts)
        return self.z**n * float(np.linalg.det(self._gram(pts)))

    def _rho_t(self, pts: Points) -> float:
        n = len(pts)
        gram = self._gram(pts)
        cycles = cycle_table(n)
        products = gram[np.arange(n), cycles].prod(axis=1)
        return (-1) ** (n - 1) * self.z**n * math.fsum(products)


def determinantal_model(z: float, kappa: Gaussian, dim: int = 1) -> DeterminantalModel:
    return DeterminantalModel(z, kappa, dim)


def _build(params: DeterminantalParams) -> DeterminantalModel:
    return DeterminantalModel(params.z, gaussian_kernel(params.length), params.dim)


register_model(
    ModelDef(
        name="determinantal",
        description="Determinantal process with Gaussian kernel kappa(r) = exp(-r^2/(2 l^2))",
        params_model=DeterminantalParams,
        build=_build,
    )
)
