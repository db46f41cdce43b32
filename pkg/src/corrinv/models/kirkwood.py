"""Kirkwood closure process: correlations factor over pairs.

rho^(n)(x_1..x_n) = sigma^n prod_{i<j} (1 + h(x_i - x_j)), and the truncated
functions are connected-graph sums with edge weight h.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field

from corrinv.combinatorics import connected_graphs
from corrinv.models.base import CorrelationModel
from corrinv.models.functions import Gaussian, pair_displacements
from corrinv.registry import ModelDef, register_model
from corrinv.ruelle import Points

# connected_graphs(7) walks 2^21 edge subsets; order 6 keeps the tables instant
KIRKWOOD_MAX_ORDER = 6


class KirkwoodParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    sigma: float = Field(gt=0, description="Activity, equal to the density")
    amplitude: float = Field(gt=-1, description="h(0); 1 + h must stay non-negative")
    width: float = Field(default=1.0, gt=0)
    dim: int = Field(default=1, ge=1, le=3)


@lru_cache(maxsize=None)
def connected_graph_masks(n: int) -> npt.NDArray[np.bool_]:
    """Boolean matrix (graphs x vertex pairs) of the connected graphs on n vertices.

    Columns follow itertools.combinations(range(n), 2).
    """
    pairs = list(itertools.combinations(range(n), 2))
    column = {pair: idx for idx, pair in enumerate(pairs)}
    rows = []
    for edges in connected_graphs(n):
        row = np.zeros(len(pairs), dtype=bool)
        for edge in edges:
            row[column[edge]] = True
        rows.append(row)
    masks = np.array(rows, dtype=bool).reshape(len(rows), len(pairs))
    masks.setflags(write=False)
    return masks


class KirkwoodModel(CorrelationModel):
    kind = "kirkwood"

    def __init__(self, sigma: float, h: Gaussian, dim: int = 1) -> None:
        if sigma <= 0:
            raise ValueError(f"sigma must be positive, got {sigma}")
        if h.inf < -1:
            raise ValueError(f"1 + h must be non-negative, got h(0) = {h.amplitude}")
        # rho^(n) <= sigma^n (1 + sup h)^(n(n-1)/2) <= xi^n for n <= max order
        xi = sigma * (1.0 + h.sup) ** ((KIRKWOOD_MAX_ORDER - 1) / 2)
        super().__init__(
            dim=dim,
            density=sigma,
            max_order=KIRKWOOD_MAX_ORDER,
            ruelle_xi=xi,
            correlation_length=h.width,
        )
        self.sigma = sigma
        self.h = h

    def _edge_weights(self, pts: Points) -> npt.NDArray[np.float64]:
        return np.asarray(self.h(pair_displacements(pts)), dtype=np.float64)

    def _rho(self, pts: Points) -> float:
        n = len(pts)
        return self.sigma**n * float(np.prod(1.0 + self._edge_weights(pts)))

    def _rho_t(self, pts: Points) -> float:
        n = len(pts)
        if n == 1:
            return self.sigma
        weights = self._edge_weights(pts)
        masks = connected_graph_masks(n)
        products = np.where(masks, weights, 1.0).prod(axis=1)
        return self.sigma**n * math.fsum(products)


def kirkwood_model(sigma: float, h: Gaussian, dim: int = 1) -> KirkwoodModel:
    return KirkwoodModel(sigma, h, dim)


def _build(params: KirkwoodParams) -> KirkwoodModel:
    return KirkwoodModel(params.sigma, Gaussian(params.amplitude, params.width), params.dim)


register_model(
    ModelDef(
        name="kirkwood",
        description="Kirkwood closure with Gaussian structure function h(r) = a exp(-r^2/w^2)",
        params_model=KirkwoodParams,
        build=_build,
    )
)
