"""Radial pair functions used as structure functions, kernels and potentials."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np
import numpy.typing as npt


@dataclass(frozen=True)
class Gaussian:
    """amplitude * exp(-|r|^2 / width^2), set to zero beyond ``cutoff`` when given.

    Called on displacement vectors: the last axis holds the coordinates, so an
    array of shape (..., d) yields values of shape (...). Scalars are read as
    one-dimensional displacements.
    """

    amplitude: float
    width: float
    cutoff: float | None = None

    def __post_init__(self) -> None:
        if self.width <= 0:
            raise ValueError(f"width must be positive, got {self.width}")
        if self.cutoff is not None and self.cutoff <= 0:
            raise ValueError(f"cutoff must be positive, got {self.cutoff}")

    def __call__(self, disp: Any) -> Any:
        arr = np.asarray(disp, dtype=np.float64)
        if arr.ndim == 0:
            arr = arr.reshape(1)
        r2 = np.sum(arr * arr, axis=-1)
        values = self.amplitude * np.exp(-r2 / self.width**2)
        if self.cutoff is not None:
            values = np.where(r2 > self.cutoff**2, 0.0, values)
        return values

    def radial(self, r: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """Values at distances r."""
        r_arr = np.asarray(r, dtype=np.float64)
        return np.asarray(self(r_arr[..., None]), dtype=np.float64)

    @property
    def sup(self) -> float:
        return max(self.amplitude, 0.0)

    @property
    def inf(self) -> float:
        return min(self.amplitude, 0.0)

    @property
    def support_radius(self) -> float:
        return math.inf if self.cutoff is None else self.cutoff


def pair_displacements(pts: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    """x_i - x_j for i < j, in itertools.combinations order."""
    i, j = np.triu_indices(len(pts), k=1)
    return pts[i] - pts[j]
