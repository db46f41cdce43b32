"""Correlation data read from tables: a radial g2 and a two-variable rho_T^(3).

Only orders up to 3 are available, so the pair-potential series stops at K = 1.
Outside the tabulated range g2 -> 1 and t3 -> 0.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field
from scipy.interpolate import RegularGridInterpolator

from corrinv.errors import ConfigError
from corrinv.io import read_table, write_csv
from corrinv.models.base import CorrelationModel
from corrinv.registry import ModelDef, register_model
from corrinv.ruelle import Points

logger = logging.getLogger(__name__)

TABULATED_MAX_ORDER = 3
SYMMETRY_TOL = 1e-8

G2_HEADER = ("r", "g2")
T3_HEADER = ("r1", "r2", "t3")


class TabulatedParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    rho: float = Field(gt=0, description="Density")
    g2_csv: Path = Field(description="CSV with header r,g2")
    t3_csv: Path = Field(description="CSV with header r1,r2,t3")


class TabulatedModel(CorrelationModel):
    """One-dimensional model interpolating tabulated correlation data.

    Args:
        rho: Density.
        r: Monotone radial grid starting at 0.
        g2: Pair correlation g2(r) = rho^(2) / rho^2 on ``r``.
        s: Grid of signed differences used on both axes of ``t3``.
        t3: rho_T^(3)(x_1, x_2, y) / rho^3 at (x_1 - y, x_2 - y) = (s_i, s_j).
    """

    kind = "tabulated"

    def __init__(
        self,
        rho: float,
        r: npt.ArrayLike,
        g2: npt.ArrayLike,
        s: npt.ArrayLike,
        t3: npt.ArrayLike,
    ) -> None:
        self.r = np.asarray(r, dtype=np.float64)
        self.g2 = np.asarray(g2, dtype=np.float64)
        self.s = np.asarray(s, dtype=np.float64)
        self.t3 = np.asarray(t3, dtype=np.float64)
        _validate_tables(self.r, self.g2, self.s, self.t3)

        positive = np.flatnonzero(self.g2 > 0)
        if len(positive) == 0:
            raise ConfigError("g2 vanishes on the whole grid", field="g2")
        hard_core = float(self.r[positive[0]])
        xi = rho * max(1.0, float(self.g2.max())) * max(1.0, 1.0 + float(np.abs(self.t3).max()))
        super().__init__(
            dim=1,
            density=rho,
            max_order=TABULATED_MAX_ORDER,
            ruelle_xi=xi,
            correlation_length=float(self.r[-1]) / 6.0,
            hard_core_radius=hard_core,
        )
        self._t3_interp = RegularGridInterpolator(
            (self.s, self.s), self.t3, method="linear", bounds_error=False, fill_value=0.0
        )

    def g2_at(self, distance: float) -> float:
        return float(np.interp(distance, self.r, self.g2, right=1.0))

    def t3_at(self, s1: float, s2: float) -> float:
        return float(self._t3_interp([[s1, s2]])[0])

    def _pair_t(self, a: Points, b: Points) -> float:
        distance = float(np.abs(a[0] - b[0]))
        return self.density**2 * (self.g2_at(distance) - 1.0)

    def _rho(self, pts: Points) -> float:
        n = len(pts)
        rho = self.density
        if n == 1:
            return rho
        if n == 2:
            return rho**2 * self.g2_at(float(abs(pts[0, 0] - pts[1, 0])))
        # n == 3: rho = exp*(rho_T) at three points
        pairs = (
            self._pair_t(pts[0], pts[1]) * rho
            + self._pair_t(pts[0], pts[2]) * rho
            + self._pair_t(pts[1], pts[2]) * rho
        )
        return rho**3 + pairs + self._rho_t(pts)

    def _rho_t(self, pts: Points) -> float:
        n = len(pts)
        if n == 1:
            return self.density
        if n == 2:
            return self._pair_t(pts[0], pts[1])
        y = pts[2, 0]
        return self.density**3 * self.t3_at(pts[0, 0] - y, pts[1, 0] - y)

    @classmethod
    def from_csv(cls, rho: float, g2_csv: str | Path, t3_csv: str | Path) -> TabulatedModel:
        """Load the two tables written by ``write_tables`` or by hand."""
        g2_data = read_table(g2_csv, G2_HEADER)
        t3_data = read_table(t3_csv, T3_HEADER)

        r1_values = np.unique(t3_data["r1"])
        r2_values = np.unique(t3_data["r2"])
        if len(t3_data) != len(r1_values) * len(r2_values):
            raise ConfigError("t3 table is not a full rectangular grid", field=str(t3_csv))
        if not np.array_equal(r1_values, r2_values):
            raise ConfigError("t3 table must use the same grid on both axes", field=str(t3_csv))

        order = np.lexsort((t3_data["r2"], t3_data["r1"]))
        t3 = t3_data["t3"][order].reshape(len(r1_values), len(r2_values))
        logger.debug(f"Loaded g2 ({len(g2_data)} rows) and t3 ({t3.shape[0]}x{t3.shape[1]})")
        return cls(rho, g2_data["r"], g2_data["g2"], r1_values, t3)

    @classmethod
    def from_model(
        cls,
        model: CorrelationModel,
        *,
        r_max: float,
        n_r: int = 201,
    ) -> TabulatedModel:
        """Tabulate a one-dimensional backend on a uniform grid.

        g2 is sampled on [0, r_max] with n_r points; t3 on the square
        [-r_max, r_max]^2 with 2 n_r - 1 points per axis.
        """
        if model.dim != 1:
            raise ValueError(f"only one-dimensional models can be tabulated, got dim={model.dim}")
        rho = model.density
        r = np.linspace(0.0, r_max, n_r)
        g2 = np.array([model.rho(2, [0.0, ri]) / rho**2 for ri in r])
        s = np.linspace(-r_max, r_max, 2 * n_r - 1)
        t3 = np.array([[model.rho_t(3, [si, sj, 0.0]) / rho**3 for sj in s] for si in s])
        # Enforce exact symmetry lost to rounding in the source backend
        t3 = 0.5 * (t3 + t3.T)
        return cls(rho, r, g2, s, t3)

    def write_tables(self, g2_csv: str | Path, t3_csv: str | Path) -> None:
        write_csv(g2_csv, G2_HEADER, zip(self.r, self.g2, strict=True))
        rows = (
            (si, sj, self.t3[i, j])
            for i, si in enumerate(self.s)
            for j, sj in enumerate(self.s)
        )
        write_csv(t3_csv, T3_HEADER, rows)

    def describe(self) -> dict[str, Any]:
        info = super().describe()
        info["r_max"] = float(self.r[-1])
        info["t3_grid"] = [float(self.s[0]), float(self.s[-1]), len(self.s)]
        return info


def _validate_tables(
    r: npt.NDArray[np.float64],
    g2: npt.NDArray[np.float64],
    s: npt.NDArray[np.float64],
    t3: npt.NDArray[np.float64],
) -> None:
    if r.ndim != 1 or r.shape != g2.shape or len(r) < 2:
        raise ConfigError("g2 table needs matching r and g2 columns with at least 2 rows", field="g2")
    if r[0] != 0.0:
        raise ConfigError("g2 grid must start at r = 0", field="r", value=float(r[0]))
    if np.any(np.diff(r) <= 0):
        raise ConfigError("g2 grid must be strictly increasing", field="r")
    if not (np.all(np.isfinite(g2)) and np.all(np.isfinite(t3))):
        raise ConfigError("tables contain non-finite values")
    if np.any(g2 < 0):
        idx = int(np.argmin(g2))
        raise ConfigError("g2 must be non-negative", field="g2", value=f"g2({r[idx]}) = {g2[idx]}")
    if s.ndim != 1 or len(s) < 2 or np.any(np.diff(s) <= 0):
        raise ConfigError("t3 grid must be strictly increasing", field="t3")
    if t3.shape != (len(s), len(s)):
        raise ConfigError("t3 table shape does not match its grid", field="t3", value=t3.shape)
    asymmetry = float(np.max(np.abs(t3 - t3.T)))
    if asymmetry > SYMMETRY_TOL:
        raise ConfigError("t3 table is not symmetric", field="t3", value=asymmetry)


def tabulated_model(
    g2_table: tuple[npt.ArrayLike, npt.ArrayLike],
    t3_table: tuple[npt.ArrayLike, npt.ArrayLike],
    rho: float,
) -> TabulatedModel:
    """Build from in-memory tables: (r, g2) and (s, t3)."""
    return TabulatedModel(rho, g2_table[0], g2_table[1], t3_table[0], t3_table[1])


def _build(params: TabulatedParams) -> TabulatedModel:
    return TabulatedModel.from_csv(params.rho, params.g2_csv, params.t3_csv)


register_model(
    ModelDef(
        name="tabulated",
        description="One-dimensional tables of g2(r) and rho_T^(3)/rho^3 (orders <= 3)",
        params_model=TabulatedParams,
        build=_build,
    )
)
