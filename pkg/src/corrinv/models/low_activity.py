"""Gas of particles with a finite-range pair potential, to first order in the activity.

rho^(m)(x_1..x_m) = z^m exp(-sum_{i<j} u(x_i - x_j)) * B(x_1..x_m) with
B = 1 + z * int (prod_i (1 + f(x_i - y)) - 1) dy at mayer_order 1 and B = 1 at
order 0; f = exp(-u) - 1 is the Mayer function. The truncated functions are
obtained with star_log.
"""

from __future__ import annotations

import logging
import math
import threading
import warnings
from collections.abc import Callable
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.integrate import IntegrationWarning, quad

from corrinv.errors import QuadratureError
from corrinv.models.base import CorrelationModel
from corrinv.models.functions import Gaussian, pair_displacements
from corrinv.registry import ModelDef, register_model
from corrinv.ruelle import FiniteFamily, Points, star_log

logger = logging.getLogger(__name__)

LOW_ACTIVITY_MAX_ORDER = 5
_SCRATCH_LIMIT = 4096
QUAD_EPSABS = 1e-10
QUAD_EPSREL = 1e-10


class LowActivityParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    z: float = Field(gt=0, description="Activity")
    epsilon: float = Field(description="u(r) = epsilon exp(-r^2/w^2)")
    width: float = Field(default=1.0, gt=0)
    mayer_order: Literal[0, 1] = 1


def gaussian_potential(epsilon: float, width: float = 1.0) -> Gaussian:
    """Gaussian-core potential truncated at four widths."""
    return Gaussian(amplitude=epsilon, width=width, cutoff=4.0 * width)


class LowActivityModel(CorrelationModel):
    kind = "low_activity"

    def __init__(self, z: float, u: Gaussian, dim: int = 1, mayer_order: int = 1) -> None:
        if z <= 0:
            raise ValueError(f"z must be positive, got {z}")
        if dim != 1:
            raise ValueError("the low-activity backend is one-dimensional")
        if mayer_order not in (0, 1):
            raise ValueError(f"mayer_order must be 0 or 1, got {mayer_order}")
        if math.isinf(u.support_radius):
            raise ValueError("the pair potential needs a finite cutoff")
        self.z = z
        self.u = u
        self.mayer_order = mayer_order
        self._scratch = threading.local()

        density = z * (1.0 + z * self._mayer_integral()) if mayer_order == 1 else z
        n = LOW_ACTIVITY_MAX_ORDER
        attraction = max(0.0, -u.inf)
        # Boltzmann factors are at most exp(attraction) per pair; the bracket is at
        # most 1 + z * n * 2R * (exp(n * attraction) - 1)
        bracket = 1.0
        if mayer_order == 1:
            bracket += z * n * 2.0 * u.support_radius * math.expm1(n * attraction)
        xi = z * math.exp(attraction * (n - 1) / 2.0) * bracket
        super().__init__(
            dim=1,
            density=density,
            max_order=n,
            ruelle_xi=xi,
            correlation_length=u.width,
        )
        self._truncated = star_log(FiniteFamily(n_max=n, dim=1, order0=1.0, evaluator=self._rho))

    def mayer_f(self, disp: float | Points) -> Points:
        """f = exp(-u) - 1 at the given displacements."""
        return np.asarray(np.expm1(-np.asarray(self.u(disp))), dtype=np.float64)

    def _mayer_integral(self) -> float:
        radius = self.u.support_radius
        return self._quad(lambda y: float(self.mayer_f(y)), [-radius, 0.0, radius])

    def _quad(self, fn: Callable[[float], float], breaks: list[float]) -> float:
        """Integral of ``fn`` over [breaks[0], breaks[-1]], one adaptive rule per segment.

        ``fn`` must be smooth between consecutive breakpoints. QUADPACK warnings
        are tolerated; a segment fails only if its error estimate is above the
        requested tolerance.
        """
        edges = sorted(set(breaks))
        parts = []
        for lo, hi in zip(edges[:-1], edges[1:], strict=True):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", IntegrationWarning)
                value, abserr = quad(fn, lo, hi, limit=200, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL)
            if not math.isfinite(value):
                raise QuadratureError("adaptive quadrature returned a non-finite value", node=[lo, hi])
            if abserr > max(QUAD_EPSABS, QUAD_EPSREL * abs(value)):
                raise QuadratureError(
                    f"adaptive quadrature error {abserr:.3e} above tolerance", node=[lo, hi]
                )
            parts.append(value)
        return math.fsum(parts)

    def _bracket(self, pts: Points) -> float:
        if self.mayer_order == 0:
            return 1.0
        key = pts.tobytes()
        scratch = getattr(self._scratch, "values", None)
        if scratch is None or len(scratch) > _SCRATCH_LIMIT:
            scratch = self._scratch.values = {}
        if key in scratch:
            return float(scratch[key])

        xs = pts[:, 0]
        radius = self.u.support_radius

        def integrand(y: float) -> float:
            boltzmann = np.exp(-self.u((xs - y)[:, None]))
            return float(np.prod(boltzmann) - 1.0)

        # u jumps to zero at distance ``radius`` from every point
        breaks = [b for x in xs.tolist() for b in (x - radius, x, x + radius)]
        value = 1.0 + self.z * self._quad(integrand, breaks)
        scratch[key] = value
        return value

    def _rho(self, pts: Points) -> float:
        n = len(pts)
        energy = float(np.sum(self.u(pair_displacements(pts)))) if n > 1 else 0.0
        return self.z**n * math.exp(-energy) * self._bracket(pts)

    def _rho_t(self, pts: Points) -> float:
        return self._truncated(pts)


def low_activity_model(
    z: float, u: Gaussian, dim: int = 1, mayer_order: int = 1
) -> LowActivityModel:
    return LowActivityModel(z, u, dim, mayer_order)


def _build(params: LowActivityParams) -> LowActivityModel:
    return LowActivityModel(
        params.z, gaussian_potential(params.epsilon, params.width), 1, params.mayer_order
    )


register_model(
    ModelDef(
        name="low_activity",
        description="Finite-range Gaussian-core gas to first order in the activity (d = 1)",
        params_model=LowActivityParams,
        build=_build,
    )
)
