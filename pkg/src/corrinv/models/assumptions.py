"""Numerical estimates of the mixing constants of a backend.

The mixing bound int |rho_T^(m+k)(x_m, y_k)| dy <= (m+k-1)! M A^m D_rho^k rho^m is
only checked at the orders the data can support (k = 1 for m = 1, 2 and k = 2
for m = 1). M is fixed at 1 and A = sup_s |rho_T^(2)(0, s)| / rho^2, so that

    D_rho >= int |rho_T^(2)(0, y)| dy / (rho A)
    D_rho >= sqrt(int int |rho_T^(3)(0, y1, y2)| dy / (2 rho A))
    D_rho >= sup_s int |rho_T^(3)(0, s, y)| dy / (2 rho^2 A^2)

d(r) is the largest rho^2 / rho^(2) on a grid of separations starting at r.
"""

from __future__ import annotations

import logging
import math

import numpy as np
import numpy.typing as npt

from corrinv.errors import HardCoreError
from corrinv.models.base import AssumptionParams, CorrelationModel
from corrinv.quadrature import Box, QuadratureSpec, integrate_k
from corrinv.ruelle import Points

logger = logging.getLogger(__name__)

D_RHO_FLOOR = 1e-12
A_FLOOR = 1e-12
SEPARATION_SAMPLES = 121
ANCHOR_SAMPLES = 7


def _on_axis(dim: int, s: float) -> Points:
    point = np.zeros((1, dim))
    point[0, 0] = s
    return point


def _integrated_pair(model: CorrelationModel, box: Box, spec: QuadratureSpec) -> float:
    origin = np.zeros((1, model.dim))
    return integrate_k(
        lambda ys: abs(model.rho_t(2, np.vstack([origin, ys]))), 1, box, spec
    ).value


def _integrated_triple(model: CorrelationModel, box: Box, spec: QuadratureSpec) -> float:
    origin = np.zeros((1, model.dim))
    return integrate_k(
        lambda ys: abs(model.rho_t(3, np.vstack([origin, ys]))), 2, box, spec
    ).value


def _integrated_triple_two_anchors(
    model: CorrelationModel,
    box: Box,
    spec: QuadratureSpec,
    separations: npt.NDArray[np.float64],
) -> float:
    origin = np.zeros((1, model.dim))
    best = 0.0
    for s in separations:
        anchors = np.vstack([origin, _on_axis(model.dim, float(s))])
        value = integrate_k(
            lambda ys, a=anchors: abs(model.rho_t(3, np.vstack([a, ys]))), 1, box, spec
        ).value
        best = max(best, value)
    return best


def pair_ratio_sup(model: CorrelationModel, r: float, reach: float) -> float:
    """sup of rho^2 / rho^(2)(0, s) over SEPARATION_SAMPLES separations in [r, r + reach]."""
    origin = np.zeros((1, model.dim))
    worst = 0.0
    for s in np.linspace(r, r + reach, SEPARATION_SAMPLES):
        rho2 = model.rho(2, np.vstack([origin, _on_axis(model.dim, float(s))]))
        if rho2 <= 0.0:
            raise HardCoreError(
                "rho^(2) vanishes beyond the comparison radius",
                separation=float(s),
                radius=r,
            )
        worst = max(worst, model.density**2 / rho2)
    return worst


def pair_truncation_sup(model: CorrelationModel, reach: float) -> float:
    """sup of |rho_T^(2)(0, s)| / rho^2 over SEPARATION_SAMPLES separations in [0, reach]."""
    origin = np.zeros((1, model.dim))
    return max(
        abs(model.rho_t(2, np.vstack([origin, _on_axis(model.dim, float(s))])))
        for s in np.linspace(0.0, reach, SEPARATION_SAMPLES)
    ) / model.density**2


def estimate_assumption_params(
    model: CorrelationModel,
    *,
    r: float | None = None,
    box: Box | None = None,
    spec: QuadratureSpec | None = None,
) -> AssumptionParams:
    """Estimate (M, A, D_rho, r, d(r)) for a backend.

    Args:
        model: Backend with max_order >= 3.
        r: Comparison radius for d(r); defaults to the hard-core radius.
        box: Integration window; defaults to six correlation lengths.
        spec: Quadrature used for the integrals.
    """
    reach = 6.0 * model.correlation_length
    box = box or Box(model.dim, reach)
    spec = spec or QuadratureSpec()
    radius = model.hard_core_radius if r is None else r
    if radius < 0:
        raise ValueError(f"r must be non-negative, got {r}")

    rho = model.density
    a = max(pair_truncation_sup(model, reach), A_FLOOR)
    pair = _integrated_pair(model, box, spec)
    triple = _integrated_triple(model, box, spec)
    anchored = _integrated_triple_two_anchors(
        model, box, spec, np.linspace(0.0, reach / 2.0, ANCHOR_SAMPLES)
    )
    d_rho = max(
        pair / (rho * a),
        math.sqrt(triple / (2.0 * rho * a)),
        anchored / (2.0 * rho**2 * a**2),
        D_RHO_FLOOR,
    )
    d_of_r = pair_ratio_sup(model, radius, reach)
    logger.debug(
        f"Assumption estimate for {model.kind}: integrals {pair:.3e}, {triple:.3e}, "
        f"{anchored:.3e}; A={a:.3e}, D_rho={d_rho:.3e}, d(r)={d_of_r:.3f}"
    )
    return AssumptionParams(M=1.0, A=a, D_rho=d_rho, r=radius, d_of_r=d_of_r)
