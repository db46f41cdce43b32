"""Truncated series for the chemical potential, the pair potential and Janossy densities.

    mu       = log rho + sum_k (-1)^k / k! int omega(0; y_1..y_k)
    H(x1,x2) = -log(rho^(2) / rho^2) - sum_k (-1)^k / k! int omega(x1, x2; y_1..y_k)

Integrals run over the box [-L, L]^d, which stands in for the whole space.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any, NamedTuple

import numpy as np

from corrinv.errors import HardCoreError, OrderBoundError
from corrinv.models.base import CorrelationModel
from corrinv.omega import omega_one, omega_two, omega_two_tables, pair_rho2
from corrinv.quadrature import Box, Integral, QuadratureSpec, integrate_k, integrate_many
from corrinv.ruelle import FiniteFamily, Points, as_point, star_exp

logger = logging.getLogger(__name__)

TAIL_TOL = 1e-8


@dataclass
class SeriesResult:
    """Per-order terms of a truncated series.

    ``order_terms[0]`` is the closed-form leading term; ``order_terms[k]`` for
    k >= 1 carries the factor (-1)^k / k! (and the sign of the series).
    """

    order_terms: list[float]
    quadrature_errors: list[float]
    box: Box
    tail_tol: float = TAIL_TOL
    partial_sums: list[float] = field(init=False)
    converged: bool = field(init=False)
    tail_estimate: float = field(init=False)

    def __post_init__(self) -> None:
        if len(self.order_terms) != len(self.quadrature_errors):
            raise ValueError("order_terms and quadrature_errors differ in length")
        sums = []
        total = 0.0
        for term in self.order_terms:
            total += term
            sums.append(total)
        self.partial_sums = sums
        self.converged, self.tail_estimate = _assess_tail(self.order_terms, self.tail_tol)

    @property
    def max_order(self) -> int:
        return len(self.order_terms) - 1

    @property
    def value(self) -> float:
        return self.partial_sums[-1]

    def to_dict(self) -> dict[str, Any]:
        return {
            "order_terms": self.order_terms,
            "partial_sums": self.partial_sums,
            "quadrature_errors": self.quadrature_errors,
            "box": self.box.to_dict(),
            "converged": self.converged,
            "tail_estimate": self.tail_estimate,
        }


def _assess_tail(terms: list[float], tail_tol: float) -> tuple[bool, float]:
    """Converged when the last term is below tail_tol or smaller than the one before it.

    A series with only its leading term has nothing to assess.
    """
    if len(terms) == 1:
        return True, 0.0
    last = abs(terms[-1])
    if last < tail_tol:
        return True, last
    if len(terms) >= 3 and last < abs(terms[-2]):
        return True, last
    return False, last


def _order_term(k: int, integral: float, sign: float = 1.0) -> float:
    term = sign * (-1) ** k * integral / math.factorial(k)
    # No negative zeros in the output tables
    return term + 0.0


def _series_from_integrals(
    integrals: list[Integral],
    leading: float,
    box: Box,
    *,
    sign: float = 1.0,
    tail_tol: float = TAIL_TOL,
    label: str = "series",
) -> SeriesResult:
    """``integrals[k - 1]`` is the order-k integral."""
    terms = [leading]
    errors = [0.0]
    for k, integral in enumerate(integrals, start=1):
        terms.append(_order_term(k, integral.value, sign))
        errors.append(integral.error / math.factorial(k))
        logger.debug(f"{label}: order {k} term {terms[-1]:.6e} (error {errors[-1]:.1e})")
    return SeriesResult(terms, errors, box, tail_tol)


def _series(
    integrand_for: Callable[[int], Callable[[Points], float]],
    leading: float,
    K: int,
    box: Box,
    spec: QuadratureSpec,
    *,
    sign: float = 1.0,
    tail_tol: float = TAIL_TOL,
    label: str = "series",
) -> SeriesResult:
    integrals = [integrate_k(integrand_for(k), k, box, spec) for k in range(1, K + 1)]
    return _series_from_integrals(
        integrals, leading, box, sign=sign, tail_tol=tail_tol, label=label
    )


def _check_series_order(model: CorrelationModel, K: int, anchors: int) -> None:
    if K < 0:
        raise ValueError(f"series order must be non-negative, got {K}")
    if K + anchors > model.max_order:
        raise OrderBoundError(
            f"{model.kind} model supports series orders up to {model.max_order - anchors}",
            order=K,
            bound=model.max_order - anchors,
        )


def default_box(model: CorrelationModel) -> Box:
    """Box of halfwidth six correlation lengths."""
    return Box(model.dim, 6.0 * model.correlation_length)


def mu_series(
    model: CorrelationModel,
    K: int,
    box: Box,
    spec: QuadratureSpec,
    *,
    x: Any = None,
    tail_tol: float = TAIL_TOL,
) -> SeriesResult:
    """Chemical potential mu = log rho + sum_k (-1)^k / k! int omega^(k)(x; y) dy.

    The anchor defaults to the origin; translation invariance makes it immaterial.
    """
    _check_series_order(model, K, 1)
    anchor = as_point(np.zeros(model.dim) if x is None else x, model.dim)

    def integrand_for(k: int) -> Callable[[Points], float]:
        return lambda ys: omega_one(model, anchor, ys)

    return _series(
        integrand_for, math.log(model.density), K, box, spec, tail_tol=tail_tol, label="mu"
    )


def pmf(model: CorrelationModel, x1: Any, x2: Any) -> float:
    """Potential of mean force -log(rho^(2)(x1, x2) / rho^2)."""
    anchors = np.vstack([as_point(x1, model.dim), as_point(x2, model.dim)])
    return -math.log(pair_rho2(model, anchors) / model.density**2) + 0.0


def _check_separation(model: CorrelationModel, x1: Any, x2: Any) -> None:
    separation = float(np.linalg.norm(as_point(x1, model.dim) - as_point(x2, model.dim)))
    if separation < model.hard_core_radius:
        raise HardCoreError(
            "separation below the hard-core radius",
            separation=separation,
            radius=model.hard_core_radius,
        )


def h_series(
    model: CorrelationModel,
    x1: Any,
    x2: Any,
    K: int,
    box: Box,
    spec: QuadratureSpec,
    *,
    tail_tol: float = TAIL_TOL,
) -> SeriesResult:
    """Pair potential H = pmf - sum_k (-1)^k / k! int omega^(k)(x1, x2; y) dy."""
    _check_series_order(model, K, 2)
    _check_separation(model, x1, x2)
    leading = pmf(model, x1, x2)

    def integrand_for(k: int) -> Callable[[Points], float]:
        return lambda ys: omega_two(model, x1, x2, ys)

    return _series(
        integrand_for, leading, K, box, spec, sign=-1.0, tail_tol=tail_tol, label="H"
    )


def u0_correction(
    model: CorrelationModel, x1: Any, x2: Any, box: Box, spec: QuadratureSpec
) -> float:
    """First-order correction to the potential of mean force.

    (1 / rho^(2)) int [rho_T^(3)(x1, x2, y)
                       - rho_T^(2)(x1, x2) (rho_T^(2)(x1, y) + rho_T^(2)(x2, y)) / rho] dy
    """
    _check_series_order(model, 1, 2)
    dim = model.dim
    p1 = as_point(x1, dim)
    p2 = as_point(x2, dim)
    anchors = np.vstack([p1, p2])
    rho2 = pair_rho2(model, anchors)
    rho_t2 = model.rho_t(2, anchors)
    rho = model.density

    def integrand(ys: Points) -> float:
        three = model.rho_t(3, np.vstack([anchors, ys]))
        pairs = model.rho_t(2, np.vstack([p1, ys])) + model.rho_t(2, np.vstack([p2, ys]))
        return three - rho_t2 * pairs / rho

    return integrate_k(integrand, 1, box, spec).value / rho2


class JanossyResult(NamedTuple):
    alternating: float
    exponential: float | None


def janossy(
    model: CorrelationModel,
    n: int,
    xs: Any,
    box: Box,
    K_trunc: int,
    spec: QuadratureSpec,
) -> JanossyResult:
    """Janossy density j^(n) of the box, n in {0, 1, 2}.

    The alternating form sums (-1)^k / k! int rho^(n+k)(xs, y) dy for k <= K_trunc.
    For n = 0 the exponential form exp(sum_{1 <= k <= K_trunc} (-1)^k / k! int rho_T^(k))
    is returned as well.
    """
    if n not in (0, 1, 2):
        raise ValueError(f"n must be 0, 1 or 2, got {n}")
    _check_series_order(model, K_trunc, n)
    anchors = np.zeros((0, model.dim)) if n == 0 else np.asarray(xs, dtype=np.float64).reshape(n, model.dim)

    alternating = [model.rho(n, anchors)]
    for k in range(1, K_trunc + 1):
        integral = integrate_k(lambda ys: model.rho(n + k, np.vstack([anchors, ys])), k, box, spec)
        alternating.append(_order_term(k, integral.value))
    total = math.fsum(alternating)

    exponential = None
    if n == 0:
        exponent = [
            _order_term(k, integrate_k(lambda ys: model.rho_t(len(ys), ys), k, box, spec).value)
            for k in range(1, K_trunc + 1)
        ]
        exponential = math.exp(math.fsum(exponent))
    return JanossyResult(total, exponential)


@dataclass
class J2Decomposition:
    """log j^(2) split into the rho_T, omega(x1), omega(x2) and omega(x1, x2) parts."""

    rho_t_part: SeriesResult
    omega_x1_part: SeriesResult
    omega_x2_part: SeriesResult
    omega_pair_part: SeriesResult

    @property
    def parts(self) -> tuple[SeriesResult, SeriesResult, SeriesResult, SeriesResult]:
        return (self.rho_t_part, self.omega_x1_part, self.omega_x2_part, self.omega_pair_part)

    @property
    def total(self) -> float:
        return math.fsum(part.value for part in self.parts)


def log_j2_decomposition(
    model: CorrelationModel,
    x1: Any,
    x2: Any,
    K: int,
    box: Box,
    spec: QuadratureSpec,
) -> J2Decomposition:
    """Series for log j^(2)(x1, x2) = log rho^(2) + sum_k (-1)^k / k! int F^(k).

    F = rho_T + omega(x1; .) + omega(x2; .) + omega(x1, x2; .); each part is its own
    series, the rho_T part carrying log rho^(2) as its leading term.
    """
    _check_series_order(model, K, 2)
    _check_separation(model, x1, x2)
    anchors = np.vstack([as_point(x1, model.dim), as_point(x2, model.dim)])
    log_rho2 = math.log(pair_rho2(model, anchors))

    def rho_t_integrand(k: int) -> Callable[[Points], float]:
        return lambda ys: model.rho_t(k, ys)

    def omega_parts(ys: Points) -> tuple[float, float, float]:
        tables = omega_two_tables(model, anchors[0], anchors[1], ys)
        return float(tables.omega1.top), float(tables.omega2.top), float(tables.omega12.top)

    per_order = [integrate_many(omega_parts, k, box, spec) for k in range(1, K + 1)]

    def part(column: int, label: str) -> SeriesResult:
        integrals = [row[column] for row in per_order]
        return _series_from_integrals(integrals, 0.0, box, label=label)

    return J2Decomposition(
        rho_t_part=_series(rho_t_integrand, log_rho2, K, box, spec, label="log j2 rho_T"),
        omega_x1_part=part(0, "log j2 omega_x1"),
        omega_x2_part=part(1, "log j2 omega_x2"),
        omega_pair_part=part(2, "log j2 omega_pair"),
    )


class ExponentialRepresentation(NamedTuple):
    moment_sum: float
    exponential: float


def exponential_representation(
    phi: FiniteFamily,
    N: int,
    box: Box,
    spec: QuadratureSpec,
    *,
    sign: int = -1,
) -> ExponentialRepresentation:
    """Both sides of sum_n s^n/n! int exp*(phi)^(n) = exp(sum_{n>=1} s^n/n! int phi^(n)).

    Truncated at order N; ``sign`` is s = +1 or -1 (the Janossy form).
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if N > phi.n_max:
        raise OrderBoundError("truncation order above the family's bound", order=N, bound=phi.n_max)
    psi = star_exp(phi)

    left = [psi.order0]
    right = []
    for n in range(1, N + 1):
        weight = sign**n / math.factorial(n)
        left.append(weight * integrate_k(psi, n, box, spec).value)
        right.append(weight * integrate_k(phi, n, box, spec).value)
    return ExponentialRepresentation(math.fsum(left), math.exp(math.fsum(right)))


class StabilityCheck(NamedTuple):
    base: SeriesResult
    doubled: SeriesResult
    delta: float


def stability_delta(
    series_fn: Callable[[Box, QuadratureSpec], SeriesResult],
    box: Box,
    spec: QuadratureSpec,
) -> StabilityCheck:
    """Recompute a series on the box of twice the halfwidth, with twice the nodes per axis."""
    base = series_fn(box, spec)
    doubled = series_fn(box.doubled(), spec.refined())
    delta = abs(doubled.value - base.value)
    logger.debug(f"Box doubling {box.halfwidth} -> {2 * box.halfwidth}: delta {delta:.3e}")
    return StabilityCheck(base, doubled, delta)


