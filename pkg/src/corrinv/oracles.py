"""Brute-force reference values used to check the main computation paths.

Nothing here goes through the subset tables of ``omega`` or through
``ruelle.star_log``: the graph sums walk bicolored graphs directly and the
truncation oracle enumerates ordered set partitions by surjections.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from corrinv.combinatorics import ColoredGraph, bicolored_graphs
from corrinv.errors import HardCoreError, LimitExceededError
from corrinv.models.base import CorrelationModel
from corrinv.models.kirkwood import KirkwoodModel
from corrinv.models.low_activity import LowActivityModel
from corrinv.omega import omega_one, omega_two, reconstruct_check
from corrinv.ruelle import Points, as_point, as_points, star_log

logger = logging.getLogger(__name__)

MAX_ORACLE_FIELD_POINTS = 4
MAX_TRUNCATION_ORDER = 6

PairFunction = Callable[[Any], Any]


@dataclass(frozen=True)
class GraphWeight:
    """A graph together with the product of its edge factors at given coordinates."""

    graph: ColoredGraph
    weight: float


def graph_weights(
    edge_fn: PairFunction, n_white: int, anchors: Points, ys: Points
) -> list[GraphWeight]:
    """Edge-factor products of every graph in the bicolored class of size len(ys)."""
    vertices = np.vstack([anchors, ys])
    k = len(ys)
    if k > MAX_ORACLE_FIELD_POINTS:
        raise LimitExceededError("graph-sum oracle", requested=k, limit=MAX_ORACLE_FIELD_POINTS)

    weights = []
    for graph in bicolored_graphs(n_white, k):
        factor = 1.0
        for i, j in sorted(graph.edges):
            factor *= float(edge_fn(vertices[i] - vertices[j]))
        weights.append(GraphWeight(graph, factor))
    return weights


def _graph_sum(edge_fn: PairFunction, n_white: int, anchors: Points, ys: Points) -> float:
    return math.fsum(gw.weight for gw in graph_weights(edge_fn, n_white, anchors, ys))


def kirkwood_omega_one_oracle(sigma: float, h: PairFunction, x: Any, ys: Any) -> float:
    """sigma^k times the sum over one-white-vertex graphs of the product of h."""
    pts = np.asarray(ys, dtype=np.float64)
    dim = 1 if pts.ndim == 1 else pts.shape[1]
    pts = as_points(pts, dim)
    return sigma ** len(pts) * _graph_sum(h, 1, as_point(x, dim), pts)


def kirkwood_omega_two_oracle(sigma: float, h: PairFunction, x1: Any, x2: Any, ys: Any) -> float:
    """sigma^k times the sum over two-white-vertex graphs of the product of h."""
    pts = np.asarray(ys, dtype=np.float64)
    dim = 1 if pts.ndim == 1 else pts.shape[1]
    pts = as_points(pts, dim)
    anchors = np.vstack([as_point(x1, dim), as_point(x2, dim)])
    return sigma ** len(pts) * _graph_sum(h, 2, anchors, pts)


def mayer_leading_omega(z: float, u: PairFunction, n_white: int, anchors: Any, ys: Any) -> float:
    """z^(n_white + k) times the graph sum with Mayer edges f = exp(-u) - 1.

    These are the graphs without black vertices beyond the field points; the
    white-white edge never appears.
    """
    if n_white not in (1, 2):
        raise ValueError(f"n_white must be 1 or 2, got {n_white}")
    pts = np.asarray(ys, dtype=np.float64)
    dim = 1 if pts.ndim == 1 else pts.shape[1]
    pts = as_points(pts, dim)
    white = np.asarray(anchors, dtype=np.float64).reshape(n_white, dim)

    def mayer(disp: Any) -> float:
        return float(np.expm1(-np.asarray(u(disp))))

    return z ** (n_white + len(pts)) * _graph_sum(mayer, n_white, white, pts)


def truncation_oracle(rho_evaluator: Callable[[Points], float], n: int, points: Any) -> float:
    """rho_T^(n) from rho by the cluster recursion over ordered partitions.

    rho^(n) = sum over ordered partitions (pi_1..pi_l) of 1/l! prod rho_T(pi_i), so

        rho_T^(n) = rho^(n) - sum_{l >= 2} 1/l! sum over surjections onto l labels
                    of prod rho_T(block)

    Blocks are evaluated recursively on sub-tuples.
    """
    if n > MAX_TRUNCATION_ORDER:
        raise LimitExceededError("truncation oracle", requested=n, limit=MAX_TRUNCATION_ORDER)
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    if len(pts) != n:
        raise ValueError(f"expected {n} points, got {len(pts)}")

    memo: dict[tuple[int, ...], float] = {}

    def truncated(idx: tuple[int, ...]) -> float:
        if idx in memo:
            return memo[idx]
        m = len(idx)
        value = rho_evaluator(pts[list(idx)])
        for labels in range(2, m + 1):
            weight = 1.0 / math.factorial(labels)
            for assignment in itertools.product(range(labels), repeat=m):
                if len(set(assignment)) != labels:
                    continue
                blocks = [
                    tuple(i for i, a in zip(idx, assignment, strict=True) if a == label)
                    for label in range(labels)
                ]
                value -= weight * math.prod(truncated(block) for block in blocks)
        memo[idx] = value
        return value

    return truncated(tuple(range(n)))


@dataclass
class OracleCheck:
    name: str
    max_residual: float
    tolerance: float
    samples: int

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "samples": self.samples,
            "passed": self.passed,
        }


@dataclass
class OracleReport:
    model: dict[str, Any]
    checks: list[OracleCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_dict(self) -> dict[str, Any]:
        return {
            "model": self.model,
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks],
        }


def run_oracle_suite(
    model: CorrelationModel,
    *,
    seed: int = 0,
    samples: int = 20,
    max_k: int = 3,
    tolerance: float = 1e-9,
    spread: float | None = None,
) -> OracleReport:
    """Compare the main paths with the brute-force oracles at random points.

    Every model gets the truncation oracle (against star_log) and the
    reconstruction identity; Kirkwood models also get both omega graph sums,
    and zeroth-order low-activity models the Mayer graph sums.
    """
    rng = np.random.default_rng(seed)
    width = spread if spread is not None else 1.5 * model.correlation_length
    dim = model.dim
    report = OracleReport(model=model.describe())

    def draw(n: int) -> Points:
        return rng.uniform(-width, width, size=(n, dim))

    max_truncation = min(model.max_order, 5)
    log_family = star_log(model.rho_family(max_truncation))
    residual = 0.0
    for _ in range(samples):
        for n in range(1, max_truncation + 1):
            pts = draw(n)
            direct = truncation_oracle(lambda sub: model.rho(len(sub), sub), n, pts)
            scale = max(1.0, abs(direct))
            residual = max(
                residual,
                abs(direct - log_family(pts)) / scale,
                abs(direct - model.rho_t(n, pts)) / scale,
            )
    report.checks.append(OracleCheck("truncation", residual, tolerance, samples))

    k_reconstruct = min(max_k, model.max_order - 2, 4)
    residual = 0.0
    for _ in range(samples):
        for k in range(1, k_reconstruct + 1):
            anchors = draw(2)
            try:
                residual = max(residual, reconstruct_check(model, anchors[0], anchors[1], draw(k)))
            except HardCoreError:
                logger.debug("Skipping an anchor pair inside the hard core")
    report.checks.append(OracleCheck("reconstruction", residual, tolerance, samples))

    if isinstance(model, KirkwoodModel):
        _append_graph_checks(report, model, draw, samples, max_k, tolerance)
    if isinstance(model, LowActivityModel) and model.mayer_order == 0:
        _append_mayer_checks(report, model, draw, samples, max_k, tolerance)

    for check in report.checks:
        logger.info(
            f"Oracle {check.name}: max residual {check.max_residual:.3e} "
            f"({'pass' if check.passed else 'FAIL'})"
        )
    return report


def _append_graph_checks(
    report: OracleReport,
    model: KirkwoodModel,
    draw: Callable[[int], Points],
    samples: int,
    max_k: int,
    tolerance: float,
) -> None:
    k_top = min(max_k, model.max_order - 2, MAX_ORACLE_FIELD_POINTS)
    one = two = 0.0
    for _ in range(samples):
        for k in range(1, k_top + 1):
            anchors, ys = draw(2), draw(k)
            one = max(
                one,
                abs(
                    omega_one(model, anchors[0], ys)
                    - kirkwood_omega_one_oracle(model.sigma, model.h, anchors[0], ys)
                ),
            )
            two = max(
                two,
                abs(
                    omega_two(model, anchors[0], anchors[1], ys)
                    - kirkwood_omega_two_oracle(model.sigma, model.h, anchors[0], anchors[1], ys)
                ),
            )
    report.checks.append(OracleCheck("kirkwood_omega_one", one, tolerance, samples))
    report.checks.append(OracleCheck("kirkwood_omega_two", two, tolerance, samples))


def _append_mayer_checks(
    report: OracleReport,
    model: LowActivityModel,
    draw: Callable[[int], Points],
    samples: int,
    max_k: int,
    tolerance: float,
) -> None:
    k_top = min(max_k, model.max_order - 2, MAX_ORACLE_FIELD_POINTS)
    z = model.z
    residual = 0.0
    for _ in range(samples):
        for k in range(1, k_top + 1):
            anchors, ys = draw(2), draw(k)
            one = z * omega_one(model, anchors[0], ys)
            two = z**2 * omega_two(model, anchors[0], anchors[1], ys)
            residual = max(
                residual,
                abs(one - mayer_leading_omega(z, model.u, 1, anchors[:1], ys)),
                abs(two - mayer_leading_omega(z, model.u, 2, anchors, ys)),
            )
    report.checks.append(OracleCheck("mayer_leading_omega", residual, tolerance, samples))


