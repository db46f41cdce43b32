"""Integration of functions of k points over the box [-L, L]^d.

Two rules: a full Gauss-Legendre tensor product (error from halving the node
count) and seeded uniform Monte Carlo (error from the sample standard error).
Node evaluation may run on a thread pool; results are reduced in node order
with math.fsum so the value does not depend on the number of workers.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Callable, Iterable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Literal, NamedTuple

import numpy as np
import numpy.typing as npt

from corrinv.errors import ConfigError, LimitExceededError, QuadratureError

logger = logging.getLogger(__name__)

MAX_POINTS = 5
DEFAULT_SAMPLES = 200_000
DEFAULT_MAX_TOTAL_DIM = 6
TENSOR_NODE_BUDGET = 2**20

Integrand = Callable[[npt.NDArray[np.float64]], float]
VectorIntegrand = Callable[[npt.NDArray[np.float64]], Sequence[float]]
QuadratureKind = Literal["auto", "tensor", "monte_carlo"]


@dataclass(frozen=True)
class Box:
    """The integration window [-halfwidth, halfwidth]^dim."""

    dim: int
    halfwidth: float

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ConfigError("box dimension must be at least 1", field="box.dim", value=self.dim)
        if not self.halfwidth > 0:
            raise ConfigError("box halfwidth must be positive", field="box.halfwidth", value=self.halfwidth)

    @property
    def volume(self) -> float:
        return (2.0 * self.halfwidth) ** self.dim

    def doubled(self) -> Box:
        return replace(self, halfwidth=2.0 * self.halfwidth)

    def to_dict(self) -> dict[str, float]:
        return {"dim": self.dim, "halfwidth": self.halfwidth}


@dataclass(frozen=True)
class QuadratureSpec:
    """How integrals over the box are computed.

    Attributes:
        kind: ``tensor``, ``monte_carlo``, or ``auto`` (tensor while k <= 3 and
            d*k fits the ceiling, Monte Carlo beyond).
        nodes_per_axis: Gauss nodes per axis; None picks 32 for k <= 2 and 16 for k = 3,
            fewer when d*k is large enough to exceed TENSOR_NODE_BUDGET.
        samples: Monte Carlo sample count.
        seed: Monte Carlo seed; mandatory when sampling.
        max_total_dim: Ceiling on d*k for the tensor rule.
        workers: Threads used to evaluate nodes.
        node_multiplier: Scales the default node count (used by the box-doubling check).
    """

    kind: QuadratureKind = "auto"
    nodes_per_axis: int | None = None
    samples: int = DEFAULT_SAMPLES
    seed: int | None = None
    max_total_dim: int = DEFAULT_MAX_TOTAL_DIM
    workers: int = 1
    node_multiplier: int = 1

    def __post_init__(self) -> None:
        if self.nodes_per_axis is not None and self.nodes_per_axis < 1:
            raise ConfigError("nodes_per_axis must be positive", field="quadrature.nodes_per_axis")
        if self.samples < 2:
            raise ConfigError("at least 2 samples are needed", field="quadrature.samples")
        if self.workers < 1:
            raise ConfigError("workers must be positive", field="quadrature.workers")

    def nodes_for(self, k: int, dim: int = 1) -> int:
        if self.nodes_per_axis is not None:
            return self.nodes_per_axis * self.node_multiplier
        base = 32 if k <= 2 else 16
        # Keep the default product rule within TENSOR_NODE_BUDGET nodes in total
        cap = int(TENSOR_NODE_BUDGET ** (1.0 / (k * dim)) + 1e-9)
        return max(2, min(base, cap)) * self.node_multiplier

    def rule_for(self, k: int, dim: int) -> Literal["tensor", "monte_carlo"]:
        if self.kind != "auto":
            return self.kind
        if k <= 3 and dim * k <= self.max_total_dim:
            return "tensor"
        return "monte_carlo"

    def refined(self) -> QuadratureSpec:
        """Same rule with twice the nodes per axis."""
        return replace(self, node_multiplier=2 * self.node_multiplier)


class Integral(NamedTuple):
    value: float
    error: float


def integrate_k(f: Integrand, k: int, box: Box, spec: QuadratureSpec) -> Integral:
    """Integrate f over box^k.

    Args:
        f: Receives a (k, d) array of points and returns a finite real.
        k: Number of points.
        box: Integration window.
        spec: Rule and resolution.

    Raises:
        LimitExceededError: If k > 5, or d*k exceeds the tensor ceiling.
        QuadratureError: If f returns a non-finite value.
        ConfigError: If Monte Carlo is used without a seed.
    """
    return integrate_many(lambda pts: (f(pts),), k, box, spec)[0]


def integrate_many(f: VectorIntegrand, k: int, box: Box, spec: QuadratureSpec) -> list[Integral]:
    """Integrate every component of f over box^k with one evaluation per node.

    Same rules and errors as ``integrate_k``; f returns a fixed-length sequence.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if k > MAX_POINTS:
        raise LimitExceededError("integration over k points", requested=k, limit=MAX_POINTS)

    rule = spec.rule_for(k, box.dim)
    if rule == "tensor":
        return _tensor(f, k, box, spec)
    return _monte_carlo(f, k, box, spec)


def _evaluate(
    f: VectorIntegrand, nodes: Iterable[npt.NDArray[np.float64]], workers: int
) -> Iterator[Sequence[float]]:
    if workers == 1:
        yield from map(f, nodes)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map keeps node order, so the reduction below is deterministic
        yield from pool.map(f, nodes, chunksize=64)


def _checked(
    values: Iterable[Sequence[float]], nodes: list[npt.NDArray[np.float64]]
) -> list[tuple[float, ...]]:
    checked = []
    for idx, value in enumerate(values):
        row = tuple(float(v) for v in value)
        if not all(math.isfinite(v) for v in row):
            raise QuadratureError("non-finite integrand value", node=nodes[idx].tolist())
        checked.append(row)
    return checked


def _tensor_sum(
    f: VectorIntegrand, k: int, box: Box, nodes_per_axis: int, workers: int
) -> list[float]:
    d = box.dim
    x, w = np.polynomial.legendre.leggauss(nodes_per_axis)
    x = x * box.halfwidth
    w = w * box.halfwidth

    points = []
    weights = []
    for idx in itertools.product(range(nodes_per_axis), repeat=k * d):
        points.append(x[list(idx)].reshape(k, d))
        weights.append(math.prod(w[i] for i in idx))
    values = _checked(_evaluate(f, points, workers), points)
    return [
        math.fsum(wt * v for wt, v in zip(weights, column, strict=True))
        for column in zip(*values, strict=True)
    ]


def _tensor(f: VectorIntegrand, k: int, box: Box, spec: QuadratureSpec) -> list[Integral]:
    if box.dim * k > spec.max_total_dim:
        raise LimitExceededError(
            "tensor quadrature dimension d*k", requested=box.dim * k, limit=spec.max_total_dim
        )
    n = spec.nodes_for(k, box.dim)
    logger.debug(f"Tensor rule: k={k}, d={box.dim}, {n} nodes/axis ({n ** (k * box.dim)} nodes)")
    values = _tensor_sum(f, k, box, n, spec.workers)
    coarse = _tensor_sum(f, k, box, max(1, n // 2), spec.workers)
    return [Integral(v, abs(v - c)) for v, c in zip(values, coarse, strict=True)]


def _monte_carlo(f: VectorIntegrand, k: int, box: Box, spec: QuadratureSpec) -> list[Integral]:
    if spec.seed is None:
        raise ConfigError("Monte Carlo integration requires a seed", field="quadrature.seed")
    d = box.dim
    rng = np.random.default_rng([spec.seed, k])
    samples = rng.uniform(-box.halfwidth, box.halfwidth, size=(spec.samples, k, d))
    logger.debug(f"Monte Carlo rule: k={k}, d={d}, {spec.samples} samples, seed={spec.seed}")

    nodes = list(samples)
    values = np.array(_checked(_evaluate(f, nodes, spec.workers), nodes))
    volume = box.volume**k
    root_n = math.sqrt(len(values))
    return [
        Integral(
            volume * math.fsum(column) / len(column),
            volume * float(np.std(column, ddof=1)) / root_n,
        )
        for column in values.T
    ]
