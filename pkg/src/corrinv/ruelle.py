"""Ruelle's algebra of functions on finite point configurations.

A family F = (F^(n))_{n>=0} is stored as a scalar F^(0) plus an evaluator for
n >= 1, truncated at an order bound n_max. Every operation returns a new lazy
family; nothing is tabulated because the points are continuous.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Any

import numpy as np
import numpy.typing as npt

from corrinv.combinatorics import set_partitions
from corrinv.errors import OrderBoundError

Points = npt.NDArray[np.float64]
Evaluator = Callable[[Points], float]


def as_points(points: Any, dim: int) -> Points:
    """Coerce a point tuple to a float array of shape (n, dim).

    Accepts an (n, dim) array-like, or a flat sequence of scalars when dim == 1.
    """
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim == 1 and dim == 1:
        arr = arr.reshape(-1, 1)
    if arr.size == 0:
        return np.zeros((0, dim))
    if arr.ndim != 2 or arr.shape[1] != dim:
        raise ValueError(f"expected points of shape (n, {dim}), got {arr.shape}")
    return arr


def as_point(point: Any, dim: int) -> Points:
    """Coerce a single point (scalar when dim == 1, or d coordinates) to shape (1, dim)."""
    arr = np.asarray(point, dtype=np.float64).reshape(-1)
    if arr.shape != (dim,):
        raise ValueError(f"expected a point with {dim} coordinates, got {arr.shape}")
    return arr.reshape(1, dim)


@dataclass(frozen=True)
class FiniteFamily:
    """Truncated element of the algebra.

    Attributes:
        n_max: Largest order the family can be evaluated at.
        dim: Dimension of the points.
        order0: The value on the empty configuration.
        evaluator: Maps an (n, dim) array with 1 <= n <= n_max to F^(n).
    """

    n_max: int
    dim: int
    order0: float
    evaluator: Evaluator

    def __call__(self, points: Any) -> float:
        pts = as_points(points, self.dim)
        n = len(pts)
        if n == 0:
            return self.order0
        if n > self.n_max:
            raise OrderBoundError("family evaluated beyond its order bound", order=n, bound=self.n_max)
        return float(self.evaluator(pts))

    def __add__(self, other: FiniteFamily) -> FiniteFamily:
        _check_compatible(self, other)
        return FiniteFamily(
            n_max=self.n_max,
            dim=self.dim,
            order0=self.order0 + other.order0,
            evaluator=lambda pts: self(pts) + other(pts),
        )

    def scaled(self, factor: float) -> FiniteFamily:
        return FiniteFamily(
            n_max=self.n_max,
            dim=self.dim,
            order0=factor * self.order0,
            evaluator=lambda pts: factor * self(pts),
        )

    def truncated(self, n_max: int) -> FiniteFamily:
        if n_max > self.n_max:
            raise OrderBoundError("cannot raise an order bound", order=n_max, bound=self.n_max)
        return FiniteFamily(n_max=n_max, dim=self.dim, order0=self.order0, evaluator=self.evaluator)


def unit(n_max: int, dim: int) -> FiniteFamily:
    """The unit element: 1 on the empty configuration, 0 elsewhere."""
    return FiniteFamily(n_max=n_max, dim=dim, order0=1.0, evaluator=lambda pts: 0.0)


def _check_compatible(psi: FiniteFamily, phi: FiniteFamily) -> None:
    if psi.n_max != phi.n_max:
        raise OrderBoundError("families have different order bounds", order=phi.n_max, bound=psi.n_max)
    if psi.dim != phi.dim:
        raise ValueError(f"families live in different dimensions ({psi.dim} vs {phi.dim})")


def star_product(psi: FiniteFamily, phi: FiniteFamily) -> FiniteFamily:
    """(psi * phi)(eta) = sum over gamma subset of eta of psi(gamma) phi(eta minus gamma)."""
    _check_compatible(psi, phi)

    def evaluate(pts: Points) -> float:
        n = len(pts)
        full = (1 << n) - 1
        terms = []
        for mask in range(full + 1):
            inside = [i for i in range(n) if mask >> i & 1]
            outside = [i for i in range(n) if not mask >> i & 1]
            terms.append(psi(pts[inside]) * phi(pts[outside]))
        return math.fsum(terms)

    return FiniteFamily(
        n_max=psi.n_max,
        dim=psi.dim,
        order0=psi.order0 * phi.order0,
        evaluator=evaluate,
    )


@lru_cache(maxsize=None)
def _partition_blocks(n: int, min_blocks: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    return tuple(p.blocks for p in set_partitions(n) if len(p) >= min_blocks)


def partition_sum(values: Callable[[tuple[int, ...]], float], n: int, *, min_blocks: int = 1) -> float:
    """Sum over set partitions of {0..n-1} of the product of values(block)."""
    return math.fsum(
        math.prod(values(block) for block in blocks) for blocks in _partition_blocks(n, min_blocks)
    )


def star_exp(phi: FiniteFamily) -> FiniteFamily:
    """exp*(phi) for phi(empty) = 0, evaluated as a sum over set partitions."""
    if phi.order0 != 0.0:
        raise ValueError(f"star_exp needs a family vanishing on the empty set, got {phi.order0}")

    def evaluate(pts: Points) -> float:
        return partition_sum(lambda block: phi(pts[list(block)]), len(pts))

    return FiniteFamily(n_max=phi.n_max, dim=phi.dim, order0=1.0, evaluator=evaluate)


def star_log(psi: FiniteFamily) -> FiniteFamily:
    """Inverse of star_exp for psi(empty) = 1.

    Computed bottom-up over the subsets of the evaluated tuple:
    phi(S) = psi(S) - sum over partitions of S into >= 2 blocks of prod phi(block).
    """
    if psi.order0 != 1.0:
        raise ValueError(f"star_log needs a family equal to 1 on the empty set, got {psi.order0}")

    def evaluate(pts: Points) -> float:
        n = len(pts)
        table: dict[tuple[int, ...], float] = {}
        for size in range(1, n + 1):
            for subset in _subsets_of_size(n, size):
                lower = partition_sum(
                    lambda block, s=subset: table[tuple(s[i] for i in block)],
                    size,
                    min_blocks=2,
                )
                table[subset] = psi(pts[list(subset)]) - lower
        return table[tuple(range(n))]

    return FiniteFamily(n_max=psi.n_max, dim=psi.dim, order0=0.0, evaluator=evaluate)


@lru_cache(maxsize=None)
def _subsets_of_size(n: int, size: int) -> tuple[tuple[int, ...], ...]:
    return tuple(combinations(range(n), size))


def d_reduce(gamma: Sequence[Sequence[float]] | Points, psi: FiniteFamily) -> FiniteFamily:
    """(D_gamma psi)(eta) = psi(eta union gamma); the order bound drops by |gamma|."""
    anchors = as_points(gamma, psi.dim)
    m = len(anchors)
    if m > psi.n_max:
        raise OrderBoundError("reduction set larger than the order bound", order=m, bound=psi.n_max)
    if m == 0:
        return psi

    return FiniteFamily(
        n_max=psi.n_max - m,
        dim=psi.dim,
        order0=psi(anchors),
        evaluator=lambda pts: psi(np.vstack([pts, anchors])),
    )
