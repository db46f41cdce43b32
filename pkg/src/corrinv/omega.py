"""Reduced truncated functions omega for one and two anchor points.

For fixed anchors and field points y_0..y_{k-1}, every quantity is tabulated
over the subsets of the field points (bitmasks), filled bottom-up by subset
size. With A_i(S) = rho_T^(1+|S|)(x_i, S) / rho and A_i(empty) = 1:

    omega(x; S)       = A(S) - sum over partitions of S into >= 2 blocks of prod omega
    omega(x1, x2; S)  = rho_T^(2+|S|)(x1, x2, S) / rho^(2)
                        - (rho_T^(2) / rho^(2)) * sum_{(s1, s2)} A_1(s1) A_2(s2)
                        - sum_{(s1, s2, s3), 0 < |s3| < |S|} A_1(s1) A_2(s2) E(s3)
                        - sum over partitions of S into >= 2 blocks of prod omega(x1, x2; .)

where E = exp*(omega(x1, x2; .)) and the splits are ordered and may have empty parts.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

import numpy as np

from corrinv.combinatorics import ordered_splits, set_partitions
from corrinv.errors import HardCoreError, OrderBoundError
from corrinv.models.base import CorrelationModel
from corrinv.ruelle import FiniteFamily, Points, as_point, as_points, star_exp

logger = logging.getLogger(__name__)

# Below this rho^(2) is treated as zero
HARD_CORE_FLOOR = 1e-300
MAX_FIELD_POINTS = 5


@dataclass
class SubsetTable:
    """Values indexed by subsets (bitmasks) of the field points ``ys``."""

    anchor: Points
    ys: Points
    values: dict[int, float] = field(default_factory=dict)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.ys)) - 1

    @property
    def top(self) -> float:
        return self.values[self.full_mask]


def _bits(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def _to_mask(indices: tuple[int, ...]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


@lru_cache(maxsize=None)
def _masks_by_size(k: int) -> tuple[int, ...]:
    return tuple(sorted(range(1, 1 << k), key=lambda m: (m.bit_count(), m)))


@lru_cache(maxsize=None)
def _block_masks(mask: int, min_blocks: int) -> tuple[tuple[int, ...], ...]:
    """Set partitions of the bits of ``mask``, each block as a submask."""
    bits = _bits(mask)
    return tuple(
        tuple(_to_mask(tuple(bits[i] for i in block)) for block in partition.blocks)
        for partition in set_partitions(len(bits))
        if len(partition) >= min_blocks
    )


@lru_cache(maxsize=None)
def _split_masks(mask: int, m: int, last_part_proper: bool) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(_to_mask(part) for part in split.parts)
        for split in ordered_splits(_bits(mask), m, last_part_proper=last_part_proper)
    )


def _partition_sum(table: dict[int, float], mask: int, min_blocks: int) -> float:
    return math.fsum(
        math.prod(table[block] for block in blocks) for blocks in _block_masks(mask, min_blocks)
    )


def _field_points(model: CorrelationModel, ys: Any) -> Points:
    pts = as_points(ys, model.dim)
    k = len(pts)
    if k < 1:
        raise ValueError("omega needs at least one field point")
    if k > MAX_FIELD_POINTS:
        raise OrderBoundError("too many field points", order=k, bound=MAX_FIELD_POINTS)
    return pts


def _require_order(model: CorrelationModel, n: int) -> None:
    if n > model.max_order:
        raise OrderBoundError(
            f"{model.kind} model supports orders up to {model.max_order}",
            order=n,
            bound=model.max_order,
        )


def _anchor_ratio_table(model: CorrelationModel, x: Points, ys: Points) -> dict[int, float]:
    """A(S) = rho_T^(1+|S|)(x, S) / rho, with A(empty) = 1."""
    table = {0: 1.0}
    for mask in _masks_by_size(len(ys)):
        sub = ys[list(_bits(mask))]
        table[mask] = model.rho_t(1 + len(sub), np.vstack([x, sub])) / model.density
    return table


def omega_one_table(model: CorrelationModel, x: Any, ys: Any) -> SubsetTable:
    """omega(x; S) for every non-empty subset S of ys."""
    pts = _field_points(model, ys)
    anchor = as_point(x, model.dim)
    _require_order(model, 1 + len(pts))
    ratios = _anchor_ratio_table(model, anchor, pts)
    return SubsetTable(anchor=anchor, ys=pts, values=_omega_from_ratios(ratios, len(pts)))


def _omega_from_ratios(ratios: dict[int, float], k: int) -> dict[int, float]:
    omega: dict[int, float] = {}
    for mask in _masks_by_size(k):
        omega[mask] = ratios[mask] - _partition_sum(omega, mask, 2)
    return omega


def omega_one(model: CorrelationModel, x: Any, ys: Any) -> float:
    """omega^(k)(x; y_1..y_k) for one anchor point."""
    return omega_one_table(model, x, ys).top


@dataclass
class PairTables:
    """All tables of a two-anchor evaluation over the same field points."""

    anchors: Points
    ys: Points
    rho2: float
    rho_t2: float
    ratio1: dict[int, float]
    ratio2: dict[int, float]
    omega1: SubsetTable
    omega2: SubsetTable
    omega12: SubsetTable
    exp_omega12: dict[int, float]


def pair_rho2(model: CorrelationModel, anchors: Points) -> float:
    """rho^(2) at the anchors, refusing hard-core overlaps."""
    rho2 = model.rho(2, anchors)
    if rho2 < HARD_CORE_FLOOR:
        separation = float(np.linalg.norm(anchors[0] - anchors[1]))
        raise HardCoreError(
            "rho^(2) vanishes at the anchor pair",
            separation=separation,
            radius=model.hard_core_radius,
        )
    return rho2


def omega_two_tables(model: CorrelationModel, x1: Any, x2: Any, ys: Any) -> PairTables:
    """Fill the one- and two-anchor tables for anchors x1, x2 and field points ys."""
    pts = _field_points(model, ys)
    k = len(pts)
    dim = model.dim
    anchors = np.vstack([as_point(x1, dim), as_point(x2, dim)])
    _require_order(model, 2 + k)

    rho2 = pair_rho2(model, anchors)
    rho_t2 = model.rho_t(2, anchors)
    ratio1 = _anchor_ratio_table(model, anchors[:1], pts)
    ratio2 = _anchor_ratio_table(model, anchors[1:], pts)
    # A_1 * A_2 as a subset convolution
    pair_product = {
        mask: math.fsum(ratio1[s1] * ratio2[s2] for s1, s2 in _split_masks(mask, 2, False))
        for mask in _masks_by_size(k)
    }

    omega12: dict[int, float] = {}
    exp_omega12: dict[int, float] = {0: 1.0}
    for mask in _masks_by_size(k):
        sub = pts[list(_bits(mask))]
        leading = model.rho_t(2 + len(sub), np.vstack([anchors, sub])) / rho2
        disconnected = rho_t2 / rho2 * pair_product[mask]
        coupled = math.fsum(
            ratio1[s1] * ratio2[s2] * exp_omega12[s3]
            for s1, s2, s3 in _split_masks(mask, 3, True)
        )
        products = _partition_sum(omega12, mask, 2)
        omega12[mask] = leading - disconnected - coupled - products
        exp_omega12[mask] = omega12[mask] + products

    return PairTables(
        anchors=anchors,
        ys=pts,
        rho2=rho2,
        rho_t2=rho_t2,
        ratio1=ratio1,
        ratio2=ratio2,
        omega1=SubsetTable(anchors[:1], pts, _omega_from_ratios(ratio1, k)),
        omega2=SubsetTable(anchors[1:], pts, _omega_from_ratios(ratio2, k)),
        omega12=SubsetTable(anchors, pts, omega12),
        exp_omega12=exp_omega12,
    )


def omega_two(model: CorrelationModel, x1: Any, x2: Any, ys: Any) -> float:
    """omega^(k)(x1, x2; y_1..y_k) for two anchor points."""
    return omega_two_tables(model, x1, x2, ys).omega12.top


def f2_family(model: CorrelationModel, x1: Any, x2: Any, ys: Any) -> float:
    """F^(k)(y) = rho_T^(k)(y) + omega(x1; y) + omega(x2; y) + omega(x1, x2; y)."""
    tables = omega_two_tables(model, x1, x2, ys)
    k = len(tables.ys)
    return (
        model.rho_t(k, tables.ys)
        + tables.omega1.top
        + tables.omega2.top
        + tables.omega12.top
    )


def reconstruct_check(model: CorrelationModel, x1: Any, x2: Any, ys: Any) -> float:
    """|rho^(2)(x1, x2) exp*(F)(ys) - rho^(2+k)(x1, x2, ys)|, which should vanish."""
    pts = _field_points(model, ys)
    k = len(pts)
    if k > 4:
        raise OrderBoundError("reconstruction check limited to 4 field points", order=k, bound=4)
    dim = model.dim
    anchors = np.vstack([as_point(x1, dim), as_point(x2, dim)])
    _require_order(model, 2 + k)

    family = FiniteFamily(
        n_max=k,
        dim=dim,
        order0=0.0,
        evaluator=lambda sub: f2_family(model, anchors[0], anchors[1], sub),
    )
    rebuilt = pair_rho2(model, anchors) * star_exp(family)(pts)
    direct = model.rho(2 + k, np.vstack([anchors, pts]))
    residual = abs(rebuilt - direct)
    logger.debug(f"Reconstruction residual at k={k}: {residual:.3e}")
    return residual
