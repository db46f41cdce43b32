"""Partition and graph enumerators used by every recursion and oracle.

All streams are deterministic: partitions come out in restricted-growth-string
order, ordered splits and edge subsets in lexicographic order of their encoding.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

import networkx as nx

from corrinv.errors import LimitExceededError

MAX_GRAPH_VERTICES = 8
MAX_BLACK_VERTICES = 7
MAX_CYCLE_LENGTH = 9

Edge = tuple[int, int]


@dataclass(frozen=True)
class Partition:
    """Unordered set partition of {0..n-1}.

    Blocks are sorted by their least element and each block is sorted, so every
    partition has exactly one representation.
    """

    blocks: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)


@dataclass(frozen=True)
class OrderedSplit:
    """Assignment of an index set to m labeled, possibly empty parts."""

    parts: tuple[tuple[int, ...], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.parts)


@dataclass(frozen=True)
class ColoredGraph:
    """Graph whose first n_white vertices are white and the rest black."""

    n_white: int
    n_black: int
    edges: frozenset[Edge]

    @property
    def n_vertices(self) -> int:
        return self.n_white + self.n_black


def set_partitions(n: int, n_blocks: int | None = None) -> Iterator[Partition]:
    """Yield every unordered set partition of {0..n-1} exactly once.

    Args:
        n: Size of the ground set. n = 0 yields the single empty partition.
        n_blocks: Restrict to partitions with exactly this many blocks.

    Yields:
        Partitions in restricted-growth-string order.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if n == 0:
        if n_blocks in (None, 0):
            yield Partition(blocks=())
        return

    labels = [0] * n

    def walk(i: int, used: int) -> Iterator[Partition]:
        if i == n:
            if n_blocks is None or used == n_blocks:
                blocks: list[list[int]] = [[] for _ in range(used)]
                for idx, label in enumerate(labels):
                    blocks[label].append(idx)
                yield Partition(blocks=tuple(tuple(b) for b in blocks))
            return
        # Not enough positions left to open the missing blocks
        if n_blocks is not None and used + (n - i) < n_blocks:
            return
        top = used + 1 if n_blocks is None else min(used + 1, n_blocks)
        for label in range(top):
            labels[i] = label
            yield from walk(i + 1, max(used, label + 1))

    yield from walk(0, 0)


def ordered_splits(
    indices: Sequence[int],
    m: int,
    *,
    require_nonempty: bool = False,
    last_part_proper: bool = False,
) -> Iterator[OrderedSplit]:
    """Yield every assignment of ``indices`` to ``m`` labeled parts.

    Args:
        indices: The index set to split.
        m: Number of parts, 2 or 3.
        require_nonempty: Skip the split where every part is empty.
        last_part_proper: Keep only splits with 0 < |last part| < len(indices).
    """
    if m not in (2, 3):
        raise ValueError(f"m must be 2 or 3, got {m}")
    k = len(indices)
    if k == 0:
        if not require_nonempty and not last_part_proper:
            yield OrderedSplit(parts=((),) * m)
        return

    for labels in itertools.product(range(m), repeat=k):
        if last_part_proper:
            n_last = labels.count(m - 1)
            if n_last == 0 or n_last == k:
                continue
        parts = tuple(
            tuple(idx for idx, label in zip(indices, labels, strict=True) if label == part)
            for part in range(m)
        )
        yield OrderedSplit(parts=parts)


def bell_polynomial(t: Sequence[float]) -> float:
    """Complete Bell polynomial B_k(t_1, ..., t_k).

    Equals the sum over set partitions of {1..k} of the product of t_{|block|}.
    Uses B_{n+1} = sum_i C(n, i) B_{n-i} t_{i+1} with B_0 = 1.
    """
    k = len(t)
    b = [1.0] + [0.0] * k
    for n in range(k):
        b[n + 1] = math.fsum(math.comb(n, i) * b[n - i] * t[i] for i in range(n + 1))
    return b[k]


def _is_connected(n_vertices: int, edges: Sequence[Edge]) -> bool:
    if n_vertices <= 1:
        return True
    graph = nx.Graph()
    graph.add_nodes_from(range(n_vertices))
    graph.add_edges_from(edges)
    return bool(nx.is_connected(graph))


def connected_graphs(n: int) -> Iterator[frozenset[Edge]]:
    """Yield the edge sets of all connected simple graphs on n labeled vertices.

    Raises:
        LimitExceededError: If n exceeds MAX_GRAPH_VERTICES.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if n > MAX_GRAPH_VERTICES:
        raise LimitExceededError("connected graph enumeration", requested=n, limit=MAX_GRAPH_VERTICES)

    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        edges = [pair for bit, pair in enumerate(pairs) if mask >> bit & 1]
        # A connected graph on n vertices needs at least n - 1 edges
        if len(edges) < n - 1:
            continue
        if _is_connected(n, edges):
            yield frozenset(edges)


def bicolored_graphs(n_white: int, k_black: int) -> Iterator[ColoredGraph]:
    """Yield the members of C_{1,k} (n_white=1) or C_{2,k} (n_white=2).

    Members have no white-white edge, are connected, and stay connected after the
    white vertices and their edges are removed. White vertices are 0..n_white-1,
    black vertices n_white..n_white+k_black-1.
    """
    if n_white not in (1, 2):
        raise ValueError(f"n_white must be 1 or 2, got {n_white}")
    if k_black < 0:
        raise ValueError(f"k_black must be non-negative, got {k_black}")
    if k_black > MAX_BLACK_VERTICES:
        raise LimitExceededError("bicolored graph enumeration", requested=k_black, limit=MAX_BLACK_VERTICES)

    if k_black == 0:
        # A lone white vertex is connected; two whites without an edge are not
        if n_white == 1:
            yield ColoredGraph(n_white=1, n_black=0, edges=frozenset())
        return

    blacks = list(range(n_white, n_white + k_black))
    # With a connected black part, the whole graph is connected iff every white
    # vertex has at least one black neighbour
    neighbour_sets = [
        subset
        for size in range(1, k_black + 1)
        for subset in itertools.combinations(blacks, size)
    ]
    for black_edges in connected_graphs(k_black):
        shifted = [(i + n_white, j + n_white) for i, j in black_edges]
        for attachment in itertools.product(neighbour_sets, repeat=n_white):
            white_edges = [(w, b) for w, nbrs in enumerate(attachment) for b in nbrs]
            yield ColoredGraph(
                n_white=n_white,
                n_black=k_black,
                edges=frozenset(shifted + white_edges),
            )


def cyclic_permutations(n: int) -> Iterator[tuple[int, ...]]:
    """Yield all (n-1)! permutations of {0..n-1} that form a single n-cycle.

    Each permutation is returned in one-line notation: ``perm[i]`` is the image of i.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if n > MAX_CYCLE_LENGTH:
        raise LimitExceededError("cyclic permutation enumeration", requested=n, limit=MAX_CYCLE_LENGTH)

    for order in itertools.permutations(range(1, n)):
        cycle = (0, *order)
        perm = [0] * n
        for pos, vertex in enumerate(cycle):
            perm[vertex] = cycle[(pos + 1) % n]
        yield tuple(perm)
