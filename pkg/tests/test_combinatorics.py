"""Tests for partition and graph enumeration."""

from __future__ import annotations

import itertools
import math

import networkx as nx
import pytest

from corrinv.combinatorics import (
    bell_polynomial,
    bicolored_graphs,
    connected_graphs,
    cyclic_permutations,
    ordered_splits,
    set_partitions,
)
from corrinv.errors import LimitExceededError

BELL_NUMBERS = [1, 1, 2, 5, 15, 52, 203]
# Connected labeled graphs on n vertices, n = 0..5
CONNECTED_COUNTS = [1, 1, 1, 4, 38, 728]


class TestSetPartitions:
    @pytest.mark.parametrize("n", range(0, 7))
    def test_count_is_bell_number(self, n: int) -> None:
        assert sum(1 for _ in set_partitions(n)) == BELL_NUMBERS[n]

    def test_single_point(self) -> None:
        assert [p.blocks for p in set_partitions(1)] == [((0,),)]

    def test_empty_set_has_one_partition(self) -> None:
        partitions = list(set_partitions(0))
        assert len(partitions) == 1
        assert partitions[0].blocks == ()

    def test_restricted_to_two_blocks(self) -> None:
        blocks = {p.blocks for p in set_partitions(3, n_blocks=2)}
        assert blocks == {((0, 1), (2,)), ((0, 2), (1,)), ((0,), (1, 2))}

    @pytest.mark.parametrize("n", range(1, 6))
    def test_partitions_are_canonical_and_unique(self, n: int) -> None:
        seen = set()
        for partition in set_partitions(n):
            flat = sorted(i for block in partition.blocks for i in block)
            assert flat == list(range(n))
            assert all(block for block in partition.blocks)
            assert list(partition.blocks) == sorted(partition.blocks, key=lambda b: b[0])
            seen.add(partition.blocks)
        assert len(seen) == BELL_NUMBERS[n]

    def test_stirling_numbers(self) -> None:
        # S(5, k) for k = 1..5
        assert [sum(1 for _ in set_partitions(5, n_blocks=k)) for k in range(1, 6)] == [1, 15, 25, 10, 1]

    def test_negative_n_rejected(self) -> None:
        with pytest.raises(ValueError, match="non-negative"):
            list(set_partitions(-1))


class TestOrderedSplits:
    def test_two_parts_of_three_indices(self) -> None:
        splits = list(ordered_splits((0, 1, 2), 2))
        assert len(splits) == 8
        assert all(len(s.parts) == 2 for s in splits)

    @pytest.mark.parametrize("k", range(0, 5))
    def test_three_part_count(self, k: int) -> None:
        assert sum(1 for _ in ordered_splits(tuple(range(k)), 3)) == 3**k

    def test_last_part_proper(self) -> None:
        for split in ordered_splits((0, 1, 2), 3, last_part_proper=True):
            assert 0 < len(split.parts[2]) < 3
        # 27 assignments minus 8 with an empty last part minus 1 with everything in it
        assert sum(1 for _ in ordered_splits((0, 1, 2), 3, last_part_proper=True)) == 18

    def test_parts_cover_indices(self) -> None:
        for split in ordered_splits((3, 5, 8), 3):
            assert sorted(i for part in split.parts for i in part) == [3, 5, 8]

    def test_empty_index_set(self) -> None:
        assert [s.parts for s in ordered_splits((), 2)] == [((), ())]
        assert list(ordered_splits((), 2, require_nonempty=True)) == []

    def test_bad_part_count(self) -> None:
        with pytest.raises(ValueError, match="m must be 2 or 3"):
            list(ordered_splits((0,), 4))


class TestBellPolynomial:
    def test_all_ones_gives_bell_numbers(self) -> None:
        for k in range(7):
            assert bell_polynomial([1.0] * k) == BELL_NUMBERS[k]

    def test_small_cases(self) -> None:
        t1, t2, t3 = 0.3, -1.2, 2.5
        assert bell_polynomial([t1]) == pytest.approx(t1)
        assert bell_polynomial([t1, t2]) == pytest.approx(t1**2 + t2)
        assert bell_polynomial([t1, t2, t3]) == pytest.approx(t1**3 + 3 * t1 * t2 + t3)

    def test_matches_partition_sum(self) -> None:
        t = [0.7, -0.4, 1.3, 0.2, -0.9]
        expected = math.fsum(
            math.prod(t[len(block) - 1] for block in p.blocks) for p in set_partitions(5)
        )
        assert bell_polynomial(t) == pytest.approx(expected, abs=1e-12)


class TestGraphs:
    @pytest.mark.parametrize("n", range(1, 5))
    def test_connected_graph_counts(self, n: int) -> None:
        assert sum(1 for _ in connected_graphs(n)) == CONNECTED_COUNTS[n]

    def test_connected_graph_limit(self) -> None:
        with pytest.raises(LimitExceededError, match="limited to 8"):
            next(connected_graphs(9))

    @pytest.mark.parametrize("n_white,k", [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3)])
    def test_bicolored_members_satisfy_class_rules(self, n_white: int, k: int) -> None:
        brute = set()
        vertices = n_white + k
        pairs = list(itertools.combinations(range(vertices), 2))
        for mask in range(1 << len(pairs)):
            edges = [pair for bit, pair in enumerate(pairs) if mask >> bit & 1]
            if any(i < n_white and j < n_white for i, j in edges):
                continue
            whole = nx.Graph(edges)
            whole.add_nodes_from(range(vertices))
            black = whole.subgraph(range(n_white, vertices))
            if nx.is_connected(whole) and nx.is_connected(black):
                brute.add(frozenset(edges))

        generated = [g.edges for g in bicolored_graphs(n_white, k)]
        assert len(generated) == len(set(generated))
        assert set(generated) == brute

    def test_single_white_vertex_without_blacks(self) -> None:
        graphs = list(bicolored_graphs(1, 0))
        assert len(graphs) == 1
        assert graphs[0].edges == frozenset()
        assert list(bicolored_graphs(2, 0)) == []

    @pytest.mark.parametrize("n", range(1, 7))
    def test_cyclic_permutations(self, n: int) -> None:
        perms = list(cyclic_permutations(n))
        assert len(perms) == math.factorial(n - 1)
        for perm in perms:
            # Following the permutation from 0 visits every point once
            seen = [0]
            while len(seen) < n:
                seen.append(perm[seen[-1]])
            assert sorted(seen) == list(range(n))
            assert perm[seen[-1]] == 0
