"""Tests for integration over the box."""

from __future__ import annotations

import math

import numpy as np
import pytest

from corrinv.errors import ConfigError, LimitExceededError, QuadratureError
from corrinv.quadrature import Box, QuadratureSpec, integrate_k, integrate_many


def gaussian_bump(pts: np.ndarray) -> float:
    return math.exp(-float(np.sum(pts * pts)))


class TestBox:
    def test_volume_and_doubling(self) -> None:
        box = Box(dim=2, halfwidth=1.5)
        assert box.volume == 9.0
        assert box.doubled() == Box(dim=2, halfwidth=3.0)

    def test_halfwidth_must_be_positive(self) -> None:
        with pytest.raises(ConfigError, match="halfwidth must be positive"):
            Box(dim=1, halfwidth=0.0)

    def test_dimension_must_be_positive(self) -> None:
        with pytest.raises(ConfigError, match="dimension"):
            Box(dim=0, halfwidth=1.0)


class TestSpec:
    @pytest.mark.parametrize(
        "k,dim,nodes",
        [(1, 1, 32), (2, 1, 32), (3, 1, 16), (2, 2, 32), (3, 2, 10), (2, 3, 10), (5, 1, 16)],
    )
    def test_default_nodes(self, k: int, dim: int, nodes: int) -> None:
        assert QuadratureSpec().nodes_for(k, dim) == nodes

    def test_default_tensor_stays_within_budget(self) -> None:
        spec = QuadratureSpec()
        for k in range(1, 4):
            for dim in range(1, 4):
                if k * dim <= spec.max_total_dim:
                    assert spec.nodes_for(k, dim) ** (k * dim) <= 2**20

    def test_explicit_nodes_and_refinement(self) -> None:
        spec = QuadratureSpec(nodes_per_axis=8)
        assert spec.nodes_for(3, 2) == 8
        assert spec.refined().nodes_for(3, 2) == 16
        assert QuadratureSpec().refined().nodes_for(1) == 64

    @pytest.mark.parametrize(
        "k,dim,rule",
        [(1, 1, "tensor"), (3, 2, "tensor"), (3, 3, "monte_carlo"), (4, 1, "monte_carlo")],
    )
    def test_auto_rule(self, k: int, dim: int, rule: str) -> None:
        assert QuadratureSpec().rule_for(k, dim) == rule

    def test_forced_rule(self) -> None:
        assert QuadratureSpec(kind="monte_carlo").rule_for(1, 1) == "monte_carlo"

    def test_invalid_settings(self) -> None:
        with pytest.raises(ConfigError, match="samples"):
            QuadratureSpec(samples=1)
        with pytest.raises(ConfigError, match="workers"):
            QuadratureSpec(workers=0)
        with pytest.raises(ConfigError, match="nodes_per_axis"):
            QuadratureSpec(nodes_per_axis=0)


class TestTensorRule:
    def test_gaussian_over_the_plane(self) -> None:
        result = integrate_k(gaussian_bump, 1, Box(dim=2, halfwidth=6.0), QuadratureSpec(kind="tensor"))
        assert result.value == pytest.approx(math.pi, abs=1e-9)

    def test_two_points_on_the_line(self) -> None:
        result = integrate_k(gaussian_bump, 2, Box(dim=1, halfwidth=6.0), QuadratureSpec(kind="tensor"))
        assert result.value == pytest.approx(math.pi, abs=1e-9)

    def test_polynomials_are_exact(self) -> None:
        spec = QuadratureSpec(kind="tensor", nodes_per_axis=4)
        box = Box(dim=1, halfwidth=1.0)
        quartic = integrate_k(lambda pts: float(pts[0, 0] ** 4), 1, box, spec)
        assert quartic.value == pytest.approx(0.4, abs=1e-15)
        product = integrate_k(lambda pts: float(pts[0, 0] ** 2 * pts[1, 0] ** 2), 2, box, spec)
        assert product.value == pytest.approx(4.0 / 9.0, abs=1e-15)

    def test_error_estimate_compares_with_half_the_nodes(self) -> None:
        spec = QuadratureSpec(kind="tensor", nodes_per_axis=4)
        result = integrate_k(lambda pts: float(pts[0, 0] ** 6), 1, Box(dim=1, halfwidth=1.0), spec)
        assert result.value == pytest.approx(2.0 / 7.0, abs=1e-15)
        # The two-node rule gives 2 * (1/3)^3
        assert result.error == pytest.approx(2.0 / 7.0 - 2.0 / 27.0, abs=1e-15)

    def test_workers_do_not_change_the_value(self) -> None:
        box = Box(dim=1, halfwidth=3.0)
        serial = integrate_k(gaussian_bump, 2, box, QuadratureSpec(kind="tensor"))
        threaded = integrate_k(gaussian_bump, 2, box, QuadratureSpec(kind="tensor", workers=4))
        assert serial == threaded

    def test_dimension_ceiling(self) -> None:
        with pytest.raises(LimitExceededError, match="limited to 6"):
            integrate_k(gaussian_bump, 3, Box(dim=3, halfwidth=1.0), QuadratureSpec(kind="tensor"))


class TestMonteCarlo:
    def test_within_four_standard_errors(self) -> None:
        spec = QuadratureSpec(kind="monte_carlo", samples=20_000, seed=11)
        result = integrate_k(lambda pts: float(pts[0, 0] ** 2), 1, Box(dim=1, halfwidth=1.0), spec)
        assert result.error > 0
        assert abs(result.value - 2.0 / 3.0) < 4.0 * result.error

    def test_seed_is_required(self) -> None:
        with pytest.raises(ConfigError, match="requires a seed"):
            integrate_k(gaussian_bump, 1, Box(dim=1, halfwidth=1.0), QuadratureSpec(kind="monte_carlo"))

    def test_reproducible(self) -> None:
        spec = QuadratureSpec(kind="monte_carlo", samples=1000, seed=3)
        box = Box(dim=2, halfwidth=2.0)
        threaded = QuadratureSpec(kind="monte_carlo", samples=1000, seed=3, workers=3)
        first = integrate_k(gaussian_bump, 2, box, spec)
        second = integrate_k(gaussian_bump, 2, box, threaded)
        assert first == second

    def test_seed_changes_the_draw(self) -> None:
        box = Box(dim=1, halfwidth=2.0)
        a = integrate_k(gaussian_bump, 1, box, QuadratureSpec(kind="monte_carlo", samples=100, seed=1))
        b = integrate_k(gaussian_bump, 1, box, QuadratureSpec(kind="monte_carlo", samples=100, seed=2))
        assert a.value != b.value


class TestManyComponents:
    def test_components_match_separate_integrals(self) -> None:
        box = Box(dim=1, halfwidth=3.0)
        spec = QuadratureSpec(kind="tensor", nodes_per_axis=20)
        first, second = integrate_many(
            lambda pts: (gaussian_bump(pts), float(np.sum(pts * pts))), 2, box, spec
        )
        assert first == integrate_k(gaussian_bump, 2, box, spec)
        assert second.value == pytest.approx(2.0 * 6.0 * 2.0 * 3.0**3 / 3.0, rel=1e-12)

    def test_each_node_is_evaluated_once(self) -> None:
        calls = []

        def integrand(pts: np.ndarray) -> tuple[float, float, float]:
            calls.append(1)
            return 1.0, 2.0, 3.0

        spec = QuadratureSpec(kind="tensor", nodes_per_axis=8)
        values = integrate_many(integrand, 1, Box(1, 1.0), spec)
        # 8 nodes for the value, 4 for the error estimate
        assert len(calls) == 12
        assert [v.value for v in values] == pytest.approx([2.0, 4.0, 6.0])

    def test_monte_carlo_components_share_samples(self) -> None:
        spec = QuadratureSpec(kind="monte_carlo", samples=500, seed=3)
        box = Box(dim=1, halfwidth=1.0)
        same, doubled = integrate_many(
            lambda pts: (gaussian_bump(pts), 2.0 * gaussian_bump(pts)), 2, box, spec
        )
        assert doubled.value == pytest.approx(2.0 * same.value, rel=1e-12)
        assert same == integrate_k(gaussian_bump, 2, box, spec)

    def test_non_finite_component(self) -> None:
        with pytest.raises(QuadratureError, match="non-finite"):
            integrate_many(lambda pts: (1.0, math.nan), 1, Box(1, 1.0), QuadratureSpec(kind="tensor"))


class TestGuards:
    def test_at_most_five_points(self) -> None:
        with pytest.raises(LimitExceededError, match="limited to 5"):
            integrate_k(gaussian_bump, 6, Box(dim=1, halfwidth=1.0), QuadratureSpec(seed=0))

    def test_at_least_one_point(self) -> None:
        with pytest.raises(ValueError, match="at least 1"):
            integrate_k(gaussian_bump, 0, Box(dim=1, halfwidth=1.0), QuadratureSpec())

    def test_non_finite_integrand(self) -> None:
        with pytest.raises(QuadratureError, match="non-finite"):
            integrate_k(lambda pts: math.inf, 1, Box(dim=1, halfwidth=1.0), QuadratureSpec(nodes_per_axis=2))
