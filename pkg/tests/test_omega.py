"""Tests for the reduced truncated functions omega."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np
import pytest

from corrinv.combinatorics import connected_graphs
from corrinv.errors import HardCoreError, OrderBoundError
from corrinv.models import (
    DeterminantalModel,
    Gaussian,
    KirkwoodModel,
    LowActivityModel,
    PoissonModel,
    TabulatedModel,
)
from corrinv.omega import f2_family, omega_one, omega_two, omega_two_tables, reconstruct_check
from corrinv.oracles import kirkwood_omega_one_oracle, kirkwood_omega_two_oracle

POINT_SETS = 50


class TestKirkwoodGraphSums:
    """For the Kirkwood closure omega is a bicolored graph sum with edge weight h."""

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_one_anchor(self, kirkwood: KirkwoodModel, rng: np.random.Generator, k: int) -> None:
        for _ in range(POINT_SETS):
            x = rng.uniform(-1.0, 1.0)
            ys = rng.uniform(-1.5, 1.5, size=(k, 1))
            expected = kirkwood_omega_one_oracle(0.2, kirkwood.h, x, ys)
            assert omega_one(kirkwood, x, ys) == pytest.approx(expected, rel=1e-10, abs=1e-15)

    @pytest.mark.parametrize("k", [1, 2, 3, pytest.param(4, marks=pytest.mark.slow)])
    def test_two_anchors(self, kirkwood: KirkwoodModel, rng: np.random.Generator, k: int) -> None:
        for _ in range(POINT_SETS):
            x1, x2 = rng.uniform(-1.0, 1.0, size=2)
            ys = rng.uniform(-1.5, 1.5, size=(k, 1))
            expected = kirkwood_omega_two_oracle(0.2, kirkwood.h, x1, x2, ys)
            assert omega_two(kirkwood, x1, x2, ys) == pytest.approx(expected, rel=1e-10, abs=1e-15)

    @pytest.mark.parametrize("k", [1, 2])
    def test_two_dimensions(self, kirkwood_2d: KirkwoodModel, rng: np.random.Generator, k: int) -> None:
        x1, x2 = rng.uniform(-1.0, 1.0, size=(2, 2))
        ys = rng.uniform(-1.5, 1.5, size=(k, 2))
        expected = kirkwood_omega_two_oracle(0.2, kirkwood_2d.h, x1, x2, ys)
        assert omega_two(kirkwood_2d, x1, x2, ys) == pytest.approx(expected, rel=1e-10, abs=1e-15)


def kirkwood_f2(sigma: float, h: Gaussian, x1: float, x2: float, ys: np.ndarray) -> float:
    """sigma^k prod_y (1 + h(x1 - y))(1 + h(x2 - y)) times the connected graph sum over ys."""
    k = len(ys)
    vertex = math.prod(
        (1.0 + float(h(x1 - y))) * (1.0 + float(h(x2 - y))) for y in ys[:, 0].tolist()
    )
    connected = math.fsum(
        math.prod(float(h(ys[i] - ys[j])) for i, j in edges) for edges in connected_graphs(k)
    )
    return sigma**k * vertex * connected


class TestKirkwoodF2:
    """exp*(F) = rho^(2+k) / rho^(2) factorises into vertex weights and (1 + h) edges."""

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_closed_form(self, kirkwood: KirkwoodModel, rng: np.random.Generator, k: int) -> None:
        for _ in range(POINT_SETS):
            x1, x2 = rng.uniform(-1.0, 1.0, size=2)
            ys = rng.uniform(-1.5, 1.5, size=(k, 1))
            expected = kirkwood_f2(0.2, kirkwood.h, x1, x2, ys)
            assert f2_family(kirkwood, x1, x2, ys) == pytest.approx(expected, rel=1e-10, abs=1e-15)

    def test_single_field_point(self, kirkwood: KirkwoodModel) -> None:
        h = kirkwood.h
        expected = 0.2 * (1.0 + float(h(0.5))) * (1.0 + float(h(-0.5)))
        assert f2_family(kirkwood, 0.0, 1.0, [[0.5]]) == pytest.approx(expected, rel=1e-12)


class TestLowOrders:
    def test_single_field_point_one_anchor(self, kirkwood: KirkwoodModel) -> None:
        expected = kirkwood.rho_t(2, [0.3, -0.2]) / kirkwood.density
        assert omega_one(kirkwood, 0.3, [[-0.2]]) == pytest.approx(expected)

    def test_single_field_point_two_anchors(self, determinantal: DeterminantalModel) -> None:
        """omega(x1, x2; y) is the integrand of the first correction to the mean force."""
        x1, x2, y = 0.0, 0.8, -0.5
        model = determinantal
        rho2 = model.rho(2, [x1, x2])
        expected = (
            model.rho_t(3, [x1, x2, y])
            - model.rho_t(2, [x1, x2]) * (model.rho_t(2, [x1, y]) + model.rho_t(2, [x2, y])) / model.density
        ) / rho2
        assert omega_two(model, x1, x2, [[y]]) == pytest.approx(expected, rel=1e-12)

    def test_poisson_has_no_reduced_correlations(self, poisson: PoissonModel) -> None:
        ys = [[0.1], [0.4], [-0.7]]
        assert omega_one(poisson, 0.0, ys) == 0.0
        assert omega_two(poisson, 0.0, 1.0, ys) == 0.0

    def test_f2_for_poisson(self, poisson: PoissonModel) -> None:
        assert f2_family(poisson, 0.0, 1.0, [[0.5]]) == pytest.approx(0.5)
        assert f2_family(poisson, 0.0, 1.0, [[0.5], [0.2]]) == 0.0

    def test_tables_expose_every_subset(self, kirkwood: KirkwoodModel) -> None:
        tables = omega_two_tables(kirkwood, 0.0, 1.0, [[0.2], [-0.3], [0.9]])
        assert sorted(tables.omega12.values) == list(range(1, 8))
        assert tables.exp_omega12[0] == 1.0


class TestReconstruction:
    """rho^(2) exp*(F) reproduces rho^(2+k) at the field points."""

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_kirkwood(self, kirkwood: KirkwoodModel, rng: np.random.Generator, k: int) -> None:
        anchors = rng.uniform(-1.0, 1.0, size=2)
        ys = rng.uniform(-1.5, 1.5, size=(k, 1))
        assert reconstruct_check(kirkwood, anchors[0], anchors[1], ys) < 1e-14

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_determinantal(self, determinantal: DeterminantalModel, rng: np.random.Generator, k: int) -> None:
        anchors = rng.uniform(-1.0, 1.0, size=2)
        ys = rng.uniform(-1.5, 1.5, size=(k, 1))
        assert reconstruct_check(determinantal, anchors[0], anchors[1], ys) < 1e-14

    @pytest.mark.parametrize("k", [1, 2])
    def test_low_activity(self, low_activity_first: LowActivityModel, k: int) -> None:
        ys = np.linspace(-0.5, 0.5, k).reshape(k, 1)
        assert reconstruct_check(low_activity_first, 0.0, 1.2, ys) < 1e-14

    def test_limit_on_field_points(self, poisson: PoissonModel) -> None:
        with pytest.raises(OrderBoundError, match="limited to 4"):
            reconstruct_check(poisson, 0.0, 1.0, np.zeros((5, 1)))


class TestErrors:
    def test_needs_field_points(self, kirkwood: KirkwoodModel) -> None:
        with pytest.raises(ValueError, match="at least one field point"):
            omega_one(kirkwood, 0.0, [])

    def test_too_many_field_points(self, poisson: PoissonModel) -> None:
        with pytest.raises(OrderBoundError, match="too many field points"):
            omega_one(poisson, 0.0, np.zeros((6, 1)))

    def test_model_order_bound(self, kirkwood: KirkwoodModel) -> None:
        with pytest.raises(OrderBoundError, match="orders up to 6"):
            omega_two(kirkwood, 0.0, 1.0, np.zeros((5, 1)))

    def test_hard_core_anchors(self) -> None:
        data = Path(__file__).parent.parent / "configs" / "data"
        model = TabulatedModel.from_csv(0.2, data / "g2.csv", data / "t3.csv")
        with pytest.raises(HardCoreError, match="vanishes"):
            omega_two(model, 0.0, 0.5, [[0.2]])
