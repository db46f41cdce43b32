"""Tests for the Kirkwood closure backend."""

from __future__ import annotations

import math

import numpy as np
import pytest

from corrinv.models import Gaussian, KirkwoodModel, kirkwood_model
from corrinv.models.kirkwood import connected_graph_masks
from corrinv.registry import get_model
from corrinv.ruelle import star_log


def _h(model: KirkwoodModel, a: float, b: float) -> float:
    return float(model.h(a - b))


class TestKirkwoodCorrelations:
    def test_pair_functions(self, kirkwood: KirkwoodModel) -> None:
        h = 0.3 * math.exp(-1.0)
        assert kirkwood.rho(2, [0.0, 1.0]) == pytest.approx(0.04 * (1.0 + h))
        assert kirkwood.rho_t(2, [0.0, 1.0]) == pytest.approx(0.04 * h)

    def test_three_point_truncated_function(self, kirkwood: KirkwoodModel) -> None:
        """rho_T^(3) sums the four connected graphs on three vertices."""
        x = [0.0, 0.7, -0.4]
        h12 = _h(kirkwood, x[0], x[1])
        h13 = _h(kirkwood, x[0], x[2])
        h23 = _h(kirkwood, x[1], x[2])
        expected = 0.2**3 * (h12 * h13 * h23 + h12 * h13 + h12 * h23 + h13 * h23)
        assert kirkwood.rho_t(3, x) == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("n,count", [(2, 1), (3, 4), (4, 38), (5, 728)])
    def test_connected_graph_table(self, n: int, count: int) -> None:
        masks = connected_graph_masks(n)
        assert masks.shape == (count, n * (n - 1) // 2)
        assert not masks.flags.writeable

    def test_star_log_of_rho_is_rho_t(self, kirkwood: KirkwoodModel, rng: np.random.Generator) -> None:
        truncated = star_log(kirkwood.rho_family(5))
        for _ in range(10):
            for n in range(1, 6):
                pts = rng.uniform(-1.5, 1.5, size=(n, 1))
                assert truncated(pts) == pytest.approx(kirkwood.rho_t(n, pts), rel=1e-10, abs=1e-15)

    def test_ruelle_bound(self, kirkwood: KirkwoodModel, rng: np.random.Generator) -> None:
        for n in range(1, kirkwood.max_order + 1):
            pts = rng.uniform(-0.5, 0.5, size=(n, 1))
            assert kirkwood.rho(n, pts) <= kirkwood.ruelle_xi**n

    def test_two_dimensional_points(self, kirkwood_2d: KirkwoodModel) -> None:
        h = -0.25 * math.exp(-2.0)
        assert kirkwood_2d.rho_t(2, [[0.0, 0.0], [1.0, 1.0]]) == pytest.approx(0.04 * h)


class TestKirkwoodValidation:
    def test_h_below_minus_one_rejected(self) -> None:
        with pytest.raises(ValueError, match="non-negative"):
            kirkwood_model(0.2, Gaussian(-1.5, 1.0))

    def test_sigma_must_be_positive(self) -> None:
        with pytest.raises(ValueError, match="sigma must be positive"):
            kirkwood_model(0.0, Gaussian(0.3, 1.0))

    def test_describe(self, kirkwood: KirkwoodModel) -> None:
        info = kirkwood.describe()
        assert info["kind"] == "kirkwood"
        assert info["density"] == 0.2
        assert info["correlation_length"] == 1.0

    def test_registry_builds_gaussian_structure_function(self) -> None:
        model = get_model("kirkwood").create({"sigma": 0.1, "amplitude": -0.2, "width": 2.0})
        assert isinstance(model, KirkwoodModel)
        assert model.h == Gaussian(-0.2, 2.0)

    def test_registry_rejects_amplitude_below_minus_one(self) -> None:
        with pytest.raises(ValueError, match="amplitude"):
            get_model("kirkwood").create({"sigma": 0.1, "amplitude": -1.2})
