"""Pytest fixtures for corrinv tests."""

from __future__ import annotations

import math
from collections.abc import Callable
from pathlib import Path

import numpy as np
import pytest

from corrinv.models import (
    DeterminantalModel,
    Gaussian,
    KirkwoodModel,
    LowActivityModel,
    PoissonModel,
    determinantal_model,
    gaussian_kernel,
    gaussian_potential,
    kirkwood_model,
    low_activity_model,
    poisson_model,
)
from corrinv.quadrature import Box, QuadratureSpec
from corrinv.ruelle import FiniteFamily, Points

PROJECT_ROOT = Path(__file__).parent.parent
CONFIGS_ROOT = PROJECT_ROOT / "configs"


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so every random fixture is reproducible."""
    return np.random.default_rng(20240115)


@pytest.fixture
def poisson() -> PoissonModel:
    return poisson_model(0.5)


@pytest.fixture
def kirkwood() -> KirkwoodModel:
    """sigma = 0.2 with h(r) = 0.3 exp(-r^2)."""
    return kirkwood_model(0.2, Gaussian(0.3, 1.0))


@pytest.fixture
def kirkwood_2d() -> KirkwoodModel:
    return kirkwood_model(0.2, Gaussian(-0.25, 1.0), dim=2)


@pytest.fixture
def determinantal() -> DeterminantalModel:
    return determinantal_model(0.1, gaussian_kernel(1.0))


@pytest.fixture
def low_activity_zeroth() -> LowActivityModel:
    return low_activity_model(0.1, gaussian_potential(0.5, 1.0), mayer_order=0)


@pytest.fixture
def low_activity_first() -> LowActivityModel:
    return low_activity_model(0.05, gaussian_potential(0.5, 1.0), mayer_order=1)


@pytest.fixture
def box_1d() -> Box:
    return Box(dim=1, halfwidth=6.0)


@pytest.fixture
def tensor_spec() -> QuadratureSpec:
    return QuadratureSpec(kind="tensor")


def symmetric_family(
    rng: np.random.Generator, n_max: int, *, order0: float = 0.0, scale: float = 0.5
) -> FiniteFamily:
    """Random smooth symmetric family on the line.

    F^(n)(x) = c_n * exp(-a_n * sum x_i^2) * cos(b_n * sum x_i) is symmetric in
    its arguments for every n.
    """
    c = scale * rng.uniform(-1.0, 1.0, size=n_max + 1)
    a = rng.uniform(0.1, 0.5, size=n_max + 1)
    b = rng.uniform(0.0, 1.0, size=n_max + 1)

    def evaluate(pts: Points) -> float:
        n = len(pts)
        xs = pts[:, 0]
        return float(c[n] * math.exp(-a[n] * float(np.sum(xs * xs))) * math.cos(b[n] * float(np.sum(xs))))

    return FiniteFamily(n_max=n_max, dim=1, order0=order0, evaluator=evaluate)


@pytest.fixture
def family_factory(rng: np.random.Generator) -> Callable[..., FiniteFamily]:
    """Factory of random symmetric families sharing the seeded generator."""

    def make(n_max: int = 5, *, order0: float = 0.0, scale: float = 0.5) -> FiniteFamily:
        return symmetric_family(rng, n_max, order0=order0, scale=scale)

    return make
