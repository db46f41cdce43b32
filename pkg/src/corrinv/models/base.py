"""Common interface of the correlation-function providers."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any

from corrinv.errors import OrderBoundError
from corrinv.ruelle import FiniteFamily, Points, as_points


@dataclass(frozen=True)
class AssumptionParams:
    """Constants bounding the truncated correlations of a model.

    Attributes:
        M: Prefactor of the integrated truncated-correlation bound
            int |rho_T^(m+k)(x, y)| dy <= (m+k-1)! M A^m D_rho^k rho^m, m = 1, 2.
        A: Factor per anchor point in that bound.
        D_rho: Geometric growth rate of the integrated bounds.
        r: Radius beyond which the pair correlation is compared with rho^2.
        d_of_r: Sup of rho^2 / rho^(2) over separations of at least r.
    """

    M: float
    A: float
    D_rho: float
    r: float
    d_of_r: float

    def to_dict(self) -> dict[str, float]:
        return {"M": self.M, "A": self.A, "D_rho": self.D_rho, "r": self.r, "d_of_r": self.d_of_r}


class CorrelationModel(ABC):
    """Translation-invariant point process described by its correlation functions.

    Subclasses implement ``_rho`` and ``_rho_t`` for 1 <= n <= max_order; the
    public methods enforce the order bound and the n = 0 conventions
    rho^(0) = 1 and rho_T^(0) = 0.
    """

    kind: str = "abstract"

    def __init__(
        self,
        *,
        dim: int,
        density: float,
        max_order: int,
        ruelle_xi: float,
        correlation_length: float = 1.0,
        hard_core_radius: float = 0.0,
    ) -> None:
        if dim < 1:
            raise ValueError(f"dim must be at least 1, got {dim}")
        if density <= 0:
            raise ValueError(f"density must be positive, got {density}")
        self.dim = dim
        self.density = float(density)
        self.max_order = max_order
        self.ruelle_xi = float(ruelle_xi)
        self.correlation_length = float(correlation_length)
        self.hard_core_radius = float(hard_core_radius)

    def rho(self, n: int, points: Any) -> float:
        """n-point correlation function rho^(n) at the given points."""
        pts = self._checked(n, points)
        if n == 0:
            return 1.0
        return float(self._rho(pts))

    def rho_t(self, n: int, points: Any) -> float:
        """n-point truncated correlation function rho_T^(n) at the given points."""
        pts = self._checked(n, points)
        if n == 0:
            return 0.0
        return float(self._rho_t(pts))

    def rho_family(self, n_max: int | None = None) -> FiniteFamily:
        bound = self.max_order if n_max is None else n_max
        self._check_order(bound)
        return FiniteFamily(n_max=bound, dim=self.dim, order0=1.0, evaluator=self._rho)

    def rho_t_family(self, n_max: int | None = None) -> FiniteFamily:
        bound = self.max_order if n_max is None else n_max
        self._check_order(bound)
        return FiniteFamily(n_max=bound, dim=self.dim, order0=0.0, evaluator=self._rho_t)

    def describe(self) -> dict[str, Any]:
        """Scalar summary used in run reports."""
        return {
            "kind": self.kind,
            "dim": self.dim,
            "density": self.density,
            "max_order": self.max_order,
            "ruelle_xi": self.ruelle_xi,
            "correlation_length": self.correlation_length,
            "hard_core_radius": self.hard_core_radius,
        }

    def _check_order(self, n: int) -> None:
        if n < 0:
            raise ValueError(f"order must be non-negative, got {n}")
        if n > self.max_order:
            raise OrderBoundError(
                f"{self.kind} model supports orders up to {self.max_order}",
                order=n,
                bound=self.max_order,
            )

    def _checked(self, n: int, points: Any) -> Points:
        self._check_order(n)
        pts = as_points(points, self.dim)
        if len(pts) != n:
            raise ValueError(f"expected {n} points, got {len(pts)}")
        return pts

    @abstractmethod
    def _rho(self, pts: Points) -> float:
        """rho^(n) for n = len(pts) >= 1."""

    @abstractmethod
    def _rho_t(self, pts: Points) -> float:
        """rho_T^(n) for n = len(pts) >= 1."""
