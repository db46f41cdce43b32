"""Bound sequences for the integrated omega functions and their convergence radius.

With a_k, c_k bounding the integrated truncated correlations around one and two
anchors, the sequence w_k bounds int |omega^(k)(x1, x2; .)|. Its exponential
generating function E_w solves 2 s = exp(s + ell(t)), which has a real solution
while ell(t) <= log 2 - 1. Relaxing log E_a <= E_a - 1 turns that condition into
a quadratic in t * D_rho whose smaller root is the reported radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from corrinv.combinatorics import bell_polynomial
from corrinv.errors import BoundsDomainError, ConfigError, LimitExceededError

LOG2 = math.log(2.0)
# Level of ell below which the Lambert-W argument stays in the real branch
ELL_CRITICAL = LOG2 - 1.0
W_EXACT_MAX_ORDER = 20
LAMBERT_MAX_ITER = 40


@dataclass(frozen=True)
class BoundParams:
    """Mixing constants (M, A, D_rho) and the pair-correlation constant d(r)."""

    M: float
    A: float
    D_rho: float
    d_of_r: float

    def __post_init__(self) -> None:
        if self.M < 0:
            raise ConfigError("M must be non-negative", field="M", value=self.M)
        for name in ("A", "D_rho", "d_of_r"):
            value = getattr(self, name)
            if not value > 0:
                raise ConfigError(f"{name} must be positive", field=name, value=value)

    @property
    def c0(self) -> float:
        return self.d_of_r * self.M * self.A**2

    @property
    def ma(self) -> float:
        return self.M * self.A


def a_seq(params: BoundParams, k_max: int) -> list[float]:
    """a_0 = 1, a_k = k! M A D^k."""
    return [1.0] + [
        math.factorial(k) * params.ma * params.D_rho**k for k in range(1, k_max + 1)
    ]


def c_seq(params: BoundParams, k_max: int) -> list[float]:
    """c_k = d(r) (k+1)! M A^2 D^k."""
    return [math.factorial(k + 1) * params.c0 * params.D_rho**k for k in range(k_max + 1)]


def w_seq(params: BoundParams, k_max: int) -> list[float]:
    """w_1..w_k_max from the exact recursion (index 0 holds w_0 = 0).

    w_k = c_k + B_k(w_1, .., w_{k-1}, 0) + c_0 sum_l C(k,l) a_l a_{k-l}
          + sum_{1 <= l <= k-1} C(k,l) B_l(w_1..w_l) sum_m C(k-l,m) a_m a_{k-l-m}

    Raises:
        LimitExceededError: Above k = 20, where factorials leave double range;
            use w_scaled_seq instead.
    """
    if k_max < 1:
        raise ValueError(f"k_max must be at least 1, got {k_max}")
    if k_max > W_EXACT_MAX_ORDER:
        raise LimitExceededError("exact w recursion", requested=k_max, limit=W_EXACT_MAX_ORDER)

    a = a_seq(params, k_max)
    c = c_seq(params, k_max)
    c0 = params.c0

    def a_conv(n: int) -> float:
        return math.fsum(math.comb(n, m) * a[m] * a[n - m] for m in range(n + 1))

    w = [0.0]
    bell = [1.0]
    for k in range(1, k_max + 1):
        lower_bell = bell_polynomial(w[1:] + [0.0])
        mixed = math.fsum(math.comb(k, l) * bell[l] * a_conv(k - l) for l in range(1, k))
        w.append(c[k] + lower_bell + c0 * a_conv(k) + mixed)
        bell.append(bell_polynomial(w[1:]))
    return w


def w_scaled_seq(params: BoundParams, k_max: int) -> list[float]:
    """v_k = w_k / k! (index 0 holds 0), free of factorials.

    With alpha_l = a_l / l!, gamma_k = c_k / k! and b_n the coefficients of
    exp(sum_j v_j t^j):
        v_k = gamma_k + b'_k + c_0 (alpha*alpha)_k + sum_{1<=l<=k-1} b_l (alpha*alpha)_{k-l}
    where b'_k = (1/k) sum_{j<k} j v_j b_{k-j} and b_k = b'_k + v_k.
    """
    if k_max < 1:
        raise ValueError(f"k_max must be at least 1, got {k_max}")
    ma, d, c0 = params.ma, params.D_rho, params.c0
    alpha = [1.0] + [ma * d**l for l in range(1, k_max + 1)]
    alpha_sq = [math.fsum(alpha[m] * alpha[n - m] for m in range(n + 1)) for n in range(k_max + 1)]

    v = [0.0]
    b = [1.0]
    for k in range(1, k_max + 1):
        gamma = c0 * (k + 1) * d**k
        b_lower = math.fsum(j * v[j] * b[k - j] for j in range(1, k)) / k
        mixed = math.fsum(b[l] * alpha_sq[k - l] for l in range(1, k))
        v.append(gamma + b_lower + c0 * alpha_sq[k] + mixed)
        b.append(b_lower + v[k])
    return v


def egf_values(params: BoundParams, t: float) -> tuple[float, float]:
    """Closed forms of E_a(t) = sum a_k t^k / k! and E_c(t) = sum c_k t^k / k!."""
    x = t * params.D_rho
    if x >= 1.0:
        raise BoundsDomainError("generating functions have a pole at t * D_rho = 1", t=t, D_rho=params.D_rho)
    e_a = 1.0 + params.ma * x / (1.0 - x)
    e_c = params.c0 / (1.0 - x) ** 2
    return e_a, e_c


def _ell_tail(params: BoundParams, e_a: float, e_c: float) -> float:
    return (2.0 * params.c0 - e_c - (params.c0 - 1.0) * e_a**2) / 2.0


def ell(params: BoundParams, t: float) -> float:
    """ell(t) = 2 log E_a - (2 c_0 - E_c - (c_0 - 1) E_a^2) / 2."""
    e_a, e_c = egf_values(params, t)
    return 2.0 * math.log(e_a) - _ell_tail(params, e_a, e_c)


def ell_linearized(params: BoundParams, t: float) -> float:
    """ell with 2 log E_a replaced by its upper bound 2 (E_a - 1)."""
    e_a, e_c = egf_values(params, t)
    return 2.0 * (e_a - 1.0) - _ell_tail(params, e_a, e_c)


def lambert_w0(x: float) -> float:
    """Principal branch of the Lambert W function for real x >= -1/e.

    Halley iteration from a series start: x itself near 0, log x - log log x
    for x > e, and the branch-point expansion otherwise.
    """
    branch = -1.0 / math.e
    if x < branch:
        if x > branch - 4 * math.ulp(1.0):
            return -1.0
        raise BoundsDomainError("Lambert W0 is real only for x >= -1/e", x=x)
    if x == 0.0:
        return 0.0
    if x == branch:
        return -1.0

    if abs(x) < 0.3:
        w = x
    elif x > math.e:
        log_x = math.log(x)
        w = log_x - math.log(log_x)
    elif x > 0:
        w = math.log1p(x)
    else:
        p = math.sqrt(max(0.0, 2.0 * (math.e * x + 1.0)))
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p**3

    for _ in range(LAMBERT_MAX_ITER):
        ew = math.exp(w)
        residual = w * ew - x
        w1 = w + 1.0
        if w1 == 0.0:
            break
        step = residual / (ew * w1 - (w + 2.0) * residual / (2.0 * w1))
        w -= step
        if abs(step) <= 1e-16 * (1.0 + abs(w)):
            break
    return w


def s_of_t(params: BoundParams, t: float) -> float:
    """s(t) = -W0(-exp(ell(t)) / 2), the shifted value of the generating function."""
    return -lambert_w0(-0.5 * math.exp(ell(params, t)))


def radius_bound(params: BoundParams) -> tuple[float, float, float]:
    """chi, theta and the radius r such that D_rho |t| <= r is sufficient.

    The radius is the smaller absolute root of theta x^2 + chi x + (1 - 2 log 2) = 0,
    the level set ell_linearized = log 2 - 1 in x = t D_rho.
    """
    ma = params.ma
    c0 = params.c0
    chi = 2.0 * (ma * (c0 + 1.0) + c0 - 1.0 + 2.0 * LOG2)
    theta = (c0 - 1.0) * ma**2 - 2.0 * (c0 + 1.0) * ma + 1.0 - c0 - 2.0 * LOG2
    if theta == 0.0:
        raise BoundsDomainError("theta vanishes; the radius equation is not quadratic", chi=chi, theta=theta)
    constant = 1.0 - 2.0 * LOG2
    discriminant = chi**2 - 4.0 * theta * constant
    # A double root (e.g. M = 0) can come out a few ulps negative
    if -1e-12 * chi**2 < discriminant < 0:
        discriminant = 0.0
    if discriminant < 0:
        raise BoundsDomainError(
            "negative discriminant in the radius equation",
            chi=chi,
            theta=theta,
            discriminant=discriminant,
        )
    root = math.sqrt(discriminant)
    radius = min(abs((-chi + root) / (2.0 * theta)), abs((-chi - root) / (2.0 * theta)))
    return chi, theta, radius


def egf_ratio_radius(params: BoundParams, k_max: int = 16) -> float:
    """Ratio-test estimate v_{k-1} / v_k at k = k_max of the radius of sum v_k t^k."""
    v = w_scaled_seq(params, k_max)
    if v[k_max] == 0.0:
        return math.inf
    return v[k_max - 1] / v[k_max]


@dataclass(frozen=True)
class LambertPoint:
    t: float
    ell: float
    ell_linearized: float
    s: float

    def to_dict(self) -> dict[str, float]:
        return {"t": self.t, "ell": self.ell, "ell_linearized": self.ell_linearized, "s": self.s}


@dataclass(frozen=True)
class BoundReport:
    params: BoundParams
    a: list[float]
    c: list[float]
    w: list[float]
    chi: float
    theta: float
    radius: float
    lambert_check: list[LambertPoint] = field(default_factory=list)
    ratio_radius: float | None = None

    @property
    def t_star(self) -> float:
        return self.radius / self.params.D_rho

    def to_dict(self) -> dict[str, Any]:
        return {
            "params": {
                "M": self.params.M,
                "A": self.params.A,
                "D_rho": self.params.D_rho,
                "d_of_r": self.params.d_of_r,
                "c0": self.params.c0,
            },
            "a": self.a,
            "c": self.c,
            "w": self.w,
            "chi": self.chi,
            "theta": self.theta,
            "radius": self.radius,
            "t_star": self.t_star,
            "ratio_radius": self.ratio_radius,
            "lambert_check": [point.to_dict() for point in self.lambert_check],
        }


def bound_report(params: BoundParams, k_max: int = 14, grid_points: int = 21) -> BoundReport:
    """Sequences up to k_max, the radius, and ell / s sampled on [0, radius / D_rho]."""
    if grid_points < 2:
        raise ValueError(f"grid_points must be at least 2, got {grid_points}")
    chi, theta, radius = radius_bound(params)
    # The grid stops short of the pole at t D_rho = 1
    t_top = min(radius, 1.0 - 1e-9) / params.D_rho

    grid = []
    for i in range(grid_points):
        t = t_top * i / (grid_points - 1)
        grid.append(LambertPoint(t, ell(params, t), ell_linearized(params, t), s_of_t(params, t)))

    ratio = egf_ratio_radius(params, max(k_max, 2)) if params.M > 0 else None
    return BoundReport(
        params=params,
        a=a_seq(params, k_max),
        c=c_seq(params, k_max),
        w=w_seq(params, k_max),
        chi=chi,
        theta=theta,
        radius=radius,
        lambert_check=grid,
        ratio_radius=ratio,
    )
