"""
半整数阶 Bessel 函数 J_{k-3/2}(x)

x >= nu 时从 J_{1/2}, J_{-1/2} 向上递推；x < nu 时用升幂级数，
项先增后减的区域改用精确有理数求和，避免抵消误差。
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from jacsum.kernels.errors import InvalidArgumentError, UnsupportedOrderError

_SERIES_MAX_TERMS = 2_000
_EXACT_TOLERANCE = Fraction(1, 2**100)


@dataclass(frozen=True)
class HalfOrder:
    """Order nu = k - 3/2 for even weight k >= 4"""

    k: int

    def __post_init__(self):
        if self.k % 2 != 0:
            raise UnsupportedOrderError(f"Weight k must be even, got {self.k}")
        if self.k < 4:
            raise UnsupportedOrderError(f"Weight k must be at least 4, got {self.k}")

    @property
    def nu(self) -> Fraction:
        return Fraction(2 * self.k - 3, 2)

    @property
    def steps(self) -> int:
        """nu - 1/2"""
        return self.k - 2


@lru_cache(maxsize=256)
def half_gamma(j: int) -> Fraction:
    """Gamma(j + 1/2) / sqrt(pi) = (2j)! / (4^j j!)"""
    if j < 0:
        raise InvalidArgumentError(f"half_gamma needs j >= 0, got {j}")
    return Fraction(math.factorial(2 * j), 4**j * math.factorial(j))


def gamma_nu_plus_one(order: HalfOrder) -> float:
    return float(half_gamma(order.steps + 1)) * math.sqrt(math.pi)


def _check_x(x: float):
    if not x > 0:
        raise InvalidArgumentError(f"Bessel argument must be positive, got {x}")


def _recurrence(steps: int, x):
    s = np.sqrt(2.0 / (np.pi * x))
    j_prev = s * np.cos(x)
    j = s * np.sin(x)
    for step in range(steps):
        j_prev, j = j, ((2 * step + 1) / x) * j - j_prev
    return j


def _series_float(steps: int, x):
    """Ascending series in floating point; accurate while terms do not grow much"""
    half = np.asarray(x, dtype=np.float64) / 2.0
    sq = half * half
    nu_plus_one = steps + 1.5
    term = half**steps / float(half_gamma(steps + 1))
    total = term
    for j in range(_SERIES_MAX_TERMS):
        term = -term * sq / ((j + 1) * (j + nu_plus_one))
        total = total + term
        past_peak = np.all(sq <= (j + 1) * (j + nu_plus_one))
        if past_peak and np.all(np.abs(term) <= 1e-17 * np.abs(total)):
            break
    return np.sqrt(half) / math.sqrt(math.pi) * total


def _series_exact(steps: int, x: float) -> float:
    half = Fraction(x) / 2
    sq = half * half
    nu_plus_one = Fraction(2 * steps + 3, 2)
    term = half**steps / half_gamma(steps + 1)
    total = term
    for j in range(_SERIES_MAX_TERMS):
        term = -term * sq / ((j + 1) * (j + nu_plus_one))
        total += term
        if sq <= (j + 1) * (j + nu_plus_one) and abs(term) < _EXACT_TOLERANCE:
            break
    return math.sqrt(x / 2) / math.sqrt(math.pi) * float(total)


def bessel_recurrence(order: HalfOrder, x: float) -> float:
    _check_x(x)
    return float(_recurrence(order.steps, float(x)))


def bessel_series(order: HalfOrder, x: float) -> float:
    """Series branch at any x > 0; exact rationals once terms start growing"""
    _check_x(x)
    if (x / 2) ** 2 <= order.nu + 1:
        return float(_series_float(order.steps, float(x)))
    return _series_exact(order.steps, float(x))


def bessel_half(order: HalfOrder, x: float) -> float:
    """J_nu(x), recurrence for x >= nu and series below"""
    _check_x(x)
    if x >= order.nu:
        return bessel_recurrence(order, x)
    return bessel_series(order, x)


def power_bound(order: HalfOrder, x: float) -> float:
    """(x/2)^nu / Gamma(nu + 1), valid for all x > 0"""
    return math.pow(x / 2, float(order.nu)) / gamma_nu_plus_one(order)


@lru_cache(maxsize=64)
def decay_constant(order: HalfOrder) -> float:
    """1.1 * sup of sqrt(x)|J_nu(x)| over a grid on [1, max(200, 20 nu)], at least 1.1 sqrt(2/pi)"""
    nu = float(order.nu)
    grid = np.linspace(1.0, max(200.0, 20 * nu), 40_001)
    values = np.empty_like(grid)
    low = grid < nu
    if low.any():
        values[low] = _series_float(order.steps, grid[low])
    values[~low] = _recurrence(order.steps, grid[~low])
    sup = float(np.max(np.sqrt(grid) * np.abs(values)))
    return 1.1 * max(sup, math.sqrt(2 / math.pi))


def bessel_bound_check(order: HalfOrder, x: float) -> bool:
    _check_x(x)
    value = abs(bessel_half(order, x))
    ok = value <= power_bound(order, x) * (1 + 1e-12)
    if x >= 1:
        ok = ok and value <= decay_constant(order) / math.sqrt(x)
    return ok


def bessel_half_array(order: HalfOrder, xs: np.ndarray) -> np.ndarray:
    """bessel_half on an array, branch by branch"""
    xs = np.asarray(xs, dtype=np.float64)
    if np.any(xs <= 0):
        raise InvalidArgumentError("Bessel arguments must be positive")
    nu = float(order.nu)
    out = np.empty_like(xs)
    high = xs >= nu
    gentle = ~high & ((xs / 2) ** 2 <= nu + 1)
    steep = ~high & ~gentle
    if high.any():
        out[high] = _recurrence(order.steps, xs[high])
    if gentle.any():
        out[gentle] = _series_float(order.steps, xs[gentle])
    for i in np.flatnonzero(steep):
        out[i] = _series_exact(order.steps, float(xs[i]))
    return out
