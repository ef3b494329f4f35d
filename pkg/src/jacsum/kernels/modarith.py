"""
精确模运算与经典指数和

提供 Jacobi 符号、模逆、Gauss 和、Kloosterman 和、Salié 和、Ramanujan 和，
以及它们的闭式与恒等式校验。所有 e(x) 的有理参数先在整数中约化到 [0, 1)。
"""

import cmath
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Tuple, Union

import numpy as np

from jacsum.kernels.errors import (
    InvalidArgumentError,
    NotInvertibleError,
    UnsupportedModulusError,
)

EPS = sys.float_info.epsilon


@dataclass(frozen=True)
class Residue:
    """A canonical residue 0 <= value < modulus"""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise InvalidArgumentError(f"Modulus must be positive: {self.modulus}")
        if not 0 <= self.value < self.modulus:
            raise InvalidArgumentError(
                f"Residue {self.value} is not reduced mod {self.modulus}"
            )

    @classmethod
    def of(cls, value: int, modulus: int) -> "Residue":
        if modulus < 1:
            raise InvalidArgumentError(f"Modulus must be positive: {modulus}")
        return cls(value % modulus, modulus)

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class UnitRootSum:
    """A complex value with an absolute error bound"""

    value: complex
    err: float = 0.0

    def __post_init__(self):
        if not self.err >= 0.0:
            raise InvalidArgumentError(f"Error bound must be nonnegative: {self.err}")

    def __add__(self, other: "UnitRootSum") -> "UnitRootSum":
        total = self.value + other.value
        return UnitRootSum(total, self.err + other.err + EPS * abs(total))

    def __mul__(self, other: Union["UnitRootSum", complex, float, int]) -> "UnitRootSum":
        if isinstance(other, UnitRootSum):
            product = self.value * other.value
            err = (
                abs(self.value) * other.err
                + abs(other.value) * self.err
                + self.err * other.err
                + 4 * EPS * abs(product)
            )
            return UnitRootSum(product, err)
        product = self.value * other
        return UnitRootSum(product, self.err * abs(other) + 4 * EPS * abs(product))

    __rmul__ = __mul__

    def agrees_with(self, other: "UnitRootSum", slack: float = 0.0) -> bool:
        return abs(self.value - other.value) <= self.err + other.err + slack


def roundoff_err(terms: int) -> float:
    """(term count) * 4 * eps * (max partial magnitude = term count)"""
    return 4.0 * EPS * terms * terms


def e(num: Union[int, Fraction], den: int = 1) -> complex:
    """exp(2*pi*i*num/den)"""
    x = Fraction(num, den)
    frac = x - math.floor(x)
    return cmath.exp(2j * math.pi * frac.numerator / frac.denominator)


@lru_cache(maxsize=512)
def roots_of_unity(c: int) -> np.ndarray:
    """e(j/c) for j = 0..c-1"""
    table = np.exp(2j * np.pi * np.arange(c, dtype=np.float64) / c)
    table.flags.writeable = False
    return table


def fsum_complex(values: Union[np.ndarray, Iterable[complex]]) -> complex:
    arr = np.asarray(values, dtype=np.complex128)
    return complex(math.fsum(arr.real.tolist()), math.fsum(arr.imag.tolist()))


def _compensated_real_rows(values: np.ndarray) -> np.ndarray:
    partial = values
    carry = np.zeros(values.shape[0], dtype=np.float64)
    while partial.shape[1] > 1:
        if partial.shape[1] % 2:
            partial = np.concatenate([partial, np.zeros((partial.shape[0], 1))], axis=1)
        a, b = partial[:, 0::2], partial[:, 1::2]
        total = a + b
        b_part = total - a
        # exact rounding error of each pairwise addition
        carry += ((a - (total - b_part)) + (b - b_part)).sum(axis=1)
        partial = total
    return partial[:, 0] + carry


def compensated_row_sums(values: np.ndarray) -> np.ndarray:
    """Row sums of a 2-D complex array by a pairwise tree with the TwoSum errors added back"""
    arr = np.asarray(values, dtype=np.complex128)
    if arr.ndim != 2:
        raise InvalidArgumentError(f"Expected a 2-D array, got shape {arr.shape}")
    if arr.shape[1] == 0:
        return np.zeros(arr.shape[0], dtype=np.complex128)
    real = _compensated_real_rows(np.ascontiguousarray(arr.real))
    imag = _compensated_real_rows(np.ascontiguousarray(arr.imag))
    return real + 1j * imag


# ---------------------------------------------------------------------------
# multiplicative functions (trial division, cached per modulus)


@lru_cache(maxsize=1 << 17)
def factorize(c: int) -> Tuple[Tuple[int, int], ...]:
    if c < 1:
        raise InvalidArgumentError(f"Cannot factor non-positive integer: {c}")
    factors = []
    rest = c
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            a = 0
            while rest % p == 0:
                rest //= p
                a += 1
            factors.append((p, a))
        p += 1 if p == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return tuple(factors)


def euler_phi(c: int) -> int:
    result = c
    for p, _ in factorize(c):
        result = result // p * (p - 1)
    return result


def mobius(c: int) -> int:
    factors = factorize(c)
    if any(a > 1 for _, a in factors):
        return 0
    return -1 if len(factors) % 2 else 1


def num_divisors(c: int) -> int:
    return math.prod(a + 1 for _, a in factorize(c))


def divisors(c: int) -> List[int]:
    divs = [1]
    for p, a in factorize(c):
        divs = [d * p**j for d in divs for j in range(a + 1)]
    return sorted(divs)


def is_squarefree(c: int) -> bool:
    return all(a == 1 for _, a in factorize(c))


def jacobi_symbol(a: int, n: int) -> int:
    if n < 1 or n % 2 == 0:
        raise InvalidArgumentError(f"Jacobi symbol needs an odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def mod_inverse(a: int, c: int) -> Residue:
    if c < 1:
        raise InvalidArgumentError(f"Modulus must be positive: {c}")
    if math.gcd(a, c) != 1:
        raise NotInvertibleError(f"{a} is not invertible mod {c}")
    if c == 1:
        return Residue(0, 1)
    return Residue(pow(a, -1, c), c)


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """x mod m1*m2 with x = r1 mod m1, x = r2 mod m2, gcd(m1, m2) = 1"""
    if m1 == 1:
        return r2 % m2
    if m2 == 1:
        return r1 % m1
    return (r1 + m1 * ((r2 - r1) * pow(m1, -1, m2) % m2)) % (m1 * m2)


@lru_cache(maxsize=4096)
def unit_table(c: int) -> Tuple[np.ndarray, np.ndarray]:
    """Units mod c in ascending order with their inverses; c = 1 gives ([0], [0])"""
    if c == 1:
        units = np.zeros(1, dtype=np.int64)
        return units, units
    xs = np.arange(c, dtype=np.int64)
    units = xs[np.gcd(xs, c) == 1]
    inverses = np.fromiter((pow(int(x), -1, c) for x in units), dtype=np.int64, count=units.size)
    units.flags.writeable = False
    inverses.flags.writeable = False
    return units, inverses


@lru_cache(maxsize=512)
def _jacobi_on_units(c: int) -> np.ndarray:
    units, _ = unit_table(c)
    chi = np.fromiter((jacobi_symbol(int(x), c) for x in units), dtype=np.float64, count=units.size)
    chi.flags.writeable = False
    return chi


def epsilon(c: int) -> complex:
    """1 if c = 1 mod 4, i if c = 3 mod 4"""
    if c % 2 == 0:
        raise UnsupportedModulusError(f"epsilon_c is defined for odd c only, got {c}")
    return 1 + 0j if c % 4 == 1 else 1j


def _check_odd_modulus(c: int):
    if c < 1:
        raise InvalidArgumentError(f"Modulus must be positive: {c}")
    if c % 2 == 0:
        raise UnsupportedModulusError(f"Even modulus {c} is not supported")


# ---------------------------------------------------------------------------
# exponential sums


def quadratic_phase_sum(a: int, b: int, c: int) -> UnitRootSum:
    """sum over lambda mod c of e((a*lambda^2 + b*lambda)/c)"""
    if c < 1:
        raise InvalidArgumentError(f"Modulus must be positive: {c}")
    lam = np.arange(c, dtype=np.int64)
    idx = ((a % c) * (lam * lam % c) + (b % c) * lam) % c
    return UnitRootSum(fsum_complex(roots_of_unity(c)[idx]), roundoff_err(c))


def gauss_sum(a: int, c: int) -> UnitRootSum:
    """Direct evaluation of sum over lambda mod c of e(a*lambda^2/c)"""
    _check_odd_modulus(c)
    if math.gcd(a, c) != 1:
        raise InvalidArgumentError(f"gauss_sum needs gcd(a, c) = 1, got a={a}, c={c}")
    return quadratic_phase_sum(a, 0, c)


def gauss_closed_form(a: int, c: int) -> UnitRootSum:
    """epsilon_c * (a/c) * sqrt(c)"""
    _check_odd_modulus(c)
    if math.gcd(a, c) != 1:
        raise InvalidArgumentError(f"gauss_closed_form needs gcd(a, c) = 1, got a={a}, c={c}")
    value = epsilon(c) * jacobi_symbol(a, c) * math.sqrt(c)
    return UnitRootSum(value, 2 * EPS * math.sqrt(c))


def kloosterman(a: int, b: int, c: int) -> UnitRootSum:
    """S(a, b; c) over units rho mod c"""
    if c < 1:
        raise InvalidArgumentError(f"Modulus must be positive: {c}")
    units, inverses = unit_table(c)
    idx = ((a % c) * units + (b % c) * inverses) % c
    return UnitRootSum(fsum_complex(roots_of_unity(c)[idx]), roundoff_err(units.size))


def salie_sum(a: int, b: int, c: int) -> UnitRootSum:
    """Kloosterman sum twisted by the Jacobi symbol (rho/c)"""
    _check_odd_modulus(c)
    if math.gcd(a, c) != 1:
        raise InvalidArgumentError(f"salie_sum needs gcd(a, c) = 1, got a={a}, c={c}")
    units, inverses = unit_table(c)
    idx = ((a % c) * units + (b % c) * inverses) % c
    terms = _jacobi_on_units(c) * roots_of_unity(c)[idx]
    return UnitRootSum(fsum_complex(terms), roundoff_err(units.size))


def square_roots(a: int, c: int) -> List[int]:
    """All v mod c with v^2 = a mod c, ascending"""
    v = np.arange(c, dtype=np.int64)
    return [int(x) for x in v[(v * v - a % c) % c == 0]]


def salie_closed_form(a: int, b: int, c: int) -> UnitRootSum:
    """epsilon_c * (a/c) * sqrt(c) * sum over v^2 = ab mod c of e(2v/c)"""
    _check_odd_modulus(c)
    if math.gcd(a * b, c) != 1:
        raise InvalidArgumentError(f"salie_closed_form needs gcd(ab, c) = 1, got a={a}, b={b}, c={c}")
    roots = square_roots(a * b, c)
    inner = fsum_complex([e(2 * v, c) for v in roots])
    value = epsilon(c) * jacobi_symbol(a, c) * math.sqrt(c) * inner
    return UnitRootSum(value, math.sqrt(c) * (roundoff_err(len(roots)) + 4 * EPS * len(roots)))


def ramanujan_sum(a: int, c: int) -> int:
    """mu(c/(c,a)) * phi(c) / phi(c/(c,a))"""
    if c < 1:
        raise InvalidArgumentError(f"Modulus must be positive: {c}")
    q = c // math.gcd(a, c)
    return mobius(q) * euler_phi(c) // euler_phi(q)


def ramanujan_brute(a: int, c: int) -> UnitRootSum:
    if c < 1:
        raise InvalidArgumentError(f"Modulus must be positive: {c}")
    units, _ = unit_table(c)
    idx = (a % c) * units % c
    return UnitRootSum(fsum_complex(roots_of_unity(c)[idx]), roundoff_err(units.size))


def selberg_check(y: int, a: int, c: int) -> bool:
    """S(-y, a; c) against the divisor sum over d | (y, a, c)"""
    lhs = kloosterman(-y, a, c)
    g = math.gcd(math.gcd(y, a), c)
    values = []
    err = 0.0
    for d in divisors(g):
        term = kloosterman(-a * y // (d * d), 1, c // d) * d
        values.append(term.value)
        err += term.err
    rhs = fsum_complex(values)
    err += roundoff_err(len(values)) * max(1.0, abs(rhs))
    return abs(lhs.value - rhs) <= lhs.err + err


# ---------------------------------------------------------------------------
# completion of incomplete Kloosterman sums


def _progression(s: int, t: int, start: int, length: int) -> np.ndarray:
    if t < 1 or length < 0:
        raise InvalidArgumentError(f"Need t >= 1 and length >= 0, got t={t}, length={length}")
    xs = np.arange(start + 1, start + length + 1, dtype=np.int64)
    return xs[(xs - s) % t == 0]


def incomplete_kloosterman(a: int, c: int, s: int, t: int, start: int, length: int) -> UnitRootSum:
    """sum over start < x <= start+length, x = s mod t, (x, c) = 1 of e(a*xbar/c)"""
    if c < 1:
        raise InvalidArgumentError(f"Modulus must be positive: {c}")
    xs = _progression(s, t, start, length)
    units, inverses = unit_table(c)
    inverse_of = np.full(c, -1, dtype=np.int64)
    inverse_of[units] = inverses
    inv = inverse_of[xs % c]
    inv = inv[inv >= 0]
    idx = (a % c) * inv % c
    return UnitRootSum(fsum_complex(roots_of_unity(c)[idx]), roundoff_err(max(1, inv.size)))


def completed_kloosterman(a: int, c: int, s: int, t: int, start: int, length: int) -> UnitRootSum:
    """The same sum through F^(y) = S(-y, a; c) and geometric sums over the progression"""
    if c < 1:
        raise InvalidArgumentError(f"Modulus must be positive: {c}")
    xs = _progression(s, t, start, length)
    roots = roots_of_unity(c)
    values = [ramanujan_sum(a, c) * xs.size / c]
    err = 0.0
    for y in range(1, c):
        k = kloosterman(-y, a, c)
        g = fsum_complex(roots[(y * (xs % c)) % c]) if xs.size else 0j
        values.append(k.value * g / c)
        err += (k.err * xs.size + abs(k.value) * roundoff_err(max(1, xs.size))) / c
    total = fsum_complex(values)
    return UnitRootSum(total, err + roundoff_err(c) * max(1.0, abs(total)))


def completion_check(a: int, c: int, s: int, t: int, start: int, length: int) -> bool:
    direct = incomplete_kloosterman(a, c, s, t, start, length)
    completed = completed_kloosterman(a, c, s, t, start, length)
    return direct.agrees_with(completed, slack=1e-9)
