"""
q, zeta 双变量精确级数与指标 1 的 Jacobi 形式系数表

用 eta 与 theta 级数构造 phi_{-2,1}、phi_{0,1} 以及尖形式
phi_{10,1} = Delta * phi_{-2,1}、phi_{12,1} = Delta * phi_{0,1}。
全部运算都在有理数上精确进行，不使用浮点数。
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, Mapping, Optional, Tuple

from jacsum.kernels.config import DEFAULT_SETTINGS
from jacsum.kernels.errors import (
    CutoffExceededError,
    InvalidArgumentError,
    UnsupportedOrderError,
)
from jacsum.kernels.exports import write_rows

logger = logging.getLogger(__name__)

Key = Tuple[int, int]


@dataclass(frozen=True)
class LaurentSeries:
    """
    sum of coefficients[(a, b)] * q^(q_offset + a/q_denom) * zeta^(z_offset + b)

    Known exactly modulo q^(q_offset + q_cutoff). Keys satisfy
    0 <= a < q_cutoff * q_denom; integral parts of the offsets are folded into the keys.
    """

    coefficients: Mapping[Key, Fraction]
    q_offset: Fraction = Fraction(0)
    z_offset: Fraction = Fraction(0)
    q_cutoff: int = 60
    q_denom: int = 1

    @classmethod
    def build(
        cls,
        coefficients: Mapping[Key, Fraction],
        q_offset=Fraction(0),
        z_offset=Fraction(0),
        q_cutoff: int = 60,
        q_denom: int = 1,
    ) -> "LaurentSeries":
        q_offset = Fraction(q_offset)
        z_offset = Fraction(z_offset)
        fq = math.floor(q_offset)
        fz = math.floor(z_offset)
        q_cutoff += fq
        limit = q_cutoff * q_denom
        coeffs = {}
        for (a, b), value in coefficients.items():
            if value == 0:
                continue
            a += fq * q_denom
            if a < 0:
                raise ValueError(f"Negative relative q-exponent {a}/{q_denom} after folding")
            if a < limit:
                coeffs[(a, b + fz)] = Fraction(value)
        if q_denom > 1 and all(a % q_denom == 0 for a, _ in coeffs):
            coeffs = {(a // q_denom, b): v for (a, b), v in coeffs.items()}
            q_denom = 1
        return cls(coeffs, q_offset - fq, z_offset - fz, q_cutoff, q_denom)

    # -- inspection ----------------------------------------------------------

    def terms(self) -> Dict[Tuple[Fraction, Fraction], Fraction]:
        """Coefficients keyed by the actual (q, zeta) exponents"""
        return {
            (self.q_offset + Fraction(a, self.q_denom), self.z_offset + b): v
            for (a, b), v in self.coefficients.items()
        }

    def coefficient(self, q_exp, z_exp) -> Fraction:
        q_rel = (Fraction(q_exp) - self.q_offset) * self.q_denom
        z_rel = Fraction(z_exp) - self.z_offset
        if q_rel.denominator != 1 or z_rel.denominator != 1:
            return Fraction(0)
        if q_rel >= self.q_cutoff * self.q_denom:
            raise CutoffExceededError(f"q^{q_exp} is beyond the series cutoff")
        return self.coefficients.get((int(q_rel), int(z_rel)), Fraction(0))

    def is_zeta_free(self) -> bool:
        return self.z_offset == 0 and all(b == 0 for _, b in self.coefficients)

    def is_zero(self) -> bool:
        return not self.coefficients

    # -- arithmetic ----------------------------------------------------------

    def _keys_with_denom(self, denom: int) -> Iterator[Tuple[Key, Fraction]]:
        scale = denom // self.q_denom
        for (a, b), v in self.coefficients.items():
            yield (a * scale, b), v

    def __neg__(self) -> "LaurentSeries":
        return self.scale(-1)

    def scale(self, factor) -> "LaurentSeries":
        factor = Fraction(factor)
        return LaurentSeries.build(
            {k: v * factor for k, v in self.coefficients.items()},
            self.q_offset,
            self.z_offset,
            self.q_cutoff,
            self.q_denom,
        )

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        if self.q_offset != other.q_offset or self.z_offset != other.z_offset:
            raise ValueError(
                f"Cannot add series with offsets ({self.q_offset}, {self.z_offset}) "
                f"and ({other.q_offset}, {other.z_offset})"
            )
        denom = math.lcm(self.q_denom, other.q_denom)
        coeffs: Dict[Key, Fraction] = dict(self._keys_with_denom(denom))
        for key, v in other._keys_with_denom(denom):
            coeffs[key] = coeffs.get(key, Fraction(0)) + v
        cutoff = min(self.q_cutoff, other.q_cutoff)
        return LaurentSeries.build(coeffs, self.q_offset, self.z_offset, cutoff, denom)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        denom = math.lcm(self.q_denom, other.q_denom)
        cutoff = min(self.q_cutoff, other.q_cutoff)
        limit = cutoff * denom
        left = sorted(self._keys_with_denom(denom))
        right = sorted(other._keys_with_denom(denom))
        coeffs: Dict[Key, Fraction] = {}
        for (a1, b1), v1 in left:
            if a1 >= limit:
                break
            for (a2, b2), v2 in right:
                a = a1 + a2
                if a >= limit:
                    break
                key = (a, b1 + b2)
                coeffs[key] = coeffs.get(key, Fraction(0)) + v1 * v2
        return LaurentSeries.build(
            coeffs,
            self.q_offset + other.q_offset,
            self.z_offset + other.z_offset,
            cutoff,
            denom,
        )

    def inverse_coefficients(self) -> Dict[Key, Fraction]:
        """Relative coefficients of 1/self for a zeta-free series with nonzero constant term"""
        if not self.is_zeta_free():
            raise ValueError("Only zeta-free series can be inverted")
        lead = self.coefficients.get((0, 0), Fraction(0))
        if lead == 0:
            raise ValueError("Series to invert has zero leading coefficient")
        length = self.q_cutoff * self.q_denom
        a = [self.coefficients.get((i, 0), Fraction(0)) for i in range(length)]
        support = [i for i in range(1, length) if a[i] != 0]
        inv = [Fraction(0)] * length
        inv[0] = 1 / lead
        for k in range(1, length):
            acc = Fraction(0)
            for i in support:
                if i > k:
                    break
                acc += a[i] * inv[k - i]
            inv[k] = -acc / lead
        return {(i, 0): v for i, v in enumerate(inv) if v != 0}

    def __truediv__(self, other: "LaurentSeries") -> "LaurentSeries":
        # the inverse carries offset -other.q_offset in (-1, 0]; the product folds it away
        inverse = LaurentSeries(
            other.inverse_coefficients(), -other.q_offset, Fraction(0), other.q_cutoff, other.q_denom
        )
        return self * inverse

    def at_zeta_one(self) -> "LaurentSeries":
        coeffs: Dict[Key, Fraction] = {}
        for (a, _), v in self.coefficients.items():
            coeffs[(a, 0)] = coeffs.get((a, 0), Fraction(0)) + v
        return LaurentSeries.build(coeffs, self.q_offset, 0, self.q_cutoff, self.q_denom)


# ---------------------------------------------------------------------------
# eta and theta


def eta_power(e: int, cutoff: int) -> LaurentSeries:
    """q^(e/24) * prod_{n>=1} (1 - q^n)^e"""
    if e <= 0:
        raise InvalidArgumentError(f"eta exponent must be positive, got {e}")
    if e % 2 != 0:
        raise UnsupportedOrderError(f"eta exponent must be even, got {e}")
    if cutoff < 1:
        raise InvalidArgumentError(f"cutoff must be at least 1, got {cutoff}")
    coeffs = [0] * cutoff
    coeffs[0] = 1
    for n in range(1, cutoff):
        for _ in range(e):
            for i in range(cutoff - 1, n - 1, -1):
                coeffs[i] -= coeffs[i - n]
    return LaurentSeries.build(
        {(i, 0): Fraction(v) for i, v in enumerate(coeffs)}, Fraction(e, 24), 0, cutoff
    )


def _odd_theta_core(cutoff: int, alternating: bool) -> LaurentSeries:
    """q^(1/8) zeta^(1/2) * sum_n (+-1)^n q^(n(n+1)/2) zeta^n"""
    coeffs = {}
    n_max = int(math.isqrt(2 * cutoff)) + 2
    for n in range(-n_max - 1, n_max + 1):
        a = n * (n + 1) // 2
        if a < cutoff:
            coeffs[(a, n)] = Fraction((-1) ** n if alternating else 1)
    return LaurentSeries.build(coeffs, Fraction(1, 8), Fraction(1, 2), cutoff)


def _even_theta_core(cutoff: int, alternating: bool) -> LaurentSeries:
    """sum_n (+-1)^n q^(n^2/2) zeta^n"""
    coeffs = {}
    n_max = int(math.isqrt(2 * cutoff)) + 2
    for n in range(-n_max, n_max + 1):
        a = n * n
        if a < 2 * cutoff:
            coeffs[(a, n)] = Fraction((-1) ** n if alternating else 1)
    return LaurentSeries.build(coeffs, 0, 0, cutoff, q_denom=2)


def theta1_squared(cutoff: int) -> LaurentSeries:
    """theta_1(tau, z)^2 with theta_1 = -i sum (-1)^n q^((2n+1)^2/8) zeta^(n+1/2)"""
    core = _odd_theta_core(cutoff, alternating=True)
    return -(core * core)


def theta_series(index: int, cutoff: int) -> LaurentSeries:
    """theta_2, theta_3 or theta_4 as a two-variable series"""
    if index == 2:
        return _odd_theta_core(cutoff, alternating=False)
    if index == 3:
        return _even_theta_core(cutoff, alternating=False)
    if index == 4:
        return _even_theta_core(cutoff, alternating=True)
    raise InvalidArgumentError(f"theta index must be 2, 3 or 4, got {index}")


# ---------------------------------------------------------------------------
# Fourier tables


@dataclass(frozen=True)
class FourierTable:
    """Integer coefficients c(n, r) of an index-m Jacobi form for 0 <= n <= max_n"""

    m: int
    max_n: int
    c: Mapping[Key, int] = field(default_factory=dict)
    cusp: bool = True
    name: str = ""

    def rows(self) -> Iterator[Dict[str, int]]:
        for (n, r), value in sorted(self.c.items()):
            yield {"n": n, "r": r, "c": value}


def _in_support(n: int, r: int, m: int, cusp: bool) -> bool:
    if cusp:
        return r * r < 4 * m * n
    return r * r <= 4 * m * n + m * m


def table_from_series(
    series: LaurentSeries, max_n: int, cusp: bool, m: int = 1, name: str = ""
) -> FourierTable:
    if series.q_offset != 0 or series.z_offset != 0 or series.q_denom != 1:
        raise ValueError(
            f"Series has non-integral exponents: q_offset={series.q_offset}, "
            f"z_offset={series.z_offset}, q_denom={series.q_denom}"
        )
    if max_n >= series.q_cutoff:
        raise CutoffExceededError(f"max_n={max_n} needs a series cutoff above {series.q_cutoff}")
    table: Dict[Key, int] = {}
    for n in range(max_n + 1):
        r_max = math.isqrt(4 * m * n + m * m)
        for r in range(-r_max, r_max + 1):
            if _in_support(n, r, m, cusp):
                table[(n, r)] = 0
    for (n, r), value in series.coefficients.items():
        if n > max_n:
            continue
        if value.denominator != 1:
            raise ValueError(f"Coefficient c({n}, {r}) = {value} is not an integer")
        if not _in_support(n, r, m, cusp):
            raise ValueError(f"Coefficient c({n}, {r}) = {value} lies outside the support")
        table[(n, r)] = int(value)
    return FourierTable(m=m, max_n=max_n, c=table, cusp=cusp, name=name)


def phi_weak_series(kind: int, cutoff: int) -> LaurentSeries:
    if cutoff < 1:
        raise InvalidArgumentError(f"cutoff must be at least 1, got {cutoff}")
    precision = cutoff + 1
    if kind == -2:
        series = -theta1_squared(precision) / eta_power(6, precision)
        expected = {(0, 0): -2, (0, 1): 1}
    elif kind == 0:
        series = None
        for index in (2, 3, 4):
            theta = theta_series(index, precision)
            ratio = (theta * theta) / (theta.at_zeta_one() * theta.at_zeta_one())
            series = ratio if series is None else series + ratio
        series = series.scale(4)
        expected = {(0, 0): 10, (0, 1): 1}
    else:
        raise InvalidArgumentError(f"Weak Jacobi form kind must be -2 or 0, got {kind}")
    for (q_exp, z_exp), value in expected.items():
        if series.coefficient(q_exp, z_exp) != value:
            raise ValueError(
                f"phi_{kind},1 normalization failed: c({q_exp}, {z_exp}) = "
                f"{series.coefficient(q_exp, z_exp)}, expected {value}"
            )
    return series


def phi_weak(kind: int, cutoff: Optional[int] = None) -> FourierTable:
    """phi_{-2,1} or phi_{0,1} with coefficients for r^2 <= 4n + 1"""
    cutoff = DEFAULT_SETTINGS.series_cutoff if cutoff is None else cutoff
    series = phi_weak_series(kind, cutoff)
    return table_from_series(series, cutoff, cusp=False, name=f"phi_{kind},1")


def phi_cusp_series(k: int, cutoff: int) -> LaurentSeries:
    if k == 10:
        weak = phi_weak_series(-2, cutoff)
    elif k == 12:
        weak = phi_weak_series(0, cutoff)
    else:
        raise InvalidArgumentError(f"Cusp form weight must be 10 or 12, got {k}")
    return eta_power(24, cutoff + 1) * weak


def phi_cusp(k: int, cutoff: Optional[int] = None) -> FourierTable:
    """phi_{10,1} = Delta * phi_{-2,1} and phi_{12,1} = Delta * phi_{0,1}"""
    cutoff = DEFAULT_SETTINGS.series_cutoff if cutoff is None else cutoff
    series = phi_cusp_series(k, cutoff)
    logger.debug(f"Built phi_{k},1 with {len(series.coefficients)} nonzero coefficients")
    return table_from_series(series, cutoff, cusp=True, name=f"phi_{k},1")


def coeff(table: FourierTable, n: int, r: int) -> int:
    if n > table.max_n:
        raise CutoffExceededError(f"n={n} exceeds table cutoff {table.max_n}")
    if n < 0:
        return 0
    return table.c.get((n, abs(r)), 0)


def coeff_by_discriminant(table: FourierTable, disc: int) -> int:
    """c(n, r) for any 4n - r^2 = disc (index 1 only)"""
    if table.m != 1:
        raise InvalidArgumentError(f"Discriminant lookup needs index 1, got m={table.m}")
    if disc % 4 in (1, 2):
        return 0
    r = disc % 2
    return coeff(table, (disc + r * r) // 4, r)


def zeta_one_sums(table: FourierTable) -> Dict[int, int]:
    """sum over r of c(n, r) for every n in the table"""
    sums: Dict[int, int] = {n: 0 for n in range(table.max_n + 1)}
    for (n, _), value in table.c.items():
        sums[n] += value
    return sums


def write_table(table: FourierTable, path: str) -> str:
    """Export as "n,r,c" (CSV, or parquet by extension)"""
    return write_rows(list(table.rows()), path, ("n", "r", "c"))
