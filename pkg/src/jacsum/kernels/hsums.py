"""
Jacobi 形式的 Kloosterman 型完全指数和 H^{+-}_{m,c}(n, r)

包括按定义的暴力求和、(c, 2mD) = 1 时的闭式、CRT 分解校验、
混合快速求值器（好部分用闭式，坏部分用暴力或 FFT），以及显式 Weil 界校验。
"""

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Set, Tuple

import numpy as np

from jacsum.kernels.config import DEFAULT_SETTINGS, Settings
from jacsum.kernels.errors import InvalidArgumentError, PreconditionError
from jacsum.kernels.modarith import (
    EPS,
    Residue,
    UnitRootSum,
    crt_pair,
    compensated_row_sums,
    e,
    epsilon,
    factorize,
    fsum_complex,
    is_squarefree,
    jacobi_symbol,
    num_divisors,
    roots_of_unity,
    roundoff_err,
    unit_table,
)

logger = logging.getLogger(__name__)

# elements of the (rho, lambda) grid per numpy block in h_brute
_BLOCK_ELEMENTS = 1 << 20

# (c, t) pairs already reported by h_fast, one warning per modulus and process
_WARNED_BAD_PARTS: Set[Tuple[int, int]] = set()


def is_fundamental(D: int) -> bool:
    if D >= 0:
        return False
    if D % 4 == 1:
        return is_squarefree(-D)
    if D % 4 == 0:
        d = D // 4
        return d % 4 in (2, 3) and is_squarefree(-d)
    return False


@dataclass(frozen=True)
class IndexData:
    """Index m with (n, r); D = r^2 - 4mn < 0"""

    m: int
    n: int
    r: int
    D: int = field(init=False)
    fundamental: bool = field(init=False)

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise InvalidArgumentError(f"Need m >= 1 and n >= 1, got m={self.m}, n={self.n}")
        D = self.r * self.r - 4 * self.m * self.n
        if D >= 0:
            raise InvalidArgumentError(
                f"Discriminant r^2 - 4mn must be negative, got {D} for (m, n, r) = ({self.m}, {self.n}, {self.r})"
            )
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "fundamental", is_fundamental(D))


def parse_sign(sign) -> int:
    if sign in (1, "+", "plus"):
        return 1
    if sign in (-1, "-", "minus"):
        return -1
    raise InvalidArgumentError(f"Sign must be + or -, got {sign!r}")


@dataclass(frozen=True)
class HSumRequest:
    index: IndexData
    c: int
    sign: int = 1

    def __post_init__(self):
        if self.c < 1:
            raise InvalidArgumentError(f"Modulus c must be positive: {self.c}")
        object.__setattr__(self, "sign", parse_sign(self.sign))


# ---------------------------------------------------------------------------
# raw evaluators on (m, n, r) reduced mod c; twisted data may have n = 0 or D >= 0


@lru_cache(maxsize=1 << 14)
def _brute_raw(m: int, n: int, r: int, c: int, sign: int) -> UnitRootSum:
    units, inverses = unit_table(c)
    roots = roots_of_unity(c)
    lam = np.arange(c, dtype=np.int64)
    lam_sq = lam * lam % c
    inner = np.empty(units.size, dtype=np.complex128)
    rows = max(1, _BLOCK_ELEMENTS // c)
    for start in range(0, units.size, rows):
        rho_bar = inverses[start : start + rows, None]
        quad = (m * rho_bar) % c
        lin = (r * (rho_bar + sign)) % c
        idx = (quad * lam_sq[None, :] + lin * lam[None, :]) % c
        inner[start : start + rows] = compensated_row_sums(roots[idx])
    outer = roots[(n * (units + inverses)) % c]
    value = fsum_complex(outer * inner)
    return UnitRootSum(value, roundoff_err(c * units.size))


def _closed_raw(m: int, n: int, r: int, c: int, sign: int) -> UnitRootSum:
    D = r * r - 4 * m * n
    if math.gcd(c, 2 * m * D) != 1:
        raise PreconditionError(f"Closed form needs gcd(c, 2mD) = 1, got c={c}, m={m}, D={D}")
    if c == 1:
        return UnitRootSum(1 + 0j, 0.0)
    inv_2m = pow(2 * m, -1, c)
    shift = sign * inv_2m * r * r
    solutions = unit_solutions(c)
    phases = [e(inv_2m * D * v.value - shift, c) for v in solutions]
    eps2 = epsilon(c) ** 2
    value = eps2 * c * jacobi_symbol(-D, c) * fsum_complex(phases)
    return UnitRootSum(value, c * (roundoff_err(len(phases)) + 4 * EPS * len(phases)))


@lru_cache(maxsize=1 << 12)
def _kloosterman_row(n: int, c: int) -> np.ndarray:
    """S(n, b; c) for every b mod c as the DFT of x -> [x unit] e(n xbar/c)"""
    units, inverses = unit_table(c)
    f = np.zeros(c, dtype=np.complex128)
    f[inverses] = roots_of_unity(c)[(n * units) % c]
    row = np.fft.ifft(f) * c
    row.flags.writeable = False
    return row


def _fft_err(c: int) -> float:
    return 16 * EPS * c * c * (math.log2(c) + 1) + roundoff_err(c)


def _fft_raw(m: int, n: int, r: int, c: int, sign: int) -> UnitRootSum:
    if c == 1:
        return UnitRootSum(1 + 0j, 0.0)
    row = _kloosterman_row(n % c, c)
    lam = np.arange(c, dtype=np.int64)
    b = (n + m * (lam * lam % c) + r * lam) % c
    twist = roots_of_unity(c)[(sign * r * lam) % c]
    return UnitRootSum(fsum_complex(twist * row[b]), _fft_err(c))


def _reduced(m: int, n: int, r: int, c: int) -> Tuple[int, int, int]:
    return m % c, n % c, r % c


# ---------------------------------------------------------------------------
# public operations


def h_brute(req: HSumRequest) -> UnitRootSum:
    """Direct double sum over rho (units) and lambda mod c"""
    idx = req.index
    return _brute_raw(*_reduced(idx.m, idx.n, idx.r, req.c), req.c, req.sign)


def h_closed_coprime(req: HSumRequest) -> UnitRootSum:
    idx = req.index
    if math.gcd(req.c, 2 * idx.m * idx.D) != 1:
        raise PreconditionError(
            f"h_closed_coprime needs gcd(c, 2mD) = 1, got c={req.c}, m={idx.m}, D={idx.D}"
        )
    return _closed_raw(idx.m, idx.n, idx.r, req.c, req.sign)


def h_fft(req: HSumRequest) -> UnitRootSum:
    """Sum over lambda of e(+-r lambda/c) S(n, n + m lambda^2 + r lambda; c), O(c log c)"""
    idx = req.index
    return _fft_raw(*_reduced(idx.m, idx.n, idx.r, req.c), req.c, req.sign)


def twisted_factor(m: int, n: int, r: int, q: int, cofactor: int) -> Tuple[int, int, int]:
    """(m * cofactor, n * cofactor^-1, r) reduced mod q"""
    inv = pow(cofactor, -1, q) if q > 1 else 0
    return (m * cofactor) % q, (n * inv) % q, r % q


def h_factor_check(index: IndexData, c1: int, c2: int, sign) -> bool:
    """H_{m, c1 c2}(n, r) = H_{m c1, c2}(n c1bar, r) * H_{m c2, c1}(n c2bar, r)"""
    if c1 < 1 or c2 < 1:
        raise InvalidArgumentError(f"Moduli must be positive, got c1={c1}, c2={c2}")
    if math.gcd(c1, c2) != 1:
        raise PreconditionError(f"h_factor_check needs gcd(c1, c2) = 1, got {c1}, {c2}")
    sign = parse_sign(sign)
    m, n, r = index.m, index.n, index.r
    whole = _brute_raw(*_reduced(m, n, r, c1 * c2), c1 * c2, sign)
    left = _brute_raw(*twisted_factor(m, n, r, c2, c1), c2, sign)
    right = _brute_raw(*twisted_factor(m, n, r, c1, c2), c1, sign)
    return whole.agrees_with(left * right)


def split_bad_part(c: int, index: IndexData) -> Tuple[int, int]:
    """c = q * t with t | (2mD)^infinity and gcd(q, 2mD) = 1"""
    bad = 2 * index.m * abs(index.D)
    t = 1
    for p, a in factorize(c):
        if bad % p == 0:
            t *= p**a
    return c // t, t


@lru_cache(maxsize=1 << 16)
def _bad_component(m: int, n: int, r: int, Q: int, sign: int, brute_limit: int) -> UnitRootSum:
    if Q <= brute_limit:
        return _brute_raw(m, n, r, Q, sign)
    return _fft_raw(m, n, r, Q, sign)


def h_fast(req: HSumRequest, settings: Optional[Settings] = None) -> UnitRootSum:
    """Closed form on the part of c coprime to 2mD, prime-power components on the rest"""
    settings = settings or DEFAULT_SETTINGS
    idx = req.index
    c = req.c
    q, t = split_bad_part(c, idx)
    if t == 1:
        return _closed_raw(idx.m, idx.n, idx.r, c, req.sign)
    if t > settings.bad_part_threshold and (c, t) not in _WARNED_BAD_PARTS:
        _WARNED_BAD_PARTS.add((c, t))
        logger.warning(
            f"Bad part t={t} of c={c} exceeds {settings.bad_part_threshold}; using FFT components"
        )

    result = UnitRootSum(1 + 0j, 0.0)
    if q > 1:
        result = result * _closed_raw(*twisted_factor(idx.m, idx.n, idx.r, q, t), q, req.sign)
    for p, a in factorize(t):
        Q = p**a
        m_q, n_q, r_q = twisted_factor(idx.m, idx.n, idx.r, Q, c // Q)
        result = result * _bad_component(m_q, n_q, r_q, Q, req.sign, settings.brute_limit)
    return result


def weil_bound(req: HSumRequest) -> float:
    """tau(c) * c * (c, m, r)^(1/2) * (c, D')^(1/2) with D' = D/(m, r)"""
    idx = req.index
    c = req.c
    d_prime = idx.D // math.gcd(idx.m, idx.r)
    return (
        num_divisors(c)
        * c
        * math.sqrt(math.gcd(math.gcd(c, idx.m), idx.r))
        * math.sqrt(math.gcd(c, d_prime))
    )


def weil_check(req: HSumRequest, settings: Optional[Settings] = None) -> bool:
    h = h_fast(req, settings)
    size = abs(h.value)
    ok = size <= weil_bound(req) + h.err
    if req.index.fundamental:
        c = req.c
        ok = ok and size <= num_divisors(c) * c * math.sqrt(math.gcd(c, req.index.D)) + h.err
    return ok


def _prime_power_units(p: int, a: int) -> List[int]:
    q = p**a
    if p != 2:
        return sorted({1, q - 1})
    if a == 1:
        return [1]
    if a == 2:
        return [1, 3]
    half = q // 2
    return [1, half - 1, half + 1, q - 1]


@lru_cache(maxsize=1 << 14)
def _unit_solution_values(q: int) -> Tuple[int, ...]:
    values, modulus = [0], 1
    for p, a in factorize(q):
        Q = p**a
        values = [crt_pair(x, modulus, y, Q) for x in values for y in _prime_power_units(p, a)]
        modulus *= Q
    return tuple(sorted(values))


def unit_solutions(q: int) -> List[Residue]:
    """All v mod q with v^2 = 1 mod q, ascending; q = 1 gives the zero residue"""
    if q < 1:
        raise InvalidArgumentError(f"Modulus must be positive: {q}")
    return [Residue(v, q) for v in _unit_solution_values(q)]
