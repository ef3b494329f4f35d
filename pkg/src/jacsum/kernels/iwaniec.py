"""
素数加权的几何和及终局指数计算

- omega(c)：[P, 2P] 中整除 c 且不整除 mD 的素数的 log p 之和（分段筛法枚举素数）
- weighted_S / split_S / t_pieces：omega 加权的 c-级数及其按 c <= C, C < c < K, c >= K 的三分；split_monotonicity 报告各段随截断的单调性
- f_of_a_t / S_a_sum / decay_report：双线性相位的计算要素与衰减测量
- endgame_exponent 等：sigma = log m / log|D| 下参数选择与指数的精确有理数计算
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from jacsum.kernels.config import Settings
from jacsum.kernels.errors import (
    InvalidArgumentError,
    InvalidParamsError,
    OutOfRegimeError,
    PreconditionError,
)
from jacsum.kernels.exports import write_rows
from jacsum.kernels.hsums import IndexData, split_bad_part
from jacsum.kernels.modarith import Residue, UnitRootSum, e, fsum_complex, jacobi_symbol, roundoff_err
from jacsum.kernels.petersson import (
    bessel_terms,
    level_series,
    raw_tail_bound,
    sum_terms,
    weights_for,
)

logger = logging.getLogger(__name__)

_SEGMENT = 1 << 16

DECAY_COLUMNS = ("a", "t", "B", "abs_v_a", "term_count")

SIGMA_MAX = Fraction(7, 25)
CROSSOVER = Fraction(21, 155)
P_GE_T_THRESHOLD = Fraction(39, 121)


# ---------------------------------------------------------------------------
# primes and the weight omega


def simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


@lru_cache(maxsize=64)
def _primes_between(lo: int, hi: int) -> Tuple[int, ...]:
    base = simple_sieve(math.isqrt(hi) + 1)
    found: List[int] = []
    low = max(lo, 2)
    while low <= hi:
        high = min(low + _SEGMENT, hi + 1)
        mask = np.ones(high - low, dtype=bool)
        for p in base.tolist():
            if p * p >= high:
                break
            start = max(p * p, -(-low // p) * p)
            mask[start - low :: p] = False
        found.extend((low + np.flatnonzero(mask)).tolist())
        low = high
    return tuple(found)


def primes_in_range(lo: int, hi: int) -> List[int]:
    """Primes p with lo <= p <= hi, segmented sieve"""
    if hi < lo:
        return []
    return list(_primes_between(int(lo), int(hi)))


def weight_primes(P: int, m: int, D: int) -> List[int]:
    """Primes in [P, 2P] not dividing mD"""
    if P < 2:
        raise InvalidArgumentError(f"P must be at least 2, got {P}")
    return [p for p in primes_in_range(P, 2 * P) if (m * D) % p != 0]


def omega(c: int, P: int, m: int, D: int) -> float:
    if c < 1:
        raise InvalidArgumentError(f"c must be positive, got {c}")
    return math.fsum(math.log(p) for p in weight_primes(P, m, D) if c % p == 0)


def omega_array(c_max: int, P: int, m: int, D: int) -> np.ndarray:
    """omega(c) for c = 0..C_max (entry 0 unused)"""
    weights = np.zeros(c_max + 1, dtype=np.float64)
    for p in weight_primes(P, m, D):
        weights[p::p] += math.log(p)
    return weights


def total_weight(P: int, m: int, D: int) -> float:
    """Upper bound for every omega(c)"""
    return math.fsum(math.log(p) for p in weight_primes(P, m, D))


# ---------------------------------------------------------------------------
# the weighted sum and its split


def _weighted_terms(
    k: int,
    index: IndexData,
    P: int,
    c_max: int,
    settings: Optional[Settings],
    workers: int,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    weights = omega_array(c_max, P, index.m, index.D)
    cs = np.flatnonzero(weights)
    rows = weights_for(index, cs.tolist(), settings, workers)
    terms, errs = bessel_terms(k, index, rows, weights[cs])
    return cs, terms, errs


def weighted_S(
    k: int,
    index: IndexData,
    P: int,
    c_max: int,
    settings: Optional[Settings] = None,
    workers: int = 1,
) -> UnitRootSum:
    """sum_{+-} sum_{c <= C_max} omega(c) H c^{-3/2} e(+-r^2/2mc) J_{k-3/2}(pi|D|/mc)"""
    _, terms, errs = _weighted_terms(k, index, P, c_max, settings, workers)
    return sum_terms(terms, errs)


def levelwise_S(
    k: int,
    index: IndexData,
    P: int,
    c_max: int,
    settings: Optional[Settings] = None,
    workers: int = 1,
) -> UnitRootSum:
    """Same sum ordered by prime: sum_p log p * (level-p series)"""
    total = UnitRootSum(0j, 0.0)
    for p in weight_primes(P, index.m, index.D):
        total = total + level_series(k, index, p, c_max, settings, workers) * math.log(p)
    return total


@dataclass(frozen=True)
class SplitSums:
    s_flat: UnitRootSum
    s_star: UnitRootSum
    s_sharp: UnitRootSum
    sharp_tail: float
    C: int
    K: int
    x_max: int

    @property
    def total(self) -> UnitRootSum:
        return self.s_flat + self.s_star + self.s_sharp


def _check_split(index: IndexData, C, K):
    ratio = Fraction(abs(index.D), index.m)
    if not 0 < Fraction(C) <= ratio <= Fraction(K):
        raise InvalidParamsError(f"Need 0 < C <= |D|/m <= K, got C={C}, |D|/m={ratio}, K={K}")


def split_S(
    k: int,
    index: IndexData,
    P: int,
    C: int,
    K: int,
    x_max: Optional[int] = None,
    settings: Optional[Settings] = None,
    workers: int = 1,
) -> SplitSums:
    """Pieces c <= C, C < c < K and K <= c <= x_max; beyond x_max only a bound"""
    _check_split(index, C, K)
    x_max = 4 * K if x_max is None else x_max
    if x_max < K:
        raise InvalidParamsError(f"Secondary cutoff x_max={x_max} is below K={K}")
    cs, terms, errs = _weighted_terms(k, index, P, x_max, settings, workers)
    flat = cs <= C
    sharp = cs >= K
    star = ~flat & ~sharp
    tail = total_weight(P, index.m, index.D) * raw_tail_bound(k, index.m, index.D, x_max)
    return SplitSums(
        s_flat=sum_terms(terms[flat], errs[flat]),
        s_star=sum_terms(terms[star], errs[star]),
        s_sharp=sum_terms(terms[sharp], errs[sharp]),
        sharp_tail=tail,
        C=C,
        K=K,
        x_max=x_max,
    )


def _non_increasing(values: Sequence[float]) -> bool:
    return all(b <= a for a, b in zip(values, values[1:]))


def split_monotonicity(
    k: int,
    index: IndexData,
    P: int,
    C_values: Sequence[int],
    K_values: Sequence[int],
    x_max: Optional[int] = None,
    settings: Optional[Settings] = None,
    workers: int = 1,
) -> Dict[str, Any]:
    """
    |s_flat| as C decreases and |s_sharp| as K increases, from one pass over c <= x_max

    The two flags are reported only; a non-monotone run is logged, never raised.
    """
    if not C_values or not K_values:
        raise InvalidParamsError("Need at least one C and one K")
    for C in C_values:
        _check_split(index, C, min(K_values))
    for K in K_values:
        _check_split(index, max(C_values), K)
    x_max = 4 * max(K_values) if x_max is None else x_max
    if x_max < max(K_values):
        raise InvalidParamsError(f"Secondary cutoff x_max={x_max} is below K={max(K_values)}")
    cs, terms, errs = _weighted_terms(k, index, P, x_max, settings, workers)

    flat_rows = []
    for C in sorted(set(C_values), reverse=True):
        piece = sum_terms(terms[cs <= C], errs[cs <= C])
        flat_rows.append({"C": C, "abs_s_flat": abs(piece.value), "err": piece.err})
    sharp_rows = []
    for K in sorted(set(K_values)):
        piece = sum_terms(terms[cs >= K], errs[cs >= K])
        sharp_rows.append({"K": K, "abs_s_sharp": abs(piece.value), "err": piece.err})

    flat_decreasing = _non_increasing([row["abs_s_flat"] for row in flat_rows])
    sharp_decreasing = _non_increasing([row["abs_s_sharp"] for row in sharp_rows])
    logger.info(
        f"split monotonicity D={index.D} k={k} P={P}: |s_flat| decreasing in C: {flat_decreasing}, "
        f"|s_sharp| decreasing in K: {sharp_decreasing}"
    )
    return {
        "flat": flat_rows,
        "sharp": sharp_rows,
        "flat_decreasing": flat_decreasing,
        "sharp_decreasing": sharp_decreasing,
        "x_max": x_max,
    }


def t_pieces(
    k: int,
    index: IndexData,
    P: int,
    C: int,
    K: int,
    settings: Optional[Settings] = None,
    workers: int = 1,
) -> Dict[int, UnitRootSum]:
    """The middle piece regrouped by the bad part t of c = qt, t ascending"""
    _check_split(index, C, K)
    cs, terms, errs = _weighted_terms(k, index, P, max(K - 1, 0), settings, workers)
    keep = cs > C
    cs, terms, errs = cs[keep], terms[keep], errs[keep]
    ts = np.array([split_bad_part(int(c), index)[1] for c in cs.tolist()], dtype=np.int64)
    pieces = {}
    for t in sorted(set(ts.tolist())):
        group = ts == t
        pieces[t] = sum_terms(terms[group], errs[group])
    return pieces


# ---------------------------------------------------------------------------
# bilinear phase ingredients


def _check_sign(name: str, value: int):
    if value not in (1, -1):
        raise InvalidArgumentError(f"{name} must be +1 or -1, got {value}")


def f_of_a_t(index: IndexData, a: int, t: int, eps1: int, eps2: int, lift: int = 0) -> Residue:
    """eps2 D (1 + 2mt (2mt)bar) + eps1 a abar r^2 mod 2mta; lift shifts both inverse lifts"""
    _check_sign("eps1", eps1)
    _check_sign("eps2", eps2)
    if a < 1 or t < 1:
        raise InvalidArgumentError(f"a and t must be positive, got a={a}, t={t}")
    m, r, D = index.m, index.r, index.D
    if math.gcd(a, 2 * m * D) != 1 or math.gcd(a, t) != 1:
        raise PreconditionError(f"f(a, t) needs gcd(a, 2mDt) = 1, got a={a}, t={t}, m={m}, D={D}")
    M = 2 * m * t
    inv_M = (pow(M, -1, a) if a > 1 else 0) + lift * a
    inv_a = pow(a, -1, M) + lift * M
    return Residue.of(eps2 * D * (1 + M * inv_M) + eps1 * a * inv_a * r * r, M * a)


@dataclass(frozen=True)
class SaSum:
    total: UnitRootSum
    v_a: UnitRootSum
    v_prime_a: UnitRootSum
    omega_a: float
    term_count: int
    termwise_ok: bool


def S_a_sum(
    index: IndexData,
    a: int,
    t: int,
    s: int,
    B: int,
    C: Union[int, Fraction],
    eps1: int,
    eps2: int,
    P: int,
) -> SaSum:
    """sum over max(a, C/(at)) < b < B, ab = s mod 4t, (b, 2mDat) = 1 of omega(ab) (D/b) e(f b-bar / 2mta)"""
    m, D = index.m, index.D
    f = f_of_a_t(index, a, t, eps1, eps2).value
    modulus = 2 * m * t * a
    lower = math.floor(max(Fraction(a), Fraction(C) / (a * t))) + 1
    omega_a = omega(a, P, m, D)
    bad = 2 * m * D * a * t

    total, plain, weighted = [], [], []
    termwise_ok = True
    for b in range(lower, B):
        if (a * b - s) % (4 * t) != 0 or math.gcd(b, bad) != 1:
            continue
        phase = jacobi_symbol(D, b) * e(f * pow(b, -1, modulus), modulus)
        omega_b = omega(b, P, m, D)
        omega_ab = omega(a * b, P, m, D)
        termwise_ok = termwise_ok and abs(omega_ab - omega_a - omega_b) <= 1e-12 * max(1.0, omega_ab)
        total.append(omega_ab * phase)
        plain.append(phase)
        weighted.append(omega_b * phase)

    def carry(values: List[complex]) -> UnitRootSum:
        return UnitRootSum(fsum_complex(values), roundoff_err(len(values)) * max(1.0, omega_a + 1))

    return SaSum(
        total=carry(total),
        v_a=carry(weighted),
        v_prime_a=carry(plain),
        omega_a=omega_a,
        term_count=len(total),
        termwise_ok=termwise_ok,
    )


def decay_report(
    index: IndexData,
    P: int,
    a_values: Sequence[int],
    t_values: Sequence[int],
    B_values: Sequence[int],
    C: int = 1,
    eps1: int = 1,
    eps2: int = 1,
) -> List[Dict[str, Any]]:
    """|V_a| against the trivial bound term_count on a grid; a not coprime to 2mDt is skipped"""
    rows = []
    for a in a_values:
        if math.gcd(a, 2 * index.m * index.D) != 1:
            continue
        for t in t_values:
            if math.gcd(a, t) != 1:
                continue
            for B in B_values:
                result = S_a_sum(index, a, t, a % (4 * t), B, C, eps1, eps2, P)
                rows.append(
                    {
                        "a": a,
                        "t": t,
                        "B": B,
                        "abs_v_a": abs(result.v_a.value),
                        "term_count": result.term_count,
                    }
                )
    logger.info(f"Decay report for D={index.D}: {len(rows)} rows")
    return rows


def write_decay_report(rows: List[Dict[str, Any]], path: str) -> str:
    return write_rows(rows, path, DECAY_COLUMNS)


# ---------------------------------------------------------------------------
# exact exponent bookkeeping, sigma = log m / log |D|


class Regime(str, Enum):
    LOW = "LOW"
    HIGH = "HIGH"


def as_rational(value) -> Fraction:
    """Exact rational from int, Fraction or a "p/q" string; floats are rejected"""
    if isinstance(value, bool) or isinstance(value, float):
        raise InvalidArgumentError(f"Exact rational expected, got {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str) and "." not in value and "e" not in value.lower():
        try:
            return Fraction(value.strip())
        except ValueError:
            pass
    raise InvalidArgumentError(f"Exact rational expected, got {value!r}")


def endgame_delta(sigma) -> Fraction:
    sigma = as_rational(sigma)
    return (3 - 5 * sigma) / (72 * (1 - sigma))


@dataclass(frozen=True)
class ProofParams:
    """Exponents of P, C, K, T measured in powers of |D|/m"""

    sigma: Fraction
    delta: Fraction
    p_exp: Fraction
    c_exp: Fraction
    k_exp: Fraction
    t_exp: Fraction


def proof_params(sigma) -> ProofParams:
    sigma = as_rational(sigma)
    if not 0 <= sigma <= Fraction(1, 2):
        raise InvalidParamsError(f"sigma must lie in [0, 1/2], got {sigma}")
    delta = endgame_delta(sigma)
    # P = m^{-3/10} (|D|/m)^{1/10 + 2 delta/5} and m = (|D|/m)^{sigma/(1 - sigma)}
    p_exp = -3 * sigma / (10 * (1 - sigma)) + Fraction(1, 10) + 2 * delta / 5
    return ProofParams(
        sigma=sigma,
        delta=delta,
        p_exp=p_exp,
        c_exp=1 - delta,
        k_exp=1 + delta,
        t_exp=delta,
    )


def _check_regime(sigma: Fraction):
    if not 0 <= sigma <= SIGMA_MAX:
        raise OutOfRegimeError(f"sigma must lie in [0, 7/25], got {sigma}")


def case_exponents(sigma) -> Tuple[Fraction, Fraction]:
    sigma = as_rational(sigma)
    return 5 * sigma / 72 - Fraction(3, 72), 25 * sigma / 112 - Fraction(1, 16)


def p_ge_t(params: ProofParams) -> bool:
    """P >= T in the form m <= |D|^{(1 + 15 delta)/(4 + 15 delta)}"""
    delta = params.delta
    return params.sigma <= (1 + 15 * delta) / (4 + 15 * delta)


@dataclass(frozen=True)
class EndgameResult:
    sigma: Fraction
    delta: Fraction
    exponent: Fraction
    regime: Regime
    p_exp: Fraction
    p_ge_t: bool
    threshold: Fraction

    def as_dict(self) -> Dict[str, Any]:
        return {
            "sigma": self.sigma,
            "delta": self.delta,
            "exponent": self.exponent,
            "regime": self.regime.value,
            "p_exp": self.p_exp,
            "p_ge_t": self.p_ge_t,
            "p_ge_t_threshold": self.threshold,
        }


def endgame_exponent(sigma) -> EndgameResult:
    sigma = as_rational(sigma)
    _check_regime(sigma)
    params = proof_params(sigma)
    low, high = case_exponents(sigma)
    ge = p_ge_t(params)
    if ge != (sigma <= P_GE_T_THRESHOLD):
        raise InvalidParamsError(f"P >= T condition disagrees with the 39/121 threshold at sigma={sigma}")
    return EndgameResult(
        sigma=sigma,
        delta=params.delta,
        exponent=max(low, high),
        regime=Regime.LOW if sigma <= CROSSOVER else Regime.HIGH,
        p_exp=params.p_exp,
        p_ge_t=ge,
        threshold=P_GE_T_THRESHOLD,
    )


def before_p_exponents(params: ProofParams) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    """|D|-exponents of the four terms before P is chosen; reported, not asserted"""
    s, d = params.sigma, params.delta
    p = -3 * s / 10 + (1 - s) * (Fraction(1, 10) + 2 * d / 5)
    return (
        -d * (1 - s),
        3 * s / 10 + p / 5 + (1 - s) * (21 * d / 10 - Fraction(1, 10)),
        -p / 2 + (1 - s) * 5 * d / 2,
        s / 4 + p / 2 + (1 - s) * (2 * d - Fraction(1, 8)),
    )


def after_p_exponents(params: ProofParams) -> Tuple[Fraction, Fraction, Fraction]:
    """|D|-exponents of the three terms once P is fixed; reported, not asserted"""
    s, d = params.sigma, params.delta
    return (
        -d * (1 - s),
        3 * s / 14 + (1 - s) * (27 * d / 14 - Fraction(1, 7)),
        s / 28 + (1 - s) * (16 * d / 7 - Fraction(3, 56)),
    )


def theorem_exponent(sigma) -> Fraction:
    """-(1 - 25 sigma/7)/24, the interpolated squared-coefficient exponent"""
    sigma = as_rational(sigma)
    _check_regime(sigma)
    return -(1 - 25 * sigma / 7) / 24


def theorem_exponent_check(sigma) -> bool:
    return theorem_exponent(sigma) >= endgame_exponent(sigma).exponent
