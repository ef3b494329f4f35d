"""
Jacobi 形式 Petersson 公式的几何侧

几何侧 = 1 + (i^k pi / sqrt(2m)) * sum_{+-} sum_{N | c <= C_max} c^{-3/2} H e(+-r^2/2mc) J_{k-3/2}(pi|D|/mc)，
截断误差用 Weil 界与 Bessel 幂次界给出严格上界。零维空间验证消失性，一维空间验证系数比。
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from jacsum.kernels.bessel import HalfOrder, bessel_half_array, gamma_nu_plus_one, half_gamma
from jacsum.kernels.config import DEFAULT_SETTINGS, Settings, cusp_dimension
from jacsum.kernels.errors import InvalidArgumentError, PreconditionError
from jacsum.kernels.hsums import HSumRequest, IndexData, h_fast
from jacsum.kernels.jacobiforms import coeff, phi_cusp
from jacsum.kernels.modarith import EPS, UnitRootSum, e, fsum_complex, roundoff_err

logger = logging.getLogger(__name__)

# absolute accuracy assumed for one Bessel evaluation
BESSEL_ABS_ERR = 1e-12

ZERO_DIM_SAMPLES: Tuple[Tuple[int, int], ...] = ((1, 0), (1, 1), (2, 1), (2, 0), (3, 1))
RATIO_PAIRS: Tuple[Tuple[Tuple[int, int], Tuple[int, int]], ...] = (
    ((1, 1), (1, 0)),
    ((2, 1), (2, -1)),
    ((2, 1), (1, 1)),
    ((2, 0), (1, 0)),
    ((3, 1), (1, 1)),
)

WeightRow = Tuple[int, complex, float]


@dataclass(frozen=True)
class PeterssonJob:
    k: int
    index: IndexData
    level: int = 1
    c_max: int = 10_000

    def __post_init__(self):
        HalfOrder(self.k)
        if self.level < 1:
            raise InvalidArgumentError(f"Level must be positive, got {self.level}")
        if self.c_max < 0:
            raise InvalidArgumentError(f"C_max must be nonnegative, got {self.c_max}")


@dataclass(frozen=True)
class TruncatedSide:
    value: complex
    err: float
    tail: float
    terms: int = 0


def lambda_km(k: int, m: int, D: int) -> float:
    """Gamma(k - 3/2) / (4 pi^(k - 3/2)) * m^(k-2) * |D|^(3/2 - k)"""
    HalfOrder(k)
    if m < 1 or D >= 0:
        raise InvalidArgumentError(f"lambda_km needs m >= 1 and D < 0, got m={m}, D={D}")
    ratio = half_gamma(k - 2)
    return float(ratio) / (4 * math.pi ** (k - 2)) * (m / abs(D)) ** (k - 2) / math.sqrt(abs(D))


def prefactor(k: int, m: int) -> float:
    """i^k pi / sqrt(2m); real because k is even"""
    return (-1) ** (k // 2) * math.pi / math.sqrt(2 * m)


def tail_constant(k: int, m: int, D: int) -> float:
    """4 |D|^(1/2) (pi|D|/2m)^nu / Gamma(nu + 1), bounding one c-term times c^nu"""
    order = HalfOrder(k)
    nu = float(order.nu)
    return 4 * math.sqrt(abs(D)) * (math.pi * abs(D) / (2 * m)) ** nu / gamma_nu_plus_one(order)


def _power_tail(k: int, c_max: int) -> float:
    nu = float(HalfOrder(k).nu)
    if c_max < 1:
        return nu / (nu - 1)
    return c_max ** (1 - nu) / (nu - 1)


def raw_tail_bound(k: int, m: int, D: int, c_max: int) -> float:
    """Bound on sum over c > C_max of |c^{-3/2} H e(..) J| summed over both signs"""
    return tail_constant(k, m, D) * _power_tail(k, c_max)


def series_tail_bound(k: int, m: int, D: int, c_max: int) -> float:
    return abs(prefactor(k, m)) * raw_tail_bound(k, m, D, c_max)


# ---------------------------------------------------------------------------
# k-independent arithmetic weights w(c) = sum_{+-} c^{-3/2} H^{+-} e(+-r^2/2mc)


def _weight(index: IndexData, c: int, settings: Settings) -> Tuple[complex, float]:
    scale = c**-1.5
    total = 0j
    err = 0.0
    for sign in (1, -1):
        h = h_fast(HSumRequest(index, c, sign), settings)
        total += h.value * e(sign * index.r * index.r, 2 * index.m * c)
        err += h.err + 4 * EPS * abs(h.value)
    return total * scale, err * scale


def _weights_chunk(args) -> List[WeightRow]:
    index, cs, settings = args
    rows = []
    for c in cs:
        w, err = _weight(index, c, settings)
        rows.append((c, w, err))
    return rows


def weights_for(
    index: IndexData,
    cs: Sequence[int],
    settings: Optional[Settings] = None,
    workers: int = 1,
) -> List[WeightRow]:
    """w(c) for the given moduli, in order; chunk boundaries depend only on chunk_size"""
    settings = settings or DEFAULT_SETTINGS
    cs = list(cs)
    size = settings.chunk_size
    chunks = [(index, cs[i : i + size], settings) for i in range(0, len(cs), size)]
    rows: List[WeightRow] = []
    if workers > 1 and len(chunks) > 1:
        with Pool(processes=min(workers, len(chunks))) as pool:
            for chunk_rows in pool.imap(_weights_chunk, chunks):
                rows.extend(chunk_rows)
    else:
        for chunk in chunks:
            rows.extend(_weights_chunk(chunk))
    return rows


def kloosterman_weights(
    index: IndexData,
    level: int,
    c_max: int,
    settings: Optional[Settings] = None,
    workers: int = 1,
) -> List[WeightRow]:
    return weights_for(index, range(level, c_max + 1, level), settings, workers)


def bessel_terms(
    k: int,
    index: IndexData,
    rows: Sequence[WeightRow],
    multipliers: Optional[np.ndarray] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """Per-c terms (multiplier) * w(c) * J_{k-3/2}(pi|D|/mc) and their error bounds"""
    if not rows:
        return np.zeros(0, dtype=np.complex128), np.zeros(0, dtype=np.float64)
    cs = np.array([row[0] for row in rows], dtype=np.float64)
    weights = np.array([row[1] for row in rows], dtype=np.complex128)
    errs = np.array([row[2] for row in rows], dtype=np.float64)
    js = bessel_half_array(HalfOrder(k), math.pi * abs(index.D) / (index.m * cs))
    if multipliers is not None:
        weights = weights * multipliers
        errs = errs * np.abs(multipliers)
    return weights * js, errs * np.abs(js) + BESSEL_ABS_ERR * np.abs(weights)


def sum_terms(terms: np.ndarray, errs: np.ndarray) -> UnitRootSum:
    if terms.size == 0:
        return UnitRootSum(0j, 0.0)
    err = math.fsum(errs.tolist()) + roundoff_err(terms.size) * float(np.max(np.abs(terms)))
    return UnitRootSum(fsum_complex(terms), err)


def bessel_weighted_sum(
    k: int,
    index: IndexData,
    rows: Sequence[WeightRow],
    multipliers: Optional[np.ndarray] = None,
) -> UnitRootSum:
    """sum of (multiplier) * w(c) * J_{k-3/2}(pi|D|/mc) over rows, c ascending"""
    return sum_terms(*bessel_terms(k, index, rows, multipliers))


def level_series(
    k: int,
    index: IndexData,
    level: int,
    c_max: int,
    settings: Optional[Settings] = None,
    workers: int = 1,
) -> UnitRootSum:
    """The c-series of the geometric side without its prefactor, over N | c <= C_max"""
    return bessel_weighted_sum(k, index, kloosterman_weights(index, level, c_max, settings, workers))


def geometric_sides(
    ks: Sequence[int],
    index: IndexData,
    level: int = 1,
    c_max: int = 10_000,
    settings: Optional[Settings] = None,
    workers: int = 1,
) -> Dict[int, TruncatedSide]:
    """geometric_side for several weights sharing one pass over the H-sums"""
    for k in ks:
        PeterssonJob(k, index, level, c_max)
    if c_max < level:
        logger.warning(f"C_max={c_max} is below level N={level}; the c-sum is empty")
    rows = kloosterman_weights(index, level, c_max, settings, workers)
    sides = {}
    for k in ks:
        inner = bessel_weighted_sum(k, index, rows)
        pref = prefactor(k, index.m)
        value = 1 + pref * inner.value
        err = abs(pref) * inner.err + 4 * EPS * abs(value)
        tail = series_tail_bound(k, index.m, index.D, c_max)
        sides[k] = TruncatedSide(value=value, err=err, tail=tail, terms=len(rows))
    return sides


def geometric_side(
    job: PeterssonJob, settings: Optional[Settings] = None, workers: int = 1
) -> TruncatedSide:
    return geometric_sides((job.k,), job.index, job.level, job.c_max, settings, workers)[job.k]


# ---------------------------------------------------------------------------
# validations against dimension facts


def _side_record(k: int, index: IndexData, side: TruncatedSide) -> Dict[str, Any]:
    return {
        "k": k,
        "m": index.m,
        "n": index.n,
        "r": index.r,
        "D": index.D,
        "value_re": side.value.real,
        "value_im": side.value.imag,
        "err": side.err,
        "tail": side.tail,
    }


def zero_dim_check(
    k: Union[int, Sequence[int]],
    m: int = 1,
    samples: Optional[Sequence[Tuple[int, int]]] = None,
    c_max: Optional[int] = None,
    tolerance: Optional[float] = None,
    settings: Optional[Settings] = None,
    workers: int = 1,
    dimension_path: Optional[str] = None,
) -> Dict[str, Any]:
    """|geometric_side| <= tail + tolerance for every sample when dim J^cusp_{k,m} = 0"""
    settings = settings or DEFAULT_SETTINGS
    ks = (k,) if isinstance(k, int) else tuple(k)
    samples = ZERO_DIM_SAMPLES if samples is None else tuple(samples)
    c_max = settings.zero_dim_cutoff if c_max is None else c_max
    tolerance = settings.zero_dim_tolerance if tolerance is None else tolerance
    for weight in ks:
        if cusp_dimension(weight, m, dimension_path) != 0:
            raise PreconditionError(f"J^cusp_{{{weight},{m}}} is not recorded as zero-dimensional")

    records = []
    for n, r in samples:
        index = IndexData(m, n, r)
        sides = geometric_sides(ks, index, 1, c_max, settings, workers)
        for weight in ks:
            side = sides[weight]
            record = _side_record(weight, index, side)
            record["margin"] = side.tail + tolerance - abs(side.value)
            record["pass"] = record["margin"] >= 0
            records.append(record)
            logger.info(
                f"zero-dim k={weight} (n, r)=({n}, {r}): |value|={abs(side.value):.3e} "
                f"tail={side.tail:.3e} pass={record['pass']}"
            )
    return {
        "k": list(ks),
        "m": m,
        "c_max": c_max,
        "tolerance": tolerance,
        "records": records,
        "pass": all(rec["pass"] for rec in records),
    }


def ratio_check(
    k: int,
    m: int = 1,
    pairs: Optional[Sequence[Tuple[Tuple[int, int], Tuple[int, int]]]] = None,
    c_max: Optional[int] = None,
    tolerance: Optional[float] = None,
    cutoff: Optional[int] = None,
    settings: Optional[Settings] = None,
    workers: int = 1,
    dimension_path: Optional[str] = None,
) -> Dict[str, Any]:
    """[RHS_1/lambda(D_1)] / [RHS_2/lambda(D_2)] = |c_1|^2/|c_2|^2 in a one-dimensional space"""
    settings = settings or DEFAULT_SETTINGS
    pairs = RATIO_PAIRS if pairs is None else tuple(pairs)
    c_max = settings.ratio_cutoff if c_max is None else c_max
    tolerance = settings.ratio_tolerance if tolerance is None else tolerance
    if m != 1:
        raise PreconditionError(f"Coefficient tables exist for index 1 only, got m={m}")
    if cusp_dimension(k, m, dimension_path) != 1:
        raise PreconditionError(f"J^cusp_{{{k},{m}}} is not recorded as one-dimensional")
    needed = max(max(p[0][0], p[1][0]) for p in pairs)
    table = phi_cusp(k, needed if cutoff is None else cutoff)

    sides: Dict[Tuple[int, int], TruncatedSide] = {}

    def side_for(n: int, r: int) -> TruncatedSide:
        if (n, r) not in sides:
            sides[(n, r)] = geometric_side(PeterssonJob(k, IndexData(m, n, r), 1, c_max), settings, workers)
        return sides[(n, r)]

    records = []
    for (n1, r1), (n2, r2) in pairs:
        c1 = coeff(table, n1, r1)
        c2 = coeff(table, n2, r2)
        record: Dict[str, Any] = {"pair": [[n1, r1], [n2, r2]], "c1": c1, "c2": c2}
        if c2 == 0:
            record["skipped"] = True
            record["note"] = f"c({n2}, {r2}) = 0"
            logger.info(f"Skipping pair ({n1}, {r1}) / ({n2}, {r2}): zero denominator coefficient")
            records.append(record)
            continue
        s1, s2 = side_for(n1, r1), side_for(n2, r2)
        d1, d2 = r1 * r1 - 4 * m * n1, r2 * r2 - 4 * m * n2
        rhs_ratio = (s1.value.real / lambda_km(k, m, d1)) / (s2.value.real / lambda_km(k, m, d2))
        expected = Fraction(c1 * c1, c2 * c2)
        rel_tol = max(
            tolerance,
            (s1.tail + s1.err) / abs(s1.value.real) + (s2.tail + s2.err) / abs(s2.value.real),
        )
        deviation = abs(rhs_ratio - float(expected))
        ok = deviation <= rel_tol * (float(expected) if expected else 1.0)
        record.update(
            {
                "skipped": False,
                "rhs1": s1.value.real,
                "rhs2": s2.value.real,
                "rhs_ratio": rhs_ratio,
                "expected": str(expected),
                "rel_tol": rel_tol,
                "pass": ok,
            }
        )
        records.append(record)
    checked = [rec for rec in records if not rec["skipped"]]
    return {
        "k": k,
        "m": m,
        "c_max": c_max,
        "tolerance": tolerance,
        "records": records,
        "pass": bool(checked) and all(rec["pass"] for rec in checked),
    }
