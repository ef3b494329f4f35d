"""
快速求值器：h_fast 与 h_fft 对照 h_brute，包括含坏部分的模 c

小模数逐个扫描；大模数（c <= 10^4）随机抽样，并专门覆盖素数幂与坏部分超过
brute_limit 的模数，使 FFT 分量与 CRT 拼接都在真实规模上与暴力求和对照。
"""

import random
from typing import Any, Dict, List

from jacsum.kernels.hsums import HSumRequest, IndexData, h_brute, h_fast, h_fft
from jacsum.kernels.modarith import factorize
from jacsum.suites.suite import Suite, sample_indices

C_LIMIT = 150
SLACK = 1e-9

SWEEP_MAX = 10_000
SWEEP_INDICES = 100
SWEEP_SEED = 20_240_617
SWEEP_TOLERANCE = 1e-6
# components above the default brute_limit go through the FFT row
BAD_PART_FLOOR = 256
PRIME_POWERS = (2**12, 2**13, 3**8, 5**5, 7**4, 97**2)


def _large_bad_modulus(index: IndexData, rng: random.Random) -> int:
    """c <= SWEEP_MAX whose (2mD)-part exceeds BAD_PART_FLOOR"""
    powers = []
    for p, _ in factorize(2 * index.m * abs(index.D)):
        Q = p
        while Q <= BAD_PART_FLOOR:
            Q *= p
        if Q <= SWEEP_MAX:
            powers.append(Q)
    # 2 | 2mD, so 512 is always available
    Q = rng.choice(powers)
    return Q * rng.randint(1, SWEEP_MAX // Q)


def sweep_cases(count: int = SWEEP_INDICES, seed: int = SWEEP_SEED) -> List[Dict[str, Any]]:
    rng = random.Random(seed)
    cases = []
    for m, n, r in sample_indices(count, seed):
        index = IndexData(m, n, r)
        moduli = [rng.randint(1, SWEEP_MAX), _large_bad_modulus(index, rng)]
        cases.append({"kind": "sweep", "m": m, "n": n, "r": r, "moduli": moduli})
    for m, n, r in ((1, 1, 1), (2, 3, 1)):
        cases.append({"kind": "prime_power", "m": m, "n": n, "r": r, "moduli": list(PRIME_POWERS)})
    return cases


class Hfast(Suite):
    def __init__(self, settings=None):
        super().__init__(settings)
        self.stats["compared"] = 0
        self.stats["max_abs_diff"] = 0.0
        self.stats["max_sweep_diff"] = 0.0

    def cases(self) -> List[Dict[str, Any]]:
        small = [{"kind": "small", "m": m, "n": n, "r": r} for m, n, r in sample_indices()]
        return small + sweep_cases()

    def single_case_check(self, case: Dict[str, Any]) -> Dict[str, Any]:
        index = IndexData(case["m"], case["n"], case["r"])
        if case["kind"] == "small":
            bad = self._check_small(index)
        else:
            bad = self._check_sweep(index, case["moduli"])
        return {**case, "failures": bad, "pass": not bad}

    def _check_small(self, index: IndexData) -> List[list]:
        bad = []
        for c in range(1, C_LIMIT + 1):
            for sign in (1, -1):
                req = HSumRequest(index, c, sign)
                brute = h_brute(req)
                for name, value in (("fast", h_fast(req, self.settings)), ("fft", h_fft(req))):
                    diff = abs(value.value - brute.value)
                    self._count("compared")
                    self._track_max("max_abs_diff", diff)
                    if diff > value.err + brute.err + SLACK:
                        bad.append([name, c, sign])
        return bad

    def _check_sweep(self, index: IndexData, moduli: List[int]) -> List[list]:
        bad = []
        for c in moduli:
            for sign in (1, -1):
                req = HSumRequest(index, c, sign)
                diff = abs(h_fast(req, self.settings).value - h_brute(req).value)
                self._count("compared")
                self._track_max("max_sweep_diff", diff)
                if diff > SWEEP_TOLERANCE:
                    bad.append(["fast", c, sign])
        return bad
