"""
乘法分解：互素分解 c = c1 c2 (c <= 300) 上的 H 和分解恒等式
"""

import math
from typing import Any, Dict, List

from jacsum.kernels.hsums import IndexData, h_factor_check
from jacsum.kernels.modarith import divisors
from jacsum.suites.suite import Suite, sample_indices

C_LIMIT = 300


def coprime_splits(c: int) -> List[List[int]]:
    return [[d, c // d] for d in divisors(c) if 1 < d < c // d and math.gcd(d, c // d) == 1]


class Factorization(Suite):
    """分解恒等式套件"""

    def __init__(self, settings=None):
        super().__init__(settings)
        self.stats["splits_checked"] = 0

    def cases(self) -> List[Dict[str, Any]]:
        return [{"m": m, "n": n, "r": r} for m, n, r in sample_indices()]

    def single_case_check(self, case: Dict[str, Any]) -> Dict[str, Any]:
        index = IndexData(case["m"], case["n"], case["r"])
        bad = []
        for c in range(6, C_LIMIT + 1):
            for c1, c2 in coprime_splits(c):
                for sign in (1, -1):
                    self._count("splits_checked")
                    if not h_factor_check(index, c1, c2, sign):
                        bad.append([c1, c2, sign])
        return {**case, "failures": bad, "pass": not bad}
