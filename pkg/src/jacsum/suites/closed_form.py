"""
闭式与暴力求和一致性：gcd(c, 2mD) = 1 且 c <= 200 时 h_closed_coprime 与 h_brute 相符
"""

import math
from typing import Any, Dict, List

from jacsum.kernels.hsums import HSumRequest, IndexData, h_brute, h_closed_coprime
from jacsum.suites.suite import Suite, sample_indices

C_LIMIT = 200
SLACK = 1e-9


class Closed_form(Suite):
    """闭式校验套件"""

    def __init__(self, settings=None):
        super().__init__(settings)
        self.stats["compared"] = 0
        self.stats["max_abs_diff"] = 0.0

    def cases(self) -> List[Dict[str, Any]]:
        return [{"m": m, "n": n, "r": r} for m, n, r in sample_indices()]

    def single_case_check(self, case: Dict[str, Any]) -> Dict[str, Any]:
        index = IndexData(case["m"], case["n"], case["r"])
        bad = []
        for c in range(1, C_LIMIT + 1):
            if math.gcd(c, 2 * index.m * index.D) != 1:
                continue
            for sign in (1, -1):
                req = HSumRequest(index, c, sign)
                closed = h_closed_coprime(req)
                brute = h_brute(req)
                diff = abs(closed.value - brute.value)
                self._count("compared")
                self._track_max("max_abs_diff", diff)
                if diff > closed.err + brute.err + SLACK:
                    bad.append([c, sign])
        return {**case, "D": index.D, "failures": bad, "pass": not bad}
