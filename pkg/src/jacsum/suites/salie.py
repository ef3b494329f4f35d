"""
Salie 和闭式：奇数 c，gcd(ab, c) = 1
"""

import math
from typing import Any, Dict, List

from jacsum.kernels.modarith import salie_closed_form, salie_sum
from jacsum.suites.suite import Suite

C_LIMIT = 99
B_VALUES = (1, 2, 5, 7)


class Salie(Suite):
    batch_size = 10

    def __init__(self, settings=None):
        super().__init__(settings)
        self.stats["compared"] = 0

    def cases(self) -> List[Dict[str, Any]]:
        return [{"c": c} for c in range(1, C_LIMIT + 1, 2)]

    def single_case_check(self, case: Dict[str, Any]) -> Dict[str, Any]:
        c = case["c"]
        bad = []
        for a in range(1, c + 1):
            for b in B_VALUES:
                if math.gcd(a * b, c) != 1:
                    continue
                self._count("compared")
                if not salie_sum(a, b, c).agrees_with(salie_closed_form(a, b, c), slack=1e-9):
                    bad.append([a, b])
        return {"c": c, "failures": bad, "pass": not bad}
