"""
二次 Gauss 和闭式 epsilon_c (a/c) sqrt(c)，奇数 c <= 499
"""

import math
from typing import Any, Dict, List

from jacsum.kernels.modarith import gauss_closed_form, gauss_sum
from jacsum.suites.suite import Suite

C_LIMIT = 499
TOLERANCE = 1e-9


class Gauss(Suite):
    batch_size = 25

    def __init__(self, settings=None):
        super().__init__(settings)
        self.stats["compared"] = 0
        self.stats["max_abs_diff"] = 0.0

    def cases(self) -> List[Dict[str, Any]]:
        return [{"c": c} for c in range(1, C_LIMIT + 1, 2)]

    def single_case_check(self, case: Dict[str, Any]) -> Dict[str, Any]:
        c = case["c"]
        bad = []
        for a in range(1, c + 1):
            if math.gcd(a, c) != 1:
                continue
            diff = abs(gauss_sum(a, c).value - gauss_closed_form(a, c).value)
            self._count("compared")
            self._track_max("max_abs_diff", diff)
            if diff > TOLERANCE:
                bad.append(a)
        return {"c": c, "failures": bad, "pass": not bad}
