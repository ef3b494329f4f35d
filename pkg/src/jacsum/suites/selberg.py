"""
Selberg 恒等式，穷举 c <= 40 与 0 <= y, a < c
"""

from typing import Any, Dict, List

from jacsum.kernels.modarith import selberg_check
from jacsum.suites.suite import Suite

C_LIMIT = 40


class Selberg(Suite):
    batch_size = 5

    def __init__(self, settings=None):
        super().__init__(settings)
        self.stats["checked"] = 0

    def cases(self) -> List[Dict[str, Any]]:
        return [{"c": c} for c in range(1, C_LIMIT + 1)]

    def single_case_check(self, case: Dict[str, Any]) -> Dict[str, Any]:
        c = case["c"]
        bad = []
        for y in range(c):
            for a in range(c):
                self._count("checked")
                if not selberg_check(y, a, c):
                    bad.append([y, a])
        return {"c": c, "failures": bad, "pass": not bad}
