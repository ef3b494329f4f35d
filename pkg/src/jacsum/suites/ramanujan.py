"""
Ramanujan 和闭式，c <= 200，所有 a mod c
"""

from typing import Any, Dict, List

from jacsum.kernels.modarith import ramanujan_brute, ramanujan_sum
from jacsum.suites.suite import Suite

C_LIMIT = 200


class Ramanujan(Suite):
    batch_size = 25

    def __init__(self, settings=None):
        super().__init__(settings)
        self.stats["checked"] = 0

    def cases(self) -> List[Dict[str, Any]]:
        return [{"c": c} for c in range(1, C_LIMIT + 1)]

    def single_case_check(self, case: Dict[str, Any]) -> Dict[str, Any]:
        c = case["c"]
        bad = []
        for a in range(c):
            brute = ramanujan_brute(a, c)
            exact = ramanujan_sum(a, c)
            self._count("checked")
            # the brute value is an integer up to its error bound
            if round(brute.value.real) != exact or abs(brute.value - exact) > brute.err + 1e-9:
                bad.append(a)
        return {"c": c, "failures": bad, "pass": not bad}
