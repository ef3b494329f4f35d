"""
不完全 Kloosterman 和的补全恒等式
"""

from typing import Any, Dict, List

from jacsum.kernels.modarith import completion_check
from jacsum.suites.suite import Suite

MODULI = (7, 12, 15, 29, 36)


class Completion(Suite):
    def cases(self) -> List[Dict[str, Any]]:
        cases = []
        for c in MODULI:
            for t in (1, 3, 4):
                for start, length in ((0, c // 2), (5, c), (-3, 2 * c + 1)):
                    cases.append({"a": 1 + c // 3, "c": c, "s": 1, "t": t, "start": start, "length": length})
        return cases

    def single_case_check(self, case: Dict[str, Any]) -> Dict[str, Any]:
        ok = completion_check(case["a"], case["c"], case["s"], case["t"], case["start"], case["length"])
        return {**case, "pass": ok}
