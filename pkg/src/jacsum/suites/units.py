"""
v^2 = 1 mod q 的解集与直接枚举一致
"""

from typing import Any, Dict, List

from jacsum.kernels.hsums import unit_solutions
from jacsum.suites.suite import Suite

Q_LIMIT = 2_000


class Units(Suite):
    batch_size = 200

    def cases(self) -> List[Dict[str, Any]]:
        return [{"q": q} for q in range(1, Q_LIMIT + 1)]

    def single_case_check(self, case: Dict[str, Any]) -> Dict[str, Any]:
        q = case["q"]
        expected = [v for v in range(q) if (v * v - 1) % q == 0]
        found = [int(v) for v in unit_solutions(q)]
        return {"q": q, "count": len(found), "pass": found == expected}
