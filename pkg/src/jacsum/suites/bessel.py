"""
Bessel 函数：幂次界与衰减界在扫描网格上成立，递推与级数在交界区一致
"""

from typing import Any, Dict, List

import numpy as np

from jacsum.kernels.bessel import HalfOrder, bessel_bound_check, bessel_recurrence, bessel_series
from jacsum.suites.suite import Suite

WEIGHTS = tuple(range(4, 26, 2))
AGREEMENT = 1e-10


class Bessel(Suite):
    batch_size = 2

    def __init__(self, settings=None):
        super().__init__(settings)
        self.stats["bound_points"] = 0
        self.stats["crossover_points"] = 0
        self.stats["max_branch_diff"] = 0.0

    def cases(self) -> List[Dict[str, Any]]:
        return [{"k": k} for k in WEIGHTS]

    def single_case_check(self, case: Dict[str, Any]) -> Dict[str, Any]:
        order = HalfOrder(case["k"])
        nu = float(order.nu)
        bound_failures = []
        for x in np.geomspace(1e-4, 1e6, 400).tolist():
            self._count("bound_points")
            if not bessel_bound_check(order, x):
                bound_failures.append(x)
        branch_failures = []
        for x in np.linspace(nu / 2, 2 * nu, 50).tolist():
            diff = abs(bessel_recurrence(order, x) - bessel_series(order, x))
            self._count("crossover_points")
            self._track_max("max_branch_diff", diff)
            if diff > AGREEMENT:
                branch_failures.append(x)
        return {
            "k": case["k"],
            "bound_failures": bound_failures,
            "branch_failures": branch_failures,
            "pass": not bound_failures and not branch_failures,
        }
