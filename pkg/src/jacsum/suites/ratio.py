"""
一维空间 J^cusp_{k,1} (k = 10, 12) 上几何侧之比与系数平方比一致
"""

from typing import Any, Dict, List

from jacsum.kernels.petersson import ratio_check
from jacsum.suites.suite import Suite

MIN_PAIRS = 4


class Ratio(Suite):
    batch_size = 1

    def cases(self) -> List[Dict[str, Any]]:
        return [{"k": 10}, {"k": 12}]

    def single_case_check(self, case: Dict[str, Any]) -> Dict[str, Any]:
        report = ratio_check(case["k"], settings=self.settings)
        checked = [rec for rec in report["records"] if not rec["skipped"]]
        self._count("pairs_checked", len(checked))
        ratios = [[rec["rhs_ratio"], rec["expected"]] for rec in checked]
        return {
            "k": case["k"],
            "ratios": ratios,
            "pass": report["pass"] and len(checked) >= MIN_PAIRS,
        }
