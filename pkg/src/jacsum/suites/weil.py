"""
显式 Weil 界，含基本判别式 D = -3, -4, -7, -8, -11 族
"""

from typing import Any, Dict, List

from jacsum.kernels.hsums import HSumRequest, IndexData, h_fast, weil_bound, weil_check
from jacsum.suites.suite import Suite, fundamental_family, sample_indices

C_LIMIT = 300
FUNDAMENTAL_DISCRIMINANTS = (-3, -4, -7, -8, -11)


class Weil(Suite):
    """Weil 界套件"""

    def __init__(self, settings=None):
        super().__init__(settings)
        self.stats["checked"] = 0
        self.stats["max_bound_ratio"] = 0.0

    def cases(self) -> List[Dict[str, Any]]:
        cases = [{"m": m, "n": n, "r": r, "family": None} for m, n, r in sample_indices()]
        for D in FUNDAMENTAL_DISCRIMINANTS:
            cases.extend({"m": m, "n": n, "r": r, "family": D} for m, n, r in fundamental_family(D))
        return cases

    def single_case_check(self, case: Dict[str, Any]) -> Dict[str, Any]:
        index = IndexData(case["m"], case["n"], case["r"])
        if case["family"] is not None and not index.fundamental:
            return {**case, "failures": ["not fundamental"], "pass": False}
        bad = []
        for c in range(1, C_LIMIT + 1):
            for sign in (1, -1):
                req = HSumRequest(index, c, sign)
                self._count("checked")
                self._track_max("max_bound_ratio", abs(h_fast(req, self.settings).value) / weil_bound(req))
                if not weil_check(req, self.settings):
                    bad.append([c, sign])
        return {**case, "D": index.D, "failures": bad, "pass": not bad}
