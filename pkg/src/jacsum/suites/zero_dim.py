"""
零维空间 J^cusp_{k,1} (k = 4, 6, 8) 上几何侧的消失性
"""

from typing import Any, Dict, List

from jacsum.kernels.petersson import ZERO_DIM_SAMPLES, zero_dim_check
from jacsum.suites.suite import Suite

WEIGHTS = (4, 6, 8)


class Zero_dim(Suite):
    batch_size = 1

    def __init__(self, settings=None):
        super().__init__(settings)
        self.stats["sides"] = 0
        self.stats["max_abs_value"] = 0.0
        self.stats["max_abs_imag"] = 0.0

    def cases(self) -> List[Dict[str, Any]]:
        return [{"n": n, "r": r} for n, r in ZERO_DIM_SAMPLES]

    def single_case_check(self, case: Dict[str, Any]) -> Dict[str, Any]:
        report = zero_dim_check(WEIGHTS, 1, [(case["n"], case["r"])], settings=self.settings)
        imag_failures = []
        for record in report["records"]:
            self._count("sides")
            self._track_max("max_abs_value", abs(complex(record["value_re"], record["value_im"])))
            self._track_max("max_abs_imag", abs(record["value_im"]))
            if abs(record["value_im"]) > record["tail"] + record["err"]:
                imag_failures.append(record["k"])
        margins = {str(rec["k"]): rec["margin"] for rec in report["records"]}
        return {
            **case,
            "c_max": report["c_max"],
            "margins": margins,
            "imag_failures": imag_failures,
            "pass": report["pass"] and not imag_failures,
        }
