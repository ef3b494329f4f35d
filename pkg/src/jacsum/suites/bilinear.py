"""
双线性相位要素：f(a, t) 与提升无关且与 a 互素，S_a 的 V_a + omega(a) V'_a 分解
"""

import math
from typing import Any, Dict, List

from jacsum.kernels.hsums import IndexData
from jacsum.kernels.iwaniec import S_a_sum, f_of_a_t
from jacsum.suites.suite import Suite, sample_indices

A_VALUES = tuple(range(1, 60))
T_VALUES = (1, 2, 4, 6)


class Bilinear(Suite):
    def __init__(self, settings=None):
        super().__init__(settings)
        self.stats["residues"] = 0
        self.stats["sums"] = 0

    def cases(self) -> List[Dict[str, Any]]:
        return [{"m": m, "n": n, "r": r} for m, n, r in sample_indices(10)]

    def single_case_check(self, case: Dict[str, Any]) -> Dict[str, Any]:
        index = IndexData(case["m"], case["n"], case["r"])
        problems = []
        for a in A_VALUES:
            if math.gcd(a, 2 * index.m * index.D) != 1:
                continue
            for t in T_VALUES:
                if math.gcd(a, t) != 1:
                    continue
                for eps1 in (1, -1):
                    for eps2 in (1, -1):
                        f = f_of_a_t(index, a, t, eps1, eps2)
                        self._count("residues")
                        if f != f_of_a_t(index, a, t, eps1, eps2, lift=3):
                            problems.append(f"lift changes f at a={a}, t={t}")
                        if math.gcd(f.value, a) != 1:
                            problems.append(f"gcd(f, a) > 1 at a={a}, t={t}")
                if a <= 15:
                    s_a = S_a_sum(index, a, t, a % (4 * t), 400, 1, 1, 1, 7)
                    self._count("sums")
                    combined = s_a.v_a + s_a.v_prime_a * s_a.omega_a
                    if not s_a.termwise_ok or not combined.agrees_with(s_a.total, slack=1e-12):
                        problems.append(f"S_a decomposition fails at a={a}, t={t}")
        return {**case, "D": index.D, "problems": problems, "pass": not problems}
