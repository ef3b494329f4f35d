"""
素数加权和：两种求和次序一致，三分恒等式与按 t 重组，并报告各段的单调性
"""

from typing import Any, Dict, List

from jacsum.kernels.hsums import IndexData
from jacsum.kernels.iwaniec import levelwise_S, split_S, split_monotonicity, t_pieces, weighted_S
from jacsum.kernels.modarith import UnitRootSum
from jacsum.suites.suite import Suite

# (k, m, n, r, P, C_max, C, K); |D| <= 200, P <= 50, C_max <= 5000
JOBS = (
    (4, 1, 1, 1, 5, 600, 1, 3),
    (6, 1, 2, 1, 7, 800, 2, 7),
    (4, 2, 3, 1, 11, 1_500, 3, 12),
    (8, 3, 5, 2, 13, 1_200, 10, 20),
    (6, 5, 9, 3, 47, 5_000, 10, 40),
)


class Levelwise(Suite):
    batch_size = 1

    def cases(self) -> List[Dict[str, Any]]:
        keys = ("k", "m", "n", "r", "P", "c_max", "C", "K")
        return [dict(zip(keys, job)) for job in JOBS]

    def single_case_check(self, case: Dict[str, Any]) -> Dict[str, Any]:
        index = IndexData(case["m"], case["n"], case["r"])
        k, P, c_max = case["k"], case["P"], case["c_max"]
        direct = weighted_S(k, index, P, c_max, self.settings)
        by_prime = levelwise_S(k, index, P, c_max, self.settings)
        orders_agree = direct.agrees_with(by_prime, slack=1e-12)

        split = split_S(k, index, P, case["C"], case["K"], c_max, self.settings)
        partition = split.total.agrees_with(direct, slack=1e-12)
        pieces = t_pieces(k, index, P, case["C"], case["K"], self.settings)
        regrouped = UnitRootSum(0j, 0.0)
        for piece in pieces.values():
            regrouped = regrouped + piece
        t_sum = regrouped.agrees_with(split.s_star, slack=1e-12)
        # reported, not part of pass
        C_values = range(1, case["C"] + 1)
        K_values = range(case["K"], 2 * case["K"] + 1)
        monotone = split_monotonicity(k, index, P, C_values, K_values, c_max, self.settings)
        return {
            **case,
            "D": index.D,
            "weighted_S": [direct.value.real, direct.value.imag],
            "orders_agree": orders_agree,
            "partition": partition,
            "t_pieces": t_sum,
            "flat_decreasing": monotone["flat_decreasing"],
            "sharp_decreasing": monotone["sharp_decreasing"],
            "pass": orders_agree and partition and t_sum,
        }
