"""
终局指数的精确有理数核对
"""

from fractions import Fraction
from typing import Any, Dict, List

from jacsum.kernels.iwaniec import (
    CROSSOVER,
    P_GE_T_THRESHOLD,
    Regime,
    endgame_exponent,
    theorem_exponent,
    theorem_exponent_check,
)
from jacsum.suites.suite import Suite

# sigma -> (delta, exponent, regime)
NAMED = {
    "0": (Fraction(1, 24), Fraction(-1, 24), Regime.LOW),
    "21/155": (None, Fraction(-1, 31), Regime.LOW),
    "7/25": (None, Fraction(0), Regime.HIGH),
}


class Endgame(Suite):
    batch_size = 32

    def cases(self) -> List[Dict[str, Any]]:
        cases = [{"sigma": sigma, "named": True} for sigma in NAMED]
        cases.extend({"sigma": str(Fraction(i, 100)), "named": False} for i in range(29))
        return cases

    def single_case_check(self, case: Dict[str, Any]) -> Dict[str, Any]:
        sigma = Fraction(case["sigma"])
        result = endgame_exponent(sigma)
        ok = theorem_exponent_check(sigma)
        ok = ok and result.p_ge_t == (sigma <= P_GE_T_THRESHOLD)
        ok = ok and (result.regime is Regime.LOW) == (sigma <= CROSSOVER)
        if case["named"]:
            delta, exponent, regime = NAMED[case["sigma"]]
            ok = ok and result.exponent == exponent and result.regime is regime
            ok = ok and (delta is None or result.delta == delta)
            if sigma in (0, Fraction(7, 25)):
                ok = ok and theorem_exponent(sigma) == result.exponent
        return {
            "sigma": case["sigma"],
            "exponent": str(result.exponent),
            "theorem": str(theorem_exponent(sigma)),
            "pass": ok,
        }
