"""
Jacobi 形式系数表：归一化、r -> -r 对称、椭圆平移、只依赖判别式、zeta = 1 特化
"""

from typing import Any, Dict, List

from jacsum.kernels.jacobiforms import coeff, coeff_by_discriminant, phi_cusp, phi_weak, zeta_one_sums
from jacsum.suites.suite import Suite

CUTOFF = 8
# Ramanujan tau(1..8); phi_{12,1}(tau, 0) = 12 Delta
RAMANUJAN_TAU = (1, -24, 252, -1472, 4830, -6048, -16744, 84480)
NORMALIZATION = {
    "weak-2": {(0, 0): -2, (0, 1): 1},
    "weak0": {(0, 0): 10, (0, 1): 1},
    "cusp10": {(1, 0): -2, (1, 1): 1},
    "cusp12": {(1, 0): 10, (1, 1): 1},
}


def _table(name: str):
    if name.startswith("weak"):
        return phi_weak(int(name[4:]), CUTOFF)
    return phi_cusp(int(name[4:]), CUTOFF)


def _zeta_one_expected(name: str, n: int) -> int:
    if name == "weak0":
        return 12 if n == 0 else 0
    if name == "cusp12":
        return 12 * RAMANUJAN_TAU[n - 1] if n >= 1 else 0
    return 0


class Jacobi_tables(Suite):
    batch_size = 1

    def cases(self) -> List[Dict[str, Any]]:
        return [{"form": name} for name in NORMALIZATION]

    def single_case_check(self, case: Dict[str, Any]) -> Dict[str, Any]:
        name = case["form"]
        table = _table(name)
        problems = []
        for (n, r), value in NORMALIZATION[name].items():
            if coeff(table, n, r) != value:
                problems.append(f"c({n}, {r}) = {coeff(table, n, r)}, expected {value}")
        for (n, r), value in sorted(table.c.items()):
            if table.c.get((n, -r)) != value:
                problems.append(f"c({n}, {r}) != c({n}, {-r})")
            if coeff_by_discriminant(table, 4 * n - r * r) != value:
                problems.append(f"c({n}, {r}) differs from its discriminant class")
        width = 2 * table.max_n + 2
        for n in range(table.max_n + 1):
            for r in range(-width, width + 1):
                if n + r + 1 <= table.max_n and coeff(table, n, r) != coeff(table, n + r + 1, r + 2):
                    problems.append(f"c({n}, {r}) != c({n + r + 1}, {r + 2})")
        for n, total in zeta_one_sums(table).items():
            if total != _zeta_one_expected(name, n):
                problems.append(f"zeta = 1 sum at n={n} is {total}")
        return {"form": name, "coefficients": len(table.c), "problems": problems, "pass": not problems}
