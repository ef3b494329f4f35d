"""验证套件模块

每个套件一个文件，类名为文件名首字母大写（与 load_suite_class 的查找规则一致）。
"""

from jacsum.suites.suite import Suite

SUITES = [
    "closed_form",
    "factorization",
    "weil",
    "gauss",
    "salie",
    "selberg",
    "ramanujan",
    "completion",
    "hfast",
    "units",
    "bessel",
    "jacobi_tables",
    "endgame",
    "bilinear",
    "levelwise",
    "ratio",
    "zero_dim",
]

__all__ = ["Suite", "SUITES"]
