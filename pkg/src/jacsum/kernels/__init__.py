"""计算内核

提供模运算与经典指数和、H 和、半整数阶 Bessel 函数、Petersson 几何侧、
Jacobi 形式系数表以及素数加权和与指数计算。
"""

from jacsum.kernels.config import DEFAULT_SETTINGS, Settings
from jacsum.kernels.errors import JacsumError
from jacsum.kernels.hsums import HSumRequest, IndexData
from jacsum.kernels.modarith import Residue, UnitRootSum

__all__ = [
    "DEFAULT_SETTINGS",
    "Settings",
    "JacsumError",
    "HSumRequest",
    "IndexData",
    "Residue",
    "UnitRootSum",
]
