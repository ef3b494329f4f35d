"""Jacobi 形式 Kloosterman 型指数和计算模块

包含精确模运算、H 和、Petersson 几何侧、Jacobi 形式系数表和指数计算器。
"""

__version__ = "0.1.0"
