"""
计算内核异常类型

所有异常都继承自 ValueError，调用方可以统一捕获。
"""


class JacsumError(ValueError):
    """Base error for kernel operations"""


class InvalidArgumentError(JacsumError):
    pass


class NotInvertibleError(JacsumError):
    pass


class UnsupportedModulusError(JacsumError):
    pass


class UnsupportedOrderError(JacsumError):
    pass


class PreconditionError(JacsumError):
    pass


class OutOfRegimeError(JacsumError):
    pass


class CutoffExceededError(JacsumError):
    pass


class InvalidParamsError(JacsumError):
    pass
