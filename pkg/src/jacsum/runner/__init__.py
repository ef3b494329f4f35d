"""运行器模块

提供验证套件运行器与命令行入口。
"""

from jacsum.runner.verifier import SuiteRunner, load_suite_class, setup_logger

__all__ = ["SuiteRunner", "load_suite_class", "setup_logger"]
