"""
验证套件运行器
按固定批次并行执行套件用例，按输入顺序合并结果与统计
"""

import importlib.util
import logging
import os
import time
from collections import defaultdict
from datetime import datetime
from multiprocessing import Pool
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from jacsum.kernels.config import DEFAULT_SETTINGS, Settings

MAX_REPORTED_FAILURES = 10


def setup_logger(tag: str, log_dir: Optional[str] = "log") -> logging.Logger:
    """File handler under log_dir plus console handler on the package logger"""
    logger = logging.getLogger("jacsum")
    logger.setLevel(logging.INFO)
    logger.handlers.clear()

    formatter = logging.Formatter("%(asctime)s - %(levelname)s - %(message)s")
    ch = logging.StreamHandler()
    ch.setLevel(logging.INFO)
    ch.setFormatter(formatter)
    logger.addHandler(ch)

    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        log_filename = os.path.join(log_dir, f"{tag}_{timestamp}.log")
        fh = logging.FileHandler(log_filename, encoding="utf-8")
        fh.setLevel(logging.INFO)
        fh.setFormatter(formatter)
        logger.addHandler(fh)
        logger.info(f"Log file: {log_filename}")
    return logger


def load_suite_class(suite_name: str, suite_dir: Optional[str] = None):
    """动态加载套件类

    优先级：
    1. 如果指定 suite_dir，从该目录加载
    2. 尝试从 jacsum.suites 包中导入
    3. 尝试从当前工作目录加载
    """
    if suite_dir:
        suite_file = os.path.join(suite_dir, f"{suite_name}.py")
        if not os.path.exists(suite_file):
            raise FileNotFoundError(f"Suite file not found: {suite_file}")
        module = _load_module_from_file(suite_name, suite_file)
    else:
        try:
            module_name = f"jacsum.suites.{suite_name}"
            module = __import__(module_name, fromlist=[suite_name])
        except ImportError:
            suite_file = f"{suite_name}.py"
            if not os.path.exists(suite_file):
                raise FileNotFoundError(
                    f"Suite not found: {suite_name}\n"
                    f"Tried: jacsum.suites.{suite_name} (package) and {suite_file} (file)"
                )
            module = _load_module_from_file(suite_name, suite_file)

    class_name = suite_name.capitalize()
    if hasattr(module, class_name):
        return getattr(module, class_name)
    if hasattr(module, suite_name):
        return getattr(module, suite_name)
    raise AttributeError(f"Cannot find suite class '{class_name}' or '{suite_name}' in module")


def _load_module_from_file(name: str, path: str):
    spec = importlib.util.spec_from_file_location(name, path)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def check_batch_worker(args) -> Tuple[List[Dict[str, Any]], Dict[str, Any]]:
    """工作进程处理函数：一批用例，一个新的套件实例"""
    batch, suite_name, suite_dir, settings = args
    suite = load_suite_class(suite_name, suite_dir)(settings)
    records = []
    for idx, case in batch:
        try:
            record = suite.single_case_check(case)
        except Exception as e:
            record = {"case": case, "error": f"{type(e).__name__}: {e}", "pass": False}
        records.append({"idx": idx, **record})
    return records, suite.get_stats()


def merge_stats(combined: Dict[str, Any], batch_stats: Dict[str, Any]):
    for key, value in batch_stats.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            continue
        if key.startswith("max_"):
            combined[key] = max(combined.get(key, value), value)
        else:
            combined[key] += value


class SuiteRunner:
    """验证框架核心类"""

    def __init__(
        self,
        suite_names: Sequence[str],
        num_workers: int = 1,
        suite_dir: Optional[str] = None,
        settings: Optional[Settings] = None,
        batch_size: Optional[int] = None,
        timing: bool = False,
    ):
        self.suite_names = list(suite_names)
        self.num_workers = max(1, num_workers)
        self.suite_dir = suite_dir
        self.settings = settings or DEFAULT_SETTINGS
        self.batch_size = batch_size
        self.timing = timing
        self.logger = logging.getLogger("jacsum.runner")

        # Verify suites exist
        for name in self.suite_names:
            load_suite_class(name, suite_dir)

    def _create_batches(self, cases: List[Dict[str, Any]], batch_size: int) -> Iterator[List]:
        batch = []
        for item in enumerate(cases):
            batch.append(item)
            if len(batch) >= batch_size:
                yield batch
                batch = []
        if batch:
            yield batch

    def run(self) -> Dict[str, Any]:
        self.logger.info("=" * 60)
        self.logger.info("Starting verification")
        self.logger.info(f"Suites: {self.suite_names}")
        self.logger.info(f"Workers: {self.num_workers}")
        self.logger.info("=" * 60)

        start_time = time.time()
        reports = [self.run_suite(name) for name in self.suite_names]
        elapsed = time.time() - start_time

        self.logger.info("=" * 60)
        self.logger.info("Verification complete")
        for report in reports:
            status = "PASS" if report["pass"] else "FAIL"
            self.logger.info(f"{report['suite']}: {status} ({report['failed']}/{report['cases']} failed)")
        self.logger.info(f"Total time: {elapsed:.2f}s")
        self.logger.info("=" * 60)
        summary = {"suites": reports, "pass": all(report["pass"] for report in reports)}
        if self.timing:
            summary["elapsed_ms"] = int(elapsed * 1000)
        return summary

    def run_suite(self, suite_name: str) -> Dict[str, Any]:
        suite_class = load_suite_class(suite_name, self.suite_dir)
        cases = suite_class(self.settings).cases()
        batch_size = self.batch_size or suite_class.batch_size
        self.logger.info(f"Suite {suite_name}: {len(cases)} cases")

        def batch_with_args():
            for batch in self._create_batches(cases, batch_size):
                yield batch, suite_name, self.suite_dir, self.settings

        combined_stats = defaultdict(int)
        failures = []
        failed = 0
        total_checked = 0
        start_time = time.time()
        last_log_time = start_time

        if self.num_workers > 1:
            pool = Pool(processes=self.num_workers)
            results = pool.imap(check_batch_worker, batch_with_args())
        else:
            pool = None
            results = map(check_batch_worker, batch_with_args())
        try:
            for records, batch_stats in results:
                for record in records:
                    total_checked += 1
                    if not record["pass"]:
                        failed += 1
                        if len(failures) < MAX_REPORTED_FAILURES:
                            failures.append(record)
                merge_stats(combined_stats, batch_stats)

                # Log every 10 seconds
                current_time = time.time()
                if current_time - last_log_time >= 10:
                    self.logger.info(
                        f"{suite_name}: {total_checked}/{len(cases)} cases | Failed: {failed}"
                    )
                    last_log_time = current_time
        finally:
            if pool is not None:
                pool.close()
                pool.join()

        for record in failures:
            self.logger.warning(f"{suite_name} failure: {record}")
        report = {
            "suite": suite_name,
            "cases": len(cases),
            "failed": failed,
            "failures": failures,
            "stats": dict(sorted(combined_stats.items())),
            "pass": failed == 0 and len(cases) > 0,
        }
        if self.timing:
            report["elapsed_ms"] = int((time.time() - start_time) * 1000)
        return report
