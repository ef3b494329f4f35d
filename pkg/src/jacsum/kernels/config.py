"""
运行参数与外部数据

Settings 汇总各模块的可调参数；维数数据从包内 data/dimensions.csv 读取。
"""

import csv
import os
from dataclasses import dataclass, replace
from functools import lru_cache
from importlib import resources
from typing import Dict, Optional, Tuple

from jacsum.kernels.errors import InvalidArgumentError


@dataclass(frozen=True)
class Settings:
    """Tunables shared by the kernels and the runner"""

    bad_part_threshold: int = 10_000
    brute_limit: int = 256
    chunk_size: int = 2_000
    zero_dim_tolerance: float = 1e-3
    ratio_tolerance: float = 1e-2
    series_cutoff: int = 60
    zero_dim_cutoff: int = 100_000
    ratio_cutoff: int = 2_000
    workers: int = os.cpu_count() or 1

    def __post_init__(self):
        for name in ("bad_part_threshold", "brute_limit", "chunk_size", "workers"):
            if getattr(self, name) < 1:
                raise InvalidArgumentError(f"{name} must be positive: {getattr(self, name)}")

    def replace(self, **changes) -> "Settings":
        return replace(self, **changes)


DEFAULT_SETTINGS = Settings()


def _parse_dimension_lines(lines) -> Dict[Tuple[int, int], int]:
    rows = [line for line in lines if line.strip() and not line.lstrip().startswith("#")]
    facts = {}
    for row in csv.DictReader(rows):
        facts[(int(row["k"]), int(row["m"]))] = int(row["dim"])
    return facts


@lru_cache(maxsize=4)
def _packaged_dimension_facts() -> Dict[Tuple[int, int], int]:
    text = resources.files("jacsum.kernels").joinpath("data/dimensions.csv").read_text(
        encoding="utf-8"
    )
    return _parse_dimension_lines(text.splitlines())


def load_dimension_facts(path: Optional[str] = None) -> Dict[Tuple[int, int], int]:
    """读取 "k,m,dim" 维数表，# 开头的行为注释"""
    if path is None:
        return dict(_packaged_dimension_facts())
    if not os.path.exists(path):
        raise FileNotFoundError(f"Dimension file not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        return _parse_dimension_lines(f.read().splitlines())


def cusp_dimension(k: int, m: int, path: Optional[str] = None) -> int:
    facts = load_dimension_facts(path)
    if (k, m) not in facts:
        raise InvalidArgumentError(f"No dimension fact recorded for (k, m) = ({k}, {m})")
    return facts[(k, m)]
