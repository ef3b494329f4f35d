"""
验证套件基类
"""

import random
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Tuple

from jacsum.kernels.config import DEFAULT_SETTINGS, Settings

INDEX_SEED = 20_240_601


def sample_indices(count: int = 25, seed: int = INDEX_SEED) -> List[Tuple[int, int, int]]:
    """Fixed pseudo-random (m, n, r) with r^2 < 4mn, identical in every process"""
    rng = random.Random(seed)
    found: List[Tuple[int, int, int]] = []
    while len(found) < count:
        m = rng.randint(1, 6)
        n = rng.randint(1, 8)
        r = rng.randint(-2 * m, 2 * m)
        if r * r < 4 * m * n and (m, n, r) not in found:
            found.append((m, n, r))
    return found


def fundamental_family(D: int, max_m: int = 6) -> List[Tuple[int, int, int]]:
    """(m, n, r) with r^2 - 4mn = D, one r per class mod 2m"""
    family = []
    for m in range(1, max_m + 1):
        for r in range(2 * m):
            if (r * r - D) % (4 * m) == 0:
                family.append((m, (r * r - D) // (4 * m), r))
    return family


class Suite(ABC):
    """
    验证套件基类

    子类实现 cases 与 single_case_check；cases 必须可序列化且在每个进程中相同，
    可以在 self.stats 中累计统计量，键名以 max_ 开头的按最大值合并，其余求和
    """

    batch_size = 4

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or DEFAULT_SETTINGS
        self.stats = {}

    @abstractmethod
    def cases(self) -> List[Dict[str, Any]]:
        """All cases of the suite, in a fixed order"""

    @abstractmethod
    def single_case_check(self, case: Dict[str, Any]) -> Dict[str, Any]:
        """
        检查单个用例

        Args:
            case: cases() 中的一项

        Returns:
            记录字典，必须包含布尔字段 "pass"
        """

    def _count(self, key: str, amount: int = 1):
        self.stats[key] = self.stats.get(key, 0) + amount

    def _track_max(self, key: str, value: float):
        self.stats[key] = max(self.stats.get(key, 0.0), value)

    def get_stats(self) -> Dict[str, Any]:
        return self.stats

    def reset_stats(self):
        self.stats = {}
