"""
Gowers 插件 - 数据模型

使用方式:
    >>> from plugins.gowers.models import GowersEstimate
    >>> est = GowersEstimate.from_sum(d=2, total=812, trials=1000, seed=7)
    >>> est.value
"""

import math
from dataclasses import asdict, dataclass


def sample_stderr(total: int, trials: int) -> float:
    """
    ±1 样本均值的标准误

    只需样本和：样本方差 = T(1 − m²)/(T − 1)。trials = 1 时返回 0。
    """
    if trials <= 1:
        return 0.0
    mean = total / trials
    variance = max(0.0, trials * (1.0 - mean * mean) / (trials - 1))
    return math.sqrt(variance / trials)


@dataclass(frozen=True)
class GowersEstimate:
    """
    Gowers 范数的 Monte-Carlo 估计

    Attributes:
        d: 阶数
        value: 范数估计 max(raw_mean, 0)^{1/2^d}
        raw_mean: ‖f‖_{U_d}^{2^d} 的样本均值
        stderr: raw_mean 的标准误
        trials: 样本数
        seed: 随机种子
    """
    d: int
    value: float
    raw_mean: float
    stderr: float
    trials: int
    seed: int

    @classmethod
    def from_sum(cls, d: int, total: int, trials: int, seed: int) -> "GowersEstimate":
        """由 ±1 样本之和构造"""
        raw = total / trials
        return cls(
            d=d,
            value=max(raw, 0.0) ** (1.0 / (1 << d)),
            raw_mean=raw,
            stderr=sample_stderr(total, trials),
            trials=trials,
            seed=seed,
        )

    def to_dict(self) -> dict:
        return asdict(self)
