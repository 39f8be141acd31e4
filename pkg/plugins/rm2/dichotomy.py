"""
RM(2) 插件 - 远/近二分估计

抽取 m 组 (x, y_1, y_2, y_3)，nu 为三阶导数 f_{y1,y2,y3}(x) 的均值，
估计 ‖f‖_{U_3}^8。nu ≥ δ 判 NEAR，否则判 FAR。

样本数按 Hoeffding 界取精度 δ/2:
    m = ⌈8·ln(2/(1 − confidence)) / δ²⌉
δ = 0.05、confidence = 0.95 时 m = 11805。

FAR 时 ‖f‖_{U_3}^8 < 3δ/2，任意二次 g 有 ⟨f,g⟩ ≤ ‖f‖_{U_3}^{1/2} < (3δ/2)^{1/16}，
故距离 ≥ (1 − (3δ/2)^{1/16})/2（3δ/2 ≥ 1 时为 0，即无界）。
"""

import math
from typing import Optional

import numpy as np

from plugins.common import InputError, Stream, config, get_trial_runner
from plugins.core import BooleanFunction
from plugins.gowers import sample_stderr

from .models import FAR, FAR_STATEMENT, NEAR, NEAR_STATEMENT, DichotomyVerdict


def _check_unit_interval(name: str, value: float) -> None:
    if not 0.0 < value < 1.0:
        raise InputError(f"{name} must be in (0, 1), got {value}")


def dichotomy_sample_size(delta: float, confidence: float) -> int:
    """
    Example:
        >>> dichotomy_sample_size(0.05, 0.95)
        11805
    """
    _check_unit_interval("delta", delta)
    _check_unit_interval("confidence", confidence)
    return math.ceil(8.0 * math.log(2.0 / (1.0 - confidence)) / (delta * delta))


def far_distance_bound(delta: float) -> float:
    """FAR 分支蕴含的距离下界"""
    return max(0.0, (1.0 - (1.5 * delta) ** (1.0 / 16.0)) / 2.0)


def dichotomy(f: BooleanFunction, delta: float, confidence: Optional[float] = None,
              seed: int = 0) -> DichotomyVerdict:
    """
    判定 f 离 RM(2) 远还是近

    Args:
        delta: 阈值 (0, 1)
        confidence: 置信度 (0, 1)，默认取配置 dichotomy_confidence
        seed: 随机种子

    Raises:
        InputError: 参数越界
    """
    confidence = config.dichotomy_confidence if confidence is None else confidence
    m = dichotomy_sample_size(delta, confidence)
    table = f.bits
    size = f.size

    def kernel(rng: np.random.Generator, count: int) -> int:
        draws = rng.integers(0, size, size=(count, 4), dtype=np.int64)
        acc = np.zeros(count, dtype=np.uint8)
        for mask in range(8):
            point = draws[:, 0].copy()
            for i in range(3):
                if mask >> i & 1:
                    point ^= draws[:, i + 1]
            acc ^= table[point]
        return count - 2 * int(acc.sum(dtype=np.int64))

    total = get_trial_runner().run_trials(seed, m, kernel, stream=Stream.DICHOTOMY)
    nu = total / m
    near = nu >= delta
    return DichotomyVerdict(
        branch=NEAR if near else FAR,
        nu=nu,
        delta=delta,
        confidence=confidence,
        trials=m,
        seed=seed,
        stderr=sample_stderr(total, m),
        far_bound=None if near else far_distance_bound(delta),
        statement=NEAR_STATEMENT if near else FAR_STATEMENT,
    )
