"""
核心模块 - 距离与相关

使用方式:
    >>> from plugins.core.distance import normalized_distance, affine_distance
    >>> normalized_distance(f, -f)
    1.0
"""

from dataclasses import dataclass

import numpy as np

from .generators import affine_from_index
from .models import BooleanFunction, QuadraticPolynomial
from .transform import walsh_sums


def normalized_distance(f: BooleanFunction, g: BooleanFunction) -> float:
    """
    不一致点所占比例

    满足 distance = (1 − ⟨f,g⟩)/2。

    Raises:
        InputError: 维数不同
    """
    return (1.0 - f.correlation(g)) / 2.0


@dataclass(frozen=True)
class AffineApproximation:
    """
    最近仿射函数

    Attributes:
        distance: 最小归一化距离
        alpha: 线性部分编号
        const_bit: 常数位
        correlation: ⟨f, g⟩
    """
    n: int
    distance: float
    alpha: int
    const_bit: int
    correlation: float

    def polynomial(self) -> QuadraticPolynomial:
        return affine_from_index(self.n, self.alpha, self.const_bit)


def affine_distance(f: BooleanFunction) -> AffineApproximation:
    """
    到全部 2^{n+1} 个仿射函数的最小距离

    distance = (1 − max|f̂|)/2；并列取编号最小的 α。
    """
    sums = walsh_sums(f)
    alpha = int(np.argmax(np.abs(sums)))
    top = int(sums[alpha])
    corr = abs(top) / f.size
    return AffineApproximation(
        n=f.n,
        distance=(1.0 - corr) / 2.0,
        alpha=alpha,
        const_bit=0 if top >= 0 else 1,
        correlation=corr,
    )
