"""
RM(2) 插件 - 数据模型

使用方式:
    >>> verdict = dichotomy(f, delta=0.05, seed=1)
    >>> verdict.branch
    'FAR'
"""

from dataclasses import asdict, dataclass
from typing import Optional

from plugins.core import QuadraticPolynomial

FAR = "FAR"
NEAR = "NEAR"

NEAR_STATEMENT = ("||f||_U3^8 >= delta/2 with the stated confidence; some quadratic "
                  "is within distance strictly below 1/2 of f")
FAR_STATEMENT = ("||f||_U3^8 < 3*delta/2 with the stated confidence; every quadratic "
                 "is at distance >= far_bound from f")


@dataclass(frozen=True)
class DichotomyVerdict:
    """
    远/近二分判定

    Attributes:
        branch: FAR 或 NEAR（nu ≥ delta 时为 NEAR）
        nu: 三阶导数样本均值（‖f‖_{U_3}^8 的估计）
        delta: 阈值参数
        confidence: 置信度
        trials: 样本数 m
        seed: 随机种子
        stderr: nu 的标准误
        far_bound: FAR 时蕴含的距离下界 (1 − (3δ/2)^{1/16})/2（NEAR 时为 None）
        statement: 判定所蕴含的结论
    """
    branch: str
    nu: float
    delta: float
    confidence: float
    trials: int
    seed: int
    stderr: float
    far_bound: Optional[float]
    statement: str

    @property
    def is_near(self) -> bool:
        return self.branch == NEAR

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class NearestQuadratic:
    """
    穷举得到的最近二次函数

    Attributes:
        distance: 归一化距离
        polynomial: 最近的二次多项式（按 (quad_index, lin_index, const_bit) 取最小）
        candidates: 枚举的二次多项式个数
    """
    distance: float
    polynomial: QuadraticPolynomial
    candidates: int

    @property
    def correlation(self) -> float:
        return 1.0 - 2.0 * self.distance

    def __iter__(self):
        # 允许 distance, poly = rm2_exact_distance(f)
        yield self.distance
        yield self.polynomial

    def to_dict(self) -> dict:
        out = {"distance": self.distance, "correlation": self.correlation,
               "candidates": self.candidates}
        out.update({f"nearest_{k}": v for k, v in self.polynomial.to_dict().items() if k != "n"})
        return out
