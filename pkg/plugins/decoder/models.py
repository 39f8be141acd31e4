"""
解码器插件 - 数据模型

约定:
    - 矩阵作用于点编号: (D y) 的第 i 位为 Σ_j D[i, j] y_j
    - 选择函数 phi(y) = argmax_α |f̂_y(α)|，权重 weight(y) = f̂_y²(phi(y))

使用方式:
    >>> cf = choice_function(from_quadratic(q))
    >>> cf.mean_weight()
    1.0
"""

from dataclasses import dataclass, field

import numpy as np

from plugins.common import InputError
from plugins.core import QuadraticPolynomial
from plugins.utils import gf2
from plugins.utils.bits import rows_to_ints
from plugins.utils.formats import bits_to_text


def _bit_square(matrix) -> np.ndarray:
    arr = np.asarray(matrix)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InputError(f"expected a square bit matrix, got shape {arr.shape}")
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise InputError("matrix entries must be 0 or 1")
    return arr.astype(np.uint8)


def apply_matrix(matrix, points) -> np.ndarray:
    """
    对一组点编号做 GF(2) 线性映射

    Args:
        matrix: n×n 0/1 矩阵
        points: 点编号数组

    Returns:
        与 points 形状相同的 int64 点编号数组
    """
    m = np.asarray(matrix, dtype=np.int64)
    n = m.shape[0]
    points = np.asarray(points, dtype=np.int64)
    if n == 0:
        return np.zeros(points.shape, dtype=np.int64)
    bits = (points.reshape(-1, 1) >> np.arange(n)) & 1
    images = (bits @ m.T) & 1
    return rows_to_ints(images).reshape(points.shape)


@dataclass(frozen=True, eq=False)
class ChoiceFunction:
    """
    选择函数

    Attributes:
        n: 维数
        phi: 长度 2^n 的 int64 数组，phi[y] 为 f_y 绝对值最大的系数位置（并列取最小）
        weight: 长度 2^n 的 float64 数组，weight[y] = f̂_y²(phi[y])
    """
    n: int
    phi: np.ndarray = field(repr=False)
    weight: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        size = 1 << self.n
        phi = np.asarray(self.phi, dtype=np.int64).reshape(-1)
        weight = np.asarray(self.weight, dtype=np.float64).reshape(-1)
        if phi.size != size or weight.size != size:
            raise InputError(f"choice function needs {size} entries, got {phi.size} and {weight.size}")
        if np.any((phi < 0) | (phi >= size)):
            raise InputError("choice function values out of range")
        phi.setflags(write=False)
        weight.setflags(write=False)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "weight", weight)

    @property
    def size(self) -> int:
        return 1 << self.n

    def mean_weight(self) -> float:
        """E_y weight(y)，不小于 ‖f‖_{U_3}^8"""
        return float(self.weight.mean())

    def support(self, threshold: float) -> np.ndarray:
        """权重不低于 threshold 的方向（升序）"""
        return np.flatnonzero(self.weight >= threshold).astype(np.int64)

    def agreement(self, matrix, threshold: float, shift: int = 0) -> int:
        """|{y ∈ support : phi(y) = D y + z}|"""
        ys = self.support(threshold)
        return int((apply_matrix(matrix, ys) ^ int(shift) == self.phi[ys]).sum())


@dataclass(frozen=True, eq=False)
class SymmetricZeroDiagMatrix:
    """
    对称、零对角的 n×n 矩阵 B（二次型 A + Aᵗ 的形状）

    Attributes:
        entries: n×n uint8 0/1 矩阵

    Example:
        >>> SymmetricZeroDiagMatrix.from_quadratic(bent_polynomial(4)).n
        4
    """
    entries: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        arr = _bit_square(self.entries)
        if not np.array_equal(arr, arr.T):
            raise InputError("matrix is not symmetric")
        if np.any(np.diag(arr)):
            raise InputError("matrix diagonal is not zero")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @classmethod
    def zero(cls, n: int) -> "SymmetricZeroDiagMatrix":
        return cls(np.zeros((n, n), dtype=np.uint8))

    @classmethod
    def from_quadratic(cls, q: QuadraticPolynomial) -> "SymmetricZeroDiagMatrix":
        return cls(q.symmetric_matrix())

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def quadratic_part(self) -> QuadraticPolynomial:
        """上三角一半 A（线性项与常数为 0）"""
        return QuadraticPolynomial.from_symmetric(self.entries)

    def rows_text(self) -> list[str]:
        return [bits_to_text(row) for row in self.entries]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymmetricZeroDiagMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.n, self.entries.tobytes()))


@dataclass(frozen=True, eq=False)
class LinearFit:
    """
    线性映射拟合结果

    Attributes:
        matrix: n×n 矩阵 D
        shift: 平移 z（未开启平移搜索时为 0）
        agreement: 支撑集中 phi(y) = Dy + z 的方向数
        support_size: 支撑集 {y : weight(y) ≥ threshold} 的大小
        threshold: 权重阈值
        exhaustive: 是否为穷举（oracle）结果
        restarts: 随机重启次数（穷举时为 0）
    """
    matrix: np.ndarray = field(repr=False)
    shift: int
    agreement: int
    support_size: int
    threshold: float
    exhaustive: bool
    restarts: int

    def __post_init__(self) -> None:
        arr = _bit_square(self.matrix)
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def rate(self) -> float:
        return self.agreement / self.support_size if self.support_size else 0.0

    def to_dict(self) -> dict:
        return {
            "matrix": [bits_to_text(row) for row in self.matrix],
            "shift": self.shift,
            "agreement": self.agreement,
            "support_size": self.support_size,
            "rate": self.rate,
            "threshold": self.threshold,
            "exhaustive": self.exhaustive,
            "restarts": self.restarts,
        }


@dataclass(frozen=True, eq=False)
class SymmetrizationStages:
    """
    对称化的中间结果

    Attributes:
        source: 输入矩阵 D
        symmetric: 第一阶段的对称矩阵 S（在 U 上与 D 一致）
        result: 第二阶段的对称零对角矩阵 B
        agreement_basis: U = {x : Dx = Dᵗx} 的基（每行一个向量）
        diagonal: S 的对角线 d
        kept_basis: U ∩ d^⊥ 的基，其上 Bx = Sx = Dx
    """
    source: np.ndarray = field(repr=False)
    symmetric: np.ndarray = field(repr=False)
    result: SymmetricZeroDiagMatrix
    agreement_basis: np.ndarray = field(repr=False)
    diagonal: np.ndarray = field(repr=False)
    kept_basis: np.ndarray = field(repr=False)

    def kept_points(self) -> np.ndarray:
        """U ∩ d^⊥ 的全部元素（点编号，升序）"""
        if self.kept_basis.shape[0] == 0:
            return np.zeros(1, dtype=np.int64)
        return np.sort(rows_to_ints(gf2.span_elements(self.kept_basis)))


@dataclass(frozen=True, eq=False)
class DecodeResult:
    """
    二次解码结果

    Attributes:
        polynomial: 解码得到的二次多项式 g
        correlation: ⟨f, g⟩
        form: 使用的对称零对角矩阵 B
        fit: 线性映射拟合结果
        affine_correlation: 最优仿射函数的相关度
        used_fallback: 管线结果不如仿射逼近时为 True（此时 B = 0）
    """
    polynomial: QuadraticPolynomial
    correlation: float
    form: SymmetricZeroDiagMatrix
    fit: LinearFit
    affine_correlation: float
    used_fallback: bool

    @property
    def distance(self) -> float:
        return (1.0 - self.correlation) / 2.0

    def __iter__(self):
        # 允许 g, corr = decode_quadratic(f)
        yield self.polynomial
        yield self.correlation

    def to_dict(self) -> dict:
        out = {
            "correlation": self.correlation,
            "distance": self.distance,
            "affine_correlation": self.affine_correlation,
            "used_fallback": self.used_fallback,
            "form": self.form.rows_text(),
        }
        out.update({f"poly_{k}": v for k, v in self.polynomial.to_dict().items() if k != "n"})
        out.update({f"fit_{k}": v for k, v in self.fit.to_dict().items()})
        return out
