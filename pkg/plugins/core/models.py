"""
核心模块 - 数据模型

布尔函数、傅里叶谱与 F2 上的二次多项式。

约定:
    - 比特 b 表示 f = (-1)^b，异或即函数乘积
    - 点编号 i 的第 j 位是 x_{j+1}（x_1 为最低位）
    - 傅里叶系数按期望归一化：f̂(α) = E_x f(x)(-1)^{⟨α,x⟩}

使用方式:
    >>> from plugins.core.models import BooleanFunction, QuadraticPolynomial
    >>> f = BooleanFunction.from_bits(2, [0, 0, 0, 1])
    >>> f.evaluate(3)
    -1
"""

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from plugins.common import InputError, config
from plugins.utils import formats
from plugins.utils.bits import bits_to_int, int_to_bits, parity

Point = Union[int, Sequence[int]]


def _point_index(x: Point, n: int) -> int:
    if isinstance(x, (int, np.integer)):
        index = int(x)
    else:
        bits = list(x)
        if len(bits) != n:
            raise InputError(f"point has {len(bits)} coordinates, expected {n}")
        index = bits_to_int(bits)
    if not 0 <= index < (1 << n):
        raise InputError(f"point index {index} out of range for n={n}")
    return index


@dataclass(frozen=True)
class BooleanFunction:
    """
    布尔函数 f: {0,1}^n -> {-1,1}

    真值表按小端位序打包存储，不可变，可在线程间共享。

    Attributes:
        n: 变量个数（1 ≤ n ≤ 24）
        packed: 打包后的真值表（np.packbits, bitorder="little"）

    Example:
        >>> f = BooleanFunction.from_bits(1, [0, 1])   # (-1)^{x_1}
        >>> f.signs
        array([ 1, -1], dtype=int8)
    """
    n: int
    packed: bytes = field(repr=False)

    def __post_init__(self) -> None:
        if not 1 <= self.n <= config.max_exact_n:
            raise InputError(f"n must be in [1, {config.max_exact_n}], got {self.n}")
        expected = max(1, (1 << self.n) // 8)
        if len(self.packed) != expected:
            raise InputError(f"packed table has {len(self.packed)} bytes, expected {expected}")

    # ========== 构造 ==========

    @classmethod
    def from_bits(cls, n: int, bits: Iterable[int]) -> "BooleanFunction":
        """
        由 2^n 个比特构造

        Raises:
            InputError: 长度不符或含非 0/1 值
        """
        arr = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits)
        size = 1 << n if n >= 0 else 0
        if arr.ndim != 1 or arr.shape[0] != size:
            raise InputError(f"truth table length mismatch: expected {size} bits, got {arr.size}")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise InputError("truth table entries must be 0 or 1")
        packed = np.packbits(arr.astype(np.uint8), bitorder="little").tobytes()
        return cls(n=n, packed=packed)

    @classmethod
    def from_signs(cls, n: int, signs: Iterable[int]) -> "BooleanFunction":
        """由 ±1 值构造"""
        arr = np.asarray(list(signs) if not isinstance(signs, np.ndarray) else signs)
        if arr.size and not np.isin(arr, (-1, 1)).all():
            raise InputError("sign table entries must be -1 or +1")
        return cls.from_bits(n, (arr < 0).astype(np.uint8))

    @classmethod
    def constant(cls, n: int, value: int = 1) -> "BooleanFunction":
        """常数函数 ±1"""
        if value not in (1, -1):
            raise InputError(f"constant must be +1 or -1, got {value}")
        return cls.from_bits(n, np.full(1 << n, 1 if value < 0 else 0, dtype=np.uint8))

    @classmethod
    def from_text(cls, text: str, source: str = "<input>") -> "BooleanFunction":
        n, bits = formats.parse_truth_table(text, source, config.max_exact_n)
        return cls.from_bits(n, bits)

    @classmethod
    def from_file(cls, path: str) -> "BooleanFunction":
        """读取真值表文件"""
        return cls.from_text(formats.read_text(path), source=path)

    # ========== 表示 ==========

    @property
    def size(self) -> int:
        """定义域大小 2^n"""
        return 1 << self.n

    @cached_property
    def bits(self) -> np.ndarray:
        """长度 2^n 的 uint8 比特数组（只读）"""
        arr = np.unpackbits(np.frombuffer(self.packed, dtype=np.uint8),
                            bitorder="little")[:self.size].copy()
        arr.setflags(write=False)
        return arr

    @cached_property
    def signs(self) -> np.ndarray:
        """长度 2^n 的 int8 ±1 数组（只读）"""
        arr = (1 - 2 * self.bits.astype(np.int8)).astype(np.int8)
        arr.setflags(write=False)
        return arr

    def evaluate(self, x: Point) -> int:
        """f(x)，x 可以是点编号或坐标序列"""
        return int(self.signs[_point_index(x, self.n)])

    def weight(self) -> int:
        """取值为 -1 的点数"""
        return int(self.bits.sum(dtype=np.int64))

    def mean(self) -> float:
        """E f"""
        return 1.0 - 2.0 * self.weight() / self.size

    def digest(self) -> str:
        """打包真值表的 SHA-256"""
        return hashlib.sha256(bytes([self.n]) + self.packed).hexdigest()

    def to_text(self) -> str:
        """真值表文件格式"""
        return formats.format_truth_table(self.n, self.bits)

    # ========== 运算 ==========

    def _check_same_n(self, other: "BooleanFunction") -> None:
        if not isinstance(other, BooleanFunction):
            raise InputError(f"expected a BooleanFunction, got {type(other).__name__}")
        if other.n != self.n:
            raise InputError(f"dimension mismatch: n={self.n} vs n={other.n}")

    def __mul__(self, other: "BooleanFunction") -> "BooleanFunction":
        """逐点乘积"""
        self._check_same_n(other)
        xored = np.bitwise_xor(np.frombuffer(self.packed, dtype=np.uint8),
                               np.frombuffer(other.packed, dtype=np.uint8))
        return BooleanFunction(self.n, xored.tobytes())

    def __neg__(self) -> "BooleanFunction":
        return BooleanFunction.from_bits(self.n, 1 - self.bits)

    def correlation(self, other: "BooleanFunction") -> float:
        """⟨f, g⟩ = E_x f(x) g(x)"""
        self._check_same_n(other)
        disagree = int(np.count_nonzero(self.bits != other.bits))
        return 1.0 - 2.0 * disagree / self.size

    def __repr__(self) -> str:
        return f"BooleanFunction(n={self.n}, weight={self.weight()})"


@dataclass(frozen=True, eq=False)
class FourierSpectrum:
    """
    傅里叶谱

    Attributes:
        n: 维数
        coeffs: 长度 2^n 的 float64 数组，coeffs[α] = f̂(α)
    """
    n: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        arr = np.asarray(self.coeffs, dtype=np.float64)
        if arr.shape != (1 << self.n,):
            raise InputError(f"spectrum length mismatch: expected {1 << self.n}, got {arr.size}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    def __getitem__(self, alpha: int) -> float:
        return float(self.coeffs[alpha])

    def parseval(self) -> float:
        """Σ f̂²(α)"""
        return float(np.dot(self.coeffs, self.coeffs))

    def moment(self, power: int) -> float:
        """Σ f̂^power(α)"""
        return float(np.sum(self.coeffs ** power))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def ranked(self, limit: Optional[int] = None) -> list[tuple[int, float]]:
        """
        按 |f̂| 降序排列的 (α, f̂(α))，并列按 α 升序

        Args:
            limit: 最多返回条数
        """
        order = np.lexsort((np.arange(self.coeffs.size), -np.abs(self.coeffs)))
        if limit is not None:
            order = order[:limit]
        return [(int(a), float(self.coeffs[a])) for a in order]


def _pair_list(n: int) -> list[tuple[int, int]]:
    """(i, j), i < j，按行展开顺序"""
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


@dataclass(frozen=True, eq=False)
class QuadraticPolynomial:
    """
    F2 上的二次多项式 g(x) = (-1)^{⟨x,Ax⟩ + ⟨x,α⟩ + a}

    A 严格上三角（对角项并入线性项）。

    Attributes:
        n: 维数
        quad: n×n 严格上三角 0/1 矩阵，quad[i, j] 为 x_{i+1}x_{j+1} 的系数
        lin: 长度 n 的线性项 α
        const_bit: 常数位 a

    Example:
        >>> q = QuadraticPolynomial.from_indices(2, quad_index=1, lin_index=0, const_bit=0)
        >>> q.to_expression()
        'x1*x2'
    """
    n: int
    quad: np.ndarray = field(repr=False)
    lin: np.ndarray = field(repr=False)
    const_bit: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InputError(f"n must be >= 1, got {self.n}")
        quad = np.asarray(self.quad, dtype=np.int64)
        lin = np.asarray(self.lin, dtype=np.int64).reshape(-1)
        if quad.shape != (self.n, self.n):
            raise InputError(f"quadratic part must be {self.n}x{self.n}, got {quad.shape}")
        if lin.shape != (self.n,):
            raise InputError(f"linear part must have {self.n} entries, got {lin.size}")
        if np.any(np.tril(quad) != 0):
            raise InputError("quadratic part must be strictly upper triangular")
        if not (np.isin(quad, (0, 1)).all() and np.isin(lin, (0, 1)).all()):
            raise InputError("coefficients must be 0 or 1")
        quad = quad.astype(np.uint8)
        lin = lin.astype(np.uint8)
        quad.setflags(write=False)
        lin.setflags(write=False)
        object.__setattr__(self, "quad", quad)
        object.__setattr__(self, "lin", lin)
        object.__setattr__(self, "const_bit", int(self.const_bit) & 1)

    # ========== 构造 ==========

    @classmethod
    def zero(cls, n: int) -> "QuadraticPolynomial":
        return cls(n, np.zeros((n, n), dtype=np.uint8), np.zeros(n, dtype=np.uint8), 0)

    @classmethod
    def from_pair_bits(cls, n: int, pair_bits, lin, const_bit: int) -> "QuadraticPolynomial":
        """由按行展开的上三角系数构造"""
        pair_bits = np.asarray(pair_bits, dtype=np.uint8).reshape(-1)
        pairs = _pair_list(n)
        if pair_bits.size != len(pairs):
            raise InputError(f"expected {len(pairs)} quadratic coefficients, got {pair_bits.size}")
        quad = np.zeros((n, n), dtype=np.uint8)
        for (i, j), b in zip(pairs, pair_bits):
            quad[i, j] = b
        return cls(n, quad, lin, const_bit)

    @classmethod
    def from_indices(cls, n: int, quad_index: int, lin_index: int, const_bit: int) -> "QuadraticPolynomial":
        """由系数编码构造（第 p 对 (i,j) 为 quad_index 的第 p 位）"""
        count = n * (n - 1) // 2
        return cls.from_pair_bits(n, int_to_bits(quad_index, count), int_to_bits(lin_index, n), const_bit)

    @classmethod
    def from_symmetric(cls, b, lin=None, const_bit: int = 0) -> "QuadraticPolynomial":
        """由对称零对角矩阵 B 取上三角 A（A + Aᵗ = B）"""
        b = np.asarray(b, dtype=np.uint8)
        n = b.shape[0]
        lin = np.zeros(n, dtype=np.uint8) if lin is None else lin
        return cls(n, np.triu(b, k=1), lin, const_bit)

    @classmethod
    def from_text(cls, text: str, source: str = "<input>") -> "QuadraticPolynomial":
        n, pair_bits, lin, const_bit = formats.parse_quadratic(text, source)
        return cls.from_pair_bits(n, pair_bits, lin, const_bit)

    @classmethod
    def from_file(cls, path: str) -> "QuadraticPolynomial":
        return cls.from_text(formats.read_text(path), source=path)

    # ========== 编码 ==========

    def pair_bits(self) -> np.ndarray:
        """上三角系数按行展开"""
        return np.array([self.quad[i, j] for i, j in _pair_list(self.n)], dtype=np.uint8)

    @property
    def quad_index(self) -> int:
        return bits_to_int(self.pair_bits())

    @property
    def lin_index(self) -> int:
        return bits_to_int(self.lin)

    def sort_key(self) -> tuple[int, int, int]:
        """确定性并列顺序：(quad_index, lin_index, const_bit)"""
        return (self.quad_index, self.lin_index, self.const_bit)

    def symmetric_matrix(self) -> np.ndarray:
        """B = A + Aᵗ（对称、零对角）"""
        return (self.quad ^ self.quad.T).astype(np.uint8)

    def to_expression(self) -> str:
        """
        多项式表达式

        Example:
            >>> QuadraticPolynomial.zero(3).to_expression()
            '0'
        """
        terms = [f"x{i + 1}*x{j + 1}" for i, j in _pair_list(self.n) if self.quad[i, j]]
        terms += [f"x{i + 1}" for i in range(self.n) if self.lin[i]]
        if self.const_bit:
            terms.append("1")
        return "+".join(terms) if terms else "0"

    def to_text(self) -> str:
        return formats.format_quadratic(self.n, self.pair_bits(), self.lin, self.const_bit)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "expression": self.to_expression(),
            "quad_index": self.quad_index,
            "lin_index": self.lin_index,
            "const_bit": self.const_bit,
        }

    # ========== 求值 ==========

    def table_bits(self) -> np.ndarray:
        """
        真值表比特（长度 2^n）

        逐变量倍增：加入 x_{i+1} 后，新半区 = 旧半区 ⊕ (α_i + Σ_{j<i} A_{ji} x_j)。
        """
        table = np.array([self.const_bit], dtype=np.uint8)
        for i in range(self.n):
            mask = bits_to_int(self.quad[:i, i]) if i else 0
            idx = np.arange(table.size, dtype=np.int64)
            upper = table ^ self.lin[i] ^ parity(idx & mask)
            table = np.concatenate([table, upper.astype(np.uint8)])
        return table

    def evaluate(self, x: Point) -> int:
        index = _point_index(x, self.n)
        xb = int_to_bits(index, self.n).astype(np.int64)
        value = int(xb @ self.quad.astype(np.int64) @ xb + xb @ self.lin.astype(np.int64) + self.const_bit)
        return -1 if value & 1 else 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuadraticPolynomial):
            return NotImplemented
        return (self.n == other.n and self.const_bit == other.const_bit
                and np.array_equal(self.quad, other.quad) and np.array_equal(self.lin, other.lin))

    def __hash__(self) -> int:
        return hash((self.n,) + self.sort_key())

    def __repr__(self) -> str:
        return f"QuadraticPolynomial(n={self.n}, {self.to_expression()})"
