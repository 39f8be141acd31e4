"""
同态插件 - 有限交换 p-群与群映射

约定:
    - G = Z_{p^{k_1}} × ... × Z_{p^{k_m}}，元素为混合进制元组
    - 元素编号: 第一个分量为最低位，index = Σ_i x_i · Π_{j<i} p^{k_j}
    - 值域 H 必须是 Z_p 的幂（所有 k_i = 1）

使用方式:
    >>> g = FiniteAbelianPGroup.from_spec("2^2 x 2^1")
    >>> g.order, g.element(5)
    (8, (1, 1))
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from plugins.common import InputError, config, ensure_budget
from plugins.utils import formats


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    q = 2
    while q * q <= p:
        if p % q == 0:
            return False
        q += 1
    return True


@dataclass(frozen=True)
class FiniteAbelianPGroup:
    """
    有限交换 p-群 Π Z_{p^{k_i}}

    Attributes:
        p: 素数
        exponents: 各因子的指数 k_i（≥ 1）

    Raises:
        InputError: p 不是素数、指数非法或没有因子
        ResourceBudgetError: 群的阶超过 hom_max_order
    """
    p: int
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponents", tuple(int(k) for k in self.exponents))
        if not _is_prime(self.p):
            raise InputError(f"p must be prime, got {self.p}")
        if not self.exponents:
            raise InputError("group needs at least one factor")
        if any(k < 1 for k in self.exponents):
            raise InputError(f"exponents must be >= 1, got {list(self.exponents)}")
        order = 1
        for k in self.exponents:
            order *= self.p ** k
        ensure_budget("hom_max_order", order, config.hom_max_order)

    # ========== 构造 ==========

    @classmethod
    def from_spec(cls, spec: str) -> "FiniteAbelianPGroup":
        """
        由群描述构造

        Example:
            >>> FiniteAbelianPGroup.from_spec("3^1 x 3^1").order
            9
        """
        p, exponents = formats.parse_group_spec(spec)
        return cls(p, tuple(exponents))

    @classmethod
    def elementary(cls, p: int, m: int) -> "FiniteAbelianPGroup":
        """Z_p^m"""
        return cls(p, (1,) * m)

    def to_spec(self) -> str:
        return formats.format_group_spec(self.p, self.exponents)

    # ========== 结构 ==========

    @cached_property
    def moduli(self) -> np.ndarray:
        return np.array([self.p ** k for k in self.exponents], dtype=np.int64)

    @cached_property
    def strides(self) -> np.ndarray:
        return np.concatenate([[1], np.cumprod(self.moduli)[:-1]]).astype(np.int64)

    @property
    def rank(self) -> int:
        return len(self.exponents)

    @property
    def order(self) -> int:
        return int(np.prod(self.moduli))

    @property
    def exponent(self) -> int:
        """元素的最大阶 p^{max k_i}"""
        return int(self.moduli.max())

    @property
    def is_elementary(self) -> bool:
        return all(k == 1 for k in self.exponents)

    # ========== 元素 ==========

    def digits(self, indices) -> np.ndarray:
        """编号 -> 分量，形状 indices.shape + (rank,)"""
        indices = np.asarray(indices, dtype=np.int64)
        return (indices[..., None] // self.strides) % self.moduli

    def indices(self, digits) -> np.ndarray:
        """分量 -> 编号（分量先按各自模数约化）"""
        digits = np.asarray(digits, dtype=np.int64) % self.moduli
        return (digits * self.strides).sum(axis=-1)

    def index(self, element: Sequence[int]) -> int:
        if len(element) != self.rank:
            raise InputError(f"element {tuple(element)} needs {self.rank} components")
        return int(self.indices(np.asarray(element, dtype=np.int64)))

    def element(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.order:
            raise InputError(f"element index {index} out of range for order {self.order}")
        return tuple(int(v) for v in self.digits(index))

    def elements(self) -> np.ndarray:
        """全部元素的分量，形状 (order, rank)，按编号顺序"""
        return self.digits(np.arange(self.order, dtype=np.int64))

    def add(self, a, b) -> np.ndarray:
        """按编号逐元素相加"""
        return self.indices(self.digits(a) + self.digits(b))

    def sub(self, a, b) -> np.ndarray:
        """按编号逐元素相减"""
        return self.indices(self.digits(a) - self.digits(b))

    def scale(self, c: int, a) -> np.ndarray:
        """c · a"""
        return self.indices(int(c) * self.digits(a))

    def generator(self, i: int) -> int:
        """第 i 个标准生成元 e_i 的编号"""
        return int(self.strides[i])

    def __str__(self) -> str:
        return self.to_spec()


@dataclass(frozen=True, eq=False)
class GroupMap:
    """
    映射 φ : G → H

    Attributes:
        domain: 定义域 G
        codomain: 值域 H（Z_p 的幂，与 G 同一个素数）
        table: 长度 |G| 的 int64 数组，table[x] 为 φ(x) 的编号

    Raises:
        InputError: 值域不是 Z_p 的幂、素数不一致或表长度/取值非法
    """
    domain: FiniteAbelianPGroup
    codomain: FiniteAbelianPGroup
    table: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if not self.codomain.is_elementary:
            raise InputError(f"codomain must be a power of Z_{self.codomain.p}, "
                             f"got {self.codomain.to_spec()}")
        if self.codomain.p != self.domain.p:
            raise InputError(f"domain and codomain primes differ: {self.domain.p} vs {self.codomain.p}")
        table = np.asarray(self.table, dtype=np.int64).reshape(-1)
        if table.size != self.domain.order:
            raise InputError(f"map needs {self.domain.order} values, got {table.size}")
        if np.any((table < 0) | (table >= self.codomain.order)):
            raise InputError("map values out of range for the codomain")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    # ========== 构造 ==========

    @classmethod
    def from_rows(cls, domain: FiniteAbelianPGroup, codomain: FiniteAbelianPGroup,
                  rows: Iterable[Sequence[int]]) -> "GroupMap":
        """由值域元组列表构造（按定义域编号顺序）"""
        rows = [tuple(int(v) for v in row) for row in rows]
        for row in rows:
            if len(row) != codomain.rank:
                raise InputError(f"value {row} needs {codomain.rank} components")
            if any(not 0 <= v < codomain.p for v in row):
                raise InputError(f"value {row} has components outside 0..{codomain.p - 1}")
        digits = np.array(rows, dtype=np.int64).reshape(-1, codomain.rank)
        return cls(domain, codomain, codomain.indices(digits))

    @classmethod
    def from_text(cls, text: str, domain: FiniteAbelianPGroup, codomain: FiniteAbelianPGroup,
                  source: str = "<input>") -> "GroupMap":
        rows = formats.parse_map_table(text, codomain.rank, source)
        if len(rows) != domain.order:
            raise InputError(f"{source}: expected {domain.order} lines, got {len(rows)}")
        return cls.from_rows(domain, codomain, rows)

    @classmethod
    def from_file(cls, path: str, domain: FiniteAbelianPGroup,
                  codomain: FiniteAbelianPGroup) -> "GroupMap":
        return cls.from_text(formats.read_text(path), domain, codomain, source=path)

    @classmethod
    def from_function(cls, domain: FiniteAbelianPGroup, codomain: FiniteAbelianPGroup,
                      func: Callable[[tuple[int, ...]], Sequence[int]]) -> "GroupMap":
        """由逐元素函数构造"""
        rows = [func(domain.element(x)) for x in range(domain.order)]
        return cls.from_rows(domain, codomain, rows)

    @classmethod
    def from_images(cls, domain: FiniteAbelianPGroup, codomain: FiniteAbelianPGroup,
                    images: Sequence[int]) -> "GroupMap":
        """
        由生成元的像构造同态 ψ(x) = Σ_i x_i ψ(e_i)

        H 的指数为 p，所以任何像都满足阶的整除条件。

        Args:
            images: 长度 rank(G) 的值域编号
        """
        images = np.asarray(images, dtype=np.int64).reshape(-1)
        if images.size != domain.rank:
            raise InputError(f"need {domain.rank} generator images, got {images.size}")
        image_digits = codomain.digits(images)
        values = (domain.elements() % domain.p) @ image_digits
        return cls(domain, codomain, codomain.indices(values))

    # ========== 访问 ==========

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        return self.codomain.element(int(self.table[self.domain.index(x)]))

    def generator_images(self) -> np.ndarray:
        """(ψ(e_1), ..., ψ(e_m)) 的编号"""
        return self.table[self.domain.strides]

    def rows(self) -> list[tuple[int, ...]]:
        return [tuple(int(v) for v in row) for row in self.codomain.digits(self.table)]

    def to_text(self) -> str:
        return formats.format_map_table(self.rows())

    def agreement(self, other: "GroupMap") -> float:
        """Pr_x[φ(x) = ψ(x)]"""
        self._check_compatible(other)
        return float((self.table == other.table).mean())

    def shifted(self, h: int) -> "GroupMap":
        """x ↦ φ(x) + h"""
        return GroupMap(self.domain, self.codomain, self.codomain.add(self.table, h))

    def _check_compatible(self, other: "GroupMap") -> None:
        if self.domain != other.domain or self.codomain != other.codomain:
            raise InputError(f"maps have different groups: {self.domain} -> {self.codomain} "
                             f"vs {other.domain} -> {other.codomain}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupMap):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and np.array_equal(self.table, other.table))

    def __hash__(self) -> int:
        return hash((self.domain, self.codomain, self.table.tobytes()))


@dataclass(frozen=True)
class ShiftCorrection:
    """
    平移修正结果

    Attributes:
        psi: 修正后的同态 ψ′
        coordinate: 选中的坐标 i（0 起始；E′ 为空时为 None）
        generator: 选中的生成元 g ∈ Z_{p^{k_i}}（E′ 为空时为 0）
        shifted_size: |E|，E = {x : φ(x) = ψ(x) + h}
        kept_size: |E′|，E′ = {x ∈ E : x_i = g}
        agreement: Pr_x[φ(x) = ψ′(x)]，不小于 |E′|/|G|
    """
    psi: GroupMap
    coordinate: Optional[int]
    generator: int
    shifted_size: int
    kept_size: int
    agreement: float

    def to_dict(self) -> dict:
        return {
            "coordinate": None if self.coordinate is None else self.coordinate + 1,
            "generator": self.generator,
            "shifted_size": self.shifted_size,
            "kept_size": self.kept_size,
            "agreement": self.agreement,
            "generator_images": [list(self.psi.codomain.element(int(v)))
                                 for v in self.psi.generator_images()],
        }
