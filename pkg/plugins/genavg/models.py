"""
广义平均插件 - 数据模型

约定:
    - t×T 矩阵的第 j 列是边 e_j ⊆ {1..t} 的特征向量
    - E_A(f) = E_{y_1..y_t} Π_j f(Σ_{i∈e_j} y_i)

使用方式:
    >>> from plugins.genavg.models import BinaryMatrix
    >>> a = BinaryMatrix.from_rows(["101", "011"])
    >>> a.t, a.T, a.rank
    (2, 3, 2)
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

import numpy as np

from plugins.common import InputError
from plugins.utils import formats, gf2
from plugins.utils.formats import bits_to_text


@dataclass(frozen=True, eq=False)
class BinaryMatrix:
    """
    F2 上的 t×T 矩阵

    元素只读；秩按需计算并缓存。

    Attributes:
        entries: t×T uint8 0/1 矩阵
    """
    entries: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        arr = np.asarray(self.entries)
        if arr.ndim != 2:
            raise InputError(f"matrix must be 2-D, got {arr.ndim} dimensions")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise InputError("matrix entries must be 0 or 1")
        arr = arr.astype(np.uint8)
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    # ========== 构造 ==========

    @classmethod
    def from_rows(cls, rows: Iterable) -> "BinaryMatrix":
        """
        由行构造

        Example:
            >>> BinaryMatrix.from_rows(["10", "11"])
            >>> BinaryMatrix.from_rows([[1, 0], [1, 1]])
        """
        parsed = []
        for row in rows:
            if isinstance(row, str):
                if set(row) - {"0", "1"}:
                    raise InputError(f"matrix row '{row}' must contain only 0 and 1")
                parsed.append([int(c) for c in row])
            else:
                parsed.append([int(v) for v in row])
        widths = {len(r) for r in parsed}
        if len(widths) > 1:
            raise InputError(f"matrix rows have different lengths: {sorted(widths)}")
        width = widths.pop() if widths else 0
        return cls(np.array(parsed, dtype=np.uint8).reshape(len(parsed), width))

    @classmethod
    def from_text(cls, text: str, source: str = "<input>") -> "BinaryMatrix":
        return cls(formats.parse_matrix(text, source))

    @classmethod
    def from_file(cls, path: str) -> "BinaryMatrix":
        """读取矩阵文件（每行一个 0/1 串）"""
        return cls.from_text(formats.read_text(path), source=path)

    # ========== 属性 ==========

    @property
    def t(self) -> int:
        """行数（变量个数）"""
        return int(self.entries.shape[0])

    @property
    def T(self) -> int:
        """列数（边数）"""
        return int(self.entries.shape[1])

    @cached_property
    def rank(self) -> int:
        """F2 秩"""
        return gf2.rank(self.entries) if self.entries.size else 0

    def column_weights(self) -> np.ndarray:
        return self.entries.sum(axis=0, dtype=np.int64)

    def max_column_weight(self) -> int:
        return int(self.column_weights().max()) if self.T else 0

    def zero_columns(self) -> list[int]:
        return [int(j) for j in np.flatnonzero(self.column_weights() == 0)]

    def duplicate_columns(self) -> list[tuple[int, int]]:
        """(首次出现, 重复出现) 的列号对"""
        seen: dict[bytes, int] = {}
        pairs = []
        for j in range(self.T):
            key = self.entries[:, j].tobytes()
            if key in seen:
                pairs.append((seen[key], j))
            else:
                seen[key] = j
        return pairs

    def is_full_rank(self) -> bool:
        return self.rank == self.t

    # ========== 输出 ==========

    def rows_text(self) -> list[str]:
        return [bits_to_text(row) for row in self.entries]

    def to_text(self) -> str:
        return formats.format_matrix(self.entries)

    def to_dict(self) -> dict:
        return {"t": self.t, "T": self.T, "rank": self.rank, "rows": self.rows_text()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return (self.entries.shape == other.entries.shape
                and bool(np.array_equal(self.entries, other.entries)))

    def __hash__(self) -> int:
        return hash((self.entries.shape, self.entries.tobytes()))

    def __repr__(self) -> str:
        return f"BinaryMatrix({self.t}x{self.T}: {'/'.join(self.rows_text())})"


@dataclass(frozen=True)
class AverageEstimate:
    """
    广义平均的 Monte-Carlo 估计

    Attributes:
        value: 样本均值
        stderr: 标准误（trials = 1 时为 0 且 stderr_available 为 False）
        stderr_available: 样本数是否足以估计标准误
    """
    value: float
    stderr: float
    stderr_available: bool
    trials: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "stderr": self.stderr if self.stderr_available else None,
            "stderr_available": self.stderr_available,
            "trials": self.trials,
            "seed": self.seed,
        }


# 归约步骤类型
STEP_ROW_REDUCE = "row_reduce"
STEP_EXCHANGE = "exchange"
STEP_PROPOSITION = "proposition"


@dataclass(frozen=True)
class ReductionStep:
    """
    归约链中的一步

    Attributes:
        kind: row_reduce（同行空间、满秩化/重排）、exchange（用极小向量替换首行）、
              proposition（Cauchy–Schwarz 加倍，E_A ≤ √E_{A'}）
        before: 输入矩阵
        after: 输出矩阵
        vector: exchange / proposition 使用的行空间向量
    """
    kind: str
    before: BinaryMatrix
    after: BinaryMatrix
    vector: Optional[np.ndarray] = field(default=None, repr=False)

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "before": self.before.rows_text(), "after": self.after.rows_text()}
        if self.vector is not None:
            out["vector"] = bits_to_text(self.vector)
        return out


@dataclass
class ReductionCertificate:
    """
    把 A 归约到 A_k 的证书

    每个 proposition 步把界开一次平方根，其余步保持平均值不变，
    因此 |E_A(f)| ≤ E_{A_k}(f)^{1/2^exponent} = ‖f‖_{U_k}^{2^{k − exponent}}。

    Attributes:
        source: 输入矩阵
        steps: 步骤序列
        terminal_k: 终止矩阵等价于 A_k 时的 k；未完成为 None
        exponent: proposition 步数
        completed: 是否到达某个 A_k
        reason: 未完成的原因
    """
    source: BinaryMatrix
    steps: list[ReductionStep] = field(default_factory=list)
    terminal_k: Optional[int] = None
    exponent: int = 0
    completed: bool = False
    reason: str = ""

    def bound_text(self) -> str:
        if not self.completed:
            return "-"
        return f"|E_A(f)| <= E_A{self.terminal_k}(f)^(1/{1 << self.exponent})" \
               f" = ||f||_U{self.terminal_k}^{2.0 ** (self.terminal_k - self.exponent):g}"

    def to_dict(self) -> dict:
        return {
            "source": self.source.rows_text(),
            "steps": [s.to_dict() for s in self.steps],
            "terminal_k": self.terminal_k,
            "exponent": self.exponent,
            "completed": self.completed,
            "reason": self.reason,
            "bound": self.bound_text(),
        }

    def to_text(self) -> str:
        """结构化文本报告，逐步列出矩阵"""
        lines = [f"source {self.source.t}x{self.source.T}:"]
        lines += [f"  {row}" for row in self.source.rows_text()]
        for number, step in enumerate(self.steps, start=1):
            head = f"step {number}: {step.kind}"
            if step.vector is not None:
                head += f" v={bits_to_text(step.vector)}"
            lines.append(head + f" -> {step.after.t}x{step.after.T}")
            lines += [f"  {row}" for row in step.after.rows_text()]
        if self.completed:
            lines.append(f"terminal: A{self.terminal_k}, exponent {self.exponent}")
            lines.append(f"bound: {self.bound_text()}")
        else:
            lines.append(f"incomplete: {self.reason}")
        return "\n".join(lines) + "\n"
