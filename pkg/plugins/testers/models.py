"""
测试插件 - 数据模型

使用方式:
    >>> from plugins.testers.models import Hypergraph, complete_hypergraph
    >>> h = complete_hypergraph(4, 2)
    >>> h.t, len(h.edges), h.max_edge_size
    (4, 6, 2)
"""

import itertools
import math
from dataclasses import asdict, dataclass, field, replace
from typing import Iterable, Optional

from plugins.common import InputError
from plugins.utils import formats


@dataclass(frozen=True)
class Hypergraph:
    """
    t 个顶点上的超图

    顶点从 1 开始编号；构造时边内顶点排序、重复边去重（保留首次出现的顺序）。

    Attributes:
        t: 顶点数
        edges: 边列表，每条边是排序后的顶点元组
    """
    t: int
    edges: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self) -> None:
        if self.t < 0:
            raise InputError(f"vertex count must be >= 0, got {self.t}")
        cleaned: list[tuple[int, ...]] = []
        for edge in self.edges:
            vertices = tuple(sorted(int(v) for v in edge))
            if not vertices:
                raise InputError("edges must contain at least one vertex")
            if len(set(vertices)) != len(vertices):
                raise InputError(f"edge {list(vertices)} repeats a vertex")
            for v in vertices:
                if not 1 <= v <= self.t:
                    raise InputError(f"vertex {v} out of range [1, {self.t}]")
            if vertices not in cleaned:
                cleaned.append(vertices)
        object.__setattr__(self, "edges", tuple(cleaned))

    @classmethod
    def from_edges(cls, t: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        return cls(t, tuple(tuple(e) for e in edges))

    @classmethod
    def from_text(cls, text: str, source: str = "<input>") -> "Hypergraph":
        t, edges = formats.parse_hypergraph(text, source)
        return cls(t, tuple(edges))

    @classmethod
    def from_file(cls, path: str) -> "Hypergraph":
        """读取超图文件（首行 t=<顶点数>，之后每行一条边）"""
        return cls.from_text(formats.read_text(path), source=path)

    @property
    def max_edge_size(self) -> int:
        """最大边的大小 d（无边时为 0）"""
        return max((len(e) for e in self.edges), default=0)

    def is_uniform(self, r: int) -> bool:
        return all(len(e) == r for e in self.edges)

    def to_text(self) -> str:
        return formats.format_hypergraph(self.t, self.edges)

    def to_dict(self) -> dict:
        return {"t": self.t, "edges": [list(e) for e in self.edges]}


def complete_hypergraph(t: int, r: int) -> Hypergraph:
    """
    t 个顶点上的完全 r-一致超图

    Example:
        >>> len(complete_hypergraph(4, 3).edges)
        4
    """
    if not 1 <= r <= t:
        raise InputError(f"need 1 <= r <= t, got r={r}, t={t}")
    return Hypergraph(t, tuple(itertools.combinations(range(1, t + 1), r)))


@dataclass(frozen=True)
class TestReport:
    """
    随机测试报告

    Attributes:
        test: 测试名
        trials: 试验数
        accepts: 接受次数
        acceptance: accepts / trials
        stderr: acceptance 的标准误（trials = 1 时为 0）
        seed: 随机种子
        queries_per_trial: 每次试验的查询数
        theoretical_bound: 可靠性上界 1/2^{|E|} + ‖f‖_{U_d}（计算时才填）
    """
    __test__ = False

    test: str
    trials: int
    accepts: int
    acceptance: float
    stderr: float
    seed: int
    queries_per_trial: int
    theoretical_bound: Optional[float] = None

    @classmethod
    def from_counts(cls, test: str, trials: int, accepts: int, seed: int,
                    queries_per_trial: int) -> "TestReport":
        p = accepts / trials
        stderr = math.sqrt(p * (1.0 - p) / (trials - 1)) if trials > 1 else 0.0
        return cls(test=test, trials=trials, accepts=accepts, acceptance=p, stderr=stderr,
                   seed=seed, queries_per_trial=queries_per_trial)

    @property
    def rejects(self) -> int:
        return self.trials - self.accepts

    def with_bound(self, bound: float) -> "TestReport":
        return replace(self, theoretical_bound=float(bound))

    def within_bound(self, sigmas: float = 4.0) -> Optional[bool]:
        """acceptance ≤ bound + sigmas·stderr；未计算上界时为 None"""
        if self.theoretical_bound is None:
            return None
        return self.acceptance <= self.theoretical_bound + sigmas * self.stderr

    def to_dict(self) -> dict:
        return asdict(self)
