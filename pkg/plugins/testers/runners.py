"""
测试插件 - Monte-Carlo 测试执行

所有测试都以"比特异或"计算乘积：比特 1 表示 f = −1，
一组查询的乘积为 +1 当且仅当比特异或为 0。

测试:
    blr              f(x)f(y)f(x+y) = 1（仿射模式下 = f(0)）
    hypergraph-lin   每条边 e: Π_{i∈e} f(x_i) · f(Σ_{i∈e} x_i) = f^{|e|+1}(0)（严格模式下 = 1）
    graph            所有边大小为 2 的特例
    hypergraph-quad  每条 3 元边: 7 个非空子集和上的乘积 = f(0)
    akklr            k 阶导数 Π_{S⊆[k]} f(x + Σ_{i∈S} y_i) = 1

使用方式:
    >>> report = blr_test(f, trials=10_000, seed=1)
    >>> report.acceptance
"""

import itertools
from typing import Sequence

import numpy as np

from plugins.common import InputError, Stream, get_trial_runner
from plugins.core import BooleanFunction

from .models import Hypergraph, TestReport


def _edge_subsets(edge: Sequence[int]) -> list[tuple[int, ...]]:
    """边的全部非空子集（顶点从 0 编号）"""
    members = [v - 1 for v in edge]
    return [combo for r in range(1, len(members) + 1)
            for combo in itertools.combinations(members, r)]


def linearity_check_bit(f: BooleanFunction, edge_size: int, affine: bool) -> int:
    """线性检查的期望比特: 仿射模式为 f^{|e|+1}(0) 的比特，严格模式为 0"""
    if not affine:
        return 0
    return int(f.bits[0]) * (edge_size + 1) & 1


# ========== BLR ==========

def blr_trial(f: BooleanFunction, rng: np.random.Generator, affine: bool = False) -> bool:
    """单次 BLR 检查"""
    x, y = (int(v) for v in rng.integers(0, f.size, size=2))
    product = int(f.bits[x]) ^ int(f.bits[y]) ^ int(f.bits[x ^ y])
    return product == linearity_check_bit(f, 2, affine)


def blr_test(f: BooleanFunction, trials: int, seed: int, affine: bool = False) -> TestReport:
    """
    BLR 线性测试

    Args:
        affine: True 时与 f(0) 比较（测试仿射函数）

    Raises:
        InputError: trials < 1 或 seed < 0
    """
    table = f.bits
    expected = linearity_check_bit(f, 2, affine)

    def kernel(rng: np.random.Generator, count: int) -> int:
        draws = rng.integers(0, f.size, size=(count, 2), dtype=np.int64)
        product = table[draws[:, 0]] ^ table[draws[:, 1]] ^ table[draws[:, 0] ^ draws[:, 1]]
        return int((product == expected).sum())

    accepts = get_trial_runner().run_trials(seed, trials, kernel, stream=Stream.BLR)
    return TestReport.from_counts("blr", trials, accepts, seed, queries_per_trial=3)


# ========== 超图线性测试 ==========

def _linearity_queries(h: Hypergraph) -> int:
    return h.t + len(h.edges)


def hypergraph_linearity_test(f: BooleanFunction, h: Hypergraph, trials: int, seed: int,
                              affine: bool = True, test: str = "hypergraph-lin") -> TestReport:
    """
    超图线性测试

    每次试验抽取 x_1..x_t，所有边检查都通过才接受。空超图总是接受。

    Args:
        affine: True（默认）时第 e 条边与 f^{|e|+1}(0) 比较；False 时与 1 比较
    """
    table = f.bits
    edges = [([v - 1 for v in e], linearity_check_bit(f, len(e), affine)) for e in h.edges]

    def kernel(rng: np.random.Generator, count: int) -> int:
        xs = rng.integers(0, f.size, size=(count, h.t), dtype=np.int64)
        ok = np.ones(count, dtype=bool)
        for members, expected in edges:
            total = np.zeros(count, dtype=np.int64)
            acc = np.zeros(count, dtype=np.uint8)
            for i in members:
                acc ^= table[xs[:, i]]
                total ^= xs[:, i]
            acc ^= table[total]
            ok &= acc == expected
        return int(ok.sum())

    accepts = get_trial_runner().run_trials(seed, trials, kernel, stream=Stream.HYPERGRAPH)
    return TestReport.from_counts(test, trials, accepts, seed, _linearity_queries(h))


def graph_test(f: BooleanFunction, h: Hypergraph, trials: int, seed: int,
               affine: bool = True) -> TestReport:
    """
    图线性测试（所有边大小为 2）

    Raises:
        InputError: 存在大小不为 2 的边
    """
    if not h.is_uniform(2):
        raise InputError("graph test needs every edge to have exactly 2 vertices")
    return hypergraph_linearity_test(f, h, trials, seed, affine=affine, test="graph")


# ========== 超图二次性测试 ==========

def _require_three_uniform(h: Hypergraph) -> None:
    if not h.is_uniform(3):
        sizes = sorted({len(e) for e in h.edges})
        raise InputError(f"quadraticity test needs a 3-uniform hypergraph, got edge sizes {sizes}")


def quadraticity_queries(h: Hypergraph) -> int:
    """不同查询点数（各边子集和按顶点集合去重）加上 f(0)"""
    sums = {combo for e in h.edges for combo in _edge_subsets(e)}
    return len(sums | {(i,) for i in range(h.t)}) + 1


def hypergraph_quadraticity_test(f: BooleanFunction, h: Hypergraph, trials: int,
                                 seed: int) -> TestReport:
    """
    超图二次性测试

    Raises:
        InputError: 超图不是 3-一致的
    """
    _require_three_uniform(h)
    table = f.bits
    expected = int(table[0])
    edges = [_edge_subsets(e) for e in h.edges]

    def kernel(rng: np.random.Generator, count: int) -> int:
        xs = rng.integers(0, f.size, size=(count, h.t), dtype=np.int64)
        ok = np.ones(count, dtype=bool)
        for subsets in edges:
            acc = np.zeros(count, dtype=np.uint8)
            for combo in subsets:
                point = np.zeros(count, dtype=np.int64)
                for i in combo:
                    point ^= xs[:, i]
                acc ^= table[point]
            ok &= acc == expected
        return int(ok.sum())

    accepts = get_trial_runner().run_trials(seed, trials, kernel, stream=Stream.QUADRATICITY)
    return TestReport.from_counts("hypergraph-quad", trials, accepts, seed, quadraticity_queries(h))


# ========== AKKLR ==========

def akklr_test(f: BooleanFunction, k: int, trials: int, seed: int) -> TestReport:
    """
    k 阶导数测试: 在 x + span{y_1..y_k} 的 2^k 个点上求乘积，为 +1 则接受

    Raises:
        InputError: k < 1
    """
    if k < 1:
        raise InputError(f"derivative order k must be >= 1, got {k}")
    table = f.bits

    def kernel(rng: np.random.Generator, count: int) -> int:
        draws = rng.integers(0, f.size, size=(count, k + 1), dtype=np.int64)
        acc = np.zeros(count, dtype=np.uint8)
        for mask in range(1 << k):
            point = draws[:, 0].copy()
            for i in range(k):
                if mask >> i & 1:
                    point ^= draws[:, i + 1]
            acc ^= table[point]
        return int((acc == 0).sum())

    accepts = get_trial_runner().run_trials(seed, trials, kernel, stream=Stream.AKKLR)
    return TestReport.from_counts(f"akklr-{k}", trials, accepts, seed, queries_per_trial=1 << k)
