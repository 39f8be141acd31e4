"""
测试插件 - 精确接受概率

一次试验接受当且仅当每条边的检查量 c_e 等于期望符号 s_e，
接受指示为 Π_e (1 + s_e c_e)/2。展开得

    Pr[accept] = 2^{−|E|} Σ_{S⊆E} (Π_{e∈S} s_e) · E_{M(S)}(f)

其中 M(S) 的列是 S 中各边检查所用的全部子集和。
相同列成对消去、零行删去后再做精确广义平均，相同矩阵只算一次。

使用方式:
    >>> exact_acceptance_blr(inner_product_bent(4))
    0.53125
"""

import itertools

import numpy as np

from plugins.common import config, ensure_budget
from plugins.core import BooleanFunction, walsh_sums
from plugins.genavg import BinaryMatrix, generalized_average_exact, simplify
from plugins.gowers import gowers_norm_exact, gowers_raw_exact

from .models import Hypergraph
from .runners import _edge_subsets, _require_three_uniform, linearity_check_bit

_ESTIMATE_HINT = "use the Monte-Carlo test runner instead"


def exact_acceptance_blr(f: BooleanFunction, affine: bool = False) -> float:
    """(1 + s·Σ_α f̂³(α))/2，s 为 f(0)（仿射模式）或 1"""
    coeffs = walsh_sums(f) / f.size
    sign = -1.0 if linearity_check_bit(f, 2, affine) else 1.0
    return (1.0 + sign * float((coeffs ** 3).sum())) / 2.0


def _subset_expansion(f: BooleanFunction, t: int, checks: list[tuple[list[tuple[int, ...]], int]]) -> float:
    """
    Args:
        t: 变量数
        checks: 每条边的 (子集和列表, 期望比特)
    """
    ensure_budget("gowers_budget", (1 << len(checks)) * (1 << (f.n * t)), config.gowers_budget,
                  _ESTIMATE_HINT)
    cache: dict[BinaryMatrix, float] = {}
    total = 0.0
    for size in range(len(checks) + 1):
        for chosen in itertools.combinations(range(len(checks)), size):
            columns = [combo for i in chosen for combo in checks[i][0]]
            sign_bit = 0
            for i in chosen:
                sign_bit ^= checks[i][1]
            entries = np.zeros((t, len(columns)), dtype=np.uint8)
            for j, combo in enumerate(columns):
                entries[list(combo), j] = 1
            matrix = simplify(BinaryMatrix(entries))
            if matrix not in cache:
                cache[matrix] = generalized_average_exact(matrix, f) if matrix.T else 1.0
            total += -cache[matrix] if sign_bit else cache[matrix]
    return total / (1 << len(checks))


def exact_acceptance_hypergraph(f: BooleanFunction, h: Hypergraph, affine: bool = True) -> float:
    """
    超图线性测试的精确接受概率

    Raises:
        ResourceBudgetError: 子族展开或单项平均超出预算
    """
    checks = []
    for e in h.edges:
        members = [v - 1 for v in e]
        columns = [(i,) for i in members] + [tuple(members)]
        checks.append((columns, linearity_check_bit(f, len(e), affine)))
    return _subset_expansion(f, h.t, checks)


def exact_acceptance_quadraticity(f: BooleanFunction, h: Hypergraph) -> float:
    """
    超图二次性测试的精确接受概率

    Raises:
        InputError: 超图不是 3-一致的
        ResourceBudgetError: 超出预算
    """
    _require_three_uniform(h)
    expected = int(f.bits[0])
    checks = [(_edge_subsets(e), expected) for e in h.edges]
    return _subset_expansion(f, h.t, checks)


def exact_acceptance_akklr(f: BooleanFunction, k: int) -> float:
    """(1 + ‖f‖_{U_k}^{2^k})/2"""
    return (1.0 + gowers_raw_exact(f, k)) / 2.0


def soundness_bound(f: BooleanFunction, h: Hypergraph) -> float:
    """
    1/2^{|E|} + ‖f‖_{U_d}，d 为最大边大小；空超图为 1

    Raises:
        ResourceBudgetError: 精确范数超出 gowers_budget
    """
    d = h.max_edge_size
    floor = 1.0 / (1 << len(h.edges))
    if d == 0:
        return floor
    return floor + gowers_norm_exact(f, d)
