"""
RM(2) 插件 - 精确距离与 U_3 不变性

最近二次函数的穷举: 对每个二次部分 A 计算 f·(-1)^{⟨x,Ax⟩} 的整数 Walsh 和，
max_α |W(α)| 给出该 A 下最好的仿射修正，距离 = (2^n − max|W|)/2^{n+1}。
二次部分按块并行，块内与块间都取编码最小的最优者。

使用方式:
    >>> distance, q = rm2_exact_distance(f)
    >>> lhs, rhs = rm2_correlation_bound_check(f, q)
"""

import numpy as np

from plugins.common import config, ensure_budget, get_trial_runner, logger
from plugins.core import BooleanFunction, QuadraticPolynomial, from_quadratic, fwht
from plugins.gowers import gowers_norm_exact
from plugins.utils.bits import point_bits

from .models import NearestQuadratic


def _monomials(n: int) -> np.ndarray:
    """形状 (n(n−1)/2, 2^n)：第 p 行为第 p 对 x_i x_j 的真值"""
    points = point_bits(n)
    rows = [points[:, i] & points[:, j] for i in range(n) for j in range(i + 1, n)]
    if not rows:
        return np.zeros((0, 1 << n), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def rm2_exact_distance(f: BooleanFunction) -> NearestQuadratic:
    """
    到 RM(2) 的精确距离与最近的二次多项式

    Raises:
        ResourceBudgetError: n 超过 rm2_max_n
    """
    n = f.n
    ensure_budget("rm2_max_n", n, config.rm2_max_n,
                  "use the dichotomy estimator (rm2 dicho) or the decoder")
    size = f.size
    pairs = n * (n - 1) // 2
    total = 1 << pairs
    mono = _monomials(n)
    shifts = np.arange(pairs, dtype=np.int64)
    rows = max(1, config.chunk_elements // size)
    starts = list(range(0, total, rows))

    def run_chunk(start: int) -> tuple[int, int, int, int]:
        q = np.arange(start, min(total, start + rows), dtype=np.int64)
        qbits = (q[:, None] >> shifts) & 1
        h = (qbits @ mono) & 1
        walsh = fwht(1 - 2 * (h ^ f.bits.astype(np.int64)))
        magnitude = np.abs(walsh)
        best_alpha = magnitude.argmax(axis=1)
        best = magnitude[np.arange(q.size), best_alpha]
        row = int(best.argmax())
        alpha = int(best_alpha[row])
        return int(best[row]), int(q[row]), alpha, int(walsh[row, alpha])

    results = get_trial_runner().map(run_chunk, starts)
    best_w, best_q, best_alpha, signed = -1, 0, 0, 0
    for w, q_index, alpha, value in results:
        if w > best_w:
            best_w, best_q, best_alpha, signed = w, q_index, alpha, value

    const_bit = 0 if signed > 0 else 1
    nearest = QuadraticPolynomial.from_indices(n, best_q, best_alpha, const_bit)
    distance = (size - best_w) / (2 * size)
    logger.debug(f"rm2 穷举: n={n}, {total} 个二次部分, 距离 {distance}")
    return NearestQuadratic(distance=distance, polynomial=nearest, candidates=total * size * 2)


def rm2_correlation_bound_check(f: BooleanFunction, g: QuadraticPolynomial) -> tuple[float, float]:
    """
    (⟨f,g⟩, ‖f‖_{U_3}^{1/2})，恒有 lhs ≤ rhs

    ⟨f,g⟩ = (fg)^(0) ≤ ‖fg‖_{U_1} ≤ ‖fg‖_{U_3} = ‖f‖_{U_3} ≤ ‖f‖_{U_3}^{1/2}
    """
    lhs = f.correlation(from_quadratic(g))
    rhs = gowers_norm_exact(f, 3) ** 0.5
    return lhs, rhs


def u3_product_invariance(f: BooleanFunction, g: QuadraticPolynomial) -> tuple[float, float]:
    """(‖f‖_{U_3}, ‖f·g‖_{U_3})，两者相等"""
    return gowers_norm_exact(f, 3), gowers_norm_exact(f * from_quadratic(g), 3)
