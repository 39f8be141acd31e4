"""
广义平均插件 - 精确枚举与 Monte-Carlo 估计

E_A(f) = E_{y_1..y_t} Π_j f(Σ_{i∈e_j} y_i)

精确路径枚举全部 2^{nt} 组赋值，按固定块并行，块内整数求和后按顺序累加。
全零列贡献因子 f(0)，照常参与计算。

使用方式:
    >>> from plugins.genavg.average import generalized_average_exact
    >>> blr = BinaryMatrix.from_rows(["101", "011"])
    >>> generalized_average_exact(blr, f)
"""

from typing import Sequence

import numpy as np

from plugins.common import (
    InputError,
    Stream,
    config,
    ensure_budget,
    get_trial_runner,
)
from plugins.core import BooleanFunction
from plugins.gowers import sample_stderr

from .models import AverageEstimate, BinaryMatrix

_ESTIMATE_HINT = "use the Monte-Carlo estimator (average --estimate)"


def _column_rows(a: BinaryMatrix) -> list[list[int]]:
    """每列涉及的行号"""
    return [[int(i) for i in np.flatnonzero(a.entries[:, j])] for j in range(a.T)]


def _check_exact_budget(a: BinaryMatrix, n: int) -> None:
    ensure_budget("genavg_max_nt", n * a.t, config.genavg_max_nt, _ESTIMATE_HINT)


def _signed_sums(tables: np.ndarray, a: BinaryMatrix, n: int) -> np.ndarray:
    """
    对 (B, 2^n) 比特表批量求 Σ_{赋值} Π_j f(...)，返回长度 B 的整数和
    """
    batch = tables.shape[0]
    columns = _column_rows(a)
    mask = (1 << n) - 1
    total = 1 << (n * a.t)
    rows = max(1, config.chunk_elements // batch)
    starts = list(range(0, total, rows))

    def run_chunk(start: int) -> np.ndarray:
        code = np.arange(start, min(total, start + rows), dtype=np.int64)
        ys = [(code >> (n * i)) & mask for i in range(a.t)]
        acc = np.zeros((batch, code.size), dtype=np.uint8)
        for members in columns:
            point = np.zeros(code.size, dtype=np.int64)
            for i in members:
                point ^= ys[i]
            acc ^= tables[:, point]
        return code.size - 2 * acc.sum(axis=1, dtype=np.int64)

    partials = get_trial_runner().map(run_chunk, starts)
    return np.sum(partials, axis=0, dtype=np.int64)


def generalized_average_exact(a: BinaryMatrix, f: BooleanFunction) -> float:
    """
    精确的 E_A(f)

    Example:
        >>> generalized_average_exact(BinaryMatrix.from_rows(["1"]), f) == f.mean()
        True

    Raises:
        ResourceBudgetError: n·t 超过 genavg_max_nt
    """
    _check_exact_budget(a, f.n)
    sums = _signed_sums(f.bits.reshape(1, -1), a, f.n)
    return float(sums[0]) / float(1 << (f.n * a.t))


def generalized_average_exact_many(a: BinaryMatrix, functions: Sequence[BooleanFunction]) -> np.ndarray:
    """
    批量精确平均（所有函数维数相同）

    Raises:
        InputError: 列表为空或维数不一致
        ResourceBudgetError: n·t 超过 genavg_max_nt
    """
    if not functions:
        raise InputError("no functions given")
    n = functions[0].n
    if any(g.n != n for g in functions):
        raise InputError("all functions must have the same n")
    _check_exact_budget(a, n)
    tables = np.stack([g.bits for g in functions])
    sums = _signed_sums(tables, a, n)
    return sums.astype(np.float64) / float(1 << (n * a.t))


def generalized_average_estimate(a: BinaryMatrix, f: BooleanFunction, trials: int,
                                 seed: int) -> AverageEstimate:
    """
    Monte-Carlo 估计 E_A(f)

    每次试验独立均匀抽取 y_1..y_t。结果只取决于 (seed, trials)。

    Raises:
        InputError: trials < 1 或 seed < 0
    """
    columns = _column_rows(a)
    size = f.size
    table = f.bits

    def kernel(rng: np.random.Generator, count: int) -> int:
        ys = rng.integers(0, size, size=(count, max(a.t, 1)), dtype=np.int64)
        acc = np.zeros(count, dtype=np.uint8)
        for members in columns:
            point = np.zeros(count, dtype=np.int64)
            for i in members:
                point ^= ys[:, i]
            acc ^= table[point]
        return count - 2 * int(acc.sum(dtype=np.int64))

    total = get_trial_runner().run_trials(seed, trials, kernel, stream=Stream.GENAVG)
    return AverageEstimate(
        value=total / trials,
        stderr=sample_stderr(total, trials),
        stderr_available=trials > 1,
        trials=trials,
        seed=seed,
    )
