"""
Gowers 插件 - 精确计算与 Monte-Carlo 估计

精确路径:
    d = 1    (E f)²
    d = 2    Σ_α f̂⁴(α)
    d = 3    E_y Σ_α f̂_y⁴(α)
    d ≥ 4    ‖f‖_{U_d}^{2^d} = E_y ‖f_y‖_{U_{d-1}}^{2^{d-1}}

运算量 cost(1) = 2^n，cost(2) = n·2^n，cost(d) = 2^n·cost(d−1)，
超过 gowers_budget 时抛出 ResourceBudgetError。
原始量 ‖f‖^{2^d} 是基本量，范数由它开 2^d 次方得到（负值截断为 0）。

使用方式:
    >>> from plugins.gowers.norms import gowers_norm_exact, gowers_norm_estimate
    >>> gowers_norm_exact(inner_product_bent(4), 2)
    0.5
    >>> est = gowers_norm_estimate(f, d=3, trials=100_000, seed=7)
"""

from typing import Sequence

import numpy as np

from plugins.common import (
    InputError,
    Stream,
    config,
    ensure_budget,
    get_trial_runner,
    logger,
)
from plugins.core import BooleanFunction, fwht, iter_derivative_walsh, walsh_sums

from .models import GowersEstimate

_ESTIMATE_HINT = "use the Monte-Carlo estimator (gowers --estimate)"


def _check_order(d: int) -> None:
    if d < 1:
        raise InputError(f"Gowers order d must be >= 1, got {d}")


def gowers_cost(n: int, d: int) -> int:
    """精确计算 ‖f‖_{U_d} 的运算量（表读取次数）"""
    _check_order(d)
    size = 1 << n
    if d == 1:
        return size
    if d == 2:
        return n * size
    if d == 3:
        return n * size * size
    return size * gowers_cost(n, d - 1)


def _raw_many(bits: np.ndarray, n: int, d: int) -> np.ndarray:
    """
    批量原始量

    Args:
        bits: 形状 (B, 2^n) 的比特表
        d: 阶数

    Returns:
        长度 B 的 ‖f‖_{U_d}^{2^d}
    """
    batch, size = bits.shape
    if d == 1:
        means = 1.0 - 2.0 * bits.sum(axis=1, dtype=np.int64) / size
        return means * means
    if d == 2:
        sums = fwht(1 - 2 * bits.astype(np.int64))
        return ((sums / size) ** 4).sum(axis=1)

    idx = np.arange(size, dtype=np.int64)
    rows = max(1, config.chunk_elements // (batch * size))
    total = np.zeros(batch, dtype=np.float64)
    for start in range(0, size, rows):
        ys = idx[start:start + rows]
        derived = bits[:, None, :] ^ bits[:, idx[None, :] ^ ys[:, None]]
        sub = _raw_many(derived.reshape(-1, size), n, d - 1)
        total += sub.reshape(batch, ys.size).sum(axis=1)
    return total / size


def gowers_raw_exact(f: BooleanFunction, d: int) -> float:
    """
    精确计算 ‖f‖_{U_d}^{2^d}

    Raises:
        InputError: d < 1
        ResourceBudgetError: 运算量超过 gowers_budget
    """
    _check_order(d)
    ensure_budget("gowers_budget", gowers_cost(f.n, d), config.gowers_budget, _ESTIMATE_HINT)
    if d == 3:
        return _u3_raw(f)
    if d <= 2:
        return float(_raw_many(f.bits.reshape(1, -1), f.n, d)[0])

    # 顶层按方向分块并行，块结果按顺序求和
    size = f.size
    idx = np.arange(size, dtype=np.int64)
    rows = max(1, config.chunk_elements // (size * size))
    chunks = [idx[s:s + rows] for s in range(0, size, rows)]

    def run_chunk(ys: np.ndarray) -> float:
        derived = f.bits[idx[None, :] ^ ys[:, None]] ^ f.bits[None, :]
        return float(_raw_many(derived, f.n, d - 1).sum())

    partials = get_trial_runner().map(run_chunk, chunks)
    logger.debug(f"U_{d} 精确计算: n={f.n}, {len(chunks)} 个方向块")
    return float(sum(partials)) / size


def _u3_raw(f: BooleanFunction) -> float:
    total = 0.0
    for _, sums in iter_derivative_walsh(f, check_budget=False):
        total += float(((sums / f.size) ** 4).sum())
    return total / f.size


def gowers_norm_exact(f: BooleanFunction, d: int) -> float:
    """
    精确的 ‖f‖_{U_d}

    Example:
        >>> gowers_norm_exact(linear_fn([1, 0, 1]), 3)
        1.0
    """
    raw = gowers_raw_exact(f, d)
    return max(raw, 0.0) ** (1.0 / (1 << d))


def gowers_raw_exact_many(functions: Sequence[BooleanFunction], d: int) -> np.ndarray:
    """
    批量精确原始量（所有函数维数相同）

    Raises:
        InputError: 维数不一致或列表为空
        ResourceBudgetError: 总运算量超过 gowers_budget
    """
    _check_order(d)
    if not functions:
        raise InputError("no functions given")
    n = functions[0].n
    if any(g.n != n for g in functions):
        raise InputError("all functions must have the same n")
    ensure_budget("gowers_budget", len(functions) * gowers_cost(n, d), config.gowers_budget,
                  _ESTIMATE_HINT)
    bits = np.stack([g.bits for g in functions])
    return _raw_many(bits, n, d)


def gowers_norm_exact_many(functions: Sequence[BooleanFunction], d: int) -> np.ndarray:
    """批量精确范数"""
    raw = gowers_raw_exact_many(functions, d)
    return np.maximum(raw, 0.0) ** (1.0 / (1 << d))


def gowers_profile(f: BooleanFunction, max_d: int) -> list[float]:
    """d = 1..max_d 的精确范数"""
    _check_order(max_d)
    return [gowers_norm_exact(f, d) for d in range(1, max_d + 1)]


def u2_via_spectrum(f: BooleanFunction) -> float:
    """‖f‖_{U_2} = (Σ_α f̂⁴(α))^{1/4}"""
    coeffs = walsh_sums(f) / f.size
    return max(float((coeffs ** 4).sum()), 0.0) ** 0.25


def u3_via_derivative_spectra(f: BooleanFunction) -> float:
    """
    ‖f‖_{U_3} = (E_y Σ_α f̂_y⁴(α))^{1/8}

    Raises:
        ResourceBudgetError: 导数谱运算量超过 gowers_budget
    """
    ensure_budget("gowers_budget", gowers_cost(f.n, 3), config.gowers_budget, _ESTIMATE_HINT)
    return max(_u3_raw(f), 0.0) ** 0.125


def gowers_raw_direct(f: BooleanFunction, d: int) -> float:
    """
    按定义直接求和 E_{x,y_1..y_d} Π_{S⊆[d]} f(x + Σ_{i∈S} y_i)

    共 2^{n(d+1)} 项，仅作小 n 的对照。

    Raises:
        ResourceBudgetError: 项数乘 2^d 超过 gowers_budget
    """
    _check_order(d)
    size = f.size
    terms = size ** (d + 1)
    ensure_budget("gowers_budget", terms << d, config.gowers_budget, _ESTIMATE_HINT)
    idx = np.arange(size, dtype=np.int64)
    tuples = size ** d
    rows = max(1, config.chunk_elements // size)
    total = 0
    for start in range(0, tuples, rows):
        code = np.arange(start, min(tuples, start + rows), dtype=np.int64)
        ys = [(code // size ** i) % size for i in range(d)]
        acc = np.zeros((code.size, size), dtype=np.uint8)
        for mask in range(1 << d):
            shift = np.zeros(code.size, dtype=np.int64)
            for i in range(d):
                if mask >> i & 1:
                    shift ^= ys[i]
            acc ^= f.bits[idx[None, :] ^ shift[:, None]]
        total += int(acc.size) - 2 * int(acc.sum(dtype=np.int64))
    return total / terms


def gowers_norm_estimate(f: BooleanFunction, d: int, trials: int, seed: int) -> GowersEstimate:
    """
    Monte-Carlo 估计 ‖f‖_{U_d}

    每次试验独立抽取 x, y_1..y_d，样本为 Π_{S⊆[d]} f(x + Σ_{i∈S} y_i)。
    结果只取决于 (seed, trials)，与线程数无关。

    Raises:
        InputError: d < 1、trials < 1 或 seed < 0
    """
    _check_order(d)
    size = f.size
    table = f.bits

    def kernel(rng: np.random.Generator, count: int) -> int:
        draws = rng.integers(0, size, size=(count, d + 1), dtype=np.int64)
        acc = np.zeros(count, dtype=np.uint8)
        for mask in range(1 << d):
            point = draws[:, 0].copy()
            for i in range(d):
                if mask >> i & 1:
                    point ^= draws[:, i + 1]
            acc ^= table[point]
        return count - 2 * int(acc.sum(dtype=np.int64))

    total = get_trial_runner().run_trials(seed, trials, kernel, stream=Stream.GOWERS)
    return GowersEstimate.from_sum(d, total, trials, seed)
