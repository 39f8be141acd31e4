"""
核心模块 - Walsh–Hadamard 变换与方向导数

快速变换按最后一维做原地蝶形运算，支持批量（形状 (B, 2^n)）。
整数 Walsh 和用于需要精确结果的场合；归一化谱 = Walsh 和 / 2^n，
由于 2^n 是 2 的幂，这一步不引入舍入误差。

使用方式:
    >>> from plugins.core.transform import wht, derivative
    >>> spectrum = wht(f)
    >>> f_y = derivative(f, 0b0101)
"""

from typing import Iterator, Optional, Sequence

import numpy as np

from plugins.common import InputError, config, ensure_budget
from plugins.utils.bits import bits_to_int

from .models import BooleanFunction, FourierSpectrum


def fwht(values: np.ndarray) -> np.ndarray:
    """
    快速 Walsh–Hadamard 变换（未归一化，原地）

    Args:
        values: 最后一维长度为 2 的幂的数组（整数或浮点）

    Returns:
        变换结果（输入为连续数组时原地修改）
    """
    values = np.ascontiguousarray(values)
    size = values.shape[-1]
    if size & (size - 1):
        raise InputError(f"transform length must be a power of two, got {size}")
    lead = values.shape[:-1]
    h = 1
    while h < size:
        view = values.reshape(lead + (size // (2 * h), 2, h))
        low = view[..., 0, :].copy()
        high = view[..., 1, :]
        view[..., 0, :] += high
        high *= -1
        high += low
        h *= 2
    return values


def walsh_sums(f: BooleanFunction) -> np.ndarray:
    """整数 Walsh 和 W(α) = Σ_x f(x)(-1)^{⟨α,x⟩}"""
    return fwht(f.signs.astype(np.int64))


def wht(f: BooleanFunction) -> FourierSpectrum:
    """
    傅里叶谱（期望归一化）

    Example:
        >>> wht(BooleanFunction.constant(3)).coeffs
        array([1., 0., 0., 0., 0., 0., 0., 0.])
    """
    return FourierSpectrum(f.n, walsh_sums(f).astype(np.float64) / f.size)


def inverse_wht(spectrum: FourierSpectrum) -> BooleanFunction:
    """
    由傅里叶谱恢复布尔函数

    Raises:
        InputError: 谱不对应 ±1 真值表
    """
    values = fwht(np.array(spectrum.coeffs, dtype=np.float64))
    signs = np.rint(values)
    if not (np.all(np.abs(values - signs) <= 1e-9) and np.isin(signs, (-1.0, 1.0)).all()):
        raise InputError("spectrum does not correspond to a ±1 truth table")
    return BooleanFunction.from_signs(spectrum.n, signs.astype(np.int8))


# ========== 方向导数 ==========

def _check_direction(f: BooleanFunction, y: int) -> int:
    y = int(y)
    if not 0 <= y < f.size:
        raise InputError(f"direction {y} out of range for n={f.n}")
    return y


def derivative(f: BooleanFunction, y) -> BooleanFunction:
    """
    方向导数 f_y(x) = f(x) f(x + y)

    Args:
        y: 方向（点编号或坐标序列）
    """
    if not isinstance(y, (int, np.integer)):
        y = bits_to_int(y)
    y = _check_direction(f, y)
    idx = np.arange(f.size, dtype=np.int64)
    return BooleanFunction.from_bits(f.n, f.bits ^ f.bits[idx ^ y])


def iterated_derivative(f: BooleanFunction, ys: Sequence) -> BooleanFunction:
    """
    高阶导数 f_{y_1,...,y_k}

    Raises:
        InputError: ys 为空
    """
    if len(ys) == 0:
        raise InputError("iterated_derivative needs at least one direction")
    out = f
    for y in ys:
        out = derivative(out, y)
    return out


def derivative_bits(f: BooleanFunction, ys: np.ndarray) -> np.ndarray:
    """
    批量导数比特表

    Returns:
        形状 (len(ys), 2^n) 的 uint8 数组，第 r 行是 f_{ys[r]}
    """
    ys = np.asarray(ys, dtype=np.int64).reshape(-1, 1)
    idx = np.arange(f.size, dtype=np.int64)
    return f.bits[idx] ^ f.bits[idx ^ ys]


def iter_derivative_walsh(f: BooleanFunction, ys: Optional[np.ndarray] = None,
                          check_budget: bool = True) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """
    分块产出导数的整数 Walsh 和

    Args:
        f: 布尔函数
        ys: 方向列表（默认全部 2^n 个）
        check_budget: 是否检查 gowers_budget

    Yields:
        (方向块, 形状 (块大小, 2^n) 的 int64 Walsh 和)

    Raises:
        ResourceBudgetError: 运算量超过 gowers_budget
    """
    if ys is None:
        ys = np.arange(f.size, dtype=np.int64)
    ys = np.asarray(ys, dtype=np.int64)
    if check_budget:
        ensure_budget("gowers_budget", ys.size * f.size * f.n, config.gowers_budget,
                      "use the Monte-Carlo estimator")
    rows = max(1, config.chunk_elements // f.size)
    for start in range(0, ys.size, rows):
        block = ys[start:start + rows]
        signs = 1 - 2 * derivative_bits(f, block).astype(np.int64)
        yield block, fwht(signs)


def derivative_spectra(f: BooleanFunction) -> np.ndarray:
    """
    全部导数谱 f̂_y(α)

    Returns:
        形状 (2^n, 2^n) 的 float64 矩阵，第 y 行是 f_y 的谱
    """
    out = np.empty((f.size, f.size), dtype=np.float64)
    for block, sums in iter_derivative_walsh(f):
        out[block] = sums / f.size
    return out
