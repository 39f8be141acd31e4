"""
核心模块 - 函数生成器与多项式解析

所有随机生成器都显式接收种子，通过 stream_generator(seed, Stream.X)
取独立随机流，不存在全局随机状态。

使用方式:
    >>> from plugins.core.generators import inner_product_bent, noisy, parse_polynomial
    >>> f = inner_product_bent(4)
    >>> g = noisy(f, 0.1, seed=7)
    >>> q = parse_polynomial("x1*x2+x3+1", n=3)
"""

import re
from typing import Sequence, Union

import numpy as np

from plugins.common import InputError, Stream, config, stream_generator
from plugins.utils.bits import dot_parity, int_to_bits

from .models import BooleanFunction, QuadraticPolynomial

_VARIABLE = re.compile(r"^x(\d+)$")


def linear_fn(a: Union[int, Sequence[int]], b: int = 0, n: int = 0) -> BooleanFunction:
    """
    仿射函数 (-1)^{⟨a,x⟩ + b}

    Args:
        a: 系数向量（序列，长度即 n），或点编号（此时需给出 n）
        b: 常数位
        n: a 为整数时的维数

    Example:
        >>> linear_fn([1, 0], 0).bits
        array([0, 1, 0, 1], dtype=uint8)
    """
    if isinstance(a, (int, np.integer)):
        if n < 1:
            raise InputError("linear_fn with an integer coefficient index needs n >= 1")
        index = int(a)
        if not 0 <= index < (1 << n):
            raise InputError(f"coefficient index {index} out of range for n={n}")
    else:
        coeffs = [int(v) for v in a]
        if n and n != len(coeffs):
            raise InputError(f"coefficient vector has {len(coeffs)} entries, expected {n}")
        n = len(coeffs)
        if any(v not in (0, 1) for v in coeffs):
            raise InputError("coefficients must be 0 or 1")
        index = sum(v << i for i, v in enumerate(coeffs))
    if b not in (0, 1):
        raise InputError(f"constant bit must be 0 or 1, got {b}")
    idx = np.arange(1 << n, dtype=np.int64)
    return BooleanFunction.from_bits(n, dot_parity(idx, index) ^ b)


def from_quadratic(q: QuadraticPolynomial) -> BooleanFunction:
    """二次多项式的真值表"""
    return BooleanFunction.from_bits(q.n, q.table_bits())


def bent_polynomial(n: int) -> QuadraticPolynomial:
    """x_1x_2 + x_3x_4 + ... + x_{n-1}x_n"""
    if n < 2 or n % 2:
        raise InputError(f"inner_product_bent requires even n >= 2, got {n}")
    quad = np.zeros((n, n), dtype=np.uint8)
    for i in range(0, n, 2):
        quad[i, i + 1] = 1
    return QuadraticPolynomial(n, quad, np.zeros(n, dtype=np.uint8), 0)


def inner_product_bent(n: int) -> BooleanFunction:
    """
    内积 bent 函数 (-1)^{x_1x_2 + ... + x_{n-1}x_n}

    Raises:
        InputError: n 为奇数
    """
    return from_quadratic(bent_polynomial(n))


def random_fn(n: int, seed: int) -> BooleanFunction:
    """均匀随机布尔函数（同一 (n, seed) 结果相同）"""
    if not 1 <= n <= config.max_exact_n:
        raise InputError(f"n must be in [1, {config.max_exact_n}], got {n}")
    rng = stream_generator(seed, Stream.RANDOM_FUNCTION, n)
    return BooleanFunction.from_bits(n, rng.integers(0, 2, size=1 << n, dtype=np.uint8))


def noisy(f: BooleanFunction, rate: float, seed: int) -> BooleanFunction:
    """
    以概率 rate 独立翻转每个点

    Raises:
        InputError: rate 不在 [0, 1]
    """
    if not 0.0 <= rate <= 1.0:
        raise InputError(f"noise rate must be in [0, 1], got {rate}")
    rng = stream_generator(seed, Stream.NOISE, f.n)
    flips = (rng.random(f.size) < rate).astype(np.uint8)
    return BooleanFunction.from_bits(f.n, f.bits ^ flips)


def random_quadratic(n: int, seed: int) -> QuadraticPolynomial:
    """均匀随机二次多项式"""
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    rng = stream_generator(seed, Stream.RANDOM_QUADRATIC, n)
    pairs = rng.integers(0, 2, size=n * (n - 1) // 2, dtype=np.uint8)
    lin = rng.integers(0, 2, size=n, dtype=np.uint8)
    const_bit = int(rng.integers(0, 2))
    return QuadraticPolynomial.from_pair_bits(n, pairs, lin, const_bit)


def parse_polynomial(expr: str, n: int) -> QuadraticPolynomial:
    """
    解析形如 x1*x2+x3+1 的表达式

    同一变量重复出现按 x_i² = x_i 约化；相同单项式出现两次相互抵消。

    Raises:
        InputError: 语法错误、变量越界或次数大于 2

    Example:
        >>> parse_polynomial("x1*x2+x3", 3).to_expression()
        'x1*x2+x3'
    """
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    text = expr.replace(" ", "")
    if not text:
        raise InputError("empty polynomial expression")
    quad = np.zeros((n, n), dtype=np.uint8)
    lin = np.zeros(n, dtype=np.uint8)
    const_bit = 0
    for term in text.split("+"):
        if not term:
            raise InputError(f"empty term in '{expr}'")
        variables: set[int] = set()
        constant = 1
        for factor in term.split("*"):
            if factor in ("0", "1"):
                constant &= int(factor)
                continue
            match = _VARIABLE.match(factor)
            if not match:
                raise InputError(f"cannot parse factor '{factor}' in '{expr}'")
            index = int(match.group(1))
            if not 1 <= index <= n:
                raise InputError(f"variable x{index} out of range for n={n}")
            variables.add(index - 1)
        if not constant:
            continue
        if len(variables) > 2:
            raise InputError(f"term '{term}' has degree {len(variables)}; only degree <= 2 is supported")
        if not variables:
            const_bit ^= 1
        elif len(variables) == 1:
            lin[variables.pop()] ^= 1
        else:
            i, j = sorted(variables)
            quad[i, j] ^= 1
    return QuadraticPolynomial(n, quad, lin, const_bit)


def affine_from_index(n: int, alpha: int, const_bit: int) -> QuadraticPolynomial:
    """仿射函数 (-1)^{⟨α,x⟩ + a} 的多项式表示"""
    return QuadraticPolynomial(n, np.zeros((n, n), dtype=np.uint8), int_to_bits(alpha, n), const_bit)
