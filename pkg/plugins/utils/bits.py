"""
位运算工具模块

点的编号约定：变量 x_1 是编号的最低位。
所有函数对 numpy 整数数组逐元素工作。

使用方式:
    >>> from plugins.utils.bits import popcount, parity, point_bits
    >>> parity(np.array([0b101, 0b111]))
    array([0, 1], dtype=uint8)
"""

import numpy as np

# 0..255 的汉明重量查找表
_BYTE_WEIGHT = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)


def popcount(values) -> np.ndarray:
    """
    逐元素汉明重量

    Args:
        values: 非负整数或整数数组（不超过 64 位）

    Returns:
        与输入形状相同的 int64 数组
    """
    arr = np.ascontiguousarray(np.asarray(values, dtype=np.uint64))
    as_bytes = arr.reshape(arr.shape + (1,)).view(np.uint8)
    return _BYTE_WEIGHT[as_bytes].sum(axis=-1, dtype=np.int64)


def parity(values) -> np.ndarray:
    """逐元素奇偶校验位（uint8）"""
    return (popcount(values) & 1).astype(np.uint8)


def dot_parity(a, x) -> np.ndarray:
    """F2 内积 ⟨a, x⟩，a 与 x 为点编号"""
    return parity(np.bitwise_and(a, x))


def point_bits(n: int) -> np.ndarray:
    """
    所有点的坐标矩阵

    Returns:
        形状 (2^n, n) 的 uint8 矩阵，第 i 行第 j 列为点 i 的 x_{j+1}

    Example:
        >>> point_bits(2)
        array([[0, 0], [1, 0], [0, 1], [1, 1]], dtype=uint8)
    """
    idx = np.arange(1 << n, dtype=np.int64)
    return ((idx[:, None] >> np.arange(n)) & 1).astype(np.uint8)


def int_to_bits(value: int, n: int) -> np.ndarray:
    """点编号 -> 长度 n 的 0/1 向量（x_1 在前）"""
    return ((int(value) >> np.arange(n)) & 1).astype(np.uint8)


def bits_to_int(bits) -> int:
    """0/1 向量 -> 点编号（第一个分量为最低位）"""
    out = 0
    for i, b in enumerate(np.asarray(bits).reshape(-1)):
        if int(b) & 1:
            out |= 1 << i
    return out


def rows_to_ints(matrix) -> np.ndarray:
    """矩阵每一行 -> 点编号（int64）"""
    m = np.asarray(matrix, dtype=np.int64) & 1
    if m.shape[-1] == 0:
        return np.zeros(m.shape[:-1], dtype=np.int64)
    return (m << np.arange(m.shape[-1], dtype=np.int64)).sum(axis=-1)


def xor_reduce(points, selector) -> np.ndarray:
    """
    按选择位异或一组点

    Args:
        points: 长度 k 的点编号数组
        selector: 整数数组，第 i 位为 1 表示取第 i 个点

    Returns:
        与 selector 形状相同的点编号数组
    """
    points = np.asarray(points, dtype=np.int64)
    selector = np.asarray(selector, dtype=np.int64)
    out = np.zeros(selector.shape, dtype=np.int64)
    for i, p in enumerate(points):
        out ^= np.where((selector >> i) & 1, p, 0)
    return out
