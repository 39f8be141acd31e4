"""
GF(2) 线性代数工具模块

基于 numpy uint8 数组的高斯消元：行最简形、秩、求逆、解方程、
零空间、行空间判定以及基扩充。矩阵元素取 {0, 1}。

使用方式:
    >>> from plugins.utils import gf2
    >>> gf2.rank([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    2
    >>> gf2.in_row_space([1, 0, 1], [[1, 1, 0], [0, 1, 1]])
    True
"""

from typing import Optional

import numpy as np

from ..common.base import InputError


def as_matrix(m) -> np.ndarray:
    """转换为二维 uint8 0/1 矩阵（复制）"""
    arr = np.array(m, dtype=np.int64) & 1
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise InputError(f"expected a 2-D bit matrix, got {arr.ndim} dimensions")
    return arr.astype(np.uint8)


def rref(m) -> tuple[np.ndarray, list[int]]:
    """
    行最简形（reduced row echelon form）

    Args:
        m: t×T 0/1 矩阵

    Returns:
        (R, pivots): R 为行最简形（零行在底部），pivots 为主元列
    """
    r = as_matrix(m)
    rows, cols = r.shape
    pivots: list[int] = []
    top = 0
    for col in range(cols):
        if top >= rows:
            break
        hits = np.flatnonzero(r[top:, col])
        if hits.size == 0:
            continue
        p = top + int(hits[0])
        if p != top:
            r[[top, p]] = r[[p, top]]
        others = np.flatnonzero(r[:, col])
        others = others[others != top]
        if others.size:
            r[others] ^= r[top]
        pivots.append(col)
        top += 1
    return r, pivots


def rank(m) -> int:
    """GF(2) 秩"""
    return len(rref(m)[1])


def row_basis(m) -> np.ndarray:
    """行空间的规范基（行最简形的非零行）"""
    r, pivots = rref(m)
    return r[:len(pivots)]


def same_row_space(a, b) -> bool:
    """两个矩阵的行空间是否相等"""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[1]:
        return False
    ra, rb = row_basis(a), row_basis(b)
    return ra.shape == rb.shape and bool(np.array_equal(ra, rb))


def in_row_space(v, m) -> bool:
    """v 是否在 m 的行空间中"""
    basis = row_basis(m)
    v = np.asarray(v, dtype=np.uint8).reshape(-1) & 1
    return rank(np.vstack([basis, v])) == basis.shape[0]


def matmul(a, b) -> np.ndarray:
    """GF(2) 矩阵乘法"""
    prod = np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)
    return (prod & 1).astype(np.uint8)


def solve(a, b) -> Optional[np.ndarray]:
    """
    求解 a x = b

    Args:
        a: t×T 矩阵
        b: 长度 t 的向量

    Returns:
        一个解（自由变量取 0），无解返回 None
    """
    a = as_matrix(a)
    b = np.asarray(b, dtype=np.uint8).reshape(-1, 1) & 1
    aug, pivots = rref(np.hstack([a, b]))
    cols = a.shape[1]
    if pivots and pivots[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.uint8)
    for row, col in enumerate(pivots):
        x[col] = aug[row, cols]
    return x


def inverse(m) -> np.ndarray:
    """
    方阵求逆

    Raises:
        InputError: 非方阵或不可逆
    """
    m = as_matrix(m)
    size = m.shape[0]
    if m.shape[1] != size:
        raise InputError(f"matrix is not square: {m.shape[0]}x{m.shape[1]}")
    aug, pivots = rref(np.hstack([m, np.eye(size, dtype=np.uint8)]))
    if pivots[:size] != list(range(size)):
        raise InputError("matrix is singular over GF(2)")
    return aug[:, size:].copy()


def nullspace(m) -> np.ndarray:
    """
    零空间 {x : m x = 0} 的基

    Returns:
        每行一个基向量，形状 (T − rank, T)
    """
    r, pivots = rref(m)
    cols = r.shape[1]
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, col in enumerate(pivots):
            basis[i, col] = r[row, f]
    return basis


def extend_to_basis(vectors, n: int) -> np.ndarray:
    """
    用单位向量 e_1, e_2, ... 按顺序把线性无关组扩充为 F2^n 的基

    Args:
        vectors: k×n 线性无关行向量
        n: 维数

    Returns:
        n×n 矩阵，前 k 行为输入向量

    Raises:
        InputError: 输入线性相关
    """
    rows = as_matrix(vectors) if len(vectors) else np.zeros((0, n), dtype=np.uint8)
    if rank(rows) != rows.shape[0]:
        raise InputError("vectors are linearly dependent")
    basis = [row for row in rows]
    current = rows.shape[0]
    for i in range(n):
        if current == n:
            break
        unit = np.zeros(n, dtype=np.uint8)
        unit[i] = 1
        if rank(np.vstack(basis + [unit])) > current:
            basis.append(unit)
            current += 1
    return np.array(basis, dtype=np.uint8).reshape(n, n)


def span_elements(m) -> np.ndarray:
    """
    枚举行空间的全部元素

    Returns:
        形状 (2^r, T) 的矩阵，第 s 行为基向量按 s 的二进制位组合
    """
    basis = row_basis(m)
    r = basis.shape[0]
    sel = ((np.arange(1 << r)[:, None] >> np.arange(r)) & 1).astype(np.int64)
    return ((sel @ basis.astype(np.int64)) & 1).astype(np.uint8)
