"""
广义平均插件 - 行空间的极小向量与超平面

极小向量: 行空间中支撑集在包含序下极小的非零向量。
v 极小当且仅当 supp(v) 的补集是 A 的超平面，即补集列的秩为 rank(A) − 1。

使用方式:
    >>> from plugins.genavg.matroid import row_space_minimal_vectors
    >>> row_space_minimal_vectors(BinaryMatrix.from_rows(["101", "110"]))
"""

import numpy as np

from plugins.common import InputError, config, ensure_budget
from plugins.utils import gf2

from .models import BinaryMatrix


def _check_rows(a: BinaryMatrix) -> None:
    ensure_budget("matroid_max_rows", a.t, config.matroid_max_rows,
                  "the row space is enumerated exhaustively")


def _hyperplane_complement(a: BinaryMatrix, vector: np.ndarray) -> bool:
    outside = a.entries[:, vector == 0]
    rank = gf2.rank(outside) if outside.size else 0
    return rank == a.rank - 1


def is_minimal_vector(a: BinaryMatrix, vector) -> bool:
    """
    vector 是否为 A 行空间中的极小非零向量

    Raises:
        InputError: 长度与列数不符
    """
    v = np.asarray(vector, dtype=np.uint8).reshape(-1) & 1
    if v.size != a.T:
        raise InputError(f"vector has {v.size} entries, matrix has {a.T} columns")
    if not v.any() or not gf2.in_row_space(v, a.entries):
        return False
    return _hyperplane_complement(a, v)


def row_space_minimal_vectors(a: BinaryMatrix) -> np.ndarray:
    """
    行空间的全部极小非零向量

    Returns:
        每行一个向量，按行空间枚举顺序

    Raises:
        ResourceBudgetError: t 超过 matroid_max_rows
    """
    _check_rows(a)
    elements = gf2.span_elements(a.entries)[1:]
    keep = [i for i, v in enumerate(elements) if _hyperplane_complement(a, v)]
    return elements[keep]


def row_space_hyperplanes(a: BinaryMatrix) -> list[tuple[int, ...]]:
    """A 的全部超平面（列号集合），即极小向量支撑集的补集"""
    cols = set(range(a.T))
    out = []
    for v in row_space_minimal_vectors(a):
        support = set(int(j) for j in np.flatnonzero(v))
        out.append(tuple(sorted(cols - support)))
    return out


def smaller_support_vector(a: BinaryMatrix, vector: np.ndarray):
    """
    行空间中支撑集严格包含于 supp(vector) 的非零向量，取支撑最小者

    Returns:
        向量，或 None（vector 已极小）
    """
    _check_rows(a)
    v = np.asarray(vector, dtype=np.uint8)
    elements = gf2.span_elements(a.entries)
    weights = elements.sum(axis=1, dtype=np.int64)
    inside = ~(elements & (1 - v)).any(axis=1)
    mask = inside & (weights > 0) & (weights < int(v.sum()))
    hits = np.flatnonzero(mask)
    if hits.size == 0:
        return None
    best = hits[np.argmin(weights[hits])]
    return elements[best].copy()
