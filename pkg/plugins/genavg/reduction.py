"""
广义平均插件 - 化归到 A_k 的矩阵变换链

操作:
    - ak_matrix(k): (k+1)×2^k 矩阵，第 j 列上 k 位为 j 的二进制（第 1 行为最高位），末行全 1
    - simplify(A): 成对删除相同列、删除零行（对布尔函数保持 E_A）
    - reduction_step(A, v): 极小向量 v 的加倍变换 A' = [[B|B],[1..1|0..0]]，E_A ≤ √E_{A'}
    - reduce_to_uk(A): 反复"首行换成极小向量 → 加倍 → 去相关行"，直到与某个 A_k 等价

链中 row_reduce 与 exchange 都是左乘可逆矩阵，不改变平均值；
每个 proposition 步把界开一次平方根。

使用方式:
    >>> cert = reduce_to_uk(BinaryMatrix.from_rows(["101", "011"]))
    >>> cert.terminal_k, cert.exponent
    (2, 1)
"""

from typing import Optional

import numpy as np

from plugins.common import InputError, ResourceBudgetError, config, logger
from plugins.utils import gf2

from .matroid import is_minimal_vector, smaller_support_vector
from .models import (
    STEP_EXCHANGE,
    STEP_PROPOSITION,
    STEP_ROW_REDUCE,
    BinaryMatrix,
    ReductionCertificate,
    ReductionStep,
)


def ak_matrix(k: int) -> BinaryMatrix:
    """
    A_k: E_{A_k}(f) = ‖f‖_{U_k}^{2^k}

    Example:
        >>> ak_matrix(1).rows_text()
        ['01', '11']
    """
    if not 1 <= k <= config.matroid_max_rows:
        raise InputError(f"k must be in [1, {config.matroid_max_rows}], got {k}")
    cols = np.arange(1 << k, dtype=np.int64)
    top = (cols[None, :] >> np.arange(k - 1, -1, -1)[:, None]) & 1
    return BinaryMatrix(np.vstack([top, np.ones((1, 1 << k), dtype=np.int64)]))


def simplify(a: BinaryMatrix) -> BinaryMatrix:
    """
    成对删除相同列并删除零行

    某一列值出现奇数次时保留首次出现的那一列。
    """
    counts: dict[bytes, list[int]] = {}
    for j in range(a.T):
        counts.setdefault(a.entries[:, j].tobytes(), []).append(j)
    keep = sorted(positions[0] for positions in counts.values() if len(positions) % 2)
    reduced = a.entries[:, keep]
    nonzero = reduced.any(axis=1) if reduced.shape[1] else np.zeros(a.t, dtype=bool)
    return BinaryMatrix(reduced[nonzero])


def row_equivalent(a: BinaryMatrix, b: BinaryMatrix) -> bool:
    """行空间是否相等（规范行最简形比较）"""
    return a.T == b.T and gf2.same_row_space(a.entries, b.entries)


def apply_row_transform(m, a: BinaryMatrix) -> BinaryMatrix:
    """
    左乘可逆矩阵 M，E_{MA}(f) = E_A(f)

    Raises:
        InputError: M 不是 t×t 可逆矩阵
    """
    m = gf2.as_matrix(m)
    if m.shape != (a.t, a.t):
        raise InputError(f"transform must be {a.t}x{a.t}, got {m.shape[0]}x{m.shape[1]}")
    if gf2.rank(m) != a.t:
        raise InputError("transform is singular over GF(2)")
    return BinaryMatrix(gf2.matmul(m, a.entries))


def is_ak_equivalent(a: BinaryMatrix) -> Optional[int]:
    """
    A 是否在左乘可逆矩阵与列置换下等于某个 A_k（k ≥ 1）

    条件: 行满秩 t = k+1，列数 2^k，列两两不同，全 1 向量在行空间中。

    Returns:
        k，或 None
    """
    t = a.t
    if t < 2 or a.T != 1 << (t - 1) or not a.is_full_rank():
        return None
    if a.duplicate_columns():
        return None
    if not gf2.in_row_space(np.ones(a.T, dtype=np.uint8), a.entries):
        return None
    return t - 1


def reduction_step(a: BinaryMatrix, vector) -> BinaryMatrix:
    """
    加倍变换: 只保留 supp(v) 中的列得 B，A' = [[B|B],[1..1|0..0]]

    Raises:
        InputError: A 非行满秩，或 v 不是行空间中的极小向量
    """
    if not a.is_full_rank():
        raise InputError(f"matrix must have full row rank, rank {a.rank} < {a.t}")
    v = np.asarray(vector, dtype=np.uint8).reshape(-1) & 1
    if not is_minimal_vector(a, v):
        raise InputError("vector is not a minimal vector of the row space")
    b = a.entries[:, v == 1]
    width = b.shape[1]
    bottom = np.concatenate([np.ones(width, dtype=np.uint8), np.zeros(width, dtype=np.uint8)])
    return BinaryMatrix(np.vstack([np.hstack([b, b]), bottom]))


def drop_dependent_rows(entries: np.ndarray) -> np.ndarray:
    """自下而上保留线性无关的行（靠后的行优先），保持原有顺序"""
    kept: list[int] = []
    basis = np.zeros((0, entries.shape[1]), dtype=np.uint8)
    for i in range(entries.shape[0] - 1, -1, -1):
        candidate = np.vstack([basis, entries[i]])
        if gf2.rank(candidate) > basis.shape[0]:
            basis = candidate
            kept.append(i)
    return entries[sorted(kept)]


def _exchange_vector(a: BinaryMatrix) -> np.ndarray:
    """从首行出发，沿更小支撑下降到一个极小向量，且保持行空间"""
    current = a.entries[0].copy()
    others = a.entries[1:]
    while True:
        w = smaller_support_vector(a, current)
        if w is None:
            return current
        if others.shape[0] and gf2.in_row_space(w, others):
            current = current ^ w
        else:
            current = w


def _validate_input(a: BinaryMatrix, k: Optional[int]) -> int:
    if a.t == 0 or a.T == 0:
        raise InputError("matrix must have at least one row and one column")
    zero = a.zero_columns()
    if zero:
        raise InputError(f"matrix has zero columns {zero}; they contribute a constant f(0) factor")
    duplicates = a.duplicate_columns()
    if duplicates:
        raise InputError(f"matrix has duplicate columns {duplicates}; cancel them with simplify first")
    weight = a.max_column_weight()
    if k is None:
        return weight
    if weight > k:
        raise InputError(f"column weight {weight} exceeds k={k}")
    return k


def reduce_to_uk(a: BinaryMatrix, k: Optional[int] = None) -> ReductionCertificate:
    """
    把 A 化归到某个 A_k，返回可重放的证书

    每轮:
        1. 首行沿更小支撑下降到极小向量 v（exchange）
        2. 加倍变换（proposition），新行 (1..1|0..0)
        3. 行重排为 [其余行, 新行, 全 1 行] 并自下而上去掉相关行（row_reduce）

    Args:
        a: 列两两不同、非零的矩阵
        k: 列重上界，默认取最大列重；k > 3 时按同样流程尽力而为

    Raises:
        InputError: 存在零列或重复列，或列重超过 k
    """
    k = _validate_input(a, k)
    if k > 3:
        logger.info(f"reduce_to_uk: column weight bound k={k} > 3, best effort")
    cert = ReductionCertificate(source=a)
    current = a

    full = BinaryMatrix(drop_dependent_rows(a.entries))
    if full != current:
        cert.steps.append(ReductionStep(STEP_ROW_REDUCE, current, full))
        current = full

    max_rounds = a.T + a.t + 1
    for _ in range(max_rounds):
        terminal = is_ak_equivalent(current)
        if terminal is not None:
            cert.terminal_k = terminal
            cert.completed = True
            logger.debug(f"reduce_to_uk: reached A{terminal} after {cert.exponent} doubling steps")
            return cert
        if current.t > config.matroid_max_rows:
            cert.reason = f"{current.t} rows exceed matroid_max_rows={config.matroid_max_rows}"
            break

        try:
            v = _exchange_vector(current)
        except ResourceBudgetError as e:
            cert.reason = str(e)
            break
        if not np.array_equal(v, current.entries[0]):
            exchanged = current.entries.copy()
            exchanged[0] = v
            after = BinaryMatrix(exchanged)
            cert.steps.append(ReductionStep(STEP_EXCHANGE, current, after, v))
            current = after

        doubled = reduction_step(current, v)
        cert.steps.append(ReductionStep(STEP_PROPOSITION, current, doubled, v))
        cert.exponent += 1

        rows = doubled.entries
        ordered = np.vstack([rows[1:], rows[:1]])
        reduced = BinaryMatrix(drop_dependent_rows(ordered))
        cert.steps.append(ReductionStep(STEP_ROW_REDUCE, doubled, reduced))
        current = reduced
    else:
        cert.reason = f"no A_k reached within {max_rounds} rounds"

    logger.warning(f"reduce_to_uk stalled: {cert.reason}")
    return cert


def verify_certificate(a: BinaryMatrix, cert: ReductionCertificate) -> bool:
    """
    逐步重放证书

    检查: 链首尾相接；row_reduce 保持行空间且输出行满秩；
    exchange 只改首行且保持行空间；proposition 可由 reduction_step 复现；
    终止矩阵与 A_{terminal_k} 等价；exponent 等于 proposition 步数。
    """
    if cert.source != a:
        return False
    current = a
    doublings = 0
    for step in cert.steps:
        if step.before != current:
            return False
        before, after = step.before, step.after
        if step.kind == STEP_ROW_REDUCE:
            if not (row_equivalent(before, after) and after.is_full_rank()):
                return False
        elif step.kind == STEP_EXCHANGE:
            if step.vector is None or before.t != after.t:
                return False
            if not np.array_equal(after.entries[0], step.vector):
                return False
            if not np.array_equal(before.entries[1:], after.entries[1:]):
                return False
            if not row_equivalent(before, after):
                return False
        elif step.kind == STEP_PROPOSITION:
            if step.vector is None:
                return False
            try:
                if reduction_step(before, step.vector) != after:
                    return False
            except InputError:
                return False
            doublings += 1
        else:
            return False
        current = after
    if doublings != cert.exponent:
        return False
    if cert.completed:
        return is_ak_equivalent(current) == cert.terminal_k
    return True
