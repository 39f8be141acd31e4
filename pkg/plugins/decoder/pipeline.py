"""
解码器插件 - 二次解码管线

导数谱 → 选择函数 → 线性映射拟合 → 对称化 → 二次见证:

    1. phi(y) = argmax_α |f̂_y(α)|，权重 f̂_y²(phi(y))
    2. 在高权重方向上拟合 D 使 phi(y) = Dy 尽量多地成立
       （随机张成子集 + 高斯消元，多次重启取最优；n 很小时穷举全部矩阵）
    3. 把 D 改造成对称零对角矩阵 B，在 U ∩ d^⊥ 上保持 Bx = Dx
    4. h = (-1)^{⟨x,Ax⟩}，A 为 B 的上三角一半；取 f·h 的最大傅里叶系数补上仿射部分

结果不差于最优仿射逼近：管线给出的相关度更低时退回 B = 0。

使用方式:
    >>> from plugins.decoder.pipeline import decode_quadratic
    >>> g, corr = decode_quadratic(noisy(from_quadratic(q), 0.1, seed=3))
"""

from typing import Optional, Union

import numpy as np

from plugins.common import (
    InputError,
    Stream,
    config,
    ensure_budget,
    get_trial_runner,
    logger,
    stream_generator,
)
from plugins.core import (
    BooleanFunction,
    QuadraticPolynomial,
    affine_distance,
    from_quadratic,
    iter_derivative_walsh,
)
from plugins.utils import gf2
from plugins.utils.bits import int_to_bits

from .models import (
    ChoiceFunction,
    DecodeResult,
    LinearFit,
    SymmetricZeroDiagMatrix,
    SymmetrizationStages,
    apply_matrix,
)


# ========== 选择函数 ==========

def choice_function(f: BooleanFunction) -> ChoiceFunction:
    """
    由全部导数谱构造选择函数

    Raises:
        ResourceBudgetError: 导数谱运算量超过 gowers_budget
    """
    phi = np.empty(f.size, dtype=np.int64)
    weight = np.empty(f.size, dtype=np.float64)
    for block, sums in iter_derivative_walsh(f):
        magnitude = np.abs(sums)
        best = magnitude.argmax(axis=1)
        top = magnitude[np.arange(block.size), best] / f.size
        phi[block] = best
        weight[block] = top * top
    return ChoiceFunction(f.n, phi, weight)


def default_threshold(cf: ChoiceFunction) -> float:
    """平均权重 × decoder_threshold_ratio"""
    return cf.mean_weight() * config.decoder_threshold_ratio


# ========== 线性映射拟合 ==========

def _independent_prefix(vectors: np.ndarray) -> list[int]:
    """按顺序贪心选出线性无关的向量，返回其位置"""
    pivots: dict[int, int] = {}
    chosen: list[int] = []
    for pos, value in enumerate(vectors):
        v = int(value)
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                pivots[top] = v
                chosen.append(pos)
                break
            v ^= pivots[top]
    return chosen


def _solve_map(n: int, vectors: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """
    求 D 使 D v_i = t_i

    v_i 线性无关；用单位向量补成基，补上的方向映到 0。
    基矩阵 Y 的行是 v_i，D = (Y⁻¹ Φ)ᵗ，Φ 的行是对应的像。
    """
    rows = np.array([int_to_bits(v, n) for v in vectors], dtype=np.uint8).reshape(-1, n)
    basis = gf2.extend_to_basis(rows, n)
    images = np.zeros((n, n), dtype=np.uint8)
    for i, t in enumerate(targets):
        images[i] = int_to_bits(t, n)
    return gf2.matmul(gf2.inverse(basis), images).T.copy()


def _best_shift(diff: np.ndarray, size: int, shift_search: bool) -> tuple[int, int]:
    """(agreement, z)：z 取出现次数最多者，并列取最小"""
    if not shift_search:
        return int((diff == 0).sum()), 0
    counts = np.bincount(diff, minlength=size)
    z = int(counts.argmax())
    return int(counts[z]), z


def _fit_restarts(cf: ChoiceFunction, support: np.ndarray, restarts: int, seed: int,
                  shift_search: bool) -> tuple[int, np.ndarray, int]:
    n = cf.n
    phi = cf.phi

    def run_restart(r: int) -> tuple[int, np.ndarray, int]:
        rng = stream_generator(seed, Stream.DECODER, r)
        order = rng.permutation(support)
        if shift_search:
            # 仿射拟合：以第一个方向为锚点，对差分解线性方程
            anchor = order[0]
            vectors = order[1:] ^ anchor
            targets = phi[order[1:]] ^ phi[anchor]
        else:
            vectors = order
            targets = phi[order]
        chosen = _independent_prefix(vectors)
        d = _solve_map(n, vectors[chosen], targets[chosen])
        diff = apply_matrix(d, support) ^ phi[support]
        agreement, z = _best_shift(diff, cf.size, shift_search)
        return agreement, d, z

    results = get_trial_runner().map(run_restart, range(restarts))
    best = results[0]
    for result in results[1:]:
        if result[0] > best[0]:
            best = result
    return best


def _fit_exhaustive(cf: ChoiceFunction, support: np.ndarray,
                    shift_search: bool) -> tuple[int, np.ndarray, int]:
    """
    穷举全部 2^{n²} 个矩阵

    矩阵编号 m 的第 c 列 D e_c = (m >> n·c) & (2^n − 1)；并列取编号最小者。
    """
    n = cf.n
    size = cf.size
    mask = size - 1
    total = 1 << (n * n)
    targets = cf.phi[support]
    width = support.size * (size if shift_search else 1)
    rows = max(1, config.chunk_elements // max(1, width))
    offsets = n * np.arange(n, dtype=np.int64)

    def run_chunk(start: int) -> tuple[int, int, int]:
        m = np.arange(start, min(total, start + rows), dtype=np.int64)
        cols = (m[:, None] >> offsets) & mask
        images = np.zeros((m.size, support.size), dtype=np.int64)
        for c in range(n):
            images ^= np.where((support >> c) & 1, cols[:, c:c + 1], 0)
        diff = images ^ targets
        if shift_search:
            counts = np.stack([(diff == z).sum(axis=1) for z in range(size)], axis=1)
            shifts = counts.argmax(axis=1)
            agree = counts[np.arange(m.size), shifts]
        else:
            shifts = np.zeros(m.size, dtype=np.int64)
            agree = (diff == 0).sum(axis=1)
        row = int(agree.argmax())
        return int(agree[row]), int(m[row]), int(shifts[row])

    results = get_trial_runner().map(run_chunk, range(0, total, rows))
    best_agree, best_index, best_shift = -1, 0, 0
    for agree, index, shift in results:
        if agree > best_agree:
            best_agree, best_index, best_shift = agree, index, shift

    d = np.zeros((n, n), dtype=np.uint8)
    for c in range(n):
        d[:, c] = int_to_bits((best_index >> (n * c)) & mask, n)
    return best_agree, d, best_shift


def fit_linear_map(cf: ChoiceFunction, threshold: Optional[float] = None,
                   restarts: Optional[int] = None, seed: int = 0,
                   shift_search: bool = False, exhaustive: Optional[bool] = None) -> LinearFit:
    """
    在支撑集 {y : weight(y) ≥ threshold} 上拟合 phi(y) = Dy (+ z)

    Args:
        cf: 选择函数
        threshold: 权重阈值，默认 default_threshold(cf)
        restarts: 随机重启次数，默认 config.decoder_restarts
        seed: 随机种子
        shift_search: 是否同时搜索平移 z
        exhaustive: 是否穷举全部矩阵，默认 n ≤ decoder_oracle_max_n 时穷举

    Raises:
        InputError: 支撑集为空、restarts < 1 或 seed < 0
        ResourceBudgetError: 强制穷举但 n 超过 decoder_oracle_max_n
    """
    threshold = default_threshold(cf) if threshold is None else float(threshold)
    restarts = config.decoder_restarts if restarts is None else restarts
    if restarts < 1:
        raise InputError(f"restarts must be >= 1, got {restarts}")
    if seed < 0:
        raise InputError(f"seed must be non-negative, got {seed}")
    support = cf.support(threshold)
    if support.size == 0:
        raise InputError(f"no direction has weight >= threshold {threshold}")

    if exhaustive is None:
        exhaustive = cf.n <= config.decoder_oracle_max_n
    elif exhaustive:
        ensure_budget("decoder_oracle_max_n", cf.n, config.decoder_oracle_max_n,
                      "use randomized restarts")

    if exhaustive:
        agreement, d, z = _fit_exhaustive(cf, support, shift_search)
    else:
        agreement, d, z = _fit_restarts(cf, support, restarts, seed, shift_search)
    logger.debug(f"线性映射拟合: n={cf.n}, 支撑集 {support.size}, 一致 {agreement}, "
                 f"{'穷举' if exhaustive else f'{restarts} 次重启'}")
    return LinearFit(
        matrix=d,
        shift=z,
        agreement=agreement,
        support_size=int(support.size),
        threshold=threshold,
        exhaustive=exhaustive,
        restarts=0 if exhaustive else restarts,
    )


# ========== 对称化 ==========

def symmetrize_stages(d) -> SymmetrizationStages:
    """
    两阶段对称化

    第一阶段: U = ker(D + Dᵗ)。把 U 的基 u_j 用单位向量补成基 W，
    在 W 上定义对称双线性型 G(w_a, u_b) = ⟨w_a, D u_b⟩，补集之间取 0，
    S = W⁻¹ G W⁻ᵀ。于是 S 对称且在 U 上 Sx = Dx。

    第二阶段: d = diag(S)，满足 ⟨x, Sx⟩ = ⟨x, d⟩。d = 0 时 B = S；
    否则取 d^⊥ 的基 k_i 和第一个不与 d 正交的单位向量 w，令
    Γ(k_i, k_j) = ⟨k_i, S k_j⟩，Γ(w, k_j) = ⟨w, S k_j⟩，Γ(w, w) = 0，
    B = V⁻¹ Γ V⁻ᵀ。于是 B 对称零对角且在 d^⊥ 上 Bx = Sx。

    Raises:
        InputError: D 不是方阵
    """
    d = gf2.as_matrix(d)
    n = d.shape[0]
    if d.shape[1] != n:
        raise InputError(f"matrix is not square: {d.shape[0]}x{d.shape[1]}")

    u = gf2.nullspace(d ^ d.T)
    k = u.shape[0]
    w = gf2.extend_to_basis(u, n)
    g = np.zeros((n, n), dtype=np.uint8)
    if k:
        cross = gf2.matmul(gf2.matmul(w, d), u.T)
        g[:, :k] = cross
        g[:k, k:] = cross[k:, :].T
    w_inv = gf2.inverse(w)
    s = gf2.matmul(gf2.matmul(w_inv, g), w_inv.T)

    diagonal = np.diag(s).copy()
    if not diagonal.any():
        b = s.copy()
    else:
        kernel = gf2.nullspace(diagonal.reshape(1, n))
        outside = np.zeros(n, dtype=np.uint8)
        outside[int(np.flatnonzero(diagonal)[0])] = 1
        v = np.vstack([kernel, outside])
        gamma = np.zeros((n, n), dtype=np.uint8)
        gamma[:, :n - 1] = gf2.matmul(gf2.matmul(v, s), kernel.T)
        gamma[:n - 1, n - 1] = gamma[n - 1, :n - 1]
        v_inv = gf2.inverse(v)
        b = gf2.matmul(gf2.matmul(v_inv, gamma), v_inv.T)

    kept = gf2.nullspace(np.vstack([d ^ d.T, diagonal.reshape(1, n)]))
    return SymmetrizationStages(
        source=d,
        symmetric=s,
        result=SymmetricZeroDiagMatrix(b),
        agreement_basis=u,
        diagonal=diagonal,
        kept_basis=kept,
    )


def symmetrize(d) -> SymmetricZeroDiagMatrix:
    """
    把任意 D 改造成对称零对角矩阵 B

    Example:
        >>> symmetrize(np.eye(3, dtype=np.uint8)).entries.diagonal()
        array([0, 0, 0], dtype=uint8)
    """
    return symmetrize_stages(d).result


# ========== 二次见证 ==========

def quadratic_from_b(f: BooleanFunction,
                     b: Union[SymmetricZeroDiagMatrix, np.ndarray]) -> QuadraticPolynomial:
    """
    由 B 构造二次见证 g = h·(-1)^{⟨x,α⟩+a}，h = (-1)^{⟨x,Ax⟩}

    α 取 |(f·h)^(α)| 最大者（并列取最小），a 与该系数符号一致，
    于是 ⟨f, g⟩ = |(f·h)^(α)|。

    Raises:
        InputError: B 的维数与 f 不同
    """
    if not isinstance(b, SymmetricZeroDiagMatrix):
        b = SymmetricZeroDiagMatrix(b)
    if b.n != f.n:
        raise InputError(f"matrix is {b.n}x{b.n} but the function has n={f.n}")
    h = b.quadratic_part()
    affine = affine_distance(f * from_quadratic(h))
    return QuadraticPolynomial(f.n, h.quad, int_to_bits(affine.alpha, f.n), affine.const_bit)


def decode_quadratic(f: BooleanFunction, threshold: Optional[float] = None,
                     restarts: Optional[int] = None, seed: int = 0,
                     shift_search: bool = False) -> DecodeResult:
    """
    完整解码管线

    Args:
        f: 布尔函数
        threshold: 选择函数权重阈值（默认平均权重 × decoder_threshold_ratio）
        restarts: 拟合重启次数
        seed: 随机种子
        shift_search: 拟合时是否搜索平移

    Returns:
        DecodeResult（可解包为 (polynomial, correlation)）

    Raises:
        ResourceBudgetError: 导数谱运算量超过 gowers_budget
    """
    cf = choice_function(f)
    fit = fit_linear_map(cf, threshold, restarts, seed, shift_search)
    form = symmetrize(fit.matrix)
    g = quadratic_from_b(f, form)
    correlation = f.correlation(from_quadratic(g))

    affine = affine_distance(f)
    used_fallback = affine.correlation > correlation
    if used_fallback:
        logger.warning(f"解码结果相关度 {correlation:.6f} 低于最优仿射 {affine.correlation:.6f}，"
                       f"退回仿射逼近")
        g = affine.polynomial()
        correlation = affine.correlation
        form = SymmetricZeroDiagMatrix.zero(f.n)
    else:
        logger.debug(f"二次解码: n={f.n}, 相关度 {correlation:.6f}")
    return DecodeResult(
        polynomial=g,
        correlation=correlation,
        form=form,
        fit=fit,
        affine_correlation=affine.correlation,
        used_fallback=used_fallback,
    )
