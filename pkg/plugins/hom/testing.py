"""
同态插件 - BLR 一致率、同态穷举与平移修正

同态 ψ : G → Z_p^m 由生成元的像 ψ(e_i) 决定；Z_p^m 的指数为 p，
任意像都满足阶的整除条件，故 |Hom(G, H)| = |H|^{rank G}。
枚举顺序为生成元像编号的字典序（第一个生成元变化最慢），
并列时取先出现者。

使用方式:
    >>> phi = GroupMap.from_file("phi.map", G, H)
    >>> blr_agreement(phi)
    >>> psi, agreement = best_homomorphism(phi)
    >>> correction = correct_to_homomorphism(phi)
"""

from itertools import product
from typing import Iterator, Optional

import numpy as np

from plugins.common import (
    InputError,
    Stream,
    config,
    ensure_budget,
    get_trial_runner,
    logger,
)
from plugins.testers import TestReport

from .models import FiniteAbelianPGroup, GroupMap, ShiftCorrection


# ========== BLR 一致率 ==========

def blr_agreement(phi: GroupMap) -> float:
    """
    精确的 Pr_{x,y}[φ(x) + φ(y) = φ(x+y)]

    Raises:
        ResourceBudgetError: |G|² 超过 hom_pair_budget
    """
    g, h = phi.domain, phi.codomain
    size = g.order
    ensure_budget("hom_pair_budget", size * size, config.hom_pair_budget,
                  "use the sampled variant (hom agree --estimate)")
    idx = np.arange(size, dtype=np.int64)
    rows = max(1, config.chunk_elements // (size * g.rank))
    table = phi.table

    def run_chunk(start: int) -> int:
        xs = idx[start:start + rows, None]
        sums = g.add(xs, idx[None, :])
        return int((h.add(table[xs], table[None, :]) == table[sums]).sum())

    hits = sum(get_trial_runner().map(run_chunk, range(0, size, rows)))
    return hits / (size * size)


def blr_agreement_estimate(phi: GroupMap, trials: int, seed: int) -> TestReport:
    """
    抽样估计 BLR 一致率

    Raises:
        InputError: trials < 1 或 seed < 0
    """
    g, h = phi.domain, phi.codomain
    table = phi.table

    def kernel(rng: np.random.Generator, count: int) -> int:
        x = rng.integers(0, g.order, size=count, dtype=np.int64)
        y = rng.integers(0, g.order, size=count, dtype=np.int64)
        return int((h.add(table[x], table[y]) == table[g.add(x, y)]).sum())

    accepts = get_trial_runner().run_trials(seed, trials, kernel, stream=Stream.HOM)
    return TestReport.from_counts("hom-blr", trials, accepts, seed, queries_per_trial=3)


# ========== 同态 ==========

def is_homomorphism(phi: GroupMap) -> bool:
    """φ 是否等于由其生成元像决定的同态"""
    psi = GroupMap.from_images(phi.domain, phi.codomain, phi.generator_images())
    return bool(np.array_equal(psi.table, phi.table))


def homomorphism_count(g: FiniteAbelianPGroup, h: FiniteAbelianPGroup) -> int:
    return h.order ** g.rank


def _check_enum_budget(g: FiniteAbelianPGroup, h: FiniteAbelianPGroup) -> int:
    count = homomorphism_count(g, h)
    ensure_budget("hom_enum_budget", count, config.hom_enum_budget,
                  "use smaller groups")
    return count


def enumerate_homomorphisms(g: FiniteAbelianPGroup, h: FiniteAbelianPGroup) -> Iterator[GroupMap]:
    """
    按字典序产出全部同态 G → H

    Raises:
        InputError: H 不是 Z_p 的幂或素数不一致
        ResourceBudgetError: 同态个数超过 hom_enum_budget
    """
    _check_enum_budget(g, h)
    for images in product(range(h.order), repeat=g.rank):
        yield GroupMap.from_images(g, h, images)


def _scan_homomorphisms(phi: GroupMap, with_shift: bool) -> tuple[int, int, int]:
    """
    批量扫描全部同态

    Returns:
        (最优同态编码, 最优平移 h 的编号, 一致的元素数)
    """
    g, h = phi.domain, phi.codomain
    count = _check_enum_budget(g, h)
    p = g.p
    points = g.elements() % p
    target = h.digits(phi.table)
    place = h.order ** np.arange(g.rank - 1, -1, -1, dtype=np.int64)
    rows = max(1, config.chunk_elements // (g.order * h.rank))

    def run_chunk(start: int) -> tuple[int, int, int]:
        codes = np.arange(start, min(count, start + rows), dtype=np.int64)
        images = h.digits((codes[:, None] // place) % h.order)
        values = np.einsum("xi,bij->bxj", points, images) % p
        if with_shift:
            diff = h.indices(target[None, :, :] - values)
            offset = np.arange(codes.size, dtype=np.int64)[:, None] * h.order
            counts = np.bincount((diff + offset).ravel(),
                                 minlength=codes.size * h.order).reshape(codes.size, h.order)
            shifts = counts.argmax(axis=1)
            hits = counts[np.arange(codes.size), shifts]
        else:
            shifts = np.zeros(codes.size, dtype=np.int64)
            hits = (values == target[None, :, :]).all(axis=2).sum(axis=1)
        row = int(hits.argmax())
        return int(codes[row]), int(shifts[row]), int(hits[row])

    results = get_trial_runner().map(run_chunk, range(0, count, rows))
    best = results[0]
    for result in results[1:]:
        if result[2] > best[2]:
            best = result
    return best


def _decode_images(code: int, g: FiniteAbelianPGroup, h: FiniteAbelianPGroup) -> list[int]:
    return [(code // h.order ** (g.rank - 1 - i)) % h.order for i in range(g.rank)]


def best_homomorphism(phi: GroupMap) -> tuple[GroupMap, float]:
    """
    与 φ 一致率最高的同态

    Raises:
        ResourceBudgetError: 同态个数超过 hom_enum_budget
    """
    g, h = phi.domain, phi.codomain
    code, _, hits = _scan_homomorphisms(phi, with_shift=False)
    psi = GroupMap.from_images(g, h, _decode_images(code, g, h))
    return psi, hits / g.order


def best_affine_map(phi: GroupMap) -> tuple[GroupMap, int, float]:
    """
    最大化 Pr_x[φ(x) = ψ(x) + h] 的 (ψ, h)

    Returns:
        (ψ, h 的编号, 一致率)
    """
    g, h = phi.domain, phi.codomain
    code, shift, hits = _scan_homomorphisms(phi, with_shift=True)
    psi = GroupMap.from_images(g, h, _decode_images(code, g, h))
    return psi, shift, hits / g.order


# ========== 平移修正 ==========

def shift_correction(phi: GroupMap, psi: GroupMap, h) -> ShiftCorrection:
    """
    由近似仿射 φ ≈ ψ + h 构造与 φ 一致的同态 ψ′

    E = {x : φ(x) = ψ(x) + h}。在所有坐标 i 和 Z_{p^{k_i}} 的生成元 g
    （与 p 互素的元素）中选出使 E′ = {x ∈ E : x_i = g} 最大者，
    令 ψ′(e_j) = ψ(e_j)（j ≠ i），ψ′(e_i) = ψ(e_i) + g⁻¹h（g⁻¹ 为模 p 的逆），
    则 ψ′(g·e_i) = ψ(g·e_i) + h，且 ψ′ 在 E′ 上与 φ 一致。

    Args:
        phi: 映射 φ
        psi: 同态 ψ
        h: 值域元素（编号或分量元组）

    Raises:
        InputError: ψ 不是同态、群不一致或 E 为空
    """
    phi._check_compatible(psi)
    if not is_homomorphism(psi):
        raise InputError("psi is not a homomorphism")
    g_group, h_group = phi.domain, phi.codomain
    h_index = h_group.index(h) if isinstance(h, (tuple, list)) else int(h)
    if not 0 <= h_index < h_group.order:
        raise InputError(f"shift index {h_index} out of range for {h_group}")

    shifted = h_group.add(psi.table, h_index)
    members = np.flatnonzero(shifted == phi.table)
    if members.size == 0:
        raise InputError("no element satisfies phi(x) = psi(x) + h")

    p = g_group.p
    coords = g_group.digits(members)
    best: tuple[int, Optional[int], int] = (0, None, 0)
    for i, modulus in enumerate(g_group.moduli):
        values = coords[:, i]
        counts = np.bincount(values, minlength=int(modulus))
        counts[::p] = 0  # 非生成元
        unit = int(counts.argmax())
        if counts[unit] > best[0]:
            best = (int(counts[unit]), i, unit)
    kept, coordinate, generator = best

    images = psi.generator_images().copy()
    if coordinate is None:
        logger.warning(f"|E| = {members.size}，但 E 中没有元素在任何坐标上取生成元，ψ′ = ψ")
    else:
        inverse = pow(generator % p, -1, p)
        images[coordinate] = int(h_group.add(images[coordinate], h_group.scale(inverse, h_index)))
    psi_prime = GroupMap.from_images(g_group, h_group, images)
    return ShiftCorrection(
        psi=psi_prime,
        coordinate=coordinate,
        generator=generator,
        shifted_size=int(members.size),
        kept_size=kept,
        agreement=phi.agreement(psi_prime),
    )


def correct_to_homomorphism(phi: GroupMap) -> ShiftCorrection:
    """最优仿射逼近 (ψ, h) 再做平移修正"""
    psi, shift, agreement = best_affine_map(phi)
    logger.debug(f"最优仿射逼近: h={phi.codomain.element(shift)}, 一致率 {agreement:.6f}")
    return shift_correction(phi, psi, shift)
