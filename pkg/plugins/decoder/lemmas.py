"""
解码器插件 - 导数谱恒等式

解码管线所依赖的谱恒等式，每个函数返回 (左边, 右边) 供数值核对:

    many_dir            ‖f‖_{U_2}^4 = Σ f̂⁴，‖f‖_{U_3}^8 = E_y Σ f̂_y⁴
    close_dir_imp_close E_x ⟨f_x, g_x⟩² = Σ_α (fg)^⁴(α)
    weak_lin            E_{x,y} Σ_{α,β} f̂_x²(α) f̂_y²(β) f̂_{x+y}²(α+β) = E_s Σ_α f̂_s⁶(α)
    positive_dfn        F(z) = Σ_y f̂_y²(Dy + z) 的变换为 F̂(x) = f̂_x²(Dᵗx) ≥ 0
    zero_on_not_ort     ⟨α, y⟩ = 1 时 f̂_y(α) = 0

全部为精确枚举，受 gowers_budget 约束。

使用方式:
    >>> lhs, rhs = weak_lin(random_fn(4, seed=1))
    >>> abs(lhs - rhs) < 1e-9
    True
"""

import numpy as np

from plugins.common import InputError, config, ensure_budget
from plugins.core import BooleanFunction, derivative_bits, derivative_spectra, fwht, walsh_sums
from plugins.gowers import gowers_raw_direct, gowers_raw_exact
from plugins.utils.bits import dot_parity

from .models import ChoiceFunction, apply_matrix

_HINT = "these identities are exhaustive; use a smaller n"


def many_dir_identities(f: BooleanFunction) -> tuple[tuple[float, float], tuple[float, float]]:
    """
    ((‖f‖_{U_2}^4, Σ f̂⁴), (‖f‖_{U_3}^8, E_y Σ f̂_y⁴))

    左边按定义直接求和（2^{3n} 与 2^{4n} 项），右边走谱。
    """
    coeffs = walsh_sums(f) / f.size
    u2 = (gowers_raw_direct(f, 2), float((coeffs ** 4).sum()))
    u3 = (gowers_raw_direct(f, 3), gowers_raw_exact(f, 3))
    return u2, u3


def close_dir_imp_close(f: BooleanFunction, g: BooleanFunction) -> tuple[float, float]:
    """(E_x ⟨f_x, g_x⟩², Σ_α (f·g)^⁴(α))"""
    h = f * g
    size = h.size
    ensure_budget("gowers_budget", size * size, config.gowers_budget, _HINT)
    idx = np.arange(size, dtype=np.int64)
    rows = max(1, config.chunk_elements // size)
    total = 0.0
    for start in range(0, size, rows):
        bits = derivative_bits(h, idx[start:start + rows])
        inner = 1.0 - 2.0 * bits.sum(axis=1, dtype=np.int64) / size
        total += float((inner * inner).sum())
    coeffs = walsh_sums(h) / size
    return total / size, float((coeffs ** 4).sum())


def weak_lin(f: BooleanFunction) -> tuple[float, float]:
    """
    (E_{x,y} Σ_{α,β} P_x(α) P_y(β) P_{x+y}(α+β), E_s Σ_α f̂_s⁶(α))，P_x = f̂_x²

    对 α 的卷积用未归一化变换 Q_x = Σ_α P_x(α)(-1)^{⟨z,α⟩} 化为
    2^{-n} Σ_z Q_x(z) Q_y(z) Q_{x+y}(z)。
    """
    size = f.size
    ensure_budget("gowers_budget", size * size * size, config.gowers_budget, _HINT)
    spectra = derivative_spectra(f)
    q = fwht(spectra * spectra)
    idx = np.arange(size, dtype=np.int64)
    total = 0.0
    for x in range(size):
        total += float((q[x][None, :] * q * q[idx ^ x]).sum())
    lhs = total / (size * size * size)
    rhs = float((spectra ** 6).sum(axis=1).mean())
    return lhs, rhs


def positive_dfn(f: BooleanFunction, d) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    (F, F̂, 预测的 F̂)

    F(z) = Σ_y f̂_y²(Dy + z)，F̂(x) = E_z F(z)(-1)^{⟨x,z⟩}，
    预测值为 f̂_x²(Dᵗx)。F̂ 非负，所以 F 在 z = 0 取最大值。

    Raises:
        InputError: D 的维数与 f 不同
    """
    d = np.asarray(d, dtype=np.int64) & 1
    if d.shape != (f.n, f.n):
        raise InputError(f"matrix must be {f.n}x{f.n}, got {d.shape}")
    size = f.size
    spectra = derivative_spectra(f)
    power = spectra * spectra
    idx = np.arange(size, dtype=np.int64)
    images = apply_matrix(d, idx)
    big_f = power[idx[:, None], images[:, None] ^ idx[None, :]].sum(axis=0)
    transform = fwht(big_f.copy()) / size
    predicted = power[idx, apply_matrix(d.T, idx)]
    return big_f, transform, predicted


def zero_on_not_ort_residual(f: BooleanFunction) -> float:
    """max |f̂_y(α)|，取遍 ⟨α, y⟩ = 1 的 (y, α)；恒为 0"""
    spectra = derivative_spectra(f)
    idx = np.arange(f.size, dtype=np.int64)
    odd = dot_parity(idx[:, None], idx[None, :]).astype(bool)
    return float(np.abs(spectra[odd]).max()) if odd.any() else 0.0


def linearity_rate(cf: ChoiceFunction, threshold: float) -> float:
    """
    Pr_{x,y}[phi(x) + phi(y) = phi(x+y)，三者权重都不低于 threshold]

    Raises:
        ResourceBudgetError: 4^n 超过 gowers_budget
    """
    size = cf.size
    ensure_budget("gowers_budget", size * size, config.gowers_budget, _HINT)
    idx = np.arange(size, dtype=np.int64)
    heavy = cf.weight >= threshold
    rows = max(1, config.chunk_elements // size)
    hits = 0
    for start in range(0, size, rows):
        xs = idx[start:start + rows, None]
        sums = idx[None, :] ^ xs
        good = (cf.phi[xs] ^ cf.phi[None, :]) == cf.phi[sums]
        good &= heavy[xs] & heavy[None, :] & heavy[sums]
        hits += int(good.sum())
    return hits / (size * size)
