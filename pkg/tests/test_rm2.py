import math

import pytest

from plugins.common import InputError, ResourceBudgetError, config
from plugins.core import (
    QuadraticPolynomial,
    bent_polynomial,
    from_quadratic,
    inner_product_bent,
    noisy,
    normalized_distance,
    random_fn,
    random_quadratic,
)
from plugins.rm2 import (
    FAR,
    NEAR,
    dichotomy,
    dichotomy_sample_size,
    far_distance_bound,
    rm2_correlation_bound_check,
    rm2_exact_distance,
    u3_product_invariance,
)


def brute_force_nearest(f):
    n = f.n
    candidates = [
        QuadraticPolynomial.from_indices(n, quad, lin, const)
        for quad in range(1 << (n * (n - 1) // 2))
        for lin in range(1 << n)
        for const in (0, 1)
    ]
    return min(candidates, key=lambda q: (normalized_distance(f, from_quadratic(q)), q.sort_key()))


# ========== 精确距离 ==========

def test_bent_is_a_quadratic():
    distance, poly = rm2_exact_distance(inner_product_bent(4))
    assert distance == 0.0
    assert poly == bent_polynomial(4)


@pytest.mark.parametrize("seed", range(3))
def test_quadratics_are_recovered(seed):
    q = random_quadratic(5, seed=seed)
    nearest = rm2_exact_distance(from_quadratic(q))
    assert nearest.distance == 0.0
    assert nearest.polynomial == q
    assert nearest.correlation == 1.0


@pytest.mark.parametrize("seed", range(4))
def test_exact_distance_matches_brute_force(seed, threads):
    f = random_fn(3, seed=seed)
    nearest = rm2_exact_distance(f)
    expected = brute_force_nearest(f)
    assert nearest.polynomial == expected
    assert nearest.distance == normalized_distance(f, from_quadratic(expected))
    assert nearest.candidates == 8 * 8 * 2


def test_noise_bounds_the_distance():
    q = random_quadratic(6, seed=3)
    f = noisy(from_quadratic(q), 0.05, seed=4)
    assert rm2_exact_distance(f).distance <= normalized_distance(f, from_quadratic(q))


def test_distance_budget():
    with pytest.raises(ResourceBudgetError) as info:
        rm2_exact_distance(random_fn(config.rm2_max_n + 1, seed=0))
    assert info.value.limit == "rm2_max_n"
    assert "dicho" in str(info.value)


@pytest.mark.parametrize("seed", range(3))
def test_correlation_bound(seed):
    f = random_fn(5, seed=seed)
    for g in (random_quadratic(5, seed=seed), rm2_exact_distance(f).polynomial):
        lhs, rhs = rm2_correlation_bound_check(f, g)
        assert lhs <= rhs + 1e-12


def test_u3_is_invariant_under_quadratic_phases():
    f = random_fn(5, seed=7)
    before, after = u3_product_invariance(f, random_quadratic(5, seed=8))
    assert after == pytest.approx(before, abs=1e-12)


# ========== 二分判定 ==========

def test_sample_size():
    assert dichotomy_sample_size(0.05, 0.95) == 11805
    assert dichotomy_sample_size(0.5, 0.95) == math.ceil(8 * math.log(40) / 0.25)
    with pytest.raises(InputError, match="delta"):
        dichotomy_sample_size(0.0, 0.95)
    with pytest.raises(InputError, match="confidence"):
        dichotomy_sample_size(0.05, 1.0)


def test_far_bound():
    assert far_distance_bound(0.05) == pytest.approx((1 - 0.075 ** (1 / 16)) / 2)
    assert far_distance_bound(0.9) == 0.0


def test_quadratic_is_near():
    verdict = dichotomy(from_quadratic(random_quadratic(10, seed=1)), 0.05, seed=2)
    assert verdict.branch == NEAR
    assert verdict.is_near
    assert verdict.nu == 1.0
    assert verdict.far_bound is None
    assert verdict.trials == 11805
    assert verdict.confidence == config.dichotomy_confidence


def test_random_function_is_far():
    verdict = dichotomy(random_fn(12, seed=3), 0.05, confidence=0.99, seed=4)
    assert verdict.branch == FAR
    assert verdict.far_bound == pytest.approx(far_distance_bound(0.05))
    assert verdict.trials == dichotomy_sample_size(0.05, 0.99)


@pytest.mark.slow
def test_dichotomy_sweep_over_seeds():
    far = sum(dichotomy(random_fn(12, seed=seed), 0.05, seed=seed).branch == FAR for seed in range(20))
    near = sum(
        dichotomy(noisy(from_quadratic(random_quadratic(10, seed=seed)), 0.05, seed=seed), 0.05,
                  seed=seed).branch == NEAR
        for seed in range(20)
    )
    assert far >= 19
    assert near >= 19


def test_dichotomy_is_independent_of_thread_count():
    config.block_size = 1000
    f = random_fn(9, seed=5)
    config.threads = 1
    single = dichotomy(f, 0.1, seed=6)
    config.threads = 8
    assert dichotomy(f, 0.1, seed=6) == single


@pytest.mark.parametrize("delta", [0.05, 0.5])
@pytest.mark.parametrize("seed", range(4))
def test_verdicts_agree_with_exact_distance(delta, seed):
    f = random_fn(5, seed=seed)
    exact = rm2_exact_distance(f).distance
    verdict = dichotomy(f, delta, seed=seed)
    if verdict.branch == FAR:
        assert exact >= verdict.far_bound
    else:
        assert exact < 0.5
