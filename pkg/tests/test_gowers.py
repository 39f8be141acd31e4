import itertools

import numpy as np
import pytest

from plugins.common import InputError, ResourceBudgetError, config
from plugins.core import (
    BooleanFunction,
    from_quadratic,
    inner_product_bent,
    linear_fn,
    random_fn,
    random_quadratic,
)
from plugins.gowers import (
    gowers_cost,
    gowers_norm_estimate,
    gowers_norm_exact,
    gowers_norm_exact_many,
    gowers_profile,
    gowers_raw_direct,
    gowers_raw_exact,
    gowers_raw_exact_many,
    sample_stderr,
    u2_via_spectrum,
    u3_via_derivative_spectra,
)


def all_functions(n: int) -> list[BooleanFunction]:
    return [BooleanFunction.from_bits(n, bits) for bits in itertools.product((0, 1), repeat=1 << n)]


def test_u2_matches_spectrum_for_every_function_on_three_bits():
    functions = all_functions(3)
    norms = gowers_norm_exact_many(functions, 2)
    expected = np.array([u2_via_spectrum(f) for f in functions])
    assert np.allclose(norms, expected, atol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_exact_matches_direct_definition(n, d):
    f = random_fn(n, seed=10 * n + d)
    assert gowers_raw_exact(f, d) == pytest.approx(gowers_raw_direct(f, d), abs=1e-12)


def test_u3_paths_agree():
    f = random_fn(6, seed=3)
    assert u3_via_derivative_spectra(f) == pytest.approx(gowers_norm_exact(f, 3), abs=1e-12)


def test_higher_order_recursion_matches_direct(threads):
    f = random_fn(3, seed=5)
    assert gowers_raw_exact(f, 4) == pytest.approx(gowers_raw_direct(f, 4), abs=1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_norms_are_monotone_in_d(seed):
    profile = gowers_profile(random_fn(4, seed=seed), 4)
    assert all(a <= b + 1e-12 for a, b in zip(profile, profile[1:]))


def test_known_values():
    assert gowers_norm_exact(linear_fn([1, 0, 1]), 2) == pytest.approx(1.0)
    assert gowers_norm_exact(inner_product_bent(4), 2) == pytest.approx(0.5)
    assert gowers_norm_exact(from_quadratic(random_quadratic(5, seed=2)), 3) == pytest.approx(1.0)
    assert gowers_norm_exact(BooleanFunction.constant(4, -1), 1) == pytest.approx(1.0)


def test_batched_raw_matches_single():
    functions = [random_fn(4, seed=s) for s in range(6)]
    batched = gowers_raw_exact_many(functions, 3)
    assert np.allclose(batched, [gowers_raw_exact(f, 3) for f in functions])
    with pytest.raises(InputError, match="same n"):
        gowers_raw_exact_many([random_fn(3, seed=0), random_fn(4, seed=0)], 2)


def test_budget_and_order_errors():
    f = random_fn(6, seed=1)
    with pytest.raises(InputError, match="d must be >= 1"):
        gowers_raw_exact(f, 0)
    config.gowers_budget = 1000
    with pytest.raises(ResourceBudgetError) as info:
        gowers_raw_exact(f, 3)
    assert info.value.limit == "gowers_budget"
    assert "estimator" in str(info.value)


# ========== Monte-Carlo ==========

def test_estimate_is_independent_of_thread_count():
    config.block_size = 1000
    f = random_fn(6, seed=4)
    config.threads = 1
    single = gowers_norm_estimate(f, 3, trials=20_500, seed=7)
    config.threads = 8
    multi = gowers_norm_estimate(f, 3, trials=20_500, seed=7)
    assert single == multi


def test_estimate_of_quadratic_u3_is_exactly_one():
    est = gowers_norm_estimate(from_quadratic(random_quadratic(6, seed=1)), 3, trials=5000, seed=3)
    assert est.raw_mean == 1.0
    assert est.value == 1.0
    assert est.stderr == 0.0


def test_estimate_is_close_to_exact():
    f = random_fn(5, seed=9)
    est = gowers_norm_estimate(f, 2, trials=200_000, seed=11)
    exact = gowers_raw_exact(f, 2)
    assert abs(est.raw_mean - exact) <= 5 * est.stderr + 1e-9


def test_estimate_rejects_bad_arguments():
    f = random_fn(3, seed=0)
    with pytest.raises(InputError, match="trials"):
        gowers_norm_estimate(f, 2, trials=0, seed=1)
    with pytest.raises(InputError, match="seed"):
        gowers_norm_estimate(f, 2, trials=10, seed=-1)


def test_sample_stderr():
    assert sample_stderr(10, 1) == 0.0
    assert sample_stderr(100, 100) == 0.0
    # 均值 0：方差 T/(T-1)
    assert sample_stderr(0, 101) == pytest.approx((101 / 100 / 101) ** 0.5)


def test_cost_model():
    assert [gowers_cost(3, d) for d in (1, 2, 3, 4)] == [8, 24, 192, 1536]
    with pytest.raises(InputError, match="d must be >= 1"):
        gowers_cost(3, 0)
