import itertools

import numpy as np
import pytest

from plugins.common import InputError, ResourceBudgetError, config
from plugins.core import BooleanFunction, random_fn, wht
from plugins.genavg import (
    BinaryMatrix,
    ak_matrix,
    apply_row_transform,
    drop_dependent_rows,
    generalized_average_estimate,
    generalized_average_exact,
    generalized_average_exact_many,
    is_ak_equivalent,
    is_minimal_vector,
    reduce_to_uk,
    reduction_step,
    row_equivalent,
    row_space_hyperplanes,
    row_space_minimal_vectors,
    simplify,
    verify_certificate,
)
from plugins.gowers import gowers_norm_exact_many, gowers_raw_exact, gowers_raw_exact_many
from plugins.utils import gf2

BLR = BinaryMatrix.from_rows(["101", "011"])

REDUCIBLE = [
    ["101", "011"],
    ["110", "011"],
    ["1001", "0101", "0011"],
    ["1101000", "0110100", "0011010", "0001101"],
    ["11100", "10011", "01010"],
]


def all_functions(n: int) -> list[BooleanFunction]:
    return [BooleanFunction.from_bits(n, bits) for bits in itertools.product((0, 1), repeat=1 << n)]


def random_matrix(rng: np.random.Generator, t: int, max_weight: int = 3) -> BinaryMatrix:
    """t 行、列两两不同且非零、列重不超过 max_weight 的随机矩阵"""
    pool = [c for c in range(1, 1 << t) if bin(c).count("1") <= max_weight]
    chosen = rng.choice(pool, size=int(rng.integers(1, len(pool) + 1)), replace=False)
    return BinaryMatrix(np.array([[(c >> i) & 1 for c in chosen] for i in range(t)], dtype=np.uint8))


def random_nonsingular(rng: np.random.Generator, t: int) -> np.ndarray:
    while True:
        m = rng.integers(0, 2, size=(t, t), dtype=np.uint8)
        if gf2.rank(m) == t:
            return m


def test_ak_matrix_shape():
    assert ak_matrix(1).rows_text() == ["01", "11"]
    assert ak_matrix(2).rows_text() == ["0011", "0101", "1111"]
    assert is_ak_equivalent(ak_matrix(3)) == 3
    assert is_ak_equivalent(BLR) is None
    with pytest.raises(InputError, match="k must be in"):
        ak_matrix(0)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_ak_average_is_gowers_power(k):
    f = random_fn(3, seed=k)
    assert generalized_average_exact(ak_matrix(k), f) == pytest.approx(gowers_raw_exact(f, k), abs=1e-12)


def test_simple_averages():
    f = random_fn(4, seed=2)
    assert generalized_average_exact(BinaryMatrix.from_rows(["1"]), f) == pytest.approx(f.mean())
    # Σ f̂³
    assert generalized_average_exact(BLR, f) == pytest.approx(wht(f).moment(3), abs=1e-12)


def test_batched_average_matches_single():
    functions = [random_fn(3, seed=s) for s in range(4)]
    a = BinaryMatrix.from_rows(["1001", "0101", "0011"])
    expected = [generalized_average_exact(a, f) for f in functions]
    assert np.allclose(generalized_average_exact_many(a, functions), expected)


def test_average_budget():
    config.genavg_max_nt = 4
    with pytest.raises(ResourceBudgetError) as info:
        generalized_average_exact(BLR, random_fn(3, seed=0))
    assert info.value.limit == "genavg_max_nt"


def test_estimate_close_to_exact(threads):
    f = random_fn(4, seed=5)
    est = generalized_average_estimate(BLR, f, trials=100_000, seed=3)
    assert abs(est.value - generalized_average_exact(BLR, f)) <= 5 * est.stderr + 1e-9
    single = generalized_average_estimate(BLR, f, trials=1, seed=3)
    assert single.to_dict()["stderr"] is None


# ========== 矩阵运算 ==========

def test_simplify_cancels_column_pairs():
    a = BinaryMatrix.from_rows(["1101", "0111"])
    assert simplify(a).rows_text() == ["10", "01"]
    f = random_fn(3, seed=1)
    assert generalized_average_exact(simplify(a), f) == pytest.approx(generalized_average_exact(a, f))


def test_row_transform_preserves_average():
    f = random_fn(3, seed=4)
    transformed = apply_row_transform([[1, 1], [0, 1]], BLR)
    assert row_equivalent(transformed, BLR)
    assert generalized_average_exact(transformed, f) == pytest.approx(generalized_average_exact(BLR, f))
    with pytest.raises(InputError, match="singular"):
        apply_row_transform([[1, 1], [1, 1]], BLR)


def test_minimal_vectors():
    a = BinaryMatrix.from_rows(["101", "110"])
    vectors = {"".join(map(str, v)) for v in row_space_minimal_vectors(a)}
    assert vectors == {"101", "110", "011"}
    assert sorted(row_space_hyperplanes(a)) == [(0,), (1,), (2,)]
    b = BinaryMatrix.from_rows(["1100", "0011"])
    assert is_minimal_vector(b, [1, 1, 0, 0])
    assert not is_minimal_vector(b, [1, 1, 1, 1])
    assert not is_minimal_vector(b, [1, 0, 0, 0])
    with pytest.raises(InputError, match="entries"):
        is_minimal_vector(b, [1, 1])


def test_reduction_step_example():
    a = BinaryMatrix.from_rows(["101", "110"])
    assert reduction_step(a, [1, 0, 1]).rows_text() == ["1111", "1010", "1100"]
    with pytest.raises(InputError, match="not a minimal vector"):
        reduction_step(BinaryMatrix.from_rows(["1100", "0011"]), [1, 1, 1, 1])


def test_drop_dependent_rows_prefers_later_rows():
    rows = np.array([[1, 1, 0], [1, 0, 0], [0, 1, 0]], dtype=np.uint8)
    assert drop_dependent_rows(rows).tolist() == [[1, 0, 0], [0, 1, 0]]


# ========== 化归证书 ==========

def test_blr_reduces_to_u2():
    cert = reduce_to_uk(BLR)
    assert cert.completed
    assert (cert.terminal_k, cert.exponent) == (2, 1)
    assert verify_certificate(BLR, cert)
    assert "terminal: A2, exponent 1" in cert.to_text()


def test_ak_matrix_needs_no_steps():
    cert = reduce_to_uk(ak_matrix(2))
    assert (cert.terminal_k, cert.exponent, cert.steps) == (2, 0, [])


@pytest.mark.parametrize("rows", REDUCIBLE)
def test_certificates_verify_and_bound_the_average(rows):
    a = BinaryMatrix.from_rows(rows)
    cert = reduce_to_uk(a)
    assert cert.completed, cert.reason
    assert verify_certificate(a, cert)
    for seed in range(3):
        f = random_fn(2, seed=seed)
        bound = gowers_raw_exact(f, cert.terminal_k) ** (1.0 / (1 << cert.exponent))
        assert abs(generalized_average_exact(a, f)) <= bound + 1e-9


def test_tampered_certificate_is_rejected():
    cert = reduce_to_uk(BLR)
    cert.exponent += 1
    assert not verify_certificate(BLR, cert)
    assert not verify_certificate(ak_matrix(2), reduce_to_uk(BLR))


@pytest.mark.parametrize("rows, message", [
    (["10", "00"], "zero columns"),
    (["11", "11"], "duplicate columns"),
])
def test_reduce_rejects_degenerate_matrices(rows, message):
    with pytest.raises(InputError, match=message):
        reduce_to_uk(BinaryMatrix.from_rows(rows))


def test_reduce_rejects_heavy_columns():
    with pytest.raises(InputError, match="exceeds k=1"):
        reduce_to_uk(BLR, k=1)


# ========== 随机矩阵扫描 ==========

@pytest.mark.parametrize("k", [1, 2, 3])
def test_ak_average_is_nonnegative(k):
    averages = generalized_average_exact_many(ak_matrix(k), all_functions(3))
    assert averages.min() >= -1e-12


def test_row_transform_keeps_average_for_random_matrices():
    rng = np.random.default_rng(11)
    for _ in range(20):
        t = int(rng.integers(1, 5))
        a = random_matrix(rng, t, max_weight=t)
        f = random_fn(3, seed=int(rng.integers(1 << 30)))
        transformed = apply_row_transform(random_nonsingular(rng, t), a)
        assert generalized_average_exact(transformed, f) == pytest.approx(
            generalized_average_exact(a, f), abs=1e-12)


def test_reduction_step_bounds_the_average():
    rng = np.random.default_rng(7)
    for _ in range(100):
        t = int(rng.integers(1, 5))
        a = BinaryMatrix(drop_dependent_rows(random_matrix(rng, t, max_weight=t).entries))
        vectors = row_space_minimal_vectors(a)
        v = vectors[int(rng.integers(len(vectors)))]
        f = random_fn(int(rng.integers(2, 4)), seed=int(rng.integers(1 << 30)))
        doubled = generalized_average_exact(reduction_step(a, v), f)
        assert abs(generalized_average_exact(a, f)) <= np.sqrt(max(doubled, 0.0)) + 1e-9


@pytest.mark.slow
def test_random_matrices_are_bounded_by_u3():
    functions = all_functions(3)
    u3 = gowers_norm_exact_many(functions, 3)
    raw: dict[int, np.ndarray] = {}
    rng = np.random.default_rng(2024)
    for _ in range(50):
        a = random_matrix(rng, int(rng.integers(1, 5)))
        averages = np.abs(generalized_average_exact_many(a, functions))
        assert np.all(averages <= u3 + 1e-9)
        cert = reduce_to_uk(a)
        assert cert.completed, f"{a.rows_text()}: {cert.reason}"
        assert verify_certificate(a, cert)
        if cert.terminal_k not in raw:
            raw[cert.terminal_k] = gowers_raw_exact_many(functions, cert.terminal_k)
        bound = np.maximum(raw[cert.terminal_k], 0.0) ** (1.0 / (1 << cert.exponent))
        assert np.all(averages <= bound + 1e-9)
