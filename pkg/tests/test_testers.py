import numpy as np
import pytest

from plugins.common import InputError, config
from plugins.core import (
    BooleanFunction,
    affine_distance,
    from_quadratic,
    inner_product_bent,
    linear_fn,
    random_fn,
    random_quadratic,
)
from plugins.gowers import gowers_raw_exact
from plugins.testers import (
    Hypergraph,
    TestReport,
    akklr_test,
    blr_test,
    complete_hypergraph,
    exact_acceptance_akklr,
    exact_acceptance_blr,
    exact_acceptance_hypergraph,
    exact_acceptance_quadraticity,
    graph_test,
    hypergraph_linearity_test,
    hypergraph_quadraticity_test,
    soundness_bound,
)

TRIALS = 10_000


def within(report: TestReport, exact: float, sigmas: float = 5.0) -> bool:
    return abs(report.acceptance - exact) <= sigmas * report.stderr + 1e-9


# ========== 完备性 ==========

def test_blr_accepts_linear_functions():
    report = blr_test(linear_fn([1, 1, 0, 1, 0, 1]), TRIALS, seed=1)
    assert report.accepts == TRIALS
    assert report.test == "blr"
    assert report.queries_per_trial == 3


def test_blr_affine_mode():
    f = -BooleanFunction.constant(5)
    assert blr_test(f, TRIALS, seed=2, affine=True).acceptance == 1.0
    assert blr_test(f, TRIALS, seed=2).acceptance == 0.0
    assert exact_acceptance_blr(f, affine=True) == 1.0
    assert exact_acceptance_blr(f) == 0.0


@pytest.mark.parametrize("b", [0, 1])
def test_hypergraph_tests_accept_affine_functions(b):
    f = linear_fn([0, 1, 1, 0, 1], b=b)
    h = complete_hypergraph(4, 3)
    report = hypergraph_linearity_test(f, h, TRIALS, seed=3)
    assert report.accepts == TRIALS
    assert report.queries_per_trial == h.t + len(h.edges)
    assert graph_test(f, complete_hypergraph(4, 2), TRIALS, seed=3).accepts == TRIALS
    assert exact_acceptance_hypergraph(linear_fn([1, 0, 1], b=b), h) == pytest.approx(1.0)


def test_quadraticity_test_accepts_quadratics(threads):
    f = from_quadratic(random_quadratic(8, seed=4))
    h = complete_hypergraph(4, 3)
    assert hypergraph_quadraticity_test(f, h, TRIALS, seed=5).accepts == TRIALS
    small = from_quadratic(random_quadratic(3, seed=4))
    assert exact_acceptance_quadraticity(small, h) == pytest.approx(1.0)


@pytest.mark.parametrize("seed", range(10))
def test_random_affine_functions_always_pass_graph_linearity(seed):
    rng = np.random.default_rng(seed)
    f = linear_fn(int(rng.integers(1 << 10)), b=int(rng.integers(2)), n=10)
    report = hypergraph_linearity_test(f, complete_hypergraph(4, 2), TRIALS, seed=seed)
    assert report.rejects == 0
    small = linear_fn(int(rng.integers(1 << 3)), b=int(rng.integers(2)), n=3)
    assert exact_acceptance_hypergraph(small, complete_hypergraph(4, 2)) == pytest.approx(1.0)


@pytest.mark.parametrize("seed", range(10))
def test_random_quadratics_always_pass_quadraticity(seed):
    h = complete_hypergraph(4, 3)
    f = from_quadratic(random_quadratic(10, seed=100 + seed))
    assert hypergraph_quadraticity_test(f, h, TRIALS, seed=seed).rejects == 0
    small = from_quadratic(random_quadratic(3, seed=100 + seed))
    assert exact_acceptance_quadraticity(small, h) == pytest.approx(1.0)


def test_akklr_accepts_low_degree_polynomials():
    f = from_quadratic(random_quadratic(7, seed=6))
    assert akklr_test(f, 3, TRIALS, seed=7).accepts == TRIALS
    assert akklr_test(-BooleanFunction.constant(4), 1, TRIALS, seed=7).accepts == TRIALS


# ========== 精确接受概率 ==========

def test_bent_blr_exact_acceptance():
    f = inner_product_bent(4)
    exact = exact_acceptance_blr(f)
    assert exact == pytest.approx(0.53125)
    assert within(blr_test(f, 100_000, seed=8), exact)


def test_trivial_hypergraphs():
    f = random_fn(3, seed=1)
    empty = Hypergraph(3)
    assert exact_acceptance_hypergraph(f, empty) == 1.0
    assert hypergraph_linearity_test(f, empty, 100, seed=1).acceptance == 1.0
    assert soundness_bound(f, empty) == 1.0
    single = Hypergraph.from_edges(2, [(1, 2)])
    assert exact_acceptance_hypergraph(linear_fn([1, 1, 0]), single) == pytest.approx(1.0)


@pytest.mark.parametrize("n, t, edges, seed", [
    (3, 2, [(1, 2)], 1),
    (3, 3, [(1, 2), (2, 3)], 2),
    (4, 3, [(1, 2, 3)], 3),
    (2, 3, [(1, 2), (1, 3), (2, 3)], 4),
    (3, 3, [(1, 2, 3), (1, 2)], 5),
    (4, 2, [(1,), (1, 2)], 6),
])
def test_exact_hypergraph_matches_monte_carlo(n, t, edges, seed):
    f = random_fn(n, seed=seed)
    h = Hypergraph.from_edges(t, edges)
    exact = exact_acceptance_hypergraph(f, h)
    assert within(hypergraph_linearity_test(f, h, 40_000, seed=seed), exact)


def test_cubic_single_edge_quadraticity():
    f = BooleanFunction.from_bits(3, [0] * 7 + [1])
    h = Hypergraph.from_edges(3, [(1, 2, 3)])
    exact = exact_acceptance_quadraticity(f, h)
    assert exact == pytest.approx((1.0 + gowers_raw_exact(f, 3)) / 2.0)
    assert within(hypergraph_quadraticity_test(f, h, 40_000, seed=9), exact)


def test_akklr_matches_gowers_identity():
    f = random_fn(6, seed=10)
    exact = exact_acceptance_akklr(f, 3)
    assert exact == pytest.approx((1.0 + gowers_raw_exact(f, 3)) / 2.0)
    report = akklr_test(f, 3, 100_000, seed=11)
    assert report.test == "akklr-3"
    assert report.queries_per_trial == 8
    assert within(report, exact, sigmas=4.0)


@pytest.mark.slow
@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("seed", range(10))
def test_akklr_acceptance_matches_identity_on_random_functions(k, seed):
    f = random_fn(6, seed=200 + seed)
    exact = exact_acceptance_akklr(f, k)
    assert exact == pytest.approx((1.0 + gowers_raw_exact(f, k)) / 2.0)
    assert within(akklr_test(f, k, 100_000, seed=seed), exact, sigmas=4.0)


# ========== 可靠性 ==========

def test_bent_counterexample():
    f = inner_product_bent(8)
    assert affine_distance(f).correlation == pytest.approx(2 ** -4)
    h = complete_hypergraph(4, 3)
    report = hypergraph_linearity_test(f, h, TRIALS, seed=12)
    assert 0.1 <= report.acceptance <= 0.16
    assert exact_acceptance_hypergraph(inner_product_bent(4), h) > 1 / 16


def test_graph_test_respects_soundness_bound():
    f = random_fn(8, seed=13)
    h = complete_hypergraph(4, 2)
    report = graph_test(f, h, TRIALS, seed=14).with_bound(soundness_bound(f, h))
    assert report.theoretical_bound == pytest.approx(1 / 64 + gowers_raw_exact(f, 2) ** 0.25)
    assert report.within_bound(4.0)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(20))
def test_graph_test_soundness_on_random_functions(seed):
    f = random_fn(8, seed=300 + seed)
    h = complete_hypergraph(4, 2)
    bound = soundness_bound(f, h)
    assert bound == pytest.approx(1 / 2 ** 6 + gowers_raw_exact(f, 2) ** 0.25)
    report = graph_test(f, h, 100_000, seed=seed)
    assert report.acceptance <= bound + 4 * report.stderr


def test_quadraticity_respects_soundness_bound():
    f = random_fn(8, seed=15)
    h = Hypergraph.from_edges(4, [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)])
    report = hypergraph_quadraticity_test(f, h, TRIALS, seed=16)
    assert report.with_bound(soundness_bound(f, h)).within_bound(4.0)


# ========== 错误与报告 ==========

def test_input_errors():
    f = random_fn(3, seed=0)
    with pytest.raises(InputError, match="exactly 2 vertices"):
        graph_test(f, complete_hypergraph(3, 3), 10, seed=0)
    with pytest.raises(InputError, match="3-uniform"):
        hypergraph_quadraticity_test(f, complete_hypergraph(3, 2), 10, seed=0)
    with pytest.raises(InputError, match="k must be >= 1"):
        akklr_test(f, 0, 10, seed=0)
    with pytest.raises(InputError, match="out of range"):
        Hypergraph.from_edges(2, [(1, 3)])
    with pytest.raises(InputError, match="repeats a vertex"):
        Hypergraph.from_edges(3, [(1, 1)])
    with pytest.raises(InputError, match="need 1 <= r <= t"):
        complete_hypergraph(2, 3)


def test_hypergraph_normalizes_edges():
    h = Hypergraph.from_edges(3, [(2, 1), (1, 2), (3, 1, 2)])
    assert h.edges == ((1, 2), (1, 2, 3))
    assert h.max_edge_size == 3
    assert Hypergraph.from_text(h.to_text()) == h


def test_report_fields():
    report = TestReport.from_counts("blr", 1, 1, seed=0, queries_per_trial=3)
    assert report.stderr == 0.0
    assert report.within_bound() is None
    assert report.rejects == 0
    assert report.to_dict()["theoretical_bound"] is None


def test_blr_is_independent_of_thread_count():
    config.block_size = 500
    f = random_fn(7, seed=17)
    config.threads = 1
    single = blr_test(f, 7_777, seed=18)
    config.threads = 8
    assert blr_test(f, 7_777, seed=18) == single
