import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from plugins.common import InputError
from plugins.utils import formats, gf2
from plugins.utils.bits import (
    bits_to_int,
    dot_parity,
    int_to_bits,
    parity,
    point_bits,
    popcount,
    rows_to_ints,
    xor_reduce,
)
from plugins.utils.text import format_payload, format_table, format_value


def bit_matrices(max_rows: int = 6, max_cols: int = 6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def square_matrices(max_n: int = 6):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n),
                           min_size=n, max_size=n))


# ========== 位运算 ==========

@given(st.lists(st.integers(0, 2 ** 40), min_size=1, max_size=20))
def test_popcount_matches_bin(values):
    assert popcount(values).tolist() == [bin(v).count("1") for v in values]


def test_parity_and_dot_parity():
    assert parity([0, 1, 3, 7]).tolist() == [0, 1, 0, 1]
    assert dot_parity(np.array([0b1011, 0b1011]), np.array([0b0011, 0b0001])).tolist() == [0, 1]


def test_point_bits_has_x1_least_significant():
    assert point_bits(2).tolist() == [[0, 0], [1, 0], [0, 1], [1, 1]]


@given(st.integers(0, 2 ** 12 - 1))
def test_int_bits_conversion(value):
    assert bits_to_int(int_to_bits(value, 12)) == value


def test_rows_to_ints_and_xor_reduce():
    assert rows_to_ints([[1, 0, 1], [0, 1, 1]]).tolist() == [5, 6]
    assert xor_reduce([5, 6], [0, 1, 2, 3]).tolist() == [0, 5, 6, 3]


# ========== GF(2) ==========

def test_rank_examples():
    assert gf2.rank([[1, 1, 0], [0, 1, 1], [1, 0, 1]]) == 2
    assert gf2.rank(np.eye(4, dtype=np.uint8)) == 4
    assert gf2.rank([[0, 0], [0, 0]]) == 0


@settings(deadline=None)
@given(square_matrices())
def test_inverse_is_two_sided(rows):
    m = np.array(rows, dtype=np.uint8)
    assume(gf2.rank(m) == m.shape[0])
    inv = gf2.inverse(m)
    eye = np.eye(m.shape[0], dtype=np.uint8)
    assert np.array_equal(gf2.matmul(m, inv), eye)
    assert np.array_equal(gf2.matmul(inv, m), eye)


def test_inverse_rejects_singular():
    with pytest.raises(InputError, match="singular"):
        gf2.inverse([[1, 1], [1, 1]])


@settings(deadline=None)
@given(bit_matrices())
def test_nullspace_dimension_and_kernel(rows):
    m = np.array(rows, dtype=np.uint8)
    basis = gf2.nullspace(m)
    assert basis.shape == (m.shape[1] - gf2.rank(m), m.shape[1])
    assert not gf2.matmul(m, basis.T).any()
    if basis.shape[0]:
        assert gf2.rank(basis) == basis.shape[0]


@settings(deadline=None)
@given(bit_matrices(), st.data())
def test_solve_finds_a_solution_when_consistent(rows, data):
    a = np.array(rows, dtype=np.uint8)
    x = np.array(data.draw(st.lists(st.integers(0, 1), min_size=a.shape[1], max_size=a.shape[1])),
                 dtype=np.uint8)
    b = gf2.matmul(a, x.reshape(-1, 1)).reshape(-1)
    solution = gf2.solve(a, b)
    assert solution is not None
    assert np.array_equal(gf2.matmul(a, solution.reshape(-1, 1)).reshape(-1), b)


def test_solve_reports_inconsistent_system():
    assert gf2.solve([[1, 1], [1, 1]], [0, 1]) is None


def test_extend_to_basis_keeps_prefix():
    basis = gf2.extend_to_basis([[1, 1, 0]], 3)
    assert basis[0].tolist() == [1, 1, 0]
    assert gf2.rank(basis) == 3
    with pytest.raises(InputError, match="dependent"):
        gf2.extend_to_basis([[1, 1, 0], [1, 1, 0]], 3)


def test_row_space_helpers():
    a = [[1, 0, 1], [0, 1, 1]]
    assert gf2.same_row_space(a, [[1, 1, 0], [0, 1, 1]])
    assert not gf2.same_row_space(a, [[1, 0, 0], [0, 1, 0]])
    assert gf2.in_row_space([1, 1, 0], a)
    assert not gf2.in_row_space([1, 0, 0], a)
    span = gf2.span_elements(a)
    assert sorted(rows_to_ints(span).tolist()) == [0, 3, 5, 6]


# ========== 文件格式 ==========

def test_truth_table_round_trip():
    n, bits = formats.parse_truth_table("# and\nn=2\n0001\n", source="and.tt")
    assert n == 2 and bits.tolist() == [0, 0, 0, 1]
    assert formats.format_truth_table(2, bits) == "n=2\n0001\n"


@pytest.mark.parametrize("text, message", [
    ("", r"f\.tt:1: empty truth-table file"),
    ("m=2\n0000", r"f\.tt:1: expected 'n=<int>'"),
    ("n=2\n01x1", r"f\.tt:2: unexpected character 'x'"),
    ("n=2\n010", r"f\.tt:2: expected 4 bits, got 3"),
    ("n=2", r"f\.tt:2: missing truth-table line"),
    ("n=1\n01\n10", r"f\.tt:3: unexpected extra line"),
    ("n=0\n0", r"f\.tt:1: n must be in"),
])
def test_truth_table_errors_carry_line_numbers(text, message):
    with pytest.raises(InputError, match=message):
        formats.parse_truth_table(text, source="f.tt")


def test_matrix_and_hypergraph_formats():
    m = formats.parse_matrix("101\n011\n")
    assert m.tolist() == [[1, 0, 1], [0, 1, 1]]
    assert formats.format_matrix(m) == "101\n011\n"
    with pytest.raises(InputError, match=r"<input>:2: expected 3 bits"):
        formats.parse_matrix("101\n01\n")

    t, edges = formats.parse_hypergraph("t=3\n2 1\n3 2\n")
    assert t == 3 and edges == [(1, 2), (2, 3)]
    with pytest.raises(InputError, match=r"<input>:3: duplicate edge"):
        formats.parse_hypergraph("t=3\n1 2\n2 1\n")
    with pytest.raises(InputError, match=r"<input>:2: vertex 4 out of range"):
        formats.parse_hypergraph("t=3\n1 4\n")


def test_quadratic_format_allows_empty_pair_line_for_n1():
    n, quad, lin, const = formats.parse_quadratic("n=1\n\n1\n0\n")
    assert (n, quad.size, lin.tolist(), const) == (1, 0, [1], 0)
    with pytest.raises(InputError, match="expected 4 lines"):
        formats.parse_quadratic("n=2\n1\n")


def test_group_spec_and_map_table():
    assert formats.parse_group_spec("2^2 x 2^1") == (2, [2, 1])
    assert formats.parse_group_spec("3 x 3") == (3, [1, 1])
    assert formats.format_group_spec(2, [2, 1]) == "2^2 x 2^1"
    with pytest.raises(InputError, match="mixes primes"):
        formats.parse_group_spec("2^1 x 3^1")
    assert formats.parse_map_table("0 1\n(1, 1)\n", 2) == [(0, 1), (1, 1)]
    with pytest.raises(InputError, match=r"phi\.map:2: expected 2 components"):
        formats.parse_map_table("0 1\n1\n", 2, source="phi.map")


def test_read_and_write_text(tmp_path):
    path = tmp_path / "x.txt"
    formats.write_text(str(path), "hello\n")
    assert formats.read_text(str(path)) == "hello\n"
    with pytest.raises(InputError, match="no such file"):
        formats.read_text(str(tmp_path / "missing.tt"))


# ========== 文本输出 ==========

def test_format_value_is_stable():
    assert format_value(1 / 3) == "0.333333333333"
    assert format_value(True) == "yes"
    assert format_value(None) == "-"
    assert format_value([1, 2]) == "1, 2"


def test_format_payload_renders_scalars_then_tables():
    text = format_payload({"n": 4, "rows": [{"a": 1, "b": 0.5}]})
    assert text.splitlines()[0] == "n  4"
    assert "rows:" in text
    assert format_table([(1, 2)], headers=("a", "b")).splitlines()[1] == "-  -"
