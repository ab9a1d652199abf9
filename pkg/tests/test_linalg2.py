from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from addcodes.catalog import P_FINAL, systematic_rows
from addcodes.linalg2 import (
    BinMatrix,
    BitVector,
    F4Elem,
    F4Vector,
    echelon_basis,
    f4_compress,
    f4_expand,
    f4_inv,
    f4_mul,
    gf2_rank,
    in_span,
    kernel,
    omega_times,
    pair_weight,
    rank,
    span_elements,
)

ELEMS = list(F4Elem)


def to_list(x: int, n: int) -> list[int]:
    return [(x >> i) & 1 for i in range(n)]


@st.composite
def matrices(draw, max_rows=8, max_cols=12):
    rows = draw(st.integers(0, max_rows))
    cols = draw(st.integers(1, max_cols))
    data = draw(st.lists(st.integers(0, (1 << cols) - 1), min_size=rows, max_size=rows))
    return BinMatrix(cols, tuple(data))


# ------------------------------------------------------------- bit vectors


def test_bitvector_string_order():
    v = BitVector.from_string("1101")
    assert v.bits == 0b1011
    assert str(v) == "1101"
    assert v.weight() == 3
    assert v[0] == 1 and v[2] == 0


def test_bitvector_rejects_overflow():
    with pytest.raises(ValueError):
        BitVector(3, 0b1000)


def test_bitvector_xor_length_mismatch():
    with pytest.raises(ValueError):
        BitVector(3, 1) ^ BitVector(4, 1)


# ---------------------------------------------------------------- rank


def test_rank_identity():
    assert rank(BinMatrix.identity(4)) == 4


def test_rank_zero():
    assert rank(BinMatrix(5, (0, 0, 0))) == 0


def test_rank_of_systematic_generator_expansion():
    # Binary expansion of (I6 | P) for the final P: rows g and w*g of each GF(4) row.
    rows = []
    for v in systematic_rows(P_FINAL):
        g = f4_expand(v).bits
        rows += [g, omega_times(g)]
    m = BinMatrix(24, tuple(rows))
    assert m.nrows == 12
    assert rank(m) == oracles.gf2_rank([to_list(r, 24) for r in rows]) == 12


@given(matrices())
def test_rank_matches_oracle(m):
    expected = oracles.gf2_rank([to_list(r, m.ncols) for r in m.rows]) if m.rows else 0
    assert rank(m) == expected


@given(matrices())
def test_rank_equals_rank_of_transpose(m):
    assert rank(m) == rank(m.transpose())


# -------------------------------------------------------------- kernel


def test_kernel_of_identity_is_empty():
    assert kernel(BinMatrix.identity(4)).nrows == 0


def test_kernel_of_zero_matrix_is_everything():
    k = kernel(BinMatrix(3, (0, 0)))
    assert k.nrows == 3 and rank(k) == 3


@given(matrices())
def test_kernel_defining_property(m):
    k = kernel(m)
    assert k.nrows + rank(m) == m.ncols
    assert rank(k) == k.nrows
    for x in k.rows:
        assert m.times_vector(x) == 0


# ------------------------------------------------------ spans and bases


@given(st.lists(st.integers(0, 255), max_size=6))
def test_echelon_basis_spans_same_space(vecs):
    basis = echelon_basis(vecs)
    assert len(basis) == gf2_rank(vecs)
    assert set(span_elements(basis)) == {0} | {
        x for x in range(256) if in_span(x, basis)
    }
    assert all(in_span(v, basis) for v in vecs)


# --------------------------------------------------------------- GF(4)


def test_f4_examples():
    assert f4_mul(F4Elem.W, F4Elem.W) == F4Elem.WBAR
    assert f4_mul(F4Elem.W, F4Elem.WBAR) == F4Elem.ONE
    assert f4_mul(F4Elem.ZERO, F4Elem.WBAR) == F4Elem.ZERO


def test_f4_multiplication_table_matches_polynomial_oracle():
    for x, y in product(ELEMS, repeat=2):
        got = f4_mul(x, y).pair
        assert got == oracles.gf4_mul(x.pair, y.pair)


def test_f4_field_axioms_exhaustively():
    for x, y, z in product(ELEMS, repeat=3):
        assert f4_mul(f4_mul(x, y), z) == f4_mul(x, f4_mul(y, z))
        assert f4_mul(x, y + z) == f4_mul(x, y) + f4_mul(x, z)
        assert x + (y + z) == (x + y) + z
    for x, y in product(ELEMS, repeat=2):
        assert f4_mul(x, y) == f4_mul(y, x)
        assert x + y == y + x
    for x in ELEMS[1:]:
        assert f4_mul(x, f4_inv(x)) == F4Elem.ONE
    with pytest.raises(ZeroDivisionError):
        f4_inv(F4Elem.ZERO)


def test_f4_symbols():
    assert [e.symbol for e in ELEMS] == ["0", "1", "w", "W"]
    assert F4Elem.from_symbol("W") is F4Elem.WBAR
    with pytest.raises(ValueError):
        F4Elem.from_symbol("x")


def test_expand_example():
    v = F4Vector((F4Elem.ONE, F4Elem.W))
    assert str(f4_expand(v)) == "0110"


def test_expand_zero_vector():
    b = f4_expand(F4Vector.from_string("000"))
    assert b.length == 6 and b.bits == 0


def test_compress_rejects_odd_length():
    with pytest.raises(ValueError):
        f4_compress(BitVector(5, 0))


f4_vectors = st.lists(st.sampled_from("01wW"), min_size=1, max_size=9).map("".join)


@given(f4_vectors)
def test_expand_compress_round_trip(s):
    v = F4Vector.from_string(s)
    assert f4_compress(f4_expand(v)) == v
    assert str(v) == s


@given(f4_vectors, st.data())
def test_expand_is_linear(s, data):
    t = data.draw(st.lists(st.sampled_from("01wW"), min_size=len(s), max_size=len(s)).map("".join))
    u, v = F4Vector.from_string(s), F4Vector.from_string(t)
    assert f4_expand(u + v) == f4_expand(u) ^ f4_expand(v)


@given(f4_vectors)
def test_omega_times_matches_scalar_multiplication(s):
    v = F4Vector.from_string(s)
    assert omega_times(f4_expand(v).bits) == f4_expand(v.scale(F4Elem.W)).bits
    assert pair_weight(f4_expand(v).bits) == v.weight()
