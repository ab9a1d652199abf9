import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from addcodes import catalog
from addcodes.code import AdditiveCode, min_distance, strength, symplectic_dual
from addcodes.geometry import (
    CodeObject,
    ObjectFamily,
    code_from_family,
    enumerate_lines,
    family_from_code,
    family_strength,
    format_family,
    general_position,
    hyperplane_deficiency,
    iter_line_gens,
    lexkey,
    line_count,
    lines_of_linear_code,
    min_hyperplane,
    parse_family,
)
from addcodes.linalg2 import reverse_string_bits


def test_lexkey_is_string_order():
    vecs = [reverse_string_bits(s) for s in ("100", "011", "001", "110")]
    ordered = sorted(vecs, key=lambda v: lexkey(v, 3))
    assert [format(v, "03b")[::-1] for v in ordered] == ["001", "011", "100", "110"]


def test_canonical_line_uses_two_smallest_points():
    obj = CodeObject.from_strings("111", "100")
    assert str(obj) == "2 011 100"
    assert obj == CodeObject.from_strings("011", "111")
    assert obj.rank == 2 and len(obj.points()) == 3


def test_object_order_is_rank_then_generators():
    pt = CodeObject.from_strings("111")
    line = CodeObject.from_strings("001", "010")
    zero = CodeObject(3)
    assert sorted([line, pt, zero]) == [zero, pt, line]


def test_code_object_rejects_dependent_gens():
    with pytest.raises(ValueError):
        CodeObject(3, (1, 1))
    with pytest.raises(ValueError):
        CodeObject.spanned_by(3, [1, 2, 4])


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_lines_match_oracle(m):
    lines = enumerate_lines(m)
    assert len(lines) == line_count(m) == len(oracles.lines_pg(m))
    as_sets = {frozenset(tuple((p >> i) & 1 for i in range(m)) for p in ln.points()) for ln in lines}
    assert as_sets == oracles.lines_pg(m)
    assert lines == sorted(lines)


def test_line_count_pg72():
    assert line_count(8) == 10795
    assert sum(1 for _ in iter_line_gens(6)) == line_count(6)


def test_enumerate_lines_needs_m_at_least_two():
    with pytest.raises(ValueError):
        enumerate_lines(1)


# --------------------------------------------------------- code <-> family


def test_family_of_hexacode():
    fam = family_from_code(catalog.hexacode())
    assert fam.ambient == 6 and len(fam) == 6
    assert fam.counts() == {0: 0, 1: 0, 2: 6}
    assert family_strength(fam) == 3


def test_configuration_one_has_zero_object():
    fam = family_from_code(catalog.configuration(1))
    assert fam.counts()[0] == 1
    assert family_strength(fam) == 0
    fam5 = family_from_code(catalog.configuration(5))
    assert fam5.counts() == {0: 0, 1: 0, 2: 7}


@st.composite
def codes(draw, max_n=6, max_r=8):
    n = draw(st.integers(1, max_n))
    r = draw(st.integers(1, min(max_r, 2 * n)))
    rows = draw(st.lists(st.integers(0, (1 << (2 * n)) - 1), min_size=r, max_size=r))
    c = AdditiveCode.spanned_by(n, rows)
    return c


@given(codes())
def test_family_round_trip_preserves_parameters(c):
    fam = family_from_code(c)
    c2 = code_from_family(fam)
    assert (c2.n, c2.r) == (c.n, c.r)
    assert family_from_code(c2) == fam
    assert min_distance(c2) == min_distance(c)


@given(codes())
def test_deficiency_equals_minimum_distance(c):
    if c.r:
        assert hyperplane_deficiency(family_from_code(c)) == min_distance(c)


@given(codes())
def test_family_strength_matches_code_strength_without_degenerate_pairs(c):
    fam = family_from_code(c)
    if all(o.rank == 2 for o in fam):
        assert family_strength(fam) == strength(c)


def test_min_hyperplane_witness():
    fam = family_from_code(catalog.hexacode())
    d, h = min_hyperplane(fam)
    assert d == 4
    assert sum(1 for o in fam if not o.contained_in_hyperplane(h)) == 4


def test_quadric_family_strength_and_deficiency():
    fam = catalog.quadric_lines()
    assert (fam.ambient, len(fam)) == (8, 17)
    assert family_strength(fam) == 3
    assert hyperplane_deficiency(fam) == 12


def test_lines_of_linear_code_rejects_zero_column():
    assert len(lines_of_linear_code(["1w", "10"])) == 2
    with pytest.raises(ValueError, match="column 1"):
        lines_of_linear_code(["10", "w0"])


def test_general_position():
    a = CodeObject.from_strings("1000", "0100")
    b = CodeObject.from_strings("0010", "0001")
    c = CodeObject.from_strings("1010", "0101")
    assert general_position([a, b])
    assert not general_position([a, b, c])


# ------------------------------------------------------------------ text


def test_family_text_round_trip():
    fam = catalog.code_22_family()
    text = format_family(fam)
    assert text.splitlines()[0] == "9 22"
    assert parse_family(text) == fam


def test_family_text_canonicalizes():
    fam = parse_family("3 2\n2 111 100\n1 010\n")
    assert str(fam[0]) == "2 011 100"
    assert fam.counts() == {0: 0, 1: 1, 2: 1}


@pytest.mark.parametrize(
    "text",
    ["", "3\n", "3 2\n2 111 100\n", "3 1\n2 111 111\n", "3 1\n2 11 100\n", "3 1\n1 111\nextra\n"],
)
def test_family_parse_errors(text):
    with pytest.raises(ValueError):
        parse_family(text)


def test_family_rejects_mixed_ambient():
    with pytest.raises(ValueError):
        ObjectFamily(3, (CodeObject.from_strings("1000"),))


def test_dual_family_of_configuration_has_strength_five():
    fam = family_from_code(symplectic_dual(catalog.configuration(4)))
    assert (fam.ambient, len(fam)) == (12, 7)
    assert family_strength(fam) == 5
