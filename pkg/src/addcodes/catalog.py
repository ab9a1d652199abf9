"""Named constructions: the hexacode, the linear [12,6,6]_4 code, the five
[7,1] configurations, the elliptic quadric of PG(3,4) and its codes, and the
[22,4.5]_4 line family in PG(8,2).

Matrices are kept as strings in display orientation and parsed on build.
Every builder re-checks the parameters recorded in :data:`ENTRIES`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Callable

from .code import (
    AdditiveCode,
    min_distance,
    strength,
    symplectic_dual,
)
from .geometry import CodeObject, ObjectFamily, family_from_code, family_strength, lines_of_linear_code
from .linalg2 import F4Elem, F4Vector, f4_expand, f4_mul, gf2_rank, omega_times, reverse_string_bits
from .search import CompletionProblem, CoverageProblem, F4CompletionProblem


class CatalogError(RuntimeError):
    """A catalog construction failed its own self-check."""


UNKNOWN = "."

# Rows of P in the three stages of the [12,6,6]_4 classification; "." marks
# an undetermined entry.
HEXACODE_ROWS = ("111111", "11wwWW", "1WwW1w")

P3_PARTIAL = (
    "111111",
    "11wwWW",
    "1WwW1w",
    "0w1WwW",
    "......",
    "......",
)

P4_PARTIAL = (
    "111111",
    "11wwWW",
    "0w1WwW",
    "......",
    "......",
    "......",
)

P_FINAL = (
    "111111",
    "11wwWW",
    "0w1WwW",
    "W0Www1",
    "Ww0w1W",
    "w1W0wW",
)

# The [7,1] codes: two binary generators, coordinate pairs separated by spaces.
CONFIGURATIONS = (
    ("10 10 10 10 10 10 00", "01 01 01 01 01 01 00"),
    ("10 10 10 10 10 10 00", "01 01 01 01 01 01 01"),
    ("10 10 10 10 10 01 00", "01 01 01 01 01 00 01"),
    ("10 10 10 10 01 01 00", "01 01 01 01 01 00 01"),
    ("10 10 10 10 10 10 10", "01 01 01 01 01 01 01"),
)

# Codelines L1..L11 of the [22,4.5]_4 code as pairs of sums of basis vectors e1..e9.
LINES_22_SPANS = (
    ("e1", "e2"),
    ("e3", "e4"),
    ("e5", "e6"),
    ("e2+e3+e6", "e1+e2+e4+e5"),
    ("e2+e4+e5+e6", "e1+e3+e5"),
    ("e2+e3+e4+e5", "e1+e4+e6"),
    ("e2+e8", "e3+e4+e7+e8"),
    ("e3+e4+e8", "e1+e3+e7"),
    ("e1+e2+e7", "e1+e3+e8"),
    ("e4+e7", "e1+e2+e7+e8"),
    ("e2+e3+e6+e8", "e3+e4+e5+e7"),
)

# Codelines L12..L22: one column per line, rows e1..e9, two generator bits per entry.
LINES_22_TABLE = (
    "01 00 00 10 00 10 10 10 01 10 01",
    "11 01 01 00 00 00 00 11 10 10 01",
    "01 01 00 10 01 11 01 10 01 10 10",
    "10 00 00 10 11 10 10 00 10 00 00",
    "10 11 10 11 10 11 00 11 10 10 00",
    "10 10 11 01 00 10 10 11 00 01 10",
    "00 10 01 01 01 11 00 10 11 10 11",
    "10 01 10 10 10 10 11 10 00 01 01",
    "01 01 01 01 01 01 01 01 01 01 01",
)


# ------------------------------------------------------------------ parsing


def known_rows(partial: tuple[str, ...]) -> list[F4Vector]:
    """The fully determined leading rows of a partial P matrix."""
    out = []
    for row in partial:
        if UNKNOWN in row:
            break
        out.append(F4Vector.from_string(row))
    for row in partial[len(out):]:
        if set(row) != {UNKNOWN}:
            raise CatalogError(f"partially specified row {row!r} after the known prefix")
    return out


def systematic_rows(p_rows: list[F4Vector] | tuple[str, ...], total: int | None = None) -> list[F4Vector]:
    """Rows ``(e_i | v_i)`` of the generator ``(I | P)``."""
    vecs = [F4Vector.from_string(r) if isinstance(r, str) else r for r in p_rows]
    total = len(vecs) if total is None else total
    one, zero = F4Elem.ONE, F4Elem.ZERO
    return [
        F4Vector(tuple(one if j == i else zero for j in range(total)) + v.elems)
        for i, v in enumerate(vecs)
    ]


def _parse_basis_sum(expr: str, m: int) -> int:
    x = 0
    for term in expr.split("+"):
        term = term.strip()
        if not term.startswith("e"):
            raise CatalogError(f"bad basis term {term!r}")
        j = int(term[1:])
        if not 1 <= j <= m:
            raise CatalogError(f"basis vector {term} outside V_{m}")
        x ^= 1 << (j - 1)
    return x


def _table_lines(table: tuple[str, ...]) -> list[tuple[int, int]]:
    cells = [row.split() for row in table]
    if len({len(c) for c in cells}) != 1:
        raise CatalogError("ragged line table")
    lines = []
    for j in range(len(cells[0])):
        g1 = g2 = 0
        for i, row in enumerate(cells):
            entry = row[j]
            if len(entry) != 2 or set(entry) - set("01"):
                raise CatalogError(f"bad table entry {entry!r}")
            g1 |= int(entry[0]) << i
            g2 |= int(entry[1]) << i
        lines.append((g1, g2))
    return lines


def _code_from_columns(m: int, pairs: list[tuple[int, int]]) -> AdditiveCode:
    cols = [g for pair in pairs for g in pair]
    rows = [sum(1 << j for j, col in enumerate(cols) if (col >> i) & 1) for i in range(m)]
    return AdditiveCode.from_rows(len(pairs), rows)


# ----------------------------------------------------------------- builders


@lru_cache(maxsize=None)
def hexacode() -> AdditiveCode:
    return _checked("hexacode", AdditiveCode.from_f4_rows(HEXACODE_ROWS))


@lru_cache(maxsize=None)
def linear_12_6_6() -> AdditiveCode:
    return _checked("linear_12_6_6", AdditiveCode.from_f4_rows(systematic_rows(P_FINAL)))


@lru_cache(maxsize=None)
def configurations() -> tuple[AdditiveCode, ...]:
    return tuple(_checked(f"config_{i + 1}", AdditiveCode.from_strings(rows)) for i, rows in enumerate(CONFIGURATIONS))


def configuration(i: int) -> AdditiveCode:
    """Configuration ``i`` (1-based)."""
    return configurations()[i - 1]


def _quadric_form(x: tuple[F4Elem, ...]) -> int:
    x0, x1, x2, x3 = x
    return int(f4_mul(x0, x1) ^ f4_mul(x2, x2) ^ f4_mul(x2, x3) ^ f4_mul(F4Elem.W, f4_mul(x3, x3)))


def projective_points_pg3_4() -> list[tuple[F4Elem, ...]]:
    """Points of PG(3,4) with first nonzero coordinate 1, lexicographic in 0<1<w<W."""
    pts = []
    for x in product(F4Elem, repeat=4):
        nz = [e for e in x if e]
        if nz and nz[0] == F4Elem.ONE:
            pts.append(x)
    return pts


def f4_rank(vectors: list[F4Vector]) -> int:
    """GF(4) rank via the binary span of ``v`` and ``w v``."""
    bits = []
    for v in vectors:
        b = f4_expand(v).bits
        bits += [b, omega_times(b)]
    return gf2_rank(bits) // 2


@lru_cache(maxsize=None)
def elliptic_quadric_points() -> tuple[tuple[F4Elem, ...], ...]:
    """Zero set of ``x0 x1 + x2^2 + x2 x3 + w x3^2`` in PG(3,4)."""
    # t^2 + t + w must have no root in GF(4) for the form to be elliptic.
    if any(f4_mul(t, t) ^ t ^ F4Elem.W == 0 for t in F4Elem):
        raise CatalogError("t^2 + t + w is reducible; the quadric is not elliptic")
    pts = tuple(x for x in projective_points_pg3_4() if _quadric_form(x) == 0)
    if len(pts) != 17:
        raise CatalogError(f"quadric has {len(pts)} points, expected 17")
    return pts


def is_cap(points) -> bool:
    """No three of the points are collinear."""
    vecs = [F4Vector(p) for p in points]
    return all(f4_rank(list(t)) == 3 for t in combinations(vecs, 3))


def quadric_matrix() -> list[F4Vector]:
    """The 4 x 17 GF(4) matrix whose columns are the quadric points."""
    pts = elliptic_quadric_points()
    return [F4Vector(tuple(p[i] for p in pts)) for i in range(4)]


@lru_cache(maxsize=None)
def quadric_code_17_4_12() -> AdditiveCode:
    return _checked("quadric_code_17_4_12", AdditiveCode.from_f4_rows(quadric_matrix()))


@lru_cache(maxsize=None)
def quadric_dual_17_13_4() -> AdditiveCode:
    return _checked("quadric_dual_17_13_4", symplectic_dual(quadric_code_17_4_12()))


@lru_cache(maxsize=None)
def quadric_lines() -> ObjectFamily:
    fam = lines_of_linear_code(quadric_matrix())
    if family_strength(fam) != 3:
        raise CatalogError("quadric line family does not have strength 3")
    return fam


def code_22_lines() -> list[tuple[int, int]]:
    """Generator pairs of L1..L22 in V_9 (bit j-1 is the coordinate of e_j)."""
    pairs = [(_parse_basis_sum(a, 9), _parse_basis_sum(b, 9)) for a, b in LINES_22_SPANS]
    return pairs + _table_lines(LINES_22_TABLE)


@lru_cache(maxsize=None)
def code_22_4_5() -> AdditiveCode:
    pairs = code_22_lines()
    if len(pairs) != 22 or any(gf2_rank(p) != 2 for p in pairs):
        raise CatalogError("the 22 codelines are not all lines")
    return _checked("code_22_4_5", _code_from_columns(9, pairs))


@lru_cache(maxsize=None)
def code_22_17_5() -> AdditiveCode:
    return _checked("code_22_17_5", symplectic_dual(code_22_4_5()))


def code_22_family() -> ObjectFamily:
    return family_from_code(code_22_4_5())


# --------------------------------------------------------- search problems


def nu4_completion() -> F4CompletionProblem:
    """Three fixed rows of P; the remaining three must keep distance 6."""
    return F4CompletionProblem(tuple(known_rows(P4_PARTIAL)), total_rows=6, min_distance=6)


def nu3_completion() -> F4CompletionProblem:
    return F4CompletionProblem(tuple(known_rows(P3_PARTIAL)), total_rows=6, min_distance=6)


def final_p_completion() -> F4CompletionProblem:
    return F4CompletionProblem(tuple(known_rows(P_FINAL)), total_rows=6, min_distance=6)


# PG(4,2) covering instance: H0 is the hyperplane y1 = 0, P0 the point off it
# with y1 = 1 and all other coordinates 0.
COVERAGE_P0 = "10000"
COVERAGE_FIXED = (("01000", "10100"), ("00010", "10001"))


def quadric_coverage() -> CoverageProblem:
    m = 5
    p0 = reverse_string_bits(COVERAGE_P0)
    mult = {}
    for x in range(1, 1 << m):
        if x == p0:
            continue
        mult[x] = 2 if x & 1 else 1
    fixed = tuple(CodeObject.from_strings(*g) for g in COVERAGE_FIXED)
    return CoverageProblem(m, 15, mult, fixed, frozenset({p0}))


def quadric_line_completion() -> CompletionProblem:
    """Add an 18th line to the 17 quadric lines of PG(7,2) keeping strength 3."""
    return CompletionProblem(quadric_lines(), 18, 3)


def configuration_completion(i: int) -> CompletionProblem:
    """Complete the 7 codelines of the dual of configuration ``i`` to 12 lines of strength 5."""
    return CompletionProblem(family_from_code(symplectic_dual(configuration(i))), 12, 5)


# ---------------------------------------------------------------- registry


@dataclass(frozen=True)
class Expected:
    n: int
    r: int
    d: int | None = None
    strength: int | None = None
    d_method: str = "enumerate"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str
    build: Callable[[], object]
    expected: Expected | None = None
    description: str = ""
    extra: dict = field(default_factory=dict)


EXPECTED: dict[str, Expected] = {
    "hexacode": Expected(6, 6, 4, 3),
    "linear_12_6_6": Expected(12, 12, 6, 5),
    "config_1": Expected(7, 2, 6, 0),
    "config_2": Expected(7, 2, 6, 0),
    "config_3": Expected(7, 2, 6, 0),
    "config_4": Expected(7, 2, 6, 0),
    "config_5": Expected(7, 2, 7, 1),
    "quadric_code_17_4_12": Expected(17, 8, 12, 3),
    "quadric_dual_17_13_4": Expected(17, 26, 4, None, d_method="dual"),
    "code_22_4_5": Expected(22, 9, None, 3),
    "code_22_17_5": Expected(22, 35, 4, None, d_method="dual"),
}


def _checked(name: str, c: AdditiveCode) -> AdditiveCode:
    exp = EXPECTED[name]
    problems = []
    if (c.n, c.r) != (exp.n, exp.r):
        problems.append(f"[n, r] = [{c.n}, {c.r}], expected [{exp.n}, {exp.r}]")
    if exp.d is not None:
        d = min_distance(c, method=exp.d_method)
        if d != exp.d:
            problems.append(f"d = {d}, expected {exp.d}")
    if exp.strength is not None:
        t = strength(c)
        if t != exp.strength:
            problems.append(f"strength = {t}, expected {exp.strength}")
    if problems:
        raise CatalogError(f"{name}: " + "; ".join(problems))
    return c


ENTRIES: dict[str, CatalogEntry] = {
    e.name: e
    for e in [
        CatalogEntry("hexacode", "f4-linear code", hexacode, EXPECTED["hexacode"], "the [6,3,4]_4 hexacode"),
        CatalogEntry("linear_12_6_6", "f4-linear code", linear_12_6_6, EXPECTED["linear_12_6_6"],
                     "the linear [12,6,6]_4 code with generator (I | P)"),
        *(
            CatalogEntry(f"config_{i}", "additive code", (lambda i=i: configuration(i)), EXPECTED[f"config_{i}"],
                         f"[7,1] configuration {i}")
            for i in range(1, 6)
        ),
        CatalogEntry("quadric_code_17_4_12", "f4-linear code", quadric_code_17_4_12,
                     EXPECTED["quadric_code_17_4_12"], "code of the elliptic quadric in PG(3,4)"),
        CatalogEntry("quadric_dual_17_13_4", "f4-linear code", quadric_dual_17_13_4,
                     EXPECTED["quadric_dual_17_13_4"], "dual of the quadric code"),
        CatalogEntry("quadric_lines", "object family", quadric_lines, None,
                     "17 lines of PG(7,2) from the quadric points"),
        CatalogEntry("code_22_4_5", "additive code", code_22_4_5, EXPECTED["code_22_4_5"],
                     "the [22,4.5]_4 code of strength 3 (lines L1..L22 in PG(8,2))"),
        CatalogEntry("code_22_17_5", "additive code", code_22_17_5, EXPECTED["code_22_17_5"],
                     "the [22,17.5,4]_4 dual"),
        CatalogEntry("code_22_lines", "object family", code_22_family, None, "lines L1..L22"),
        CatalogEntry("p3_partial", "partial P matrix", lambda: P3_PARTIAL, None, "four fixed rows, nu = 3 branch"),
        CatalogEntry("p4_partial", "partial P matrix", lambda: P4_PARTIAL, None, "three fixed rows, nu = 4 branch"),
        CatalogEntry("p_final", "partial P matrix", lambda: P_FINAL, None, "the completed 6 x 6 P"),
        CatalogEntry("nu4_completion", "search problem", nu4_completion, None,
                     "fill rows 4..6 of P after three fixed rows (d = 6)"),
        CatalogEntry("nu3_completion", "search problem", nu3_completion, None,
                     "fill rows 5..6 of P after four fixed rows (d = 6)"),
        CatalogEntry("final_p_completion", "search problem", final_p_completion, None,
                     "the full P as a completion problem (one solution)"),
        CatalogEntry("quadric_coverage", "search problem", quadric_coverage, None,
                     "15 lines of PG(4,2) covering H0 once and the affine part twice"),
        CatalogEntry("quadric_line_completion", "search problem", quadric_line_completion, None,
                     "an 18th line for the quadric lines keeping strength 3"),
        *(
            CatalogEntry(f"config_{i}_completion", "search problem", (lambda i=i: configuration_completion(i)),
                         None, f"complete the dual of configuration {i} to 12 lines of strength 5")
            for i in range(1, 6)
        ),
    ]
}


def build(name: str):
    try:
        entry = ENTRIES[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}") from None
    return entry.build()
