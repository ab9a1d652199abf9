"""Points, lines and mixed object families in the binary projective space PG(m-1, 2).

A codeline of an additive code is the span of one coordinate pair of its
generator matrix; it may collapse to a point (rank 1) or vanish (rank 0).
Vectors of ``V_m`` are packed integers, and the lexicographic order used for
canonical forms is the order of their 0/1 strings written coordinate 0 first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .code import DEFAULT_ENUM_LIMIT, AdditiveCode, EnumerationLimitError
from .linalg2 import (
    BinMatrix,
    F4Vector,
    bits_to_string,
    f4_expand,
    gf2_rank,
    omega_times,
    reverse_string_bits,
    span_elements,
)


def lexkey(v: int, m: int) -> int:
    """Sort key realising string order (coordinate 0 most significant)."""
    return int(bits_to_string(v, m), 2) if m else 0


@total_ordering
@dataclass(frozen=True)
class CodeObject:
    """A subspace of dimension 0, 1 or 2 of ``V_m`` in canonical form."""

    m: int
    gens: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if len(self.gens) > 2 or gf2_rank(self.gens) != len(self.gens):
            raise ValueError("gens must be at most two independent vectors")
        if any(g >> self.m for g in self.gens):
            raise ValueError("generator outside the ambient space")

    @classmethod
    def spanned_by(cls, m: int, vecs: Iterable[int]) -> "CodeObject":
        """Canonical object spanned by ``vecs`` (rank must be at most 2)."""
        pts = {x for x in span_elements(_basis(vecs)) if x}
        if len(pts) > 3:
            raise ValueError("vectors span more than a line")
        ordered = sorted(pts, key=lambda x: lexkey(x, m))
        return cls(m, tuple(ordered[:2]) if len(ordered) == 3 else tuple(ordered))

    @classmethod
    def from_strings(cls, *gens: str) -> "CodeObject":
        m = len(gens[0])
        return cls.spanned_by(m, (reverse_string_bits(g) for g in gens))

    @property
    def rank(self) -> int:
        return len(self.gens)

    def points(self) -> list[int]:
        """Nonzero vectors of the object."""
        return [x for x in span_elements(self.gens) if x]

    def sort_key(self) -> tuple:
        return (self.rank, tuple(lexkey(g, self.m) for g in self.gens))

    def __lt__(self, other: "CodeObject") -> bool:
        return self.sort_key() < other.sort_key()

    def contained_in_hyperplane(self, h: int) -> bool:
        return all((g & h).bit_count() % 2 == 0 for g in self.gens)

    def __str__(self) -> str:
        return " ".join([str(self.rank), *(bits_to_string(g, self.m) for g in self.gens)])


def _basis(vecs: Iterable[int]) -> list[int]:
    basis: list[int] = []
    for v in vecs:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return basis


@dataclass(frozen=True)
class ObjectFamily:
    """An ordered multiset of code objects in ``V_ambient``."""

    ambient: int
    objects: tuple[CodeObject, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "objects", tuple(self.objects))
        if any(o.m != self.ambient for o in self.objects):
            raise ValueError("object lives in a different ambient space")

    def __len__(self) -> int:
        return len(self.objects)

    def __iter__(self) -> Iterator[CodeObject]:
        return iter(self.objects)

    def __getitem__(self, i: int) -> CodeObject:
        return self.objects[i]

    def counts(self) -> dict[int, int]:
        """Number of objects of each rank, e.g. lines and points of an (n, m)-set."""
        out = {0: 0, 1: 0, 2: 0}
        for o in self.objects:
            out[o.rank] += 1
        return out

    def extended(self, objs: Iterable[CodeObject]) -> "ObjectFamily":
        return ObjectFamily(self.ambient, (*self.objects, *objs))


# ------------------------------------------------------------- enumeration


def enumerate_lines(m: int) -> list[CodeObject]:
    """All lines of PG(m-1, 2) in canonical order."""
    if m < 2:
        raise ValueError("PG(m-1, 2) has lines only for m >= 2")
    return [CodeObject(m, g) for g in iter_line_gens(m)]


def iter_line_gens(m: int) -> Iterator[tuple[int, int]]:
    """Canonical generator pairs of all lines, in increasing canonical order."""
    vecs = sorted(range(1, 1 << m), key=lambda x: lexkey(x, m))
    key = {v: i for i, v in enumerate(vecs)}
    for i, u in enumerate(vecs):
        for v in vecs[i + 1:]:
            if key[u ^ v] > key[v]:
                yield (u, v)


def line_count(m: int) -> int:
    return ((1 << m) - 1) * ((1 << m) - 2) // 6


# ------------------------------------------------------- code <-> family


def family_from_code(c: AdditiveCode) -> ObjectFamily:
    return ObjectFamily(c.r, tuple(CodeObject.spanned_by(c.r, c.coordinate_columns(i)) for i in range(c.n)))


def code_from_family(f: ObjectFamily) -> AdditiveCode:
    """Generator matrix whose column pair ``i`` holds the canonical gens of object ``i``."""
    cols: list[int] = []
    for o in f.objects:
        g = list(o.gens) + [0] * (2 - o.rank)
        cols += g
    n2 = len(cols)
    rows = [sum(1 << j for j, col in enumerate(cols) if (col >> i) & 1) for i in range(f.ambient)]
    return AdditiveCode(len(f), BinMatrix(n2, tuple(rows)))


def lines_of_linear_code(rows: Sequence[F4Vector | str]) -> ObjectFamily:
    """Lines of ``V_2k`` given by the columns of a k x n GF(4) generator matrix."""
    vecs = [F4Vector.from_string(r) if isinstance(r, str) else r for r in rows]
    k, n = len(vecs), len(vecs[0])
    objs = []
    for i in range(n):
        col = F4Vector(tuple(v[i] for v in vecs))
        if col.weight() == 0:
            raise ValueError(f"column {i} of the GF(4) matrix is zero")
        x = f4_expand(col).bits
        objs.append(CodeObject.spanned_by(2 * k, (x, omega_times(x))))
    return ObjectFamily(2 * k, tuple(objs))


# ------------------------------------------------------------------ analysis


def general_position(objs: Iterable[CodeObject]) -> bool:
    objs = list(objs)
    return gf2_rank(g for o in objs for g in o.gens) == sum(o.rank for o in objs)


def family_strength(f: ObjectFamily) -> int:
    """Largest ``t`` such that every ``t`` objects are in general position.

    A family containing a rank-0 object has strength 0.
    """
    if any(o.rank == 0 for o in f.objects):
        return 0
    t = 0
    while t < len(f):
        if any(not general_position(sub) for sub in combinations(f.objects, t + 1)):
            break
        t += 1
    return t


def min_hyperplane(f: ObjectFamily, limit: int = DEFAULT_ENUM_LIMIT) -> tuple[int, int]:
    """``(deficiency, h)``: fewest objects outside a hyperplane ``h.x = 0``, first such ``h``.

    Hyperplanes are scanned as nonzero dual vectors in lexicographic order.
    """
    m = f.ambient
    if m > limit:
        raise EnumerationLimitError(f"scanning 2^{m} hyperplanes exceeds the limit 2^{limit}")
    if m == 0:
        raise ValueError("the zero space has no hyperplanes")
    idx = np.arange(1, 1 << m, dtype=np.uint64)
    order = np.zeros_like(idx)
    for b in range(m):
        order |= ((idx >> np.uint64(b)) & np.uint64(1)) << np.uint64(m - 1 - b)
    outside = np.zeros(len(order), dtype=np.int64)
    for o in f.objects:
        hit = np.zeros(len(order), dtype=bool)
        for g in o.gens:
            hit |= (np.bitwise_count(order & np.uint64(g)) & np.uint8(1)).astype(bool)
        outside += hit
    j = int(np.argmin(outside))
    return int(outside[j]), int(order[j])


def hyperplane_deficiency(f: ObjectFamily, limit: int = DEFAULT_ENUM_LIMIT) -> int:
    return min_hyperplane(f, limit)[0]


# ---------------------------------------------------------------------- text


def format_family(f: ObjectFamily) -> str:
    return "\n".join([f"{f.ambient} {len(f)}", *(str(o) for o in f.objects)]) + "\n"


def parse_family_lines(lines: Sequence[str]) -> tuple[ObjectFamily, int]:
    """Parse a family block from the start of ``lines``; returns it and lines consumed."""
    if not lines:
        raise ValueError("empty family description")
    head = lines[0].split()
    if len(head) != 2 or not all(h.isdigit() for h in head):
        raise ValueError(f"bad family header {lines[0]!r}; expected 'm count'")
    m, count = int(head[0]), int(head[1])
    if len(lines) < 1 + count:
        raise ValueError(f"family announces {count} objects, found {len(lines) - 1}")
    objs = []
    for ln in lines[1:1 + count]:
        objs.append(parse_object(ln, m))
    return ObjectFamily(m, tuple(objs)), 1 + count


def parse_object(line: str, m: int) -> CodeObject:
    parts = line.split()
    if not parts or not parts[0].isdigit():
        raise ValueError(f"bad object line {line!r}")
    rank, gens = int(parts[0]), parts[1:]
    if len(gens) != rank or any(len(g) != m for g in gens):
        raise ValueError(f"object line {line!r} does not match rank {rank} in dimension {m}")
    obj = CodeObject.spanned_by(m, (reverse_string_bits(g) for g in gens))
    if obj.rank != rank:
        raise ValueError(f"object line {line!r} has dependent generators")
    return obj


def parse_family(text: str) -> ObjectFamily:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    fam, used = parse_family_lines(lines)
    if used != len(lines):
        raise ValueError("trailing lines after family block")
    return fam
