"""Additive quaternary codes.

An additive ``[n, k]_4`` code is an ``r = 2k`` dimensional binary subspace of
``F_2^{2n}`` whose coordinates come in pairs. Generators are packed integers
(see :mod:`addcodes.linalg2` for the bit layout).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .linalg2 import (
    BinMatrix,
    BitVector,
    F4Vector,
    echelon_basis,
    even_mask,
    f4_expand,
    f4_compress,
    gf2_rank,
    in_span,
    kernel,
    omega_times,
    pair_weight,
    span_elements,
)

DEFAULT_ENUM_LIMIT = 28
DEFAULT_SUBSET_LIMIT = 24


class EnumerationLimitError(RuntimeError):
    """Raised when an exhaustive computation would exceed its configured limit."""


class DegenerateCodeError(ValueError):
    pass


@dataclass(frozen=True)
class AdditiveCode:
    """Binary generator matrix ``gen`` (r x 2n) with independent rows."""

    n: int
    gen: BinMatrix

    def __post_init__(self) -> None:
        if self.gen.ncols != 2 * self.n:
            raise ValueError(f"generator has {self.gen.ncols} columns, expected {2 * self.n}")
        if gf2_rank(self.gen.rows) != self.gen.nrows:
            raise DegenerateCodeError("generator rows are linearly dependent")

    @classmethod
    def from_rows(cls, n: int, rows: Iterable[int]) -> "AdditiveCode":
        return cls(n, BinMatrix(2 * n, tuple(rows)))

    @classmethod
    def spanned_by(cls, n: int, rows: Iterable[int]) -> "AdditiveCode":
        """Code spanned by possibly dependent rows (reduced to a basis)."""
        return cls(n, BinMatrix(2 * n, tuple(echelon_basis(rows))))

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "AdditiveCode":
        m = BinMatrix.from_strings(rows)
        if m.ncols % 2:
            raise ValueError("odd number of binary columns")
        return cls(m.ncols // 2, m)

    @classmethod
    def from_f4_rows(cls, rows: Sequence[F4Vector | str]) -> "AdditiveCode":
        """The F4-linear code spanned by ``rows``: binary generators ``g, w*g``."""
        vecs = [F4Vector.from_string(r) if isinstance(r, str) else r for r in rows]
        if not vecs:
            raise ValueError("need at least one row")
        n = len(vecs[0])
        bits: list[int] = []
        for v in vecs:
            if len(v) != n:
                raise ValueError("ragged GF(4) rows")
            g = f4_expand(v).bits
            bits += [g, omega_times(g)]
        return cls.from_rows(n, bits)

    @property
    def r(self) -> int:
        return self.gen.nrows

    @property
    def k(self) -> float:
        return self.r / 2

    @property
    def rows(self) -> tuple[int, ...]:
        return self.gen.rows

    def k_str(self) -> str:
        return format_k(self.r)

    def coordinate_columns(self, i: int) -> tuple[int, int]:
        """The two generator columns of coordinate ``i`` as r-bit integers."""
        return self.gen.column(2 * i), self.gen.column(2 * i + 1)

    def basis(self) -> list[int]:
        return echelon_basis(self.rows)

    def same_space(self, other: "AdditiveCode") -> bool:
        return self.n == other.n and self.basis() == other.basis()

    def contains(self, word: int) -> bool:
        return in_span(word, self.basis())

    def codewords(self) -> list[int]:
        return span_elements(self.rows)

    def __repr__(self) -> str:
        return f"AdditiveCode([{self.n},{self.k_str()}]_4)"


def format_k(r: int) -> str:
    return str(r // 2) if r % 2 == 0 else f"{r // 2}.5"


@dataclass(frozen=True)
class WeightDistribution:
    counts: tuple[int, ...]

    @property
    def d(self) -> int | None:
        for i, a in enumerate(self.counts):
            if i > 0 and a:
                return i
        return None

    @property
    def total(self) -> int:
        return sum(self.counts)

    def nonzero(self) -> dict[int, int]:
        return {i: a for i, a in enumerate(self.counts) if a}

    def __getitem__(self, i: int) -> int:
        return self.counts[i] if 0 <= i < len(self.counts) else 0

    def __str__(self) -> str:
        return ", ".join(f"A{i}={a}" for i, a in self.nonzero().items())


@dataclass(frozen=True)
class BinaryLinearCode:
    n2: int
    gen: BinMatrix

    def __post_init__(self) -> None:
        if gf2_rank(self.gen.rows) != self.gen.nrows:
            raise DegenerateCodeError("generator rows are linearly dependent")

    @property
    def dim(self) -> int:
        return self.gen.nrows

    def weight_distribution(self, limit: int = DEFAULT_ENUM_LIMIT) -> WeightDistribution:
        _check_limit(self.dim, limit)
        return WeightDistribution(tuple(int(a) for a in _weight_histogram(self.gen.rows, self.n2, False)))

    def min_distance(self, limit: int = DEFAULT_ENUM_LIMIT) -> int | None:
        return self.weight_distribution(limit).d


# ----------------------------------------------------------------- weights


def qweight(word: BitVector | int, length: int | None = None) -> int:
    """Quaternary weight: the number of nonzero coordinate pairs."""
    if isinstance(word, BitVector):
        if word.length % 2:
            raise ValueError("quaternary weight needs an even-length word")
        return pair_weight(word.bits)
    if length is not None and length % 2:
        raise ValueError("quaternary weight needs an even-length word")
    return pair_weight(word)


def _check_limit(r: int, limit: int) -> None:
    if r > limit:
        raise EnumerationLimitError(
            f"enumerating 2^{r} codewords exceeds the limit 2^{limit}; "
            "raise the limit or compute the distance from the dual's strength"
        )


def _split_words(x: int, nwords: int) -> list[int]:
    return [(x >> (64 * j)) & 0xFFFFFFFFFFFFFFFF for j in range(nwords)]


def _weight_histogram(rows: Sequence[int], nbits: int, pairwise: bool) -> np.ndarray:
    """Histogram of (pair or bit) weights over all 2^len(rows) combinations."""
    nwords = max(1, (nbits + 63) // 64)
    maxw = nbits // 2 if pairwise else nbits
    gens = np.array([_split_words(g, nwords) for g in rows], dtype=np.uint64).reshape(len(rows), nwords)
    n_low = min(len(rows), 16)
    low = np.zeros((1, nwords), dtype=np.uint64)
    for g in gens[:n_low]:
        low = np.concatenate([low, low ^ g])
    high = np.zeros((1, nwords), dtype=np.uint64)
    for g in gens[n_low:]:
        high = np.concatenate([high, high ^ g])
    mask = np.uint64(0x5555555555555555)
    one = np.uint64(1)
    hist = np.zeros(maxw + 1, dtype=np.int64)
    block = max(1, (1 << 20) // len(low))
    for start in range(0, len(high), block):
        words = low[None, :, :] ^ high[start:start + block, None, :]
        if pairwise:
            words = (words | (words >> one)) & mask
        w = np.bitwise_count(words).sum(axis=2, dtype=np.int64)
        hist += np.bincount(w.ravel(), minlength=maxw + 1)
    return hist


def weight_distribution(c: AdditiveCode, limit: int = DEFAULT_ENUM_LIMIT) -> WeightDistribution:
    """Exact counts ``A_0..A_n`` by enumerating all 2^r codewords."""
    _check_limit(c.r, limit)
    hist = _weight_histogram(c.rows, 2 * c.n, True)
    return WeightDistribution(tuple(int(a) for a in hist))


def min_distance(c: AdditiveCode, limit: int = DEFAULT_ENUM_LIMIT, method: str = "enumerate") -> int | None:
    """Minimum quaternary weight of a nonzero codeword (``None`` for the zero code).

    ``method="dual"`` uses ``strength(symplectic_dual(c)) + 1`` and needs no
    codeword enumeration; ``"auto"`` picks it when ``r`` exceeds ``limit``.
    """
    if method == "auto":
        method = "enumerate" if c.r <= limit else "dual"
    if method == "dual":
        if c.r == 0:
            return None
        return strength(symplectic_dual(c)) + 1
    if method != "enumerate":
        raise ValueError(f"unknown method {method!r}")
    return weight_distribution(c, limit).d


# ---------------------------------------------------------------- strength


def dependent_subset(columns: Sequence[tuple[int, ...]], t: int) -> tuple[int, ...] | None:
    """First (lexicographic) ``t``-subset of column groups that is not of full rank."""
    for sub in combinations(range(len(columns)), t):
        vecs = [v for i in sub for v in columns[i]]
        if gf2_rank(vecs) < len(vecs):
            return sub
    return None


def strength(c: AdditiveCode, method: str = "subsets", limit: int = DEFAULT_ENUM_LIMIT) -> int:
    """Largest ``t`` such that every ``t`` coordinate pairs have full rank ``2t``.

    ``method="dual"`` returns ``min_distance(symplectic_dual(c)) - 1`` by
    enumerating the dual; ``"auto"`` does so when the dual is the smaller code.
    """
    if method == "auto":
        method = "dual" if 2 * c.n - c.r < c.r and 2 * c.n - c.r <= limit else "subsets"
    if method == "dual":
        if c.r == 2 * c.n:
            return c.n
        return min_distance(symplectic_dual(c), limit) - 1
    if method != "subsets":
        raise ValueError(f"unknown method {method!r}")
    cols = [c.coordinate_columns(i) for i in range(c.n)]
    t = 0
    while t < c.n and 2 * (t + 1) <= c.r:
        if dependent_subset(cols, t + 1) is not None:
            break
        t += 1
    return t


# ------------------------------------------------------------------ duality


def swap_pairs(x: int) -> int:
    """Exchange the two components of every coordinate pair."""
    m = even_mask((x.bit_length() + 1) // 2)
    return ((x & m) << 1) | ((x >> 1) & m)


def symplectic_product(u: int, v: int) -> int:
    """``sum_i a_i d_i + b_i c_i`` for pairs ``u_i = (a_i, b_i)``, ``v_i = (c_i, d_i)``."""
    return (u & swap_pairs(v)).bit_count() & 1


def symplectic_dual(c: AdditiveCode) -> AdditiveCode:
    ker = kernel(c.gen)
    return AdditiveCode.from_rows(c.n, (swap_pairs(x) for x in ker.rows))


def is_symplectic_self_dual(c: AdditiveCode) -> bool:
    if 2 * c.r != 2 * c.n:
        return False
    return all(symplectic_product(u, v) == 0 for u, v in combinations(c.rows, 2))


# ---------------------------------------------------------------- linearity


def is_f4_linear_literal(c: AdditiveCode) -> bool:
    """Closure of the code under coordinatewise multiplication by w."""
    basis = c.basis()
    return all(in_span(omega_times(g), basis) for g in c.rows)


def bb_linearity_test(c: AdditiveCode, limit: int = DEFAULT_SUBSET_LIMIT) -> tuple[bool, tuple[int, ...] | None]:
    """Even-dimension test over every subset of codelines.

    Returns ``(True, None)`` when every subset spans an even binary dimension,
    otherwise ``(False, witness)``. The whole family is tried first (odd ``r``);
    after that subsets are scanned by increasing size.
    """
    if c.n > limit:
        raise EnumerationLimitError(f"subset test over 2^{c.n} subsets exceeds the limit 2^{limit}")
    if c.r % 2:
        return False, tuple(range(c.n))
    cols = [c.coordinate_columns(i) for i in range(c.n)]
    level: dict[tuple[int, ...], list[int]] = {(): []}
    for _size in range(1, c.n + 1):
        nxt: dict[tuple[int, ...], list[int]] = {}
        for sub, basis in level.items():
            start = sub[-1] + 1 if sub else 0
            for i in range(start, c.n):
                ext = echelon_basis([*basis, *cols[i]])
                if len(ext) % 2:
                    return False, (*sub, i)
                nxt[(*sub, i)] = ext
        level = nxt
    return True, None


# ------------------------------------------------- concatenation & bounds


def concatenate_word(x: int, n: int) -> int:
    out = 0
    for i in range(n):
        a = (x >> (2 * i)) & 1
        b = (x >> (2 * i + 1)) & 1
        out |= (a << (3 * i)) | (b << (3 * i + 1)) | ((a ^ b) << (3 * i + 2))
    return out


def concatenate_322(c: AdditiveCode) -> BinaryLinearCode:
    """Replace each pair ``(a, b)`` by ``(a, b, a+b)``: a binary ``[3n, 2k, 2d]`` code."""
    return BinaryLinearCode(3 * c.n, BinMatrix(3 * c.n, tuple(concatenate_word(g, c.n) for g in c.rows)))


def griesmer_bound(dim: int, d: int, q: int) -> int:
    """Smallest length allowed for a linear ``[n, dim, d]_q`` code."""
    if dim < 1 or d < 1 or q < 2:
        raise ValueError("griesmer_bound needs dim >= 1, d >= 1, q >= 2")
    p = min(f for f in range(2, q + 1) if q % f == 0)
    if p ** round(math.log(q, p)) != q:
        raise ValueError(f"q={q} is not a prime power")
    return sum(-(-d // q ** i) for i in range(dim))


# -------------------------------------------------------------- shortening


def _delete_pair(x: int, i: int) -> int:
    low = x & ((1 << (2 * i)) - 1)
    return low | ((x >> (2 * i + 2)) << (2 * i))


def shorten(c: AdditiveCode, coord: int) -> AdditiveCode:
    """Keep the codewords that vanish at ``coord`` and delete that coordinate."""
    if not 0 <= coord < c.n:
        raise IndexError(f"coordinate {coord} out of range for length {c.n}")
    pair = 0b11 << (2 * coord)
    rows = list(c.rows)
    for bit in (2 * coord, 2 * coord + 1):
        piv = next((g for g in rows if (g >> bit) & 1), None)
        if piv is None:
            continue
        rows.remove(piv)
        rows = [g ^ piv if (g >> bit) & 1 else g for g in rows]
    assert all(g & pair == 0 for g in rows)
    return AdditiveCode.from_rows(c.n - 1, (_delete_pair(g, coord) for g in rows))


def puncture(c: AdditiveCode, coord: int) -> AdditiveCode:
    """Delete coordinate ``coord`` from every codeword."""
    if not 0 <= coord < c.n:
        raise IndexError(f"coordinate {coord} out of range for length {c.n}")
    return AdditiveCode.spanned_by(c.n - 1, (_delete_pair(g, coord) for g in c.rows))


# ------------------------------------------------------------------- text


def f4_rows(c: AdditiveCode) -> list[F4Vector] | None:
    """An F4 generator matrix for ``c`` or ``None`` if ``c`` is not F4-linear.

    Generators laid out as ``g1, w*g1, g2, w*g2, ...`` are read back verbatim.
    """
    rows = c.rows
    if c.r % 2 == 0 and all(rows[2 * j + 1] == omega_times(rows[2 * j]) for j in range(c.r // 2)):
        return [f4_compress(BitVector(2 * c.n, rows[2 * j])) for j in range(c.r // 2)]
    if not is_f4_linear_literal(c):
        return None
    chosen: list[int] = []
    for g in c.basis():
        if not in_span(g, echelon_basis(chosen)):
            chosen += [g, omega_times(g)]
    return [f4_compress(BitVector(2 * c.n, chosen[2 * j])) for j in range(len(chosen) // 2)]


def format_code(c: AdditiveCode, fmt: str = "binary") -> str:
    """Binary format: ``n r`` then r rows of 2n bits. F4 format: ``n k`` then k symbol rows."""
    if fmt == "binary":
        return "\n".join([f"{c.n} {c.r}", *c.gen.to_strings()]) + "\n"
    if fmt == "f4":
        rows = f4_rows(c)
        if rows is None:
            raise ValueError("code is not F4-linear; no GF(4) generator matrix exists")
        return "\n".join([f"{c.n} {len(rows)}", *(str(v) for v in rows)]) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def parse_code(text: str) -> tuple[AdditiveCode, str]:
    """Parse either text format; returns the code and the detected format name."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty code description")
    head = lines[0].split()
    if len(head) != 2 or not all(h.isdigit() for h in head):
        raise ValueError(f"bad header {lines[0]!r}; expected 'n r'")
    n, count = int(head[0]), int(head[1])
    body = [ln.replace(" ", "") for ln in lines[1:]]
    if len(body) != count:
        raise ValueError(f"header announces {count} rows, found {len(body)}")
    if all(len(b) == 2 * n and set(b) <= set("01") for b in body) and n > 0:
        return AdditiveCode.from_strings(body) if body else AdditiveCode(n, BinMatrix(2 * n)), "binary"
    if all(len(b) == n and set(b) <= set("01wW") for b in body):
        if not body:
            return AdditiveCode(n, BinMatrix(2 * n)), "f4"
        return AdditiveCode.from_f4_rows(body), "f4"
    raise ValueError("rows match neither the binary (2n bits) nor the GF(4) (n symbols) format")

