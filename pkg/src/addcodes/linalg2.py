"""Bit-packed GF(2) linear algebra and GF(4) arithmetic.

Vectors are Python integers used as bitsets: bit ``i`` holds coordinate ``i``.
Quaternary symbols occupy coordinate pairs ``(2i, 2i+1)`` and are encoded as
``(a, b) -> a*w + b``, so ``00=0, 01=1, 10=w, 11=W`` where ``W = w^2 = w + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Iterator, Sequence


def even_mask(n_pairs: int) -> int:
    """Mask with the first bit of each of ``n_pairs`` coordinate pairs set."""
    return int("01" * n_pairs, 2) if n_pairs > 0 else 0


def pair_weight(x: int) -> int:
    """Number of nonzero coordinate pairs of a packed word."""
    return ((x | (x >> 1)) & _even(x.bit_length())).bit_count()


def _even(nbits: int, _cache: dict[int, int] = {}) -> int:
    npairs = (nbits + 1) // 2
    m = _cache.get(npairs)
    if m is None:
        m = _cache[npairs] = even_mask(npairs)
    return m


def omega_times(x: int) -> int:
    """Multiply every coordinate pair of a packed word by w: (a, b) -> (a+b, a)."""
    m = _even(x.bit_length())
    a = x & m
    b = (x >> 1) & m
    return (a ^ b) | (a << 1)


def reverse_string_bits(s: str) -> int:
    """Parse a 0/1 string where character ``j`` is coordinate ``j``."""
    if any(ch not in "01" for ch in s):
        raise ValueError(f"not a binary string: {s!r}")
    return int(s[::-1], 2) if s else 0


def bits_to_string(x: int, length: int) -> str:
    return format(x, f"0{length}b")[::-1] if length else ""


# ---------------------------------------------------------------- GF(2)


@dataclass(frozen=True, order=True)
class BitVector:
    """A binary vector of fixed length packed into an integer."""

    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits set beyond vector length")

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        s = s.strip()
        return cls(len(s), reverse_string_bits(s))

    @classmethod
    def from_bits(cls, seq: Iterable[int]) -> "BitVector":
        seq = list(seq)
        return cls(len(seq), sum(1 << i for i, b in enumerate(seq) if b & 1))

    def __str__(self) -> str:
        return bits_to_string(self.bits, self.length)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.bits ^ other.bits)

    __add__ = __xor__

    def weight(self) -> int:
        return self.bits.bit_count()

    def dot(self, other: "BitVector") -> int:
        return (self.bits & other.bits).bit_count() & 1


@dataclass(frozen=True)
class BinMatrix:
    """A binary matrix stored as a tuple of packed rows."""

    ncols: int
    rows: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(self.rows))
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise ValueError("row wider than ncols")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def from_strings(cls, lines: Sequence[str], ncols: int | None = None) -> "BinMatrix":
        lines = [ln.replace(" ", "") for ln in lines]
        if ncols is None:
            ncols = len(lines[0]) if lines else 0
        if any(len(ln) != ncols for ln in lines):
            raise ValueError("ragged matrix rows")
        return cls(ncols, tuple(reverse_string_bits(ln) for ln in lines))

    @classmethod
    def from_vectors(cls, vecs: Sequence[BitVector], ncols: int | None = None) -> "BinMatrix":
        if ncols is None:
            ncols = vecs[0].length if vecs else 0
        if any(v.length != ncols for v in vecs):
            raise ValueError("vector length mismatch")
        return cls(ncols, tuple(v.bits for v in vecs))

    @classmethod
    def identity(cls, n: int) -> "BinMatrix":
        return cls(n, tuple(1 << i for i in range(n)))

    def to_strings(self) -> list[str]:
        return [bits_to_string(r, self.ncols) for r in self.rows]

    def row(self, i: int) -> BitVector:
        return BitVector(self.ncols, self.rows[i])

    def __iter__(self) -> Iterator[BitVector]:
        return (BitVector(self.ncols, r) for r in self.rows)

    def column(self, j: int) -> int:
        """Column ``j`` as a packed integer indexed by row."""
        return sum(1 << i for i, r in enumerate(self.rows) if (r >> j) & 1)

    def transpose(self) -> "BinMatrix":
        return BinMatrix(self.nrows, tuple(self.column(j) for j in range(self.ncols)))

    def times_vector(self, x: int) -> int:
        """Product ``M x^T`` as a packed integer indexed by row."""
        return sum(1 << i for i, r in enumerate(self.rows) if (r & x).bit_count() & 1)


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank of a collection of packed vectors."""
    basis: list[int] = []
    for v in rows:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


def echelon_basis(rows: Iterable[int]) -> list[int]:
    """Reduced basis of the span: distinct leading bits, each cleared elsewhere."""
    basis: dict[int, int] = {}
    for v in rows:
        for lead in sorted(basis, reverse=True):
            if (v >> lead) & 1:
                v ^= basis[lead]
        if v:
            lead = v.bit_length() - 1
            for k in basis:
                if (basis[k] >> lead) & 1:
                    basis[k] ^= v
            basis[lead] = v
    return [basis[k] for k in sorted(basis)]


def in_span(v: int, basis: Sequence[int]) -> bool:
    """Membership test against a basis produced by :func:`echelon_basis`."""
    for b in reversed(basis):
        if (v >> (b.bit_length() - 1)) & 1:
            v ^= b
    return v == 0


def span_elements(basis: Sequence[int]) -> list[int]:
    """All 2^len(basis) vectors of the span, zero first."""
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return out


def rank(m: BinMatrix) -> int:
    return gf2_rank(m.rows)


def kernel(m: BinMatrix) -> BinMatrix:
    """Basis (as rows) of ``{x : m x^T = 0}``."""
    n = m.ncols
    pivots: dict[int, int] = {}  # pivot column -> reduced row
    for r in m.rows:
        for col, prow in pivots.items():
            if (r >> col) & 1:
                r ^= prow
        if r:
            col = (r & -r).bit_length() - 1
            for c in pivots:
                if (pivots[c] >> col) & 1:
                    pivots[c] ^= r
            pivots[col] = r
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        x = 1 << f
        for col, prow in pivots.items():
            if (prow >> f) & 1:
                x |= 1 << col
        basis.append(x)
    return BinMatrix(n, tuple(basis))


# ---------------------------------------------------------------- GF(4)


class F4Elem(IntEnum):
    """GF(4) element; the integer value is ``2a + b`` for the pair ``(a, b)``."""

    ZERO = 0
    ONE = 1
    W = 2
    WBAR = 3

    @property
    def pair(self) -> tuple[int, int]:
        return (self.value >> 1, self.value & 1)

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self.value]

    @classmethod
    def from_symbol(cls, s: str) -> "F4Elem":
        try:
            return cls(_SYMBOLS.index(s))
        except ValueError:
            raise ValueError(f"unknown GF(4) symbol {s!r}") from None

    def __add__(self, other):  # type: ignore[override]
        return F4Elem(self.value ^ int(other))

    __sub__ = __add__

    def __mul__(self, other):  # type: ignore[override]
        return f4_mul(self, other)

    def conj(self) -> "F4Elem":
        return f4_mul(self, self)

    def __str__(self) -> str:
        return self.symbol


_SYMBOLS = "01wW"
_LOG = {1: 0, 2: 1, 3: 2}
_EXP = (1, 2, 3)


def f4_mul(x: int, y: int) -> F4Elem:
    x, y = int(x), int(y)
    if x == 0 or y == 0:
        return F4Elem.ZERO
    return F4Elem(_EXP[(_LOG[x] + _LOG[y]) % 3])


def f4_inv(x: int) -> F4Elem:
    if int(x) == 0:
        raise ZeroDivisionError("zero has no inverse in GF(4)")
    return F4Elem(_EXP[(-_LOG[int(x)]) % 3])


@dataclass(frozen=True)
class F4Vector:
    elems: tuple[F4Elem, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "elems", tuple(F4Elem(int(e)) for e in self.elems))

    @classmethod
    def from_string(cls, s: str) -> "F4Vector":
        return cls(tuple(F4Elem.from_symbol(ch) for ch in s.replace(" ", "")))

    def __str__(self) -> str:
        return "".join(e.symbol for e in self.elems)

    def __len__(self) -> int:
        return len(self.elems)

    def __iter__(self) -> Iterator[F4Elem]:
        return iter(self.elems)

    def __getitem__(self, i: int) -> F4Elem:
        return self.elems[i]

    def __add__(self, other: "F4Vector") -> "F4Vector":
        if len(self) != len(other):
            raise ValueError("length mismatch")
        return F4Vector(tuple(a + b for a, b in zip(self.elems, other.elems)))

    def scale(self, c: int) -> "F4Vector":
        return F4Vector(tuple(f4_mul(c, a) for a in self.elems))

    def weight(self) -> int:
        return sum(1 for e in self.elems if e)


def f4_expand(v: F4Vector) -> BitVector:
    bits = 0
    for i, e in enumerate(v.elems):
        a, b = e.pair
        bits |= (a << (2 * i)) | (b << (2 * i + 1))
    return BitVector(2 * len(v), bits)


def f4_compress(b: BitVector) -> F4Vector:
    if b.length % 2:
        raise ValueError("odd-length vector cannot be read as GF(4) symbols")
    return F4Vector(
        tuple(F4Elem(2 * ((b.bits >> (2 * i)) & 1) + ((b.bits >> (2 * i + 1)) & 1))
              for i in range(b.length // 2))
    )
