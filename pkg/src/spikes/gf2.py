"""Exact linear algebra over GF(2) on dense bitset rows.

Rows are Python ints used as bitsets: bit j of a row holds the entry in
column j.  Nothing in this package needs more than about 20 columns, so a
single machine word per row beats numpy arrays and sparse structures
alike.  All values are immutable and every operation returns a fresh
object, which makes them safe to fan out across worker processes.

Column labels are first class: a matrix carries an ordered tuple of
distinct labels and higher layers address columns by label, never by
index.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DimensionMismatch, MemoryBudget, UnknownLabel

#: Largest kernel dimension ``nullspace_vectors`` will expand (2**24 vectors).
DEFAULT_MAX_FREE = 24


@dataclass(frozen=True)
class BitVec:
    """Fixed-length bit vector; bit i of ``bits`` is position i."""

    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.length < 0:
            raise DimensionMismatch(f"negative length {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise DimensionMismatch(
                f"bits 0x{self.bits:x} do not fit in length {self.length}"
            )

    @classmethod
    def from_positions(cls, length: int, positions: Iterable[int]) -> "BitVec":
        bits = 0
        for p in positions:
            if not 0 <= p < length:
                raise DimensionMismatch(f"position {p} outside 0..{length - 1}")
            bits |= 1 << p
        return cls(length, bits)

    @classmethod
    def from_string(cls, text: str) -> "BitVec":
        """Parse a bitstring like ``"0110"``; the leftmost char is position 0."""
        bits = 0
        for i, ch in enumerate(text):
            if ch == "1":
                bits |= 1 << i
            elif ch != "0":
                raise ValueError(f"invalid bitstring character {ch!r}")
        return cls(len(text), bits)

    def to_string(self) -> str:
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(self.length))

    def get(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise DimensionMismatch(f"position {i} outside 0..{self.length - 1}")
        return self.bits >> i & 1

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.length) if self.bits >> i & 1)

    def popcount(self) -> int:
        return self.bits.bit_count()

    def __xor__(self, other: "BitVec") -> "BitVec":
        if self.length != other.length:
            raise DimensionMismatch(
                f"xor of lengths {self.length} and {other.length}"
            )
        return BitVec(self.length, self.bits ^ other.bits)

    def is_zero(self) -> bool:
        return self.bits == 0


def col_xor(u: BitVec, v: BitVec) -> BitVec:
    """Coordinatewise sum mod 2."""
    return u ^ v


@dataclass(frozen=True)
class GF2Matrix:
    """Dense GF(2) matrix with labeled columns.

    ``rows[i]`` is an int bitset whose bit j is the entry under the column
    labeled ``col_labels[j]``.
    """

    rows: tuple[int, ...]
    col_labels: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "col_labels", tuple(self.col_labels))
        if len(set(self.col_labels)) != len(self.col_labels):
            raise DimensionMismatch("duplicate column labels")
        c = len(self.col_labels)
        for r in self.rows:
            if r < 0 or r >> c:
                raise DimensionMismatch(f"row 0x{r:x} does not fit in {c} columns")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.col_labels)

    @cached_property
    def _col_index(self) -> dict[str, int]:
        return {lab: j for j, lab in enumerate(self.col_labels)}

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[int]], col_labels: Sequence[str]
    ) -> "GF2Matrix":
        c = len(col_labels)
        packed = []
        for row in rows:
            if len(row) != c:
                raise DimensionMismatch(f"row of length {len(row)}, expected {c}")
            bits = 0
            for j, v in enumerate(row):
                if v & 1:
                    bits |= 1 << j
            packed.append(bits)
        return cls(tuple(packed), tuple(col_labels))

    @classmethod
    def from_bitstrings(
        cls, rows: Sequence[str], col_labels: Sequence[str]
    ) -> "GF2Matrix":
        c = len(col_labels)
        packed = []
        for text in rows:
            if len(text) != c:
                raise DimensionMismatch(
                    f"bitstring of length {len(text)}, expected {c}"
                )
            packed.append(BitVec.from_string(text).bits)
        return cls(tuple(packed), tuple(col_labels))

    @classmethod
    def identity(cls, labels: Sequence[str]) -> "GF2Matrix":
        n = len(labels)
        return cls(tuple(1 << i for i in range(n)), tuple(labels))

    @classmethod
    def zeros(cls, nrows: int, col_labels: Sequence[str]) -> "GF2Matrix":
        return cls((0,) * nrows, tuple(col_labels))

    def to_bitstrings(self) -> tuple[str, ...]:
        return tuple(BitVec(self.ncols, r).to_string() for r in self.rows)

    def col_index(self, label: str) -> int:
        try:
            return self._col_index[label]
        except KeyError:
            raise UnknownLabel(f"no column labeled {label!r}") from None

    def row(self, i: int) -> BitVec:
        return BitVec(self.ncols, self.rows[i])

    def column(self, label: str) -> BitVec:
        j = self.col_index(label)
        bits = 0
        for i, r in enumerate(self.rows):
            if r >> j & 1:
                bits |= 1 << i
        return BitVec(self.nrows, bits)

    def column_ints(self) -> tuple[int, ...]:
        """All columns as ints (bit i = row i), in label order."""
        out = [0] * self.ncols
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                out[low.bit_length() - 1] |= 1 << i
                r ^= low
        return tuple(out)

    def with_columns(self, labels: Sequence[str]) -> "GF2Matrix":
        """Submatrix keeping the given columns, in the given order."""
        idx = [self.col_index(lab) for lab in labels]
        rows = []
        for r in self.rows:
            bits = 0
            for newj, oldj in enumerate(idx):
                if r >> oldj & 1:
                    bits |= 1 << newj
            rows.append(bits)
        return GF2Matrix(tuple(rows), tuple(labels))

    def relabel(self, mapping: dict[str, str]) -> "GF2Matrix":
        """Rename columns in place; ``mapping`` may be partial."""
        return GF2Matrix(self.rows, tuple(mapping.get(l, l) for l in self.col_labels))

    def matvec(self, v: BitVec) -> BitVec:
        if v.length != self.ncols:
            raise DimensionMismatch(
                f"vector length {v.length}, expected {self.ncols}"
            )
        bits = 0
        for i, r in enumerate(self.rows):
            if (r & v.bits).bit_count() & 1:
                bits |= 1 << i
        return BitVec(self.nrows, bits)

    def transpose(self) -> "GF2Matrix":
        return GF2Matrix(self.column_ints(), tuple(f"r{i}" for i in range(self.nrows)))


def _echelonize(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot columns)."""
    pivots: list[int] = []
    head = 0
    for col in range(ncols):
        pivot = None
        for i in range(head, len(rows)):
            if rows[i] >> col & 1:
                pivot = i
                break
        if pivot is None:
            continue
        rows[head], rows[pivot] = rows[pivot], rows[head]
        for i in range(len(rows)):
            if i != head and rows[i] >> col & 1:
                rows[i] ^= rows[head]
        pivots.append(col)
        head += 1
    return rows, pivots


def rank(m: GF2Matrix) -> int:
    """GF(2) row rank."""
    _, pivots = _echelonize(list(m.rows), m.ncols)
    return len(pivots)


def rank_of_ints(vecs: Iterable[int]) -> int:
    """Rank of a collection of int bitsets, via an incremental xor basis."""
    basis: dict[int, int] = {}
    for v in vecs:
        while v:
            h = v.bit_length() - 1
            if h in basis:
                v ^= basis[h]
            else:
                basis[h] = v
                break
    return len(basis)


def rref(m: GF2Matrix) -> tuple[GF2Matrix, tuple[int, ...]]:
    """Reduced row echelon form (zero rows dropped) and pivot columns."""
    rows, pivots = _echelonize(list(m.rows), m.ncols)
    return GF2Matrix(tuple(rows[: len(pivots)]), m.col_labels), tuple(pivots)


def nullspace_ints(m: GF2Matrix, max_free: int = DEFAULT_MAX_FREE) -> list[int]:
    """All kernel vectors of ``m`` as ints (bit j = column j), zero included."""
    rows, pivots = _echelonize(list(m.rows), m.ncols)
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    if len(free) > max_free:
        raise MemoryBudget(
            f"nullspace has 2**{len(free)} vectors, budget is 2**{max_free}"
        )
    basis = []
    for f in free:
        bits = 1 << f
        for i, p in enumerate(pivots):
            if rows[i] >> f & 1:
                bits |= 1 << p
        basis.append(bits)
    vectors = [0]
    for b in basis:
        vectors.extend(v ^ b for v in list(vectors))
    return vectors


def nullspace_vectors(m: GF2Matrix, max_free: int = DEFAULT_MAX_FREE) -> list[BitVec]:
    """All 2**(cols - rank) kernel vectors of ``m``, zero included."""
    if m.ncols < 1:
        raise DimensionMismatch("matrix has no columns")
    return [BitVec(m.ncols, v) for v in nullspace_ints(m, max_free)]


def hstack(a: GF2Matrix, b: GF2Matrix) -> GF2Matrix:
    """Concatenate columns; labels must stay distinct."""
    if a.nrows != b.nrows:
        raise DimensionMismatch(f"row counts {a.nrows} and {b.nrows}")
    shift = a.ncols
    rows = tuple(ra | (rb << shift) for ra, rb in zip(a.rows, b.rows))
    return GF2Matrix(rows, a.col_labels + b.col_labels)


def add_row(m: GF2Matrix, v: BitVec) -> GF2Matrix:
    """Append one row; the vector length must equal the column count."""
    if v.length != m.ncols:
        raise DimensionMismatch(f"row length {v.length}, expected {m.ncols}")
    return GF2Matrix(m.rows + (v.bits,), m.col_labels)


def column(m: GF2Matrix, label: str) -> BitVec:
    return m.column(label)
