"""Exact linear algebra over GF(2) on bit-packed matrices.

Rows are stored as Python integers (bit j = column j), so row elimination
is a single word-level XOR regardless of width.  All functions are pure;
matrices are immutable after construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class DimensionMismatch(ValueError):
    """Operand shapes do not line up."""


@dataclass(frozen=True)
class BinaryMatrix:
    """Dense matrix over GF(2) with bit-packed rows."""

    rows: int
    cols: int
    row_bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError(f"negative shape {self.rows}x{self.cols}")
        if len(self.row_bits) != self.rows:
            raise ValueError(
                f"row storage holds {len(self.row_bits)} rows, expected {self.rows}"
            )
        mask = (1 << self.cols) - 1
        for i, r in enumerate(self.row_bits):
            if r < 0 or r & ~mask:
                raise ValueError(f"row {i} has bits outside column range 0..{self.cols - 1}")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "BinaryMatrix":
        """Build from an iterable of 0/1 sequences."""
        packed = []
        width = cols
        for row in rows:
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ValueError(f"ragged rows: {len(row)} != {width}")
            bits = 0
            for j, v in enumerate(row):
                if v not in (0, 1):
                    raise ValueError(f"entry {v!r} is not a bit")
                bits |= v << j
            packed.append(bits)
        if width is None:
            raise ValueError("cannot infer column count from an empty iterable")
        return cls(len(packed), width, tuple(packed))

    @classmethod
    def from_bitmasks(cls, masks: Iterable[int], cols: int) -> "BinaryMatrix":
        masks = tuple(masks)
        return cls(len(masks), cols, masks)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BinaryMatrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    # -- element access ----------------------------------------------------

    def entry(self, i: int, j: int) -> int:
        return (self.row_bits[i] >> j) & 1

    def row(self, i: int) -> list[int]:
        r = self.row_bits[i]
        return [(r >> j) & 1 for j in range(self.cols)]

    def to_lists(self) -> list[list[int]]:
        return [self.row(i) for i in range(self.rows)]

    def column_mask(self, j: int) -> int:
        """Column j packed as an integer (bit i = row i)."""
        out = 0
        for i, r in enumerate(self.row_bits):
            out |= ((r >> j) & 1) << i
        return out

    def transpose(self) -> "BinaryMatrix":
        return BinaryMatrix(self.cols, self.rows,
                            tuple(self.column_mask(j) for j in range(self.cols)))

    def row_weight(self, i: int) -> int:
        return bin(self.row_bits[i]).count("1")

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.row_bits)

    # -- text format -------------------------------------------------------

    def to_text(self) -> str:
        """Serialize: first line "rows cols", then one 0/1 line per row."""
        lines = [f"{self.rows} {self.cols}"]
        for i in range(self.rows):
            lines.append(" ".join(str(b) for b in self.row(i)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BinaryMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix text")
        header = lines[0].split()
        if len(header) != 2:
            raise ValueError(f"bad header line {lines[0]!r}, expected 'rows cols'")
        rows, cols = int(header[0]), int(header[1])
        if len(lines) - 1 != rows:
            raise ValueError(f"expected {rows} data lines, found {len(lines) - 1}")
        data = []
        for ln in lines[1:]:
            vals = [int(tok) for tok in ln.split()]
            if len(vals) != cols:
                raise ValueError(f"row width {len(vals)} != {cols}")
            data.append(vals)
        return cls.from_rows(data, cols=cols)

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class StandardFormResult:
    """Row reduction outcome with the column permutation that fronts the pivots."""

    reduced: BinaryMatrix
    rank: int
    column_permutation: tuple[int, ...]
    pivot_columns: tuple[int, ...]


def _eliminate(row_bits: Sequence[int], cols: int) -> tuple[list[int], list[int]]:
    """Gauss-Jordan over GF(2).

    Pivot rule: leftmost available column, topmost available row.  Returns
    (reduced rows, pivot column list); reduced rows above and below each
    pivot are cleared.
    """
    work = list(row_bits)
    nrows = len(work)
    pivots: list[int] = []
    pivot_row = 0
    for col in range(cols):
        bit = 1 << col
        sel = -1
        for r in range(pivot_row, nrows):
            if work[r] & bit:
                sel = r
                break
        if sel < 0:
            continue
        work[pivot_row], work[sel] = work[sel], work[pivot_row]
        for r in range(nrows):
            if r != pivot_row and work[r] & bit:
                work[r] ^= work[pivot_row]
        pivots.append(col)
        pivot_row += 1
        if pivot_row == nrows:
            break
    return work, pivots


def rank(m: BinaryMatrix) -> int:
    """Dimension of the row space over GF(2)."""
    _, pivots = _eliminate(m.row_bits, m.cols)
    return len(pivots)


def kernel_basis(m: BinaryMatrix) -> BinaryMatrix:
    """Basis of the right kernel {v : M v^T = 0}, one vector per row.

    Free variables are enumerated in increasing column order, so the output
    is deterministic; row count is cols - rank.
    """
    reduced, pivots = _eliminate(m.row_bits, m.cols)
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        v = 1 << f
        for i, p in enumerate(pivots):
            if (reduced[i] >> f) & 1:
                v |= 1 << p
        basis.append(v)
    return BinaryMatrix(len(basis), m.cols, tuple(basis))


def standard_form(m: BinaryMatrix) -> StandardFormResult:
    """Row-reduce and front the pivot columns: reduced = [I_r | A].

    column_permutation maps new column position -> original column index
    (pivot columns first in pivot order, then the non-pivots ascending).
    """
    reduced, pivots = _eliminate(m.row_bits, m.cols)
    pivot_set = set(pivots)
    perm = list(pivots) + [c for c in range(m.cols) if c not in pivot_set]
    permuted = []
    for r in reduced:
        out = 0
        for new_j, old_j in enumerate(perm):
            out |= ((r >> old_j) & 1) << new_j
        permuted.append(out)
    return StandardFormResult(
        reduced=BinaryMatrix(m.rows, m.cols, tuple(permuted)),
        rank=len(pivots),
        column_permutation=tuple(perm),
        pivot_columns=tuple(pivots),
    )


def multiply(a: BinaryMatrix, b: BinaryMatrix) -> BinaryMatrix:
    """Matrix product over GF(2)."""
    if a.cols != b.rows:
        raise DimensionMismatch(
            f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}: {a.cols} != {b.rows}"
        )
    out = []
    for r in a.row_bits:
        acc = 0
        rr = r
        while rr:
            j = (rr & -rr).bit_length() - 1
            acc ^= b.row_bits[j]
            rr &= rr - 1
        out.append(acc)
    return BinaryMatrix(a.rows, b.cols, tuple(out))


class RowSpace:
    """Reduced row basis supporting fast membership tests."""

    def __init__(self, m: BinaryMatrix):
        reduced, pivots = _eliminate(m.row_bits, m.cols)
        self.cols = m.cols
        self.pivots = pivots
        self._rows_by_pivot = {p: reduced[i] for i, p in enumerate(pivots)}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v: int) -> int:
        """Reduce a bitmask vector against the basis; 0 iff v is in the span."""
        for p, row in self._rows_by_pivot.items():
            if (v >> p) & 1:
                v ^= row
        return v

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0
