"""Exact min-plus scalars and matrices.

Scalars are plain :class:`fractions.Fraction` values; there is no infinity
element. ``trop_add`` is ``min`` and ``trop_mul`` is ``+``.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import DimensionError, ParseError

TropScalar = Fraction


def as_rational(x, *, allow_decimal: bool = False) -> Fraction:
    """Convert ``x`` to an exact rational.

    Accepts ints, Fractions and strings such as ``"3"`` or ``"-7/2"``. Floats
    and decimal strings are refused unless ``allow_decimal`` is set, in which
    case they are converted through their exact decimal expansion.
    """
    if isinstance(x, bool):
        raise ParseError(f"boolean is not a rational: {x!r}")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        if not allow_decimal:
            raise ParseError(f"float literal {x!r} refused; pass it as 'p/q'")
        return Fraction(Decimal(repr(x)))
    if isinstance(x, Decimal):
        if not allow_decimal:
            raise ParseError(f"decimal {x!r} refused")
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ParseError("empty entry")
        if any(c in s for c in ".eE") and not allow_decimal:
            raise ParseError(f"decimal literal {x!r} refused; pass it as 'p/q'")
        if s.lower() in {"inf", "-inf", "+inf", "infinity", "nan"}:
            raise ParseError(f"non-finite entry {x!r}")
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"cannot parse rational {x!r}") from exc
    raise ParseError(f"unsupported entry type {type(x).__name__}")


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def trop_add(x: Fraction, y: Fraction) -> Fraction:
    return min(x, y)


def trop_mul(x: Fraction, y: Fraction) -> Fraction:
    return x + y


@dataclass(frozen=True)
class TropMatrix:
    """Immutable m x n matrix over the min-plus semiring."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise DimensionError("matrix must have at least one row and one column")
        width = len(self.entries[0])
        for row in self.entries:
            if len(row) != width:
                raise DimensionError("ragged matrix")
            for x in row:
                if not isinstance(x, Fraction):
                    raise TypeError("entries must be Fractions; use TropMatrix.from_rows")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], *, allow_decimal: bool = False) -> TropMatrix:
        return cls(tuple(tuple(as_rational(x, allow_decimal=allow_decimal) for x in row) for row in rows))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> TropMatrix:
        return TropMatrix(tuple(zip(*self.entries)))

    def submatrix(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> TropMatrix:
        rows = range(self.rows) if rows is None else rows
        cols = range(self.cols) if cols is None else cols
        return TropMatrix(tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def common_denominator(self) -> int:
        return lcm(*(x.denominator for r in self.entries for x in r))

    def scaled_integers(self) -> tuple[list[list[int]], int]:
        """Return (integer matrix, D) with integer entries equal to D * self."""
        d = self.common_denominator()
        return [[int(x * d) for x in r] for r in self.entries], d

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(format_rational(x) for x in r) + "]" for r in self.entries) + "]"


def trop_matmul(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return TropMatrix(tuple(
        tuple(min(a[i, k] + b[k, j] for k in range(a.cols)) for j in range(b.cols))
        for i in range(a.rows)
    ))


def trop_matadd(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    return TropMatrix(tuple(tuple(map(min, ra, rb)) for ra, rb in zip(a.entries, b.entries)))


def outer_sum(a: Sequence, b: Sequence) -> TropMatrix:
    """Tropical rank-one matrix with entries ``a[i] + b[j]``."""
    a = [as_rational(x) for x in a]
    b = [as_rational(x) for x in b]
    return TropMatrix(tuple(tuple(x + y for y in b) for x in a))


def shift(a: TropMatrix, row_offsets: Sequence | None = None, col_offsets: Sequence | None = None) -> TropMatrix:
    """Add ``row_offsets[i] + col_offsets[j]`` to every entry (a tropical diagonal scaling)."""
    ro = [Fraction(0)] * a.rows if row_offsets is None else [as_rational(x) for x in row_offsets]
    co = [Fraction(0)] * a.cols if col_offsets is None else [as_rational(x) for x in col_offsets]
    if len(ro) != a.rows or len(co) != a.cols:
        raise DimensionError("offset vector length mismatch")
    return TropMatrix(tuple(tuple(x + ro[i] + co[j] for j, x in enumerate(r)) for i, r in enumerate(a.entries)))


@dataclass(frozen=True)
class Normalization:
    """Result of :func:`normalize`: ``original = matrix + row_offsets[i] + col_offsets[j]``."""

    matrix: TropMatrix
    row_offsets: tuple[Fraction, ...]
    col_offsets: tuple[Fraction, ...]

    def restore(self) -> TropMatrix:
        return shift(self.matrix, self.row_offsets, self.col_offsets)


def normalize(a: TropMatrix, rows: Iterable[int] = (), cols: Iterable[int] = ()) -> Normalization:
    """Subtract line minima so every selected line has minimum exactly 0.

    Selected rows are normalized first, then selected columns of the result.
    """
    rows, cols = set(rows), set(cols)
    ro = tuple(min(a.row(i)) if i in rows else Fraction(0) for i in range(a.rows))
    m = shift(a, [-x for x in ro])
    co = tuple(min(m.col(j)) if j in cols else Fraction(0) for j in range(a.cols))
    m = shift(m, None, [-x for x in co])
    return Normalization(m, ro, co)


@dataclass(frozen=True)
class ZeroPattern:
    positions: frozenset[tuple[int, int]]
    zeros_by_column: tuple[tuple[int, ...], ...]

    @property
    def twin_columns(self) -> tuple[int, ...]:
        """Columns holding at least two zeros (twin zeroes)."""
        return tuple(j for j, z in enumerate(self.zeros_by_column) if len(z) >= 2)

    def zeros_in_row(self, i: int) -> tuple[int, ...]:
        return tuple(sorted(j for (r, j) in self.positions if r == i))


def zero_pattern(a: TropMatrix) -> ZeroPattern:
    pos = frozenset((i, j) for i in range(a.rows) for j in range(a.cols) if a[i, j] == 0)
    by_col = tuple(tuple(i for i in range(a.rows) if a[i, j] == 0) for j in range(a.cols))
    return ZeroPattern(pos, by_col)
