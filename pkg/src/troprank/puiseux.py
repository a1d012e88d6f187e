"""Exact arithmetic in the rational-function subfield of Puiseux series.

An element is a rational function in ``s = tau**(1/N)`` over the rationals,
stored in the normal form ``s**shift * num(s) / den(s)`` with ``num(0) != 0``,
``den(0) != 0``, ``den`` monic and ``gcd(num, den) == 1``. In this form the
valuation is ``shift / N`` and the leading coefficient is ``num(0)/den(0)``.
Polynomials are tuples of ``gmpy2.mpq`` coefficients, lowest degree first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import DimensionError, ParseError, ZeroEntryError
from .semiring import TropMatrix, as_rational, format_rational

Poly = tuple  # tuple[mpq, ...]

_ZERO = mpq(0)
_ONE: Poly = (mpq(1),)
_SCALARS = (int, Fraction, type(_ZERO))


# --- dense univariate polynomials over Q ------------------------------------


def _trim(c: list) -> Poly:
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def p_add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    c = list(a)
    for i, x in enumerate(b):
        c[i] += x
    return _trim(c)


def p_neg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def p_sub(a: Poly, b: Poly) -> Poly:
    return p_add(a, p_neg(b))


def p_scale(a: Poly, k) -> Poly:
    if not k:
        return ()
    return tuple(x * k for x in a)


def p_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    if len(a) == 1:
        return p_scale(b, a[0])
    if len(b) == 1:
        return p_scale(a, b[0])
    c = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] += x * y
    return _trim(c)


def p_shift(a: Poly, k: int) -> Poly:
    """Multiply by s**k (k >= 0)."""
    return (_ZERO,) * k + a if a and k else a


def p_low(a: Poly) -> int:
    """Exponent of the lowest nonzero term."""
    for i, x in enumerate(a):
        if x:
            return i
    raise ZeroDivisionError("zero polynomial has no lowest term")


def p_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    r = list(a)
    lead = b[-1]
    q = [_ZERO] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = r[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for i, y in enumerate(b):
                r[k + i] -= c * y
    return _trim(q), _trim(r[: len(b) - 1])


def p_exact_div(a: Poly, b: Poly) -> Poly:
    q, r = p_divmod(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def p_monic(a: Poly) -> Poly:
    return p_scale(a, 1 / a[-1]) if a and a[-1] != 1 else a


def p_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, p_divmod(a, b)[1]
    return p_monic(a)


def p_eval(a: Poly, x):
    acc = _ZERO
    for c in reversed(a):
        acc = acc * x + c
    return acc


def p_spread(a: Poly, k: int) -> Poly:
    """Substitute s -> s**k."""
    if k == 1 or len(a) <= 1:
        return a
    c = [_ZERO] * ((len(a) - 1) * k + 1)
    for i, x in enumerate(a):
        c[i * k] = x
    return tuple(c)


# --- field elements ------------------------------------------------------------


def required_ramification(*values: Iterable) -> int:
    """Least N making every given rational exponent an integer multiple of 1/N."""
    dens = [1]
    for group in values:
        if isinstance(group, (int, Fraction)):
            group = [group]
        dens.extend(Fraction(x).denominator for x in group)
    return lcm(*dens)


class PuiseuxScalar:
    __slots__ = ("shift", "num", "den", "ram")

    def __init__(self, shift: int, num: Poly, den: Poly = _ONE, ram: int = 1, *, _normal: bool = False):
        if ram < 1:
            raise ValueError("ramification index must be positive")
        if _normal:
            self.shift, self.num, self.den, self.ram = shift, num, den, ram
            return
        if not den:
            raise ZeroDivisionError("zero denominator")
        num = _trim([mpq(x) for x in num])
        den = _trim([mpq(x) for x in den])
        if not num:
            self.shift, self.num, self.den, self.ram = 0, (), _ONE, ram
            return
        k = p_low(num)
        if k:
            num, shift = num[k:], shift + k
        k = p_low(den)
        if k:
            den, shift = den[k:], shift - k
        if len(den) > 1 and len(num) > 1:
            g = p_gcd(num, den)
            if len(g) > 1:
                num, den = p_exact_div(num, g), p_exact_div(den, g)
        lead = den[-1]
        if lead != 1:
            num, den = p_scale(num, 1 / lead), p_scale(den, 1 / lead)
        self.shift, self.num, self.den, self.ram = shift, num, den, ram

    # constructors

    @classmethod
    def zero(cls, ram: int = 1) -> PuiseuxScalar:
        return cls(0, (), _ONE, ram, _normal=True)

    @classmethod
    def const(cls, c, ram: int = 1) -> PuiseuxScalar:
        c = mpq(as_rational(c))
        return cls(0, (c,) if c else (), _ONE, ram, _normal=True)

    @classmethod
    def from_laurent(cls, terms: dict, ram: int = 1) -> PuiseuxScalar:
        """Build ``sum c * s**e`` from a mapping exponent (in units of 1/N) -> coefficient."""
        terms = {int(e): mpq(as_rational(c)) for e, c in terms.items() if c}
        if not terms:
            return cls.zero(ram)
        lo, hi = min(terms), max(terms)
        return cls(lo, tuple(terms.get(e, _ZERO) for e in range(lo, hi + 1)), _ONE, ram)

    # basic queries

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def ord(self) -> Fraction:
        if not self.num:
            raise ZeroDivisionError("ord of zero is undefined")
        return Fraction(self.shift, self.ram)

    def orc(self) -> Fraction:
        if not self.num:
            raise ZeroDivisionError("orc of zero is undefined")
        q = self.num[0] / self.den[0]
        return Fraction(int(q.numerator), int(q.denominator))

    def is_laurent(self) -> bool:
        return len(self.den) == 1

    @property
    def numerator(self) -> Poly:
        """Numerator as a polynomial in s (nonnegative exponents)."""
        return p_shift(self.num, self.shift) if self.shift > 0 else self.num

    @property
    def denominator(self) -> Poly:
        return p_shift(self.den, -self.shift) if self.shift < 0 else self.den

    # ramification

    def promote(self, ram: int) -> PuiseuxScalar:
        if ram == self.ram:
            return self
        if ram % self.ram:
            raise ValueError(f"cannot promote ramification {self.ram} to {ram}")
        k = ram // self.ram
        return PuiseuxScalar(self.shift * k, p_spread(self.num, k), p_spread(self.den, k), ram, _normal=True)

    def _coerce(self, other) -> tuple[PuiseuxScalar, PuiseuxScalar]:
        if not isinstance(other, PuiseuxScalar):
            other = PuiseuxScalar.const(other, self.ram)
        if other.ram == self.ram:
            return self, other
        n = lcm(self.ram, other.ram)
        return self.promote(n), other.promote(n)

    # arithmetic

    def __neg__(self):
        return PuiseuxScalar(self.shift, p_neg(self.num), self.den, self.ram, _normal=True)

    def __add__(self, other):
        if not isinstance(other, (PuiseuxScalar, *_SCALARS)):
            return NotImplemented
        a, b = self._coerce(other)
        if not a.num:
            return b
        if not b.num:
            return a
        e = min(a.shift, b.shift)
        if a.den == b.den:
            num = p_add(p_shift(a.num, a.shift - e), p_shift(b.num, b.shift - e))
            den = a.den
        else:
            num = p_add(p_shift(p_mul(a.num, b.den), a.shift - e), p_shift(p_mul(b.num, a.den), b.shift - e))
            den = p_mul(a.den, b.den)
        return PuiseuxScalar(e, num, den, a.ram)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (PuiseuxScalar, *_SCALARS)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (PuiseuxScalar, *_SCALARS)):
            return NotImplemented
        a, b = self._coerce(other)
        if not a.num or not b.num:
            return PuiseuxScalar.zero(a.ram)
        if len(a.den) == 1 and len(b.den) == 1:
            return PuiseuxScalar(a.shift + b.shift, p_mul(a.num, b.num), _ONE, a.ram, _normal=True)
        # cross-cancel: gcd(a.num, b.den) and gcd(b.num, a.den)
        an, ad, bn, bd = a.num, a.den, b.num, b.den
        if len(an) > 1 and len(bd) > 1:
            g = p_gcd(an, bd)
            if len(g) > 1:
                an, bd = p_exact_div(an, g), p_exact_div(bd, g)
        if len(bn) > 1 and len(ad) > 1:
            g = p_gcd(bn, ad)
            if len(g) > 1:
                bn, ad = p_exact_div(bn, g), p_exact_div(ad, g)
        num, den = p_mul(an, bn), p_mul(ad, bd)
        lead = den[-1]
        if lead != 1:
            num, den = p_scale(num, 1 / lead), p_scale(den, 1 / lead)
        return PuiseuxScalar(a.shift + b.shift, num, den, a.ram, _normal=True)

    __rmul__ = __mul__

    def inverse(self) -> PuiseuxScalar:
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        lead = self.num[-1]
        return PuiseuxScalar(-self.shift, p_scale(self.den, 1 / lead), p_scale(self.num, 1 / lead), self.ram, _normal=True)

    def __truediv__(self, other):
        if not isinstance(other, (PuiseuxScalar, *_SCALARS)):
            return NotImplemented
        a, b = self._coerce(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = PuiseuxScalar.const(1, self.ram)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, (PuiseuxScalar, *_SCALARS)):
            return NotImplemented
        a, b = self._coerce(other)
        return a.shift == b.shift and a.num == b.num and a.den == b.den

    def __hash__(self):
        if not self.num:
            return hash(0)
        return hash((self.ord(), self.orc()))

    def __repr__(self):
        return f"PuiseuxScalar({self})"

    def __str__(self):
        def render(poly, shift):
            terms = []
            for i, c in enumerate(poly):
                if not c:
                    continue
                e = Fraction(i + shift, self.ram)
                if e == 0:
                    terms.append(format_rational(c))
                else:
                    coeff = "" if c == 1 else "-" if c == -1 else format_rational(c) + "*"
                    terms.append(f"{coeff}t^{format_rational(e)}" if e != 1 else f"{coeff}t")
            return " + ".join(terms).replace("+ -", "- ") or "0"

        if not self.num:
            return "0"
        num = render(self.num, max(self.shift, 0))
        if len(self.den) == 1 and self.shift >= 0:
            return num
        den = render(self.den, max(-self.shift, 0))
        return f"({num})/({den})"

    # serialization

    def to_dict(self) -> dict:
        """Numerator and denominator as ``[exponent of tau, coefficient]`` pairs of "p/q" strings.

        Exponents are multiples of ``1/N``; the ramification N is stored by the caller.
        """
        def terms(poly):
            return [[format_rational(Fraction(i, self.ram)), format_rational(c)] for i, c in enumerate(poly) if c]

        return {"num": terms(self.numerator), "den": terms(self.denominator)}

    @classmethod
    def from_dict(cls, d: dict, ram: int) -> PuiseuxScalar:
        def poly(terms):
            out = {}
            for e, c in terms:
                e = as_rational(e) * ram
                if e.denominator != 1 or e < 0:
                    raise ParseError(f"exponent {format_rational(e / ram)} is not a nonnegative multiple of 1/{ram}")
                e = int(e)
                out[e] = out.get(e, _ZERO) + mpq(as_rational(c))
            if not out:
                return ()
            return tuple(out.get(i, _ZERO) for i in range(max(out) + 1))

        try:
            num, den = poly(d["num"]), poly(d["den"])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed field element {d!r}") from exc
        if not _trim(list(den)):
            raise ParseError("serialized denominator is zero")
        return cls(0, num, den, ram)


def monomial(a, c=1, ram: int | None = None) -> PuiseuxScalar:
    """``c * tau**a``; ``a * ram`` must be an integer."""
    a, c = as_rational(a), as_rational(c)
    if c == 0:
        raise ValueError("monomial coefficient must be nonzero")
    if ram is None:
        ram = a.denominator
    e = a * ram
    if e.denominator != 1:
        raise ValueError(f"exponent {a} not representable with ramification {ram}")
    return PuiseuxScalar(int(e), (mpq(c),), _ONE, ram, _normal=True)


def ord_of(x: PuiseuxScalar) -> Fraction:
    return x.ord()


def orc_of(x: PuiseuxScalar) -> Fraction:
    return x.orc()


# --- matrices over the field -----------------------------------------------------


def _common_ram(rows: Sequence[Sequence[PuiseuxScalar]]) -> int:
    return lcm(*(x.ram for r in rows for x in r))


def promote_rows(rows: Sequence[Sequence[PuiseuxScalar]], ram: int | None = None):
    ram = ram or _common_ram(rows)
    return [[x.promote(ram) for x in r] for r in rows], ram


@dataclass(frozen=True)
class LiftMatrix:
    """Matrix of nonzero field elements sharing one ramification index."""

    entries: tuple[tuple[PuiseuxScalar, ...], ...]
    ram: int

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise DimensionError("empty lift matrix")
        width = len(self.entries[0])
        for i, r in enumerate(self.entries):
            if len(r) != width:
                raise DimensionError("ragged lift matrix")
            for j, x in enumerate(r):
                if x.is_zero():
                    raise ZeroEntryError(f"lift entry ({i}, {j}) is zero")
                if x.ram != self.ram:
                    raise ValueError("entries must share the matrix ramification")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[PuiseuxScalar]], ram: int | None = None) -> LiftMatrix:
        rows, ram = promote_rows(rows, ram)
        return cls(tuple(tuple(r) for r in rows), ram)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def ords(self) -> TropMatrix:
        return TropMatrix(tuple(tuple(x.ord() for x in r) for r in self.entries))

    def transpose(self) -> LiftMatrix:
        return LiftMatrix(tuple(zip(*self.entries)), self.ram)

    def submatrix(self, rows=None, cols=None) -> LiftMatrix:
        rows = range(self.rows) if rows is None else rows
        cols = range(self.cols) if cols is None else cols
        return LiftMatrix(tuple(tuple(self.entries[i][j] for j in cols) for i in rows), self.ram)

    def scaled(self, row_exps=None, col_exps=None) -> LiftMatrix:
        """Multiply row i by tau**row_exps[i] and column j by tau**col_exps[j]."""
        ro = [Fraction(0)] * self.rows if row_exps is None else list(row_exps)
        co = [Fraction(0)] * self.cols if col_exps is None else list(col_exps)
        ram = lcm(self.ram, required_ramification(ro, co))
        out = []
        for i, r in enumerate(self.entries):
            out.append(tuple(x.promote(ram) * monomial(ro[i] + co[j], 1, ram) for j, x in enumerate(r)))
        return LiftMatrix(tuple(out), ram)

    def to_lists(self):
        return [list(r) for r in self.entries]


# --- exact linear algebra ----------------------------------------------------------


def _clear_row(row: Sequence[PuiseuxScalar]) -> tuple[list[Poly], Poly, int]:
    """Scale a row to polynomials in s.

    Returns ``(polys, den, low)`` with ``polys[j] == row[j] * den * s**-low``;
    ``den`` has order 0, so the scaling only moves valuations by ``low``.
    """
    den: Poly = _ONE
    low = 0
    for x in row:
        if x.num:
            if len(x.den) > 1 and den != x.den:
                den = p_mul(den, p_exact_div(x.den, p_gcd(den, x.den)))
            low = min(low, x.shift)
    out = []
    for x in row:
        if not x.num:
            out.append(())
            continue
        factor = p_exact_div(den, x.den) if len(x.den) > 1 else den
        out.append(p_shift(p_mul(x.num, factor), x.shift - low))
    return out, den, low


def laurent_row(row: Sequence[PuiseuxScalar]) -> list[PuiseuxScalar]:
    """Multiply a row by the order-0 common denominator of its entries.

    Valuations are unchanged and the result spans the same line, so lifts can
    keep polynomial entries.
    """
    if all(len(x.den) == 1 for x in row):
        return list(row)
    polys, den, low = _clear_row(row)
    ram = row[0].ram
    out = []
    for p in polys:
        out.append(PuiseuxScalar(low, p, _ONE, ram) if p else PuiseuxScalar.zero(ram))
    return out


def _is_one(p: Poly) -> bool:
    return len(p) == 1 and p[0] == 1


def _bareiss(m: list[list[Poly]], square: bool) -> tuple[int, Poly, int]:
    """Fraction-free elimination over Q[s] with full pivoting, in place.

    Returns ``(rank, last pivot, sign)``; for a square matrix of full rank the
    last pivot is the determinant up to ``sign``.
    """
    nrows, ncols = len(m), len(m[0])
    prev: Poly = _ONE
    rank = 0
    sign = 1
    live_cols = list(range(ncols))
    for k in range(nrows):
        pivot = None
        cols = live_cols[:1] if square else live_cols
        for j in cols:
            for i in range(k, nrows):
                if m[i][j]:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        pi, pj = pivot
        if pi != k:
            m[k], m[pi] = m[pi], m[k]
            sign = -sign
        live_cols.remove(pj)
        pk = m[k][pj]
        for i in range(k + 1, nrows):
            mik = m[i][pj]
            for j in live_cols:
                val = p_sub(p_mul(m[i][j], pk), p_mul(mik, m[k][j]))
                m[i][j] = val if _is_one(prev) else p_exact_div(val, prev)
            m[i][pj] = ()
        prev = pk
        rank += 1
    return rank, prev, sign


def matrix_rank(f) -> int:
    """Exact rank over the rational-function field by fraction-free elimination.

    Rows are first cleared of denominators (a field scaling that keeps the
    rank), then Bareiss elimination runs over Q[s] with exact divisions.
    """
    rows = f.entries if isinstance(f, LiftMatrix) else f
    if not rows:
        return 0
    rows, _ = promote_rows(rows)
    m = [_clear_row(r)[0] for r in rows]
    return _bareiss(m, square=False)[0]


def det(rows: Sequence[Sequence[PuiseuxScalar]]) -> PuiseuxScalar:
    """Determinant via fraction-free elimination; a single gcd at the end."""
    a, ram = promote_rows(rows)
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionError("determinant of a non-square matrix")
    cleared = [_clear_row(r) for r in a]
    m = [c[0] for c in cleared]
    rank, d, sign = _bareiss(m, square=True)
    if rank < n:
        return PuiseuxScalar.zero(ram)
    den: Poly = _ONE
    for _, dd, _ in cleared:
        if len(dd) > 1:
            den = p_mul(den, dd)
    low = sum(c[2] for c in cleared)
    return PuiseuxScalar(low, p_scale(d, sign), den, ram)


def cramer(a: Sequence[Sequence[PuiseuxScalar]], b: Sequence[PuiseuxScalar]):
    """Solution of ``x @ a = b`` as ``(numerators, d)`` with ``x_k = numerators[k] / d``; None if singular.

    Nothing is divided, so Laurent inputs give Laurent numerators and ``d``.
    """
    a = [list(r) for r in a]
    d = det(a)
    if not d:
        return None
    return [det(a[:k] + [list(b)] + a[k + 1:]) for k in range(len(a))], d


def solve_left(a: Sequence[Sequence[PuiseuxScalar]], b: Sequence[PuiseuxScalar]) -> list[PuiseuxScalar] | None:
    """Solve ``x @ a = b`` for square nonsingular ``a`` by Cramer's rule; None if singular."""
    sol = cramer(a, b)
    if sol is None:
        return None
    nums, d = sol
    inv = d.inverse()
    return [x * inv for x in nums]


def row_basis(rows: Sequence[Sequence[PuiseuxScalar]]) -> list[int]:
    """Indices of a maximal linearly independent subset of rows (greedy, in order)."""
    rows, _ = promote_rows(rows)
    chosen: list[int] = []
    for idx, r in enumerate(rows):
        if matrix_rank([rows[i] for i in chosen] + [r]) > len(chosen):
            chosen.append(idx)
    return chosen


def combine_rows(coeffs: Sequence[PuiseuxScalar | None], rows: Sequence[Sequence[PuiseuxScalar]]) -> list[PuiseuxScalar]:
    """``sum_i coeffs[i] * rows[i]``; None coefficients are skipped."""
    width = len(rows[0])
    out = None
    for c, r in zip(coeffs, rows):
        if c is None or c.is_zero():
            continue
        term = [c * x for x in r]
        out = term if out is None else [x + y for x, y in zip(out, term)]
    if out is None:
        ram = rows[0][0].ram
        return [PuiseuxScalar.zero(ram)] * width
    return out
