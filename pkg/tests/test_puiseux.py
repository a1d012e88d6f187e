import random
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, strategies as st

from troprank import LiftMatrix, PuiseuxScalar, matrix_rank, monomial
from troprank.errors import ParseError
from troprank.puiseux import det, required_ramification, row_basis, solve_left

from oracles import POINTS, evaluate, evaluate_rows, leibniz_det, rank_by_minors

RAM = 2
coef = st.fractions(min_value=-5, max_value=5, max_denominator=3)


@st.composite
def elements(draw, nonzero=False, ram=RAM, laurent_only=False):
    """Sums of a few monomials, possibly divided by another sum."""
    def laurent():
        terms = draw(st.dictionaries(st.integers(-4, 6), coef, min_size=1, max_size=3))
        return PuiseuxScalar.from_laurent(terms, ram)

    x = laurent()
    if not laurent_only and draw(st.booleans()):
        d = laurent()
        if d:
            x = x / d
    if nonzero:
        assume(x)
    return x


def test_ord_orc_examples():
    assert PuiseuxScalar.from_laurent({1: 1}, 2).ord() == F(1, 2)
    x = monomial(-1, 2) + 3
    assert x.ord() == -1 and x.orc() == 2
    assert monomial(F(7, 3), 1).orc() == 1
    y = monomial(2, 3) - 1
    assert y.orc() == -1 and y.ord() == 0


def test_field_examples():
    x = monomial(F(1, 2), 5) + 1
    assert (x + (-x)).is_zero()
    assert x * x.inverse() == PuiseuxScalar.const(1, 2)
    u = (PuiseuxScalar.const(1) - monomial(1)).inverse()
    assert u.ord() == 0 and u.orc() == 1 and not u.is_laurent()
    with pytest.raises(ZeroDivisionError):
        PuiseuxScalar.zero().inverse()
    with pytest.raises(ZeroDivisionError):
        PuiseuxScalar.zero().ord()


def test_monomial_examples():
    assert monomial(0, 1) == PuiseuxScalar.const(1)
    m = monomial(F(1, 2), -1, 2)
    assert m == -PuiseuxScalar.from_laurent({1: 1}, 2)
    r = F(5, 2)
    assert monomial(r, 1).ord() == r
    with pytest.raises(ValueError):
        monomial(F(1, 3), 1, 2)
    with pytest.raises(ValueError):
        monomial(1, 0)


@given(elements(), elements(), elements())
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x + y == y + x and x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert (x - x).is_zero()
    if x:
        assert x * x.inverse() == PuiseuxScalar.const(1, RAM)
        assert (y / x) * x == y


@given(elements(nonzero=True), elements(nonzero=True))
def test_valuation(x, y):
    assert (x * y).ord() == x.ord() + y.ord()
    assert (x * y).orc() == x.orc() * y.orc()
    s = x + y
    if x.ord() != y.ord():
        assert s.ord() == min(x.ord(), y.ord())
    elif s:
        assert s.ord() >= x.ord()


@given(elements(), elements(), st.fractions(min_value=F(1, 5), max_value=3, max_denominator=5))
def test_agrees_with_evaluation(x, y, s0):
    """Arithmetic is a homomorphism to Q at points where no denominator vanishes."""
    try:
        ex, ey = evaluate(x, s0), evaluate(y, s0)
        exy = evaluate(x * y, s0)
        esum = evaluate(x + y, s0)
    except ZeroDivisionError:
        assume(False)
    assert esum == ex + ey and exy == ex * ey


def test_ramification_promotion():
    a = monomial(F(1, 2), 1)
    b = monomial(F(1, 3), 1)
    c = a + b
    assert c.ram == 6 and c.ord() == F(1, 3)
    assert required_ramification([F(1, 2), F(2, 3)], 5) == 6


@given(elements())
def test_serialization_round_trip(x):
    assert PuiseuxScalar.from_dict(x.to_dict(), RAM) == x


def test_bad_serialization():
    with pytest.raises(ParseError):
        PuiseuxScalar.from_dict({"num": [["1/3", "1"]], "den": [["0", "1"]]}, 2)
    with pytest.raises(ParseError):
        PuiseuxScalar.from_dict({"num": [["0", "1"]], "den": []}, 1)
    with pytest.raises(ParseError):
        PuiseuxScalar.from_dict({"num": 3}, 1)


def test_matrix_rank_examples():
    rows = [[monomial(0 if i == j else 1) for j in range(3)] for i in range(3)]
    assert matrix_rank(LiftMatrix.from_rows(rows)) == 3
    u = [monomial(1, 2), monomial(0, -1), monomial(F(1, 2), 3)]
    v = [monomial(2, 1), monomial(-1, 5)]
    assert matrix_rank(LiftMatrix.from_rows([[a * b for b in v] for a in u])) == 1
    r = [monomial(0, 1), monomial(1, 2) + 1, monomial(3, 4)]
    assert matrix_rank(LiftMatrix.from_rows([r, [monomial(2, 1)] * 3, r])) <= 2


@given(st.integers(2, 4), st.integers(2, 4), st.data())
def test_matrix_rank_matches_minors(m, n, data):
    pool = data.draw(st.lists(elements(nonzero=True), min_size=2, max_size=4))
    rows = [[data.draw(st.sampled_from(pool)) for _ in range(n)] for _ in range(m)]
    if data.draw(st.booleans()):
        # force a dependency: last row is a combination of the others
        lam = [data.draw(elements()) for _ in range(m - 1)]
        last = [sum((l * r[j] for l, r in zip(lam, rows[:-1])), PuiseuxScalar.zero(RAM)) for j in range(n)]
        assume(all(last))
        rows[-1] = last
    ranks = []
    for s0 in POINTS:
        try:
            ranks.append(rank_by_minors(evaluate_rows(rows, s0)))
        except ZeroDivisionError:
            pass
    assume(ranks)
    # specializing can only drop the rank, and generic points keep it
    assert all(r <= matrix_rank(rows) for r in ranks)
    assert matrix_rank(rows) == max(ranks)


@given(st.integers(1, 4), st.data())
def test_det_and_solve(n, data):
    rational = n <= 2
    rows = [[data.draw(elements(laurent_only=not rational)) for _ in range(n)] for _ in range(n)]
    d = det(rows)
    for s0 in POINTS:
        try:
            assert evaluate(d, s0) == leibniz_det(evaluate_rows(rows, s0))
        except ZeroDivisionError:
            pass
    if d:
        b = [data.draw(elements(laurent_only=True)) for _ in range(n)]
        x = solve_left(rows, b)
        for s0 in POINTS:
            try:
                xs, fs, bs = [evaluate(v, s0) for v in x], evaluate_rows(rows, s0), [evaluate(v, s0) for v in b]
            except ZeroDivisionError:
                continue
            assert [sum(xs[i] * fs[i][j] for i in range(n)) for j in range(n)] == bs


def test_row_basis():
    a = [monomial(0), monomial(1), monomial(2)]
    b = [monomial(1), monomial(0), monomial(2)]
    c = [x + y for x, y in zip(a, b)]
    assert row_basis([a, c, b]) == [0, 1]


def test_lift_matrix_rejects_zero():
    from troprank.errors import ZeroEntryError
    with pytest.raises(ZeroEntryError):
        LiftMatrix.from_rows([[PuiseuxScalar.zero()]])


def test_thousand_seeded_checks():
    rng = random.Random(11)

    def rand():
        terms = {rng.randint(-4, 6): F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(rng.randint(1, 3))}
        x = PuiseuxScalar.from_laurent(terms, RAM)
        return x if x else monomial(0, 1, RAM)

    for _ in range(1000):
        x, y, z = rand(), rand(), rand() / rand()
        assert x * (y + z) == x * y + x * z
        assert (x * y).ord() == x.ord() + y.ord()
        assert (x * z).orc() == x.orc() * z.orc()
