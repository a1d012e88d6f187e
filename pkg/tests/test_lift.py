import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from troprank import LiftMatrix, PuiseuxScalar, matrix_rank, monomial, outer_sum, tropical_rank
from troprank.errors import PatternMismatch, PlanInfeasible, PreconditionError, ZeroEntryError
from troprank.lift import (DevelopPlan, Generic, develop_line, find_hyperplane, in_tropical_rowspace,
                           kapranov_bounds, kapranov_rank3_5col, lift_mirrored_block, lift_full,
                           lift_hyperplane_base, lift_rank1, map_back, match_mirror, plan_generator,
                           solve_coefficients, verify_lift)
from troprank.lift.develop import combine
from troprank.sampling import generated_matrix, random_matrix
from troprank.semiring import normalize, shift, zero_pattern

from conftest import M, matrices


def generic_lift(a, seed=0):
    rng = random.Random(seed)
    return LiftMatrix.from_rows([[monomial(x, rng.choice([-3, -2, -1, 1, 2, 3, 5])) for x in row]
                                 for row in a.entries])


# --- verification and direct lifts ------------------------------------------------

def test_verify_lift_examples():
    assert verify_lift([[monomial(0)]], M([0]), 1).verified
    a, b = [0, 2, F(1, 2)], [1, 0]
    f = [[monomial(x) * monomial(y) for y in b] for x in a]
    assert verify_lift(f, outer_sum(a, b), 1).verified
    one = PuiseuxScalar.const(1)
    f = [[one, one], [one, one + monomial(1)]]
    assert verify_lift(f, M([0, 0], [0, 0]), 2).verified
    assert not verify_lift(f, M([0, 0], [0, 0]), 1).verified


def test_verify_lift_rejects_zero_and_wrong_orders():
    with pytest.raises(ZeroEntryError):
        verify_lift([[PuiseuxScalar.zero()]], M([0]), 1)
    assert not verify_lift([[monomial(1)]], M([0]), 1).verified


def test_lift_rank1_examples():
    c = lift_rank1(M([0, 2], [1, 3]))
    assert c.verified and c.rank_bound == 1
    assert c.lift.entries[1][1] == monomial(3)
    c = lift_rank1(M([0, 0, 0], [0, 0, 0]))
    assert all(x == PuiseuxScalar.const(1) for row in c.lift.entries for x in row)
    with pytest.raises(PreconditionError):
        lift_rank1(M([0, 1], [1, 0]))


def test_lift_full_examples():
    c = lift_full(M([0, 1], [1, 0]))
    assert c.verified and c.rank_bound == 2
    c = lift_full(M([0, 3, F(1, 2)]))
    assert c.verified and c.rank_bound == 1


@given(matrices(rows=(1, 4), cols=(1, 4), entries=st.fractions(-3, 3, max_denominator=2)))
def test_lift_full_orders(a):
    c = lift_full(a, seed=3)
    assert c.verified and c.lift.ords() == a


# --- hyperplane base case -----------------------------------------------------------

def test_find_hyperplane_examples():
    twin = M([0, 0, 1, 2, 0], [0, 1, 0, 0, 3], [2, 0, 0, 1, 0], [1, 2, 3, 0, 2])
    w = find_hyperplane(twin)
    assert w.coefficients == (0, 0, 0, 0)
    assert find_hyperplane(M([0, 1], [1, 0])) is None
    r1 = outer_sum([0, 3, 1], [2, 0, 5, 1])
    w = find_hyperplane(r1)
    assert w is not None and w.is_valid_for(r1)


@given(matrices(rows=(2, 4), cols=(1, 5), entries=st.integers(0, 3)))
def test_find_hyperplane_iff_rank_drop(a):
    w = find_hyperplane(a)
    assert (w is not None) == (tropical_rank(a).rank < a.rows or a.rows > a.cols)
    if w is not None:
        assert w.is_valid_for(a)


def test_hyperplane_base_examples():
    a = M([0, 0, 1, 2, 0], [0, 1, 0, 0, 3], [2, 0, 0, 1, 0], [1, 2, 3, 0, 2])
    assert tropical_rank(a).rank == 3
    c = lift_hyperplane_base(a, find_hyperplane(a), seed=1)
    assert c.verified and c.rank_bound == 3
    c = lift_hyperplane_base(outer_sum([0, 2], [1, 0, 4]))
    assert c.verified and c.rank_bound == 1
    with pytest.raises(PreconditionError):
        lift_hyperplane_base(M([0, 1, 1], [1, 0, 1], [1, 1, 0]))


def test_hyperplane_base_general_offsets():
    for i in range(20):
        a = generated_matrix("hyp", 4, 5, 3, i)
        a = shift(a, [3, -1, F(1, 2), 0], [0, 2, 0, 1, -2])
        c = lift_hyperplane_base(a, seed=i)
        assert c.verified and c.lift.ords() == a


# --- developing a line ----------------------------------------------------------------

def test_solve_coefficients_trivial():
    plan = DevelopPlan(0, (0,), (F(5),))
    lam = solve_coefficients([[monomial(0)]], [F(5)], plan)
    assert lam[0].ord() == 5 and combine(lam, [[monomial(0)]])[0].ord() == 5


def twin_zero_instance(seed, last):
    """Rank-3 matrix: four rows with twin zeroes in every column, then ``last``."""
    rng = random.Random(seed)
    while True:
        rows = [[rng.randint(0, 3) for _ in range(5)] for _ in range(4)] + [list(last)]
        a = M(*rows)
        if len(zero_pattern(a.submatrix(range(4))).twin_columns) == 5 and tropical_rank(a).rank == 3:
            return a


def test_solve_coefficients_four_zero_row():
    a = twin_zero_instance(1, [0, 0, 0, 0, 3])
    base = lift_hyperplane_base(a.submatrix(range(4)), seed=2).lift
    plans = list(plan_generator(a, 4, range(4), lift=base.entries))
    plan = plans[0]
    assert plan.origin.startswith("row with four zeroes") and plan.orders == (0, 0, 0, 0)
    lam = solve_coefficients(base.entries, a.row(4), plan, seed=5)
    assert [x.ord() for x in lam] == [0, 0, 0, 0]
    assert [x.ord() for x in combine(lam, base.entries)] == list(a.row(4))


@pytest.mark.parametrize("p,q,e", [(2, 3, 4), (1, 1, 2), (4, 2, 1)])
def test_solve_coefficients_3322_first_case(p, q, e):
    a = M([0, 0, 0, p, q], [1, 0, 3, 0, e], [3, 1, 3, 0, 0], [2, 2, 5, 0, 0])
    plan = next(pl for pl in plan_generator(a, 3, (0, 1, 2)) if pl.origin == "3+3+2+2 zero pattern, first case")
    assert plan.orders == (3, 1, 0)
    base = generic_lift(a.submatrix(range(3)), seed=p)
    lam = solve_coefficients(base.entries, a.row(3), plan, seed=1)
    assert [x.ord() for x in lam] == [3, 1, 0]
    assert [x.ord() for x in combine(lam, base.entries)] == list(a.row(3))


def test_plan_infeasible():
    with pytest.raises(PlanInfeasible):
        solve_coefficients([[monomial(0)]], [F(5)], DevelopPlan(0, (0,), (F(5), F(1))))


def test_plan_generator_priorities():
    a = M([0, 0, 1, 2, 0], [0, 1, 0, 0, 3], [2, 0, 0, 1, 0], [1, 2, 3, 0, 2], [0, 0, 0, 0, 0])
    first = next(plan_generator(a, 4, range(4)))
    assert first.origin.startswith("zero row") and set(first.orders) == {0}
    rng = random.Random(4)
    g = M(*[[rng.randint(1, 9) for _ in range(5)] for _ in range(4)])
    base = generic_lift(g.submatrix(range(3)))
    origins = {p.origin for p in plan_generator(g, 3, range(3), lift=base.entries)}
    assert origins <= {"order-0 coefficients", "tropical span (differences of entries)", "auto-search (residue minor)"}


@settings(max_examples=25)
@given(st.integers(0, 10_000))
def test_develop_keeps_rank_and_orders(i):
    a = generated_matrix("dev", 5, 5, 3, i)
    for base in ([0, 1, 2, 3], [1, 2, 3, 4]):
        sub = a.submatrix(base)
        if tropical_rank(sub).rank == 3:
            break
    else:
        return
    target = ({0, 1, 2, 3, 4} - set(base)).pop()
    n = normalize(a, range(5))
    m = n.matrix
    lift = lift_hyperplane_base(m.submatrix(base), seed=i).lift
    rows = [list(r) for r in lift.entries]
    if not in_tropical_rowspace(rows, m.row(target)):
        return
    out = develop_line(m, target, base, rows, Generic(i))
    assert out is not None
    row, plan = out
    assert [x.ord() for x in row] == list(m.row(target))
    assert matrix_rank(rows + [row]) == matrix_rank(rows) == 3
    assert len(plan.orders) == len(base)


# --- pipeline ----------------------------------------------------------------------------

def test_pipeline_base_case_only():
    a = generated_matrix(9, 4, 5, 3, 0)
    c = kapranov_rank3_5col(a, seed=0)
    assert c.verified and c.rank_bound == 3 and c.lift.ords() == a


def test_pipeline_zero_row():
    a = twin_zero_instance(8, [0] * 5)
    c = kapranov_rank3_5col(a, seed=3)
    assert c.verified and c.rank_bound == 3
    assert any("zero row" in str(step) for step in c.trace)


def test_pipeline_preconditions():
    with pytest.raises(PreconditionError):
        kapranov_rank3_5col(outer_sum([0, 1, 2, 3], [0, 1, 2, 3, 4]))
    with pytest.raises(PreconditionError):
        kapranov_rank3_5col(M([0, 1, 1], [1, 0, 1], [1, 1, 0]))


def test_pipeline_transposed():
    a = generated_matrix(2, 7, 5, 3, 1).transpose()
    c = kapranov_rank3_5col(a, seed=2)
    assert c.verified and c.lift.shape == (5, 7)


@settings(max_examples=15)
@given(st.integers(4, 8), st.integers(0, 10_000), st.data())
def test_pipeline_under_line_symmetries(g, i, data):
    a = generated_matrix("sym", g, 5, 3, i)
    ro = data.draw(st.lists(st.integers(-4, 4), min_size=g, max_size=g))
    co = data.draw(st.lists(st.fractions(-2, 2, max_denominator=2), min_size=5, max_size=5))
    rp = data.draw(st.permutations(range(g)))
    b = shift(a, ro, co).submatrix(rp, None)
    c = kapranov_rank3_5col(b, seed=i)
    assert c.verified and c.lift.ords() == b


def test_map_back_round_trip():
    a = generated_matrix(5, 6, 5, 3, 2)
    n = normalize(a, range(6), range(5))
    c = kapranov_rank3_5col(n.matrix, seed=1)
    back = map_back(c, a, n.row_offsets, n.col_offsets)
    assert back.verified and back.lift.ords() == a and matrix_rank(back.lift) == matrix_rank(c.lift)


# --- mirrored block pattern ---------------------------------------------------------------

def test_mirror_examples():
    a = M([1, 1, 1, 0, 0], [1, 1, 1, 0, 0], [0, 0, 0, 1, 1], [0, 0, 0, 1, 1])
    c = lift_mirrored_block(a, seed=0)
    assert c.verified and c.rank_bound == 3
    with pytest.raises(PatternMismatch):
        lift_mirrored_block(M([0, 1, 1, 1, 1], [1, 0, 1, 1, 1], [1, 1, 0, 1, 1]))
    assert match_mirror(M([0, 1, 2], [1, 0, 2], [2, 2, 0])) is None


def test_mirror_minimum_moved_by_permutation():
    # smallest top-left entry sits in the first row, first column
    a = M([1, 4, 3, 0, 0], [2, 5, 6, 0, 0], [0, 0, 0, 2, 1], [0, 0, 0, 1, 3], [0, 0, 0, 4, 2])
    c = lift_mirrored_block(a, seed=1)
    assert c.verified and c.lift.ords() == a


@settings(max_examples=25)
@given(st.integers(0, 10_000), st.data())
def test_mirror_permuted_and_shifted(i, data):
    rng = random.Random(i)
    g = rng.randint(3, 6)
    top = [[rng.randint(1, 4) for _ in range(3)] + [0, 0] for _ in range(2)]
    low = [[0, 0, 0] + [rng.randint(1, 4) for _ in range(2)] for _ in range(g - 2)]
    a = M(*(top + low))
    rp = data.draw(st.permutations(range(g)))
    cp = data.draw(st.permutations(range(5)))
    ro = data.draw(st.lists(st.integers(-3, 3), min_size=g, max_size=g))
    b = shift(a.submatrix(rp, cp), ro, None)
    c = lift_mirrored_block(b, seed=i)
    assert c.verified and c.lift.ords() == b and matrix_rank(c.lift) <= 3


# --- dispatch ---------------------------------------------------------------------------------

def test_bounds_dispatch():
    b = kapranov_bounds(outer_sum([0, 1, 2], [3, 0]))
    assert (b.lower, b.upper, b.constructive) == (1, 1, True)
    b = kapranov_bounds(M([0, 1, 1], [1, 0, 1], [1, 1, 0]))
    assert (b.lower, b.upper) == (3, 3) and b.certificate.method == "generic full-rank lift"
    b = kapranov_bounds(generated_matrix(1, 6, 5, 3, 0))
    assert (b.lower, b.upper) == (3, 3) and b.certificate.method == "rank-3 pipeline"
    b = kapranov_bounds(generated_matrix(1, 4, 4, 2, 0))
    assert (b.lower, b.upper, b.constructive) == (2, 2, False) and b.method.startswith("theorem-cited")
    b = kapranov_bounds(generated_matrix(1, 5, 6, 4, 0))
    assert (b.lower, b.upper) == (4, 4) and b.certificate.verified and "hyperplane" in b.method
    b = kapranov_bounds(generated_matrix(1, 6, 5, 4, 0))
    assert (b.lower, b.upper) == (4, 4) and b.certificate.verified


def test_bounds_barvinok_fallback():
    a = generated_matrix(2, 6, 6, 3, 0)
    b = kapranov_bounds(a)
    assert b.lower == 3 and b.certificate.verified and b.upper == b.barvinok.rank >= 3
    assert b.certificate.rank_bound == b.upper


def test_random_small_chain():
    rng = random.Random(6)
    for _ in range(30):
        a = random_matrix(rng, rng.randint(2, 5), rng.randint(2, 5), 0, 4)
        b = kapranov_bounds(a, seed=1)
        assert 1 <= b.lower <= b.upper <= min(a.shape)
        if b.certificate is not None:
            assert b.certificate.verified and b.certificate.lift.ords() == a
