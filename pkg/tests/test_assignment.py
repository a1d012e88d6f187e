import random

import pytest
from hypothesis import given, strategies as st

from troprank import count_optimal_permutations, is_singular, trop_det
from troprank.errors import DimensionError, GuardError

from conftest import M, matrices
from oracles import det_and_count


def test_det_examples():
    d = trop_det(M([3]))
    assert d.value == 3 and not is_singular(M([3])).singular
    d = is_singular(M([0, 1], [1, 0]))
    assert d.value == 0 and d.witness == (0, 1) and not d.singular
    d = is_singular(M([0, 1, 1], [1, 0, 1], [1, 1, 0]))
    assert d.value == 0 and not d.singular


def test_singular_examples():
    d = is_singular(M([0, 0], [0, 0]))
    assert d.singular and d.second_witness is not None and d.second_witness != d.witness
    assert not is_singular(M([0, 2], [2, 0])).singular
    d = is_singular(M([0, 2], [1, 3]))
    assert d.singular and d.value == 3


def test_count_examples():
    assert count_optimal_permutations(M([0, 0], [0, 0])) == 2
    assert count_optimal_permutations(M([0, 1], [1, 0])) == 1
    assert count_optimal_permutations(M([0, 1, 1], [1, 0, 1], [1, 1, 0])) == 1


def test_guards():
    with pytest.raises(DimensionError):
        trop_det(M([0, 1]))
    with pytest.raises(DimensionError):
        is_singular(M([0, 1]))
    with pytest.raises(GuardError):
        count_optimal_permutations(M(*[[0] * 8 for _ in range(8)]))


@given(matrices(rows=(1, 6), square=True, entries=st.integers(0, 9)))
def test_matches_enumeration(a):
    best, count = det_and_count(a.to_lists())
    d = is_singular(a)
    assert d.value == best == trop_det(a).value
    assert d.singular == (count >= 2)
    assert sum(a[i, d.witness[i]] for i in range(a.rows)) == d.value
    if d.singular:
        assert sum(a[i, d.second_witness[i]] for i in range(a.rows)) == d.value


@given(matrices(rows=(2, 5), square=True, entries=st.integers(0, 5)), st.randoms(use_true_random=False),
       st.integers(-5, 5))
def test_invariances(a, rng, c):
    d = is_singular(a)
    rp, cp = list(range(a.rows)), list(range(a.cols))
    rng.shuffle(rp)
    rng.shuffle(cp)
    b = is_singular(a.submatrix(rp, cp))
    assert (b.value, b.singular) == (d.value, d.singular)
    i = rng.randrange(a.rows)
    shifted = M(*[[x + c if r == i else x for x in row] for r, row in enumerate(a.to_lists())])
    s = is_singular(shifted)
    assert s.value == d.value + c and s.singular == d.singular


def test_fractional_entries():
    d = is_singular(M(["1/2", "1/3"], ["1/3", "1/2"]))
    assert str(d.value) == "2/3" and not d.singular


def test_deterministic_witness():
    rng = random.Random(5)
    a = M(*[[rng.randint(0, 2) for _ in range(5)] for _ in range(5)])
    assert is_singular(a) == is_singular(a)
