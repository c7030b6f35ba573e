from math import comb

import pytest
from hypothesis import given, strategies as st

import oracles
from gramfaces.macaulay import (
    MacaulayRep,
    binom,
    gotzmann_persists,
    gotzmann_prediction,
    green_restriction_bound,
    macaulay_growth_bound,
    macaulay_rep,
    macaulay_shift,
)


@given(st.integers(0, 10**6), st.integers(1, 12))
def test_rep_round_trip(a, d):
    rep = macaulay_rep(a, d)
    assert rep.value == a
    assert all(x > y for x, y in zip(rep.tops, rep.tops[1:]))


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_rep_unique_by_exhaustive_search(d):
    for a in range(0, 120):
        reps = oracles.macaulay_reps(a, d)
        assert reps == [macaulay_rep(a, d).tops], (a, d)


@pytest.mark.parametrize("d", [2, 3, 5, 9])
def test_rep_of_small_values(d):
    for k in range(1, d + 1):
        assert macaulay_rep(k, d).tops == tuple(range(d, d - k, -1))


def test_rep_examples():
    assert macaulay_rep(0, 3).tops == () and macaulay_rep(0, 3).value == 0
    assert macaulay_rep(5, 2).tops == (3, 2)
    assert str(macaulay_rep(5, 2)) == "C(3,2) + C(2,1)"


def test_rep_validation():
    with pytest.raises(ValueError):
        macaulay_rep(-1, 2)
    with pytest.raises(ValueError):
        MacaulayRep(2, (2, 2))
    with pytest.raises(ValueError):
        MacaulayRep(2, (3, 0))


@given(st.integers(0, 5000), st.integers(1, 8))
def test_identity_shift(a, d):
    assert macaulay_shift(macaulay_rep(a, d), 0, 0) == a


@pytest.mark.parametrize("d", [2, 3, 4, 6])
def test_small_h_shifts(d):
    for k in range(1, d + 1):
        rep = macaulay_rep(k, d)
        assert macaulay_shift(rep, -1, 0) == 0
        assert macaulay_shift(rep, 1, 1) == k
        assert green_restriction_bound(k, d) == 0


def test_growth_examples():
    assert macaulay_growth_bound(0, 3) == 0
    assert macaulay_growth_bound(2, 2) == 2
    assert macaulay_growth_bound(6, 2) == 10
    assert green_restriction_bound(0, 4) == 0


@pytest.mark.parametrize("i", [1, 2, 3])
def test_growth_bound_attained_by_lex_segments(i):
    n = 4
    for h in range(0, comb(n - 1 + i, i) + 1):
        assert macaulay_growth_bound(h, i) == oracles.lex_segment_growth(h, i, n), (h, i)


@pytest.mark.parametrize("n,d", [(3, 2), (4, 2), (4, 3), (5, 3)])
def test_green_bound_for_codim_at_most_n(n, d):
    # h_d = dim A_d - k with k < n restricts to dim A(n-1)_d - k
    for k in range(1, n):
        assert green_restriction_bound(comb(n - 1 + d, d) - k, d) == comb(n - 2 + d, d) - k


def test_gotzmann_examples():
    for d in (3, 4, 6):
        for k in range(1, d + 1):
            assert gotzmann_persists(k, k, d)
            assert not gotzmann_persists(k, k - 1, d)
            assert all(gotzmann_prediction(k, d, l) == k for l in range(5))
    assert gotzmann_persists(3, 4, 2)


def test_gotzmann_example_by_direct_count():
    # x3 * A_1 in three variables: h_2 = 3 and h_3 = 4, maximal growth
    forms = [{(1, 0, 1): 1}, {(0, 1, 1): 1}, {(0, 0, 2): 1}]
    from fractions import Fraction

    forms = [{m: Fraction(c) for m, c in f.items()} for f in forms]
    h2 = oracles.hilbert_value(forms, 3, 2, 2)
    h3 = oracles.hilbert_value(forms, 3, 2, 3)
    assert (h2, h3) == (3, 4)
    assert gotzmann_persists(h2, h3, 2)


def test_binom_conventions():
    assert binom(2, 3) == 0 and binom(3, -1) == 0 and binom(5, 2) == 10
