import itertools
from math import comb

import pytest
from hypothesis import given, strategies as st

import oracles
from gramfaces.forms import FormSpace, square, square_codim
from gramfaces.monomials import is_borel_down_closed, monomial_basis
from gramfaces.stable import (
    REFERENCE_TABLE,
    SquareCodimKernel,
    StableComplement,
    brute_force_stable_complements,
    compare_with_reference,
    enumerate_stable_complements,
    m_table,
    m_value,
    monomial_square_codim,
)

SMALL = [(n, d) for n in range(1, 5) for d in range(1, 5) if comb(n - 1 + d, d) <= 15]


def test_enumeration_examples():
    assert [c.W for c in enumerate_stable_complements(2, 2, 1)] == [((2, 0),)]
    for n, d in [(2, 2), (3, 4), (5, 3)]:
        assert [c.W for c in enumerate_stable_complements(n, d, 0)] == [()]
    five = {(3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1)}
    assert any(set(c.W) == five for c in enumerate_stable_complements(3, 3, 5))


@pytest.mark.parametrize("n,d", SMALL)
def test_enumeration_matches_brute_force(n, d):
    N = comb(n - 1 + d, d)
    for k in range(N + 1):
        got = [frozenset(c.W) for c in enumerate_stable_complements(n, d, k)]
        assert len(got) == len(set(got))
        assert set(got) == oracles.stable_complements(n, d, k)
        assert set(got) == {frozenset(c.W) for c in brute_force_stable_complements(n, d, k)}


@pytest.mark.parametrize("n,d,k", [(4, 3, 6), (5, 2, 7), (3, 6, 9)])
def test_enumeration_members_are_closed_and_contain_pure_power(n, d, k):
    comps = enumerate_stable_complements(n, d, k)
    assert comps
    for c in comps:
        assert c.k == k and is_borel_down_closed(c.W)
        assert (d,) + (0,) * (n - 1) in c.W


def test_square_codim_examples():
    for n in (2, 3, 5):
        for d in (2, 3, 4):
            assert monomial_square_codim([(d,) + (0,) * (n - 1)], n, d) == n
    assert monomial_square_codim([(1, 1, 0, 0), (0, 0, 1, 1)], 4, 2) == 4
    assert monomial_square_codim([(1, 1, 0), (1, 0, 1)], 3, 2) == 6
    assert monomial_square_codim([(1, 1, 0, 0, 0), (1, 0, 1, 0, 0)], 5, 2) == 6


@pytest.mark.parametrize("n,d", SMALL)
def test_combinatorial_codim_equals_linear_algebra(n, d):
    basis = monomial_basis(n, d)
    kernel = SquareCodimKernel(n, d)
    index = {tuple(m): i for i, m in enumerate(basis)}
    for size in range(0, 4):
        for W in itertools.combinations(basis, size):
            U = FormSpace.monomial_complement(n, d, W)
            want = square_codim(U, "exact")
            assert monomial_square_codim(W, n, d) == want == oracles.monomial_square_codim(W, n, d)
            assert kernel.codim([index[tuple(m)] for m in W]) == want


@given(st.sampled_from([(3, 3), (3, 4), (4, 3), (5, 2)]), st.data())
def test_kernel_matches_pure_python_on_stable_sets(shape, data):
    n, d = shape
    k = data.draw(st.integers(0, 8))
    comps = enumerate_stable_complements(n, d, k)
    c = data.draw(st.sampled_from(comps))
    basis = [tuple(m) for m in monomial_basis(n, d)]
    index = {m: i for i, m in enumerate(basis)}
    assert SquareCodimKernel(n, d).codim([index[m] for m in c.W]) == monomial_square_codim(c)


def test_m_values():
    assert m_value(3, 2, 1)[0] == 3
    assert m_value(3, 5, 5)[0] == 16
    assert m_value(3, 9, 9)[0] == 31
    assert m_value(6, 5, 6)[0] == 56


@pytest.mark.parametrize("n,d,k", [(3, 3, 4), (4, 2, 4), (3, 5, 5), (4, 3, 6)])
def test_witness_consistency(n, d, k):
    value, w = m_value(n, d, k)
    assert monomial_square_codim(w) == value
    U = FormSpace.monomial_complement(n, d, w.W)
    assert square(U).codim == value
    assert w.W[0] == (d,) + (0,) * (n - 1)


def test_only_singleton_at_codim_one():
    for n, d in [(3, 2), (4, 5), (6, 3)]:
        comps = enumerate_stable_complements(n, d, 1)
        assert [c.W for c in comps] == [((d,) + (0,) * (n - 1),)]
        assert m_value(n, d, 1) == (n, comps[0])


def test_shifted_witness():
    c = StableComplement(3, 2, ((2, 0, 0), (1, 1, 0)))
    assert c.shifted(2) == StableComplement(3, 4, ((4, 0, 0), (3, 1, 0)))


def test_small_table_against_reference():
    table = m_table([3, 4], range(2, 10), range(1, 10))
    assert table.complete()
    assert compare_with_reference(table) == []
    assert table.shown(4, 2, 4) == "20"
    assert table.shown(3, 2, 6) == "-"


def test_table_cells_bounded_by_diagonal():
    # within the reference range m(n,d,k) = m(n,k,k) whenever d >= k
    for (n, d, k), v in REFERENCE_TABLE.items():
        if v is not None and 2 <= k <= d:
            assert v == REFERENCE_TABLE[(n, k, k)], (n, d, k)


def test_table_independent_of_jobs():
    a = m_table([3, 4], [2, 3, 4], range(1, 7), jobs=1)
    b = m_table([3, 4], [2, 3, 4], range(1, 7), jobs=2)
    assert a.to_csv(True) == b.to_csv(True)
    assert a.to_markdown(True) == b.to_markdown(True)


def test_rendering():
    t = m_table([2], [2], [0, 1, 3])
    assert t.shown(2, 2, 0) == "0"
    assert t.to_csv().splitlines()[0] == "n,d,k,m"
    md = m_table([3], [2, 3], [1, 2]).to_markdown()
    assert "| codim U | d=2 | d=3 |" in md


def test_validation():
    with pytest.raises(ValueError):
        enumerate_stable_complements(2, 2, 4)
    with pytest.raises(ValueError):
        monomial_square_codim([(2, 0), (1, 0, 1)], 2, 2)
