from fractions import Fraction

import numpy as np
import sympy
from hypothesis import given, strategies as st

from gramfaces.linalg import PRIME, Echelon, ModRank, fraction_mod, nullspace, rref


def dense(rows, ncols):
    return sympy.Matrix([[sympy.Rational(dict(r).get(c, 0)) for c in range(ncols)] for r in rows])


vectors = st.lists(
    st.dictionaries(st.integers(0, 5), st.integers(-4, 4).map(Fraction), max_size=6),
    max_size=7,
)


def test_prime_is_prime_and_fits():
    assert sympy.isprime(PRIME)
    assert PRIME < 2**28
    # two residues multiplied plus one more stay inside int64
    assert (PRIME - 1) ** 2 + PRIME < 2**63


@given(vectors)
def test_rref_matches_sympy(vs):
    ours = rref(vs)
    M = dense([list(v.items()) for v in vs], 6) if vs else sympy.zeros(0, 6)
    R, _ = M.rref() if vs else (M, ())
    expected = [tuple((c, Fraction(int(x.p), int(x.q))) for c, x in enumerate(R.row(i)) if x) for i in range(R.rows)]
    expected = [row for row in expected if row]
    assert ours == expected


@given(vectors)
def test_rref_ignores_basis_choice(vs):
    mixed = [dict(v) for v in reversed(vs)]
    if len(mixed) > 1:
        a, b = mixed[0], mixed[1]
        mixed[0] = {k: a.get(k, 0) + 3 * b.get(k, 0) for k in set(a) | set(b)}
    assert rref(vs) == rref(mixed)


@given(vectors)
def test_nullspace_dimension_and_orthogonality(vs):
    N = nullspace(vs, 6)
    rank = len(rref(vs))
    assert len(N) == 6 - rank
    for v in vs:
        for z in N:
            assert sum(v.get(c, 0) * x for c, x in z) == 0
    assert len(rref([dict(z) for z in N])) == len(N)


def test_echelon_reports_dependence():
    e = Echelon()
    assert e.add({0: Fraction(1), 1: Fraction(2)})
    assert not e.add({0: Fraction(2), 1: Fraction(4)})
    assert len(e) == 1


def test_fraction_mod():
    assert fraction_mod(Fraction(1, 2)) * 2 % PRIME == 1
    assert fraction_mod(Fraction(-3)) == PRIME - 3


@given(st.lists(st.lists(st.integers(-50, 50), min_size=5, max_size=5), min_size=1, max_size=8), st.integers(1, 3))
def test_modrank_matches_rank_over_gf_p(rows, chunks):
    M = np.array(rows, dtype=np.int64)
    r = ModRank(5)
    for part in np.array_split(M, chunks):
        r.add_chunk(part)
    # entries this small cannot make a minor vanish mod a 28-bit prime by accident
    assert r.rank == sympy.Matrix(rows).rank()
