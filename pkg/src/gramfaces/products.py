"""Codimension and annihilator of ``span(U*V)`` for spaces in echelon form.

Both factors arrive as lists of term rows ``[(exps, coef), ...]`` whose first
term is the leading monomial with coefficient 1 and whose other terms are
strictly smaller.  The product of two rows then has leading monomial
``lead_u * lead_v`` with coefficient 1.

Pick one such product for every monomial of ``in(U) * in(V)``.  A linear
functional ``g`` on the degree-D forms that kills all chosen products is
determined by its values on the remaining ("free") monomials: walking the
monomials in ascending order, each chosen product fixes ``g`` at its leading
monomial from values at smaller ones.  The other products then impose linear
conditions on the free values only, so the work is a rank computation in
``c = #free`` unknowns instead of ``dim A_D``.

Two back ends share this scheme: exact rationals (:func:`annihilator_exact`)
and GF(p) with numpy (:func:`codim_modp`).  The rank of a reduction mod p
never exceeds the rank over Q, so the modular codimension is an upper bound
for the true one and a modular codimension of 0 certifies equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .linalg import PRIME, Echelon, ModRank, fraction_mod, nullspace
from .monomials import MonomialOrder, monomial_basis

Row = Sequence[tuple[tuple[int, ...], Fraction]]

# exact back end is used below this many (pair x term) products
EXACT_BUDGET = 400_000


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _pairs(nu: int, nv: int, same: bool):
    for i in range(nu):
        for j in range(i if same else 0, nv):
            yield i, j


def work_estimate(urows: Sequence[Row], vrows: Sequence[Row], same: bool) -> int:
    su = sum(len(r) for r in urows)
    sv = sum(len(r) for r in vrows)
    return su * sv // 2 if same else su * sv


def annihilator_exact(
    urows: Sequence[Row],
    vrows: Sequence[Row],
    n: int,
    D: int,
    order: MonomialOrder,
    same: bool = False,
    codim_only: bool = False,
):
    """Exact annihilator of ``span(U*V)`` inside the degree-``D`` forms.

    Returns ``(basis, annihilator)`` where ``basis`` is ascending in ``order``
    and each annihilator vector is a dict ``ascending index -> Fraction`` for
    the standard dot product.  With ``codim_only`` the annihilator is replaced
    by its dimension.
    """
    basis = monomial_basis(n, D, order)
    index = {m: i for i, m in enumerate(basis)}
    if not urows or not vrows:
        if codim_only:
            return basis, len(basis)
        return basis, [{i: Fraction(1)} for i in range(len(basis))]

    rep: dict[int, tuple[int, int]] = {}
    weight: dict[int, int] = {}
    for i, j in _pairs(len(urows), len(vrows), same):
        mu = index[_add(urows[i][0][0], vrows[j][0][0])]
        w = len(urows[i]) * len(vrows[j])
        if mu not in rep or w < weight[mu]:
            rep[mu] = (i, j)
            weight[mu] = w
    free = [mu for mu in range(len(basis)) if mu not in rep]
    c = len(free)
    if c == 0:
        return basis, 0 if codim_only else []

    def product_terms(i, j):
        acc: dict[int, Fraction] = {}
        for a, ca in urows[i]:
            for b, cb in vrows[j]:
                k = index[_add(a, b)]
                acc[k] = acc.get(k, 0) + ca * cb
        return acc

    G: dict[int, dict[int, Fraction]] = {}
    param = {mu: t for t, mu in enumerate(free)}
    for mu in range(len(basis)):
        if mu in param:
            G[mu] = {param[mu]: Fraction(1)}
            continue
        i, j = rep[mu]
        if weight[mu] == 1:
            continue
        vec: dict[int, Fraction] = {}
        for nu, x in product_terms(i, j).items():
            # terms of a product can cancel to zero
            if nu == mu or nu not in G or not x:
                continue
            for t, y in G[nu].items():
                nv = vec.get(t, 0) - x * y
                if nv:
                    vec[t] = nv
                else:
                    vec.pop(t, None)
        if vec:
            G[mu] = vec

    constraints = Echelon()
    for i, j in _pairs(len(urows), len(vrows), same):
        mu = index[_add(urows[i][0][0], vrows[j][0][0])]
        if rep[mu] == (i, j):
            continue
        if len(urows[i]) * len(vrows[j]) == 1:
            vec = G.get(mu)
            if not vec:
                continue
        else:
            vec = {}
            for nu, x in product_terms(i, j).items():
                for t, y in G.get(nu, {}).items():
                    vec[t] = vec.get(t, 0) + x * y
        if constraints.add(vec) and len(constraints) == c:
            break
    if codim_only:
        return basis, c - len(constraints)

    annihilator = []
    rows = [dict(r) for r in constraints.reduced()]
    for kernel_vec in nullspace(rows, c):
        t = dict(kernel_vec)
        g = {}
        for mu, vec in G.items():
            s = sum((t[k] * y for k, y in vec.items() if k in t), Fraction(0))
            if s:
                g[mu] = s
        annihilator.append(g)
    return basis, annihilator


def codim_modp(
    urows: Sequence[Row],
    vrows: Sequence[Row],
    n: int,
    D: int,
    order: MonomialOrder,
    same: bool = False,
    p: int = PRIME,
    chunk: int = 4096,
) -> int:
    """Codimension of the reduction mod ``p`` of ``span(U*V)`` (>= the true codim)."""
    basis = monomial_basis(n, D, order)
    N = len(basis)
    if not urows or not vrows:
        return N
    base = D + 1
    weights = base ** np.arange(n, dtype=np.int64)
    codes_asc = np.array(basis, dtype=np.int64) @ weights
    sorter = np.argsort(codes_asc)
    codes_sorted = codes_asc[sorter]

    def lookup(codes):
        return sorter[np.searchsorted(codes_sorted, codes)]

    def pack(rows):
        t = max(len(r) for r in rows)
        code = np.empty((len(rows), t), dtype=np.int64)
        coef = np.zeros((len(rows), t), dtype=np.int64)
        nterms = np.empty(len(rows), dtype=np.int64)
        for r, row in enumerate(rows):
            nterms[r] = len(row)
            for s in range(t):
                exps, x = row[s] if s < len(row) else (row[0][0], 0)
                code[r, s] = sum(e * base**v for v, e in enumerate(exps))
                coef[r, s] = fraction_mod(Fraction(x), p)
        return code, coef, nterms

    ucode, ucoef, un = pack(urows)
    vcode, vcoef, vn = pack(vrows)
    if same:
        I, J = np.triu_indices(len(urows))
    else:
        I, J = np.indices((len(urows), len(vrows))).reshape(2, -1)
    I = I.astype(np.int64)
    J = J.astype(np.int64)
    leads = lookup(ucode[I, 0] + vcode[J, 0])
    w = un[I] * vn[J]
    perm = np.lexsort((w, leads))
    first = np.ones(len(perm), dtype=bool)
    first[1:] = leads[perm][1:] != leads[perm][:-1]
    rep_pairs = perm[first]
    is_rep = np.zeros(len(I), dtype=bool)
    is_rep[rep_pairs] = True
    covered = np.zeros(N, dtype=bool)
    covered[leads[rep_pairs]] = True
    free = np.flatnonzero(~covered)
    c = len(free)
    if c == 0:
        return 0

    G = np.zeros((N, c), dtype=np.int64)
    G[free, np.arange(c)] = 1

    def terms(sel):
        codes = ucode[I[sel]][:, :, None] + vcode[J[sel]][:, None, :]
        coefs = ucoef[I[sel]][:, :, None] * vcoef[J[sel]][:, None, :] % p
        k = codes.shape[1] * codes.shape[2]
        return lookup(codes.reshape(len(sel), k)), coefs.reshape(len(sel), k)

    # ascending leads; only products with tails change G
    rp = rep_pairs[w[rep_pairs] > 1]
    rp = rp[np.argsort(leads[rp])]
    for start in range(0, len(rp), chunk):
        sel = rp[start : start + chunk]
        idx, coefs = terms(sel)
        mus = leads[sel]
        for r in range(len(sel)):
            nz = np.flatnonzero(coefs[r, 1:]) + 1
            if nz.size == 0:
                continue
            acc = np.zeros(c, dtype=np.int64)
            for s in nz:
                acc = (acc + coefs[r, s] * G[idx[r, s]]) % p
            G[mus[r]] = (-acc) % p

    rank = ModRank(c, p)
    others = np.flatnonzero(~is_rep)
    # pairs with a single term only ever repeat G at their lead
    single = others[w[others] == 1]
    multi = others[w[others] > 1]
    if single.size:
        rows = G[np.unique(leads[single])]
        rows = rows[rows.any(axis=1)]
        rank.add_chunk(rows)
    for start in range(0, len(multi), chunk):
        if rank.full:
            break
        sel = multi[start : start + chunk]
        idx, coefs = terms(sel)
        acc = np.zeros((len(sel), c), dtype=np.int64)
        for s in range(idx.shape[1]):
            acc = (acc + coefs[:, s : s + 1] * G[idx[:, s]]) % p
        acc = acc[acc.any(axis=1)]
        rank.add_chunk(acc)
    return c - rank.rank
