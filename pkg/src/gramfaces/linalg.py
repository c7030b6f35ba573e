"""Sparse exact echelon forms over Q and a small rank accumulator over GF(p).

Vectors are ``dict[int, Fraction]`` keyed by column; absent keys are zero.
The pivot of a row is its smallest column, matching the convention that
column 0 is the largest monomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

import numpy as np

# largest prime below 2**28; products of two residues plus an accumulator fit in int64
PRIME = 268435399


def axpy(v: dict, f, row: dict) -> None:
    """``v -= f * row`` in place, dropping zeros."""
    for k, x in row.items():
        nv = v.get(k, 0) - f * x
        if nv:
            v[k] = nv
        else:
            v.pop(k, None)


class Echelon:
    """Incremental semi-echelon basis; :meth:`reduced` gives the canonical RREF."""

    def __init__(self):
        self.pivots: dict[int, dict] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, v: dict) -> dict:
        v = {k: x for k, x in v.items() if x}
        while v:
            c = min(v)
            row = self.pivots.get(c)
            if row is None:
                break
            axpy(v, v[c], row)
        return v

    def add(self, v: dict) -> bool:
        """Insert ``v``; returns False when it was already in the span."""
        v = self.reduce(v)
        if not v:
            return False
        c = min(v)
        lead = v[c]
        if lead != 1:
            v = {k: x / lead for k, x in v.items()}
        self.pivots[c] = v
        return True

    def reduced(self) -> list[tuple[tuple[int, Fraction], ...]]:
        done: dict[int, dict] = {}
        for p in sorted(self.pivots, reverse=True):
            row = dict(self.pivots[p])
            for c in [c for c in row if c != p and c in done]:
                f = row.get(c)
                if f:
                    axpy(row, f, done[c])
            done[p] = row
        return [tuple(sorted(done[p].items())) for p in sorted(done)]


def rref(vectors: Iterable[dict]) -> list[tuple[tuple[int, Fraction], ...]]:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.reduced()


def nullspace(rows: Iterable[dict], ncols: int) -> list[tuple[tuple[int, Fraction], ...]]:
    """Reduced echelon basis (pivot = smallest column) of ``{x : r.x = 0}``.

    The matrix is put into RREF with pivots at the *largest* possible
    columns; each free column ``f`` then yields ``e_f - sum A[r,f] e_{P_r}``,
    whose other entries all sit at larger columns and at non-free pivots, so
    the result is already reduced.
    """
    flip = ncols - 1
    ech = Echelon()
    for r in rows:
        ech.add({flip - k: Fraction(x) for k, x in r.items()})
    pivot_rows = []
    for row in ech.reduced():
        p = flip - row[0][0]
        pivot_rows.append((p, {flip - k: x for k, x in row[1:]}))
    pivot_cols = {p for p, _ in pivot_rows}
    by_col: dict[int, list[tuple[int, Fraction]]] = {}
    for p, rest in pivot_rows:
        for f, x in rest.items():
            by_col.setdefault(f, []).append((p, x))
    basis = []
    for f in range(ncols):
        if f in pivot_cols:
            continue
        vec = [(f, Fraction(1))] + sorted((p, -x) for p, x in by_col.get(f, ()))
        basis.append(tuple(vec))
    return basis


# ----------------------------------------------------------------------------
# GF(p)


def inv_mod(x: int, p: int = PRIME) -> int:
    return pow(int(x), p - 2, p)


def fraction_mod(x: Fraction, p: int = PRIME) -> int:
    den = x.denominator % p
    if den == 0:
        raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
    return x.numerator % p * inv_mod(den, p) % p


class ModRank:
    """Rank of a growing set of length-``c`` vectors over GF(p).

    Rows are added in numpy chunks; each stored basis row is zero on the
    pivots of all earlier rows, so reducing a chunk row-by-row in insertion
    order is enough.
    """

    def __init__(self, c: int, p: int = PRIME):
        self.c = c
        self.p = p
        self.rows: list[tuple[int, np.ndarray]] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def full(self) -> bool:
        return self.rank == self.c

    def add_chunk(self, M: np.ndarray) -> int:
        p = self.p
        M = np.asarray(M, dtype=np.int64) % p
        if M.size == 0 or self.full:
            return self.rank
        for piv, row in self.rows:
            col = M[:, piv : piv + 1]
            if col.any():
                M = (M - col * row[None, :]) % p
        while not self.full:
            nz = np.argwhere(M)
            if nz.size == 0:
                break
            r, piv = nz[0]
            row = M[r] * inv_mod(M[r, piv], p) % p
            col = M[:, piv : piv + 1]
            M = (M - col * row[None, :]) % p
            self.rows.append((int(piv), row))
        return self.rank
