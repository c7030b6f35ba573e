"""Strongly stable monomial subspaces and the table of maximal ``codim U^2``.

A strongly stable monomial subspace ``U`` of ``A(n)_d`` is recorded through
its complement ``W``: the excluded monomials, a set closed under the moves
``x_j -> x_i`` for ``i < j``.  ``codim U^2`` counts the degree-2d monomials
with no factorization into two monomials outside ``W``.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .monomials import (
    LEX,
    adjacent_down_moves,
    format_monomial,
    is_borel_down_closed,
    monomial_basis,
    num_monomials,
    sub_exponents,
)


@dataclass(frozen=True)
class StableComplement:
    """Excluded monomials of a strongly stable subspace, ascending in lex."""

    n: int
    d: int
    W: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.W)

    def to_text(self) -> str:
        return ", ".join(format_monomial(m) for m in self.W) if self.W else "(empty)"

    def shifted(self, s: int) -> "StableComplement":
        """Multiply every member by ``x1^s``."""
        W = tuple((m[0] + s,) + tuple(m[1:]) for m in self.W)
        return StableComplement(self.n, self.d + s, W)


# ----------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=64)
def _poset(n: int, d: int):
    """Lex-ascending basis, adjacent down- and up-neighbours by index."""
    basis = [tuple(m) for m in monomial_basis(n, d, LEX)]
    index = {m: i for i, m in enumerate(basis)}
    down = [tuple(index[x] for x in adjacent_down_moves(m)) for m in basis]
    up: list[list[int]] = [[] for _ in basis]
    for i, ds in enumerate(down):
        for j in ds:
            up[j].append(i)
    return basis, down, tuple(tuple(sorted(u)) for u in up)


def _extensions(members: tuple[int, ...], down, up) -> list[int]:
    # lex refines the Borel order, so every closed set arises exactly once by
    # adding its members in increasing order
    if not members:
        return [0]
    present = set(members)
    last = members[-1]
    cands = {j for i in members for j in up[i] if j > last}
    return sorted(j for j in cands if all(x in present for x in down[j]))


def iter_stable_levels(n: int, d: int, k_max: int) -> Iterator[tuple[int, list[tuple[int, ...]]]]:
    """Yield ``(k, complements)`` for ``k = 0..k_max``; complements are index tuples."""
    basis, down, up = _poset(n, d)
    level: list[tuple[int, ...]] = [()]
    yield 0, level
    for k in range(1, min(k_max, len(basis)) + 1):
        level = [s + (j,) for s in level for j in _extensions(s, down, up)]
        yield k, level


def enumerate_stable_complements(n: int, d: int, k: int) -> list[StableComplement]:
    """All Borel-down-closed ``k``-sets of degree-``d`` monomials, in a fixed order."""
    if n < 1 or d < 0:
        raise ValueError(f"need n >= 1 and d >= 0, got n={n}, d={d}")
    if not 0 <= k <= num_monomials(n, d):
        raise ValueError(f"k={k} outside 0..{num_monomials(n, d)}")
    basis = _poset(n, d)[0]
    for level_k, level in iter_stable_levels(n, d, k):
        if level_k == k:
            return [StableComplement(n, d, tuple(basis[i] for i in s)) for s in level]
    raise AssertionError("unreachable")


def brute_force_stable_complements(n: int, d: int, k: int) -> list[StableComplement]:
    """Filter all ``k``-subsets by the closure test (small cases only)."""
    basis = [tuple(m) for m in monomial_basis(n, d, LEX)]
    return [
        StableComplement(n, d, W)
        for W in combinations(basis, k)
        if is_borel_down_closed(W)
    ]


# ----------------------------------------------------------------------------
# codim U^2 for monomial U


def monomial_square_codim(W: Iterable[Sequence[int]], n: int | None = None, d: int | None = None) -> int:
    """``codim U^2`` for ``U`` spanned by all degree-d monomials outside ``W``.

    A degree-2d monomial survives in ``U^2`` iff one of its factorizations
    avoids ``W``; only multiples of members of ``W`` can fail.
    """
    if isinstance(W, StableComplement):
        n, d, W = W.n, W.d, W.W
    W = {tuple(m) for m in W}
    if not W:
        return 0
    if n is None or d is None:
        sample = next(iter(W))
        n, d = len(sample), sum(sample)
    if len(W) == num_monomials(n, d):
        return num_monomials(n, 2 * d)
    shapes = {(len(m), sum(m)) for m in W}
    if shapes != {(n, d)}:
        raise ValueError("complement monomials do not match (n, d)")
    basis = [tuple(m) for m in monomial_basis(n, d, LEX)]
    killed = set()
    for w in W:
        for b in basis:
            m = tuple(x + y for x, y in zip(w, b))
            if m in killed:
                continue
            for a in sub_exponents(m, d):
                if a not in W and tuple(x - y for x, y in zip(m, a)) not in W:
                    break
            else:
                killed.add(m)
    return len(killed)


class SquareCodimKernel:
    """Vectorised ``codim U^2`` for many monomial complements of one ``(n, d)``.

    With ``P[a, b]`` the index of ``a*b``, a target ``m`` is dead iff every
    ordered factorization touches W, i.e. ``T - 2*#(a in W) + #(a, b in W) == 0``
    where ``T`` counts all ordered factorizations.
    """

    def __init__(self, n: int, d: int):
        self.n, self.d = n, d
        basis = np.array(monomial_basis(n, d, LEX), dtype=np.int64)
        top = monomial_basis(n, 2 * d, LEX)
        base = 2 * d + 1
        weights = base ** np.arange(n, dtype=np.int64)
        codes_top = np.array(top, dtype=np.int64) @ weights
        codes = basis @ weights
        order = np.argsort(codes_top)
        prod_codes = codes[:, None] + codes[None, :]
        self.P = order[np.searchsorted(codes_top[order], prod_codes)].astype(np.int32)
        self.M = len(top)
        self.T = np.bincount(self.P.ravel(), minlength=self.M)

    def codim(self, W: Sequence[int]) -> int:
        W = np.asarray(W, dtype=np.int64)
        if W.size == 0:
            return 0
        rows = self.P[W]
        cnt_a = np.bincount(rows.ravel(), minlength=self.M)
        cnt_ww = np.bincount(rows[:, W].ravel(), minlength=self.M)
        alive = self.T - 2 * cnt_a + cnt_ww
        return int(np.count_nonzero(alive[np.unique(rows)] == 0))


# ----------------------------------------------------------------------------
# m(n, d, k)


@dataclass
class BlockResult:
    """All ``k`` for one ``(n, d)``: values, witnesses and how many sets were scanned."""

    n: int
    d: int
    values: dict[int, int | None] = field(default_factory=dict)
    witnesses: dict[int, StableComplement] = field(default_factory=dict)
    counts: dict[int, int] = field(default_factory=dict)


def compute_block(n: int, d: int, ks: Sequence[int], budget: float | None = None) -> BlockResult:
    """``m(n, d, k)`` for each ``k`` in ``ks``; cells past the time budget stay ``None``.

    The witness is the first maximizer in enumeration order.
    """
    ks = sorted(set(ks))
    out = BlockResult(n, d)
    N = num_monomials(n, d)
    wanted = {k for k in ks if k <= N}
    for k in ks:
        out.values[k] = None
    if not wanted:
        return out
    basis = _poset(n, d)[0]
    kernel = SquareCodimKernel(n, d)
    start = time.monotonic()
    for k, level in iter_stable_levels(n, d, max(wanted)):
        if budget is not None and time.monotonic() - start > budget:
            break
        if k not in wanted:
            continue
        best, best_set = -1, None
        for s in level:
            v = kernel.codim(s)
            if v > best:
                best, best_set = v, s
        out.values[k] = best
        out.counts[k] = len(level)
        out.witnesses[k] = StableComplement(n, d, tuple(basis[i] for i in best_set))
    return out


def m_value(n: int, d: int, k: int) -> tuple[int, StableComplement]:
    """Maximum ``codim U^2`` over codimension-``k`` subspaces of ``A(n)_d`` with a witness."""
    if not 0 <= k <= num_monomials(n, d):
        raise ValueError(f"k={k} outside 0..{num_monomials(n, d)}")
    block = compute_block(n, d, [k])
    return block.values[k], block.witnesses[k]


@dataclass
class MTable:
    ns: list[int]
    ds: list[int]
    ks: list[int]
    blocks: dict[tuple[int, int], BlockResult]

    def value(self, n: int, d: int, k: int) -> int | None:
        return self.blocks[(n, d)].values.get(k)

    def shown(self, n: int, d: int, k: int) -> str:
        """Cell text: ``-`` when ``k >= dim A(n)_d``, ``?`` when not computed."""
        if k >= num_monomials(n, d) and k > 0:
            return "-"
        v = self.value(n, d, k)
        return "?" if v is None else str(v)

    def complete(self) -> bool:
        return all(self.shown(n, d, k) != "?" for n in self.ns for d in self.ds for k in self.ks)

    def to_csv(self, witnesses: bool = False) -> str:
        import csv
        import io

        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = ["n", "d", "k", "m"] + (["witness"] if witnesses else [])
        writer.writerow(header)
        for n in self.ns:
            for d in self.ds:
                for k in self.ks:
                    row = [n, d, k, self.shown(n, d, k)]
                    if witnesses:
                        w = self.blocks[(n, d)].witnesses.get(k)
                        row.append(w.to_text() if w and self.shown(n, d, k) != "-" else "")
                    writer.writerow(row)
        return buf.getvalue()

    def to_markdown(self, witnesses: bool = False) -> str:
        lines = []
        for n in self.ns:
            lines.append(f"n = {n}")
            lines.append("")
            lines.append("| codim U | " + " | ".join(f"d={d}" for d in self.ds) + " |")
            lines.append("|---:|" + "---:|" * len(self.ds))
            for k in self.ks:
                cells = [self.shown(n, d, k) for d in self.ds]
                lines.append(f"| {k} | " + " | ".join(cells) + " |")
            lines.append("")
            if witnesses:
                for d in self.ds:
                    for k in self.ks:
                        w = self.blocks[(n, d)].witnesses.get(k)
                        if w is not None and self.shown(n, d, k) != "-":
                            lines.append(f"- m({n},{d},{k}) = {self.value(n, d, k)}: W = {{{w.to_text()}}}")
                lines.append("")
        return "\n".join(lines)


def _block_task(args):
    return compute_block(*args)


def m_table(
    ns: Sequence[int],
    ds: Sequence[int],
    ks: Sequence[int],
    jobs: int = 1,
    budget: float | None = None,
) -> MTable:
    """Fill the table cell block by block; results do not depend on ``jobs``."""
    ns, ds, ks = list(ns), list(ds), list(ks)
    tasks = [(n, d, tuple(ks), budget) for n in ns for d in ds]
    # biggest blocks first so the pool stays busy
    tasks.sort(key=lambda t: -num_monomials(t[0], t[1]))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_block_task, tasks))
    else:
        results = [_block_task(t) for t in tasks]
    blocks = {(r.n, r.d): r for r in results}
    return MTable(ns, ds, ks, blocks)


# ----------------------------------------------------------------------------
# reference values, k = 1..9 per (n, d); None marks k >= dim A(n)_d

_REFERENCE_ROWS = {
    3: {
        2: [3, 6, 10, 12, 14, None, None, None, None],
        3: [3, 6, 10, 13, 16, 21, 23, 25, 27],
        4: [3, 6, 10, 13, 17, 21, 24, 27, 30],
        5: [3, 6, 10, 13, 16, 21, 24, 27, 31],
        6: [3, 6, 10, 13, 16, 21, 25, 28, 31],
        7: [3, 6, 10, 13, 16, 21, 24, 29, 32],
        8: [3, 6, 10, 13, 16, 21, 24, 27, 33],
        9: [3, 6, 10, 13, 16, 21, 24, 27, 31],
    },
    4: {
        2: [4, 8, 13, 20, 23, 26, 30, 32, 34],
        3: [4, 8, 13, 20, 24, 29, 35, 39, 45],
        4: [4, 8, 13, 20, 25, 29, 35, 40, 45],
        5: [4, 8, 13, 20, 24, 31, 35, 41, 45],
        6: [4, 8, 13, 20, 24, 28, 37, 41, 47],
        7: [4, 8, 13, 20, 24, 28, 35, 43, 47],
        8: [4, 8, 13, 20, 24, 28, 35, 40, 49],
        9: [4, 8, 13, 20, 24, 28, 35, 40, 45],
    },
    5: {
        2: [5, 10, 17, 24, 35, 39, 43, 48, 55],
        3: [5, 10, 16, 25, 35, 40, 47, 54, 60],
        4: [5, 10, 16, 24, 35, 40, 45, 55, 60],
        5: [5, 10, 16, 24, 35, 41, 46, 54, 63],
        6: [5, 10, 16, 24, 35, 40, 49, 54, 61],
        7: [5, 10, 16, 24, 35, 40, 45, 57, 62],
        8: [5, 10, 16, 24, 35, 40, 45, 54, 65],
        9: [5, 10, 16, 24, 35, 40, 45, 54, 59],
    },
    6: {
        2: [6, 12, 21, 28, 40, 56, 61, 66, 73],
        3: [6, 12, 19, 31, 40, 56, 62, 71, 79],
        4: [6, 12, 19, 28, 41, 56, 62, 68, 81],
        5: [6, 12, 19, 28, 40, 56, 62, 68, 79],
        6: [6, 12, 19, 28, 40, 56, 62, 68, 79],
        7: [6, 12, 19, 28, 40, 56, 62, 71, 79],
        8: [6, 12, 19, 28, 40, 56, 62, 68, 81],
        9: [6, 12, 19, 28, 40, 56, 62, 68, 79],
    },
}

REFERENCE_TABLE: dict[tuple[int, int, int], int | None] = {
    (n, d, k + 1): v
    for n, by_d in _REFERENCE_ROWS.items()
    for d, row in by_d.items()
    for k, v in enumerate(row)
}


def compare_with_reference(table: MTable) -> list[str]:
    """Cells that disagree with the reference values (cells outside it are skipped)."""
    bad = []
    for n in table.ns:
        for d in table.ds:
            for k in table.ks:
                if (n, d, k) not in REFERENCE_TABLE:
                    continue
                ref = REFERENCE_TABLE[(n, d, k)]
                got = table.shown(n, d, k)
                want = "-" if ref is None else str(ref)
                if got != "?" and got != want:
                    bad.append(f"m({n},{d},{k}): computed {got}, expected {want}")
    return bad
