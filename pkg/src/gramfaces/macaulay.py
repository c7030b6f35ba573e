"""Macaulay representations and the Macaulay / Gotzmann / Green bounds.

Everything here is integer arithmetic on Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb


def binom(a: int, b: int) -> int:
    """Binomial coefficient with ``binom(a, b) = 0`` whenever ``a < b`` or ``b < 0``."""
    if b < 0 or a < b:
        return 0
    return comb(a, b)


@dataclass(frozen=True)
class MacaulayRep:
    """``a = C(tops[0], d) + C(tops[1], d-1) + ...`` with strictly decreasing tops.

    Zero-valued trailing terms are omitted, so ``tops`` may be shorter than
    ``d`` and is empty for ``a = 0``.
    """

    degree: int
    tops: tuple[int, ...]

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be positive")
        if len(self.tops) > self.degree:
            raise ValueError("more terms than the degree allows")
        for i, (k, nxt) in enumerate(zip(self.tops, self.tops[1:])):
            if not k > nxt:
                raise ValueError(f"tops must strictly decrease: {self.tops}")
        for i, k in enumerate(self.tops):
            if k < self.degree - i:
                raise ValueError(f"term C({k}, {self.degree - i}) is zero; omit it")

    @property
    def value(self) -> int:
        return sum(binom(k, self.degree - i) for i, k in enumerate(self.tops))

    def terms(self) -> list[tuple[int, int]]:
        return [(k, self.degree - i) for i, k in enumerate(self.tops)]

    def __str__(self) -> str:
        if not self.tops:
            return "0"
        return " + ".join(f"C({k},{i})" for k, i in self.terms())


def macaulay_rep(a: int, d: int) -> MacaulayRep:
    """The ``d``-th Macaulay representation of ``a`` (greedy)."""
    if a < 0 or d < 1:
        raise ValueError(f"need a >= 0 and d >= 1, got a={a}, d={d}")
    tops = []
    i = d
    while a > 0:
        k = _largest_top(a, i)
        tops.append(k)
        a -= binom(k, i)
        i -= 1
    return MacaulayRep(d, tuple(tops))


def _largest_top(a: int, i: int) -> int:
    # largest k with C(k, i) <= a, for a >= 1
    lo, hi = i, i + 1
    while binom(hi, i) <= a:
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if binom(mid, i) <= a:
            lo = mid
        else:
            hi = mid
    return lo


def macaulay_shift(rep: MacaulayRep, s: int, t: int) -> int:
    """``a_(d)|^s_t = sum C(k(i)+s, i+t)``.

    Only meaningful for ``s <= t``: dropped zero terms ``C(k, i)`` with
    ``k < i`` stay zero after such a shift, so omitting them is harmless.
    """
    assert s <= t, "shift with s > t would depend on omitted zero terms"
    return sum(binom(k + s, i + t) for k, i in rep.terms())


def macaulay_growth_bound(h: int, i: int) -> int:
    """Macaulay's bound: ``h_{i+1} <= (h_i)_(i)|^1_1``."""
    return macaulay_shift(macaulay_rep(h, i), 1, 1)


def green_restriction_bound(h: int, d: int) -> int:
    """Green's bound on the generic hyperplane restriction: ``c_d <= (h_d)_(d)|^-1_0``."""
    return macaulay_shift(macaulay_rep(h, d), -1, 0)


def gotzmann_persists(h_d: int, h_d1: int, d: int) -> bool:
    """True iff ``h_{d+1}`` is the maximal growth allowed from ``h_d``."""
    return h_d1 == macaulay_growth_bound(h_d, d)


def gotzmann_prediction(h_d: int, d: int, l: int) -> int:
    """Predicted ``h_{d+l}`` once growth is maximal, ``(h_d)_(d)|^l_l``."""
    if l < 0:
        raise ValueError("l must be non-negative")
    return macaulay_shift(macaulay_rep(h_d, d), l, l)
