"""Exponent-vector monomials, monomial orders and Borel moves.

Variables are 1-based in text (``x1, x2, ...``) and 0-based in exponent
tuples.  A :class:`Monomial` is a tuple subclass, so it hashes and compares
equal to the plain exponent tuple; hot loops elsewhere in the package work on
plain tuples and only wrap at the API boundary.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence


class Monomial(tuple):
    """A monomial ``x^alpha`` stored as its exponent vector."""

    __slots__ = ()

    def __new__(cls, exps: Iterable[int]):
        exps = tuple(int(e) for e in exps)
        if not exps:
            raise ValueError("a monomial needs at least one variable")
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        return super().__new__(cls, exps)

    @property
    def n(self) -> int:
        return len(self)

    @property
    def degree(self) -> int:
        return sum(self)

    def __mul__(self, other):  # type: ignore[override]
        if len(other) != len(self):
            raise ValueError("variable count mismatch")
        return Monomial(a + b for a, b in zip(self, other))

    def divides(self, other: Sequence[int]) -> bool:
        return all(a <= b for a, b in zip(self, other))

    def __truediv__(self, other: Sequence[int]) -> "Monomial":
        if not Monomial.divides(other, self):
            raise ValueError(f"{format_monomial(other)} does not divide {self}")
        return Monomial(a - b for a, b in zip(self, other))

    def __repr__(self) -> str:
        return f"Monomial({format_monomial(self)!r})"

    def __str__(self) -> str:
        return format_monomial(self)


def pure_power(n: int, i: int, d: int) -> Monomial:
    """``x_i^d`` with 1-based ``i``."""
    exps = [0] * n
    exps[i - 1] = d
    return Monomial(exps)


# ----------------------------------------------------------------------------
# text format

_FACTOR = re.compile(r"\s*x(\d+)\s*(?:\^\s*(\d+))?\s*")


def format_monomial(m: Sequence[int]) -> str:
    """``(2, 0, 1)`` -> ``x1^2*x3``; the constant monomial prints as ``1``."""
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


def parse_monomial(text: str, n: int) -> Monomial:
    """Inverse of :func:`format_monomial`.

    Grammar: ``"1"`` or factors ``x<i>`` / ``x<i>^<e>`` joined by ``*``.
    A variable may appear more than once; exponents add up.
    """
    text = text.strip()
    exps = [0] * n
    if text == "1":
        return Monomial(exps)
    if not text:
        raise ValueError("empty monomial")
    for chunk in text.split("*"):
        match = _FACTOR.fullmatch(chunk)
        if match is None:
            raise ValueError(f"cannot parse factor {chunk!r} in {text!r}")
        i = int(match.group(1))
        if not 1 <= i <= n:
            raise ValueError(f"variable x{i} out of range for n={n}")
        exps[i - 1] += int(match.group(2) or 1)
    return Monomial(exps)


# ----------------------------------------------------------------------------
# orders


@dataclass(frozen=True)
class MonomialOrder:
    """Total multiplicative order on monomials of fixed degree.

    ``priority`` lists 0-based variable indices from most to least significant.
    The default ``lex`` order has ``x1 < x2 < ... < xn``: comparison scans
    exponents from ``x_n`` down and the first strictly larger exponent wins.

    ``kind`` is ``"lex"``, ``"grlex"`` or ``"block"``; for blocks, ``blocks``
    holds ``(kind, variables)`` pairs in priority order and each block is
    compared by its own kind before moving on to the next block.
    """

    kind: str = "lex"
    priority: tuple[int, ...] | None = None
    blocks: tuple[tuple[str, tuple[int, ...]], ...] = ()

    def __post_init__(self):
        if self.kind not in ("lex", "grlex", "block"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "block" and not self.blocks:
            raise ValueError("block order needs blocks")
        for sub, _ in self.blocks:
            if sub not in ("lex", "grlex"):
                raise ValueError(f"unknown block kind {sub!r}")

    def _priority(self, n: int) -> tuple[int, ...]:
        if self.priority is None:
            return tuple(range(n - 1, -1, -1))
        if sorted(self.priority) != list(range(n)):
            raise ValueError(f"priority {self.priority} is not a permutation of {n} variables")
        return self.priority

    def key(self, m: Sequence[int]):
        """Sort key; ascending keys mean ascending monomials."""
        return _key_function(self, len(m))(m)

    def key_function(self, n: int):
        return _key_function(self, n)

    def sorted(self, monomials: Iterable[Sequence[int]], descending: bool = False) -> list:
        items = list(monomials)
        if not items:
            return items
        return sorted(items, key=_key_function(self, len(items[0])), reverse=descending)

    def restricted(self, m: int) -> "MonomialOrder":
        """The induced order on the first ``m`` variables."""
        if self.kind == "block":
            blocks = []
            for sub, vs in self.blocks:
                kept = tuple(v for v in vs if v < m)
                if kept:
                    blocks.append((sub, kept))
            return MonomialOrder("block", blocks=tuple(blocks))
        if self.priority is None:
            return self
        return MonomialOrder(self.kind, tuple(v for v in self.priority if v < m))

    def extended(self, n_new: int) -> "MonomialOrder":
        """Order on ``n_new`` variables where the new variables are the most
        significant ones (the newest highest)."""
        if self.kind == "block":
            old = {v for _, vs in self.blocks for v in vs}
            n_old = len(old)
            new = tuple(range(n_new - 1, n_old - 1, -1))
            return MonomialOrder("block", blocks=(("lex", new),) + self.blocks)
        if self.priority is None:
            return self
        n_old = len(self.priority)
        return MonomialOrder(self.kind, tuple(range(n_new - 1, n_old - 1, -1)) + self.priority)

    def __str__(self) -> str:
        if self.kind == "block":
            return "block:" + "|".join(
                f"{sub}({','.join(str(v + 1) for v in vs)})" for sub, vs in self.blocks
            )
        if self.priority is None:
            return self.kind
        return f"{self.kind}:{','.join(str(v + 1) for v in self.priority)}"


LEX = MonomialOrder()
GRLEX = MonomialOrder("grlex")

_BLOCK_RE = re.compile(r"(lex|grlex)\(([\d,\s]+)\)")


def parse_order(text: str) -> MonomialOrder:
    """Parse ``lex``, ``grlex``, ``lex:3,2,1`` or ``block:grlex(1,2)|grlex(3,4)``.

    Variable lists are 1-based and give priority from most significant down.
    """
    text = text.strip()
    if text in ("lex", "grlex"):
        return MonomialOrder(text)
    kind, _, rest = text.partition(":")
    if kind in ("lex", "grlex"):
        return MonomialOrder(kind, tuple(int(v) - 1 for v in rest.split(",")))
    if kind == "block":
        blocks = []
        for part in rest.split("|"):
            match = _BLOCK_RE.fullmatch(part.strip())
            if match is None:
                raise ValueError(f"cannot parse block {part!r}")
            vs = tuple(int(v) - 1 for v in match.group(2).split(","))
            blocks.append((match.group(1), vs))
        return MonomialOrder("block", blocks=tuple(blocks))
    raise ValueError(f"cannot parse monomial order {text!r}")


@lru_cache(maxsize=256)
def _key_function(order: MonomialOrder, n: int):
    if order.kind == "block":
        parts = []
        for sub, vs in order.blocks:
            if any(v >= n for v in vs):
                raise ValueError(f"block {vs} out of range for n={n}")
            parts.append((sub == "grlex", vs))

        def key(m):
            out = []
            for graded, vs in parts:
                if graded:
                    out.append(sum(m[v] for v in vs))
                out.extend(m[v] for v in vs)
            return tuple(out)

        return key
    pr = order._priority(n)
    if order.kind == "lex":
        return lambda m: tuple(m[v] for v in pr)
    return lambda m: (sum(m),) + tuple(m[v] for v in pr)


# ----------------------------------------------------------------------------
# bases and divisors


def num_monomials(n: int, d: int) -> int:
    """``dim A(n)_d = C(n-1+d, d)``; zero for negative degree."""
    if d < 0:
        return 0
    return comb(n - 1 + d, d)


def exponent_vectors(n: int, d: int) -> Iterator[tuple[int, ...]]:
    """All exponent tuples of length ``n`` and total degree ``d`` (unsorted)."""
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in exponent_vectors(n - 1, d - first):
            yield (first,) + rest


@lru_cache(maxsize=512)
def _basis(n: int, d: int, order: MonomialOrder) -> tuple[Monomial, ...]:
    return tuple(Monomial(e) for e in sorted(exponent_vectors(n, d), key=order.key_function(n)))


def monomial_basis(n: int, d: int, order: MonomialOrder = LEX) -> list[Monomial]:
    """All monomials of degree ``d`` in ``n`` variables, ascending in ``order``."""
    if n < 1 or d < 0:
        raise ValueError(f"need n >= 1 and d >= 0, got n={n}, d={d}")
    return list(_basis(n, d, order))


def sub_exponents(m: Sequence[int], d: int) -> Iterator[tuple[int, ...]]:
    """Exponent vectors of degree ``d`` dividing ``m``, generated lazily."""
    n = len(m)
    tail = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        tail[i] = tail[i + 1] + m[i]

    def rec(i, left):
        if i == n - 1:
            if left <= m[i]:
                yield (left,)
            return
        lo = max(0, left - tail[i + 1])
        for e in range(min(m[i], left), lo - 1, -1):
            for rest in rec(i + 1, left - e):
                yield (e,) + rest

    if 0 <= d <= tail[0]:
        yield from rec(0, d)


def divisor_pairs(m: Sequence[int], d: int) -> set[tuple[Monomial, Monomial]]:
    """Unordered factorizations ``m = a*b`` with ``deg a = deg b = d``.

    Each pair is reported once, as ``(a, b)`` with ``a >= b`` as tuples.
    """
    if sum(m) != 2 * d:
        raise ValueError(f"monomial of degree {sum(m)} is not of degree 2*{d}")
    pairs = set()
    for a in sub_exponents(m, d):
        b = tuple(x - y for x, y in zip(m, a))
        pairs.add((Monomial(max(a, b)), Monomial(min(a, b))))
    return pairs


# ----------------------------------------------------------------------------
# Borel moves


def borel_move_up(m: Sequence[int], i: int, j: int) -> Monomial:
    """``x_j * m / x_i`` for 1-based ``i < j`` with ``x_i | m``."""
    if not 1 <= i < j <= len(m):
        raise ValueError(f"need 1 <= i < j <= n, got i={i}, j={j}")
    if m[i - 1] < 1:
        raise ValueError(f"x{i} does not divide {format_monomial(m)}")
    exps = list(m)
    exps[i - 1] -= 1
    exps[j - 1] += 1
    return Monomial(exps)


def down_moves(m: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All ``x_i * m / x_j`` with ``i < j`` and ``x_j | m``."""
    for j in range(1, len(m)):
        if m[j]:
            for i in range(j):
                exps = list(m)
                exps[j] -= 1
                exps[i] += 1
                yield tuple(exps)


def adjacent_down_moves(m: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Moves ``x_j -> x_{j-1}``; they generate the Borel order."""
    for j in range(1, len(m)):
        if m[j]:
            exps = list(m)
            exps[j] -= 1
            exps[j - 1] += 1
            yield tuple(exps)


def is_borel_down_closed(W: Iterable[Sequence[int]]) -> bool:
    """True iff replacing any variable of a member by a smaller one stays in W.

    Equivalently, the complementary monomial space is strongly stable.
    """
    W = {tuple(m) for m in W}
    shapes = {(len(m), sum(m)) for m in W}
    if len(shapes) > 1:
        raise ValueError(f"mixed variable counts or degrees: {sorted(shapes)}")
    return all(move in W for m in W for move in down_moves(m))


def borel_down_closure(W: Iterable[Sequence[int]]) -> set[tuple[int, ...]]:
    """Smallest Borel-down-closed set containing W (fixpoint iteration)."""
    closed = {tuple(m) for m in W}
    frontier = list(closed)
    while frontier:
        m = frontier.pop()
        for move in down_moves(m):
            if move not in closed:
                closed.add(move)
                frontier.append(move)
    return closed
