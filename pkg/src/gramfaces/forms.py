"""Subspaces of degree-d forms with exact rational coefficients.

A :class:`FormSpace` stores the canonical reduced row echelon basis of the
subspace over the degree-d monomials sorted *descending* in the space's
monomial order, so pivots are leading monomials and two spaces are equal
exactly when their stored rows are.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence

from . import products
from .linalg import Echelon, nullspace, rref
from .macaulay import gotzmann_persists
from .monomials import (
    LEX,
    Monomial,
    MonomialOrder,
    format_monomial,
    monomial_basis,
    num_monomials,
    parse_monomial,
    parse_order,
)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


# ----------------------------------------------------------------------------
# forms


@dataclass(frozen=True, eq=False)
class Form:
    """A homogeneous polynomial; ``coeffs`` maps exponent tuples to Fractions."""

    n: int
    d: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for m, x in self.coeffs.items():
            m = tuple(m)
            if len(m) != self.n or sum(m) != self.d:
                raise ValueError(f"monomial {m} does not live in A({self.n})_{self.d}")
            x = Fraction(x)
            if x:
                clean[m] = x
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def monomial(cls, m: Sequence[int], coef=1) -> "Form":
        return cls(len(m), sum(m), {tuple(m): coef})

    @classmethod
    def parse(cls, text: str, n: int) -> "Form":
        """Parse e.g. ``"x1^2 - 3/2*x2*x3 + x3^2"``; all terms must share a degree."""
        compact = text.replace(" ", "")
        terms = re.findall(r"[+-]?[^+-]+", compact)
        if not terms:
            raise ValueError("empty form")
        coeffs: dict = {}
        for term in terms:
            sign = -1 if term.startswith("-") else 1
            coef = Fraction(sign)
            factors = []
            for piece in term.lstrip("+-").split("*"):
                if piece.startswith("x"):
                    factors.append(piece)
                else:
                    coef *= Fraction(piece)
            mono = parse_monomial("*".join(factors) if factors else "1", n)
            coeffs[tuple(mono)] = coeffs.get(tuple(mono), 0) + coef
        degrees = {sum(m) for m in coeffs}
        if len(degrees) != 1:
            raise ValueError(f"form {text!r} is not homogeneous")
        return cls(n, degrees.pop(), coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        out = dict(self.coeffs)
        for m, x in other.coeffs.items():
            out[m] = out.get(m, 0) + x
        return Form(self.n, self.d, out)

    def __neg__(self) -> "Form":
        return Form(self.n, self.d, {m: -x for m, x in self.coeffs.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Form):
            if other.n != self.n:
                raise ValueError("variable count mismatch")
            out: dict = {}
            for a, x in self.coeffs.items():
                for b, y in other.coeffs.items():
                    m = _add(a, b)
                    out[m] = out.get(m, 0) + x * y
            return Form(self.n, self.d + other.d, out)
        s = Fraction(other)
        return Form(self.n, self.d, {m: s * x for m, x in self.coeffs.items()})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Form":
        out = Form(self.n, 0, {(0,) * self.n: 1})
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Form)
            and (self.n, self.d) == (other.n, other.d)
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.n, self.d, frozenset(self.coeffs.items())))

    def _check(self, other: "Form") -> None:
        if (self.n, self.d) != (other.n, other.d):
            raise ValueError(
                f"A({self.n})_{self.d} and A({other.n})_{other.d} do not match"
            )

    def __call__(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for m, x in self.coeffs.items():
            term = x
            for v, e in zip(point, m):
                term *= Fraction(v) ** e
            total += term
        return total

    def substitute(self, images: Sequence["Form"]) -> "Form":
        """Replace ``x_i`` by the linear form ``images[i]``."""
        n_new = images[0].n
        cache: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in cache:
                cache[key] = images[i] ** e
            return cache[key]

        out = Form(n_new, self.d, {})
        for m, x in self.coeffs.items():
            term = Form(n_new, 0, {(0,) * n_new: x})
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for m in sorted(self.coeffs, key=LEX.key_function(self.n), reverse=True):
            x = self.coeffs[m]
            mono = format_monomial(m)
            if mono == "1":
                parts.append(str(x))
            elif x == 1:
                parts.append(mono)
            elif x == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{x}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Form({self.to_text()!r})"


def linear_form(coeffs: Sequence) -> Form:
    n = len(coeffs)
    return Form(n, 1, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})


def eval_pairing(f: Form, g: Form) -> Fraction:
    """Apolarity pairing ``(1/m!) f(d)(g)``; diagonal with weight ``alpha!/m!``."""
    f._check(g)
    total = Fraction(0)
    for m, x in f.coeffs.items():
        y = g.coeffs.get(m)
        if y:
            total += x * y * _weight(m)
    return total


def _weight(m: Sequence[int]) -> Fraction:
    num = 1
    for e in m:
        num *= factorial(e)
    return Fraction(num, factorial(sum(m)))


# ----------------------------------------------------------------------------
# spaces


@lru_cache(maxsize=512)
def _desc_basis(n: int, d: int, order: MonomialOrder):
    basis = tuple(reversed(monomial_basis(n, d, order)))
    return basis, {m: i for i, m in enumerate(basis)}


@dataclass(frozen=True, eq=False)
class FormSpace:
    """Subspace of ``A(n)_d`` in canonical reduced echelon form.

    ``rows`` holds ``((col, coef), ...)`` tuples with the pivot first
    (coefficient 1); column ``c`` is the ``c``-th monomial in descending order.
    """

    n: int
    d: int
    rows: tuple = ()
    order: MonomialOrder = LEX

    @property
    def basis(self) -> tuple:
        return _desc_basis(self.n, self.d, self.order)[0]

    @property
    def column(self) -> dict:
        return _desc_basis(self.n, self.d, self.order)[1]

    @property
    def ambient_dim(self) -> int:
        return num_monomials(self.n, self.d)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    @property
    def pivots(self) -> list[int]:
        return [row[0][0] for row in self.rows]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FormSpace)
            and (self.n, self.d, self.order) == (other.n, other.d, other.order)
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.n, self.d, self.order, self.rows))

    def __repr__(self) -> str:
        return f"FormSpace(n={self.n}, d={self.d}, dim={self.dim}, codim={self.codim})"

    # -- construction --------------------------------------------------------

    @classmethod
    def from_vectors(cls, n: int, d: int, vectors: Iterable[dict], order=LEX) -> "FormSpace":
        return cls(n, d, tuple(rref(vectors)), order)

    @classmethod
    def full(cls, n: int, d: int, order=LEX) -> "FormSpace":
        N = num_monomials(n, d)
        return cls(n, d, tuple(((c, Fraction(1)),) for c in range(N)), order)

    @classmethod
    def zero(cls, n: int, d: int, order=LEX) -> "FormSpace":
        return cls(n, d, (), order)

    @classmethod
    def from_monomials(cls, n: int, d: int, monomials: Iterable[Sequence[int]], order=LEX):
        column = _desc_basis(n, d, order)[1]
        cols = sorted({column[tuple(m)] for m in monomials})
        return cls(n, d, tuple(((c, Fraction(1)),) for c in cols), order)

    @classmethod
    def monomial_complement(cls, n: int, d: int, excluded: Iterable[Sequence[int]], order=LEX):
        """Span of all degree-d monomials outside ``excluded`` (= (span excluded)^perp)."""
        excluded = {tuple(m) for m in excluded}
        basis = _desc_basis(n, d, order)[0]
        return cls.from_monomials(n, d, [m for m in basis if m not in excluded], order)

    def vector(self, f: Form) -> dict:
        if (f.n, f.d) != (self.n, self.d):
            raise ValueError(f"form in A({f.n})_{f.d} does not fit A({self.n})_{self.d}")
        column = self.column
        return {column[m]: x for m, x in f.coeffs.items()}

    def form(self, vec) -> Form:
        basis = self.basis
        return Form(self.n, self.d, {basis[c]: x for c, x in dict(vec).items()})

    def forms(self) -> list[Form]:
        return [self.form(row) for row in self.rows]

    def term_rows(self) -> list[list[tuple[tuple[int, ...], Fraction]]]:
        """Rows as ``[(exps, coef), ...]`` with the leading monomial first."""
        basis = self.basis
        return [[(basis[c], x) for c, x in row] for row in self.rows]

    def with_order(self, order: MonomialOrder) -> "FormSpace":
        if order == self.order:
            return self
        return span(self.forms(), self.n, self.d, order)

    # -- membership ----------------------------------------------------------

    def remainder(self, vec: dict) -> dict:
        """Residue of ``vec`` on the non-pivot columns; zero iff ``vec`` lies in the space."""
        pivot_rows = self._pivot_rows()
        out = {c: x for c, x in vec.items() if c not in pivot_rows and x}
        for c, x in vec.items():
            tail = pivot_rows.get(c)
            if tail is not None and x:
                for k, y in tail:
                    nv = out.get(k, 0) - x * y
                    if nv:
                        out[k] = nv
                    else:
                        out.pop(k, None)
        return out

    def _pivot_rows(self) -> dict:
        cached = self.__dict__.get("_pivot_cache")
        if cached is None:
            cached = {row[0][0]: row[1:] for row in self.rows}
            object.__setattr__(self, "_pivot_cache", cached)
        return cached

    def contains(self, f: Form) -> bool:
        return not self.remainder(self.vector(f))

    def issubspace(self, other: "FormSpace") -> bool:
        return all(other.contains(f) for f in self.forms())

    def is_monomial(self) -> bool:
        return all(len(row) == 1 for row in self.rows)

    def leading_monomials(self) -> set[Monomial]:
        basis = self.basis
        return {Monomial(basis[c]) for c in self.pivots}


def span(polys: Iterable[Form], n: int | None = None, d: int | None = None, order=LEX) -> FormSpace:
    """Canonical echelon space spanned by ``polys``."""
    polys = list(polys)
    if polys:
        shapes = {(f.n, f.d) for f in polys}
        if len(shapes) != 1:
            raise ValueError(f"mixed degrees or variable counts: {sorted(shapes)}")
        n0, d0 = shapes.pop()
        if (n is not None and n != n0) or (d is not None and d != d0):
            raise ValueError("forms do not live in the requested A(n)_d")
        n, d = n0, d0
    if n is None or d is None:
        raise ValueError("need n and d for an empty span")
    column = _desc_basis(n, d, order)[1]
    return FormSpace.from_vectors(
        n, d, ({column[m]: x for m, x in f.coeffs.items()} for f in polys), order
    )


def _check_same_ring(U: FormSpace, V: FormSpace) -> None:
    if U.n != V.n:
        raise ValueError(f"variable counts differ: {U.n} vs {V.n}")
    if U.order != V.order:
        raise ValueError("spaces use different monomial orders")


# ----------------------------------------------------------------------------
# products


def product_codim(U: FormSpace, V: FormSpace, method: str = "auto") -> int:
    """``codim span(U*V)`` in ``A_{d1+d2}``.

    ``method`` is ``"exact"``, ``"modp"`` (an upper bound, exact with
    overwhelming probability) or ``"auto"`` (exact below a work budget).
    """
    _check_same_ring(U, V)
    same = U == V
    urows, vrows = U.term_rows(), V.term_rows()
    D = U.d + V.d
    if method == "auto":
        small = products.work_estimate(urows, vrows, same) <= products.EXACT_BUDGET
        method = "exact" if small else "modp"
    if method == "exact":
        return products.annihilator_exact(urows, vrows, U.n, D, U.order, same, codim_only=True)[1]
    if method == "modp":
        try:
            return products.codim_modp(urows, vrows, U.n, D, U.order, same)
        except ZeroDivisionError:
            # a coefficient has the prime in its denominator; no reduction exists
            return products.annihilator_exact(urows, vrows, U.n, D, U.order, same, codim_only=True)[1]
    raise ValueError(f"unknown method {method!r}")


def square_codim(U: FormSpace, method: str = "auto") -> int:
    return product_codim(U, U, method)


def product_space(U: FormSpace, V: FormSpace) -> FormSpace:
    """``span(pq : p in U, q in V)`` as a canonical space (exact)."""
    _check_same_ring(U, V)
    D = U.d + V.d
    basis, ann = products.annihilator_exact(
        U.term_rows(), V.term_rows(), U.n, D, U.order, U == V
    )
    N = len(basis)
    rows = [{N - 1 - k: x for k, x in g.items()} for g in ann]
    return FormSpace(U.n, D, tuple(nullspace(rows, N)), U.order)


def square(U: FormSpace) -> FormSpace:
    return product_space(U, U)


# ----------------------------------------------------------------------------
# apolarity


def apolar_complement(W: FormSpace) -> FormSpace:
    """Orthogonal complement under the apolarity pairing."""
    basis = W.basis
    weights = [_weight(m) for m in basis]
    rows = [{c: x * weights[c] for c, x in row} for row in W.rows]
    return FormSpace(W.n, W.d, tuple(nullspace(rows, len(basis))), W.order)


# ----------------------------------------------------------------------------
# quotients, intersections, restrictions


def _combinations_inside(U: FormSpace, vectors: Sequence[dict]) -> list:
    """Reduced echelon basis of ``{c : sum c_i v_i in U}`` over positions of ``vectors``."""
    rows: dict[int, dict[int, Fraction]] = {}
    for pos, v in enumerate(vectors):
        for k, x in U.remainder(v).items():
            rows.setdefault(k, {})[pos] = x
    return nullspace(rows.values(), len(vectors))


def ideal_quotient_by_linear(U: FormSpace, l: Form) -> FormSpace:
    """``(U : l) = {q in A_{d-1} : l*q in U}``."""
    if l.d != 1 or l.n != U.n:
        raise ValueError("need a linear form in the same variables")
    if l.is_zero():
        raise ValueError("cannot divide by the zero form")
    if U.d < 1:
        raise ValueError("degree must be positive")
    lower, _ = _desc_basis(U.n, U.d - 1, U.order)
    vectors = [U.vector(l * Form.monomial(m)) for m in lower]
    return FormSpace(U.n, U.d - 1, tuple(_combinations_inside(U, vectors)), U.order)


def intersection(U: FormSpace, V: FormSpace) -> FormSpace:
    if (U.n, U.d, U.order) != (V.n, V.d, V.order):
        raise ValueError("spaces live in different ambient spaces")
    combos = _combinations_inside(U, [dict(row) for row in V.rows])
    vectors = []
    for combo in combos:
        vec: dict = {}
        for pos, x in combo:
            for c, y in V.rows[pos]:
                vec[c] = vec.get(c, 0) + x * y
        vectors.append(vec)
    return FormSpace.from_vectors(U.n, U.d, vectors, U.order)


def sum_space(U: FormSpace, V: FormSpace) -> FormSpace:
    if (U.n, U.d, U.order) != (V.n, V.d, V.order):
        raise ValueError("spaces live in different ambient spaces")
    return FormSpace.from_vectors(U.n, U.d, [dict(r) for r in U.rows + V.rows], U.order)


def intersect_with_first_vars(U: FormSpace, m: int) -> FormSpace:
    """``U ∩ A(m)_d`` written over the first ``m`` variables."""
    if not 1 <= m <= U.n:
        raise ValueError(f"need 1 <= m <= {U.n}")
    if m == U.n:
        return U
    basis = U.basis
    cols = [c for c, mono in enumerate(basis) if not any(mono[m:])]
    combos = _combinations_inside(U, [{c: Fraction(1)} for c in cols])
    order = U.order.restricted(m)
    forms = [
        Form(m, U.d, {basis[cols[pos]][:m]: x for pos, x in combo}) for combo in combos
    ]
    return span(forms, m, U.d, order)


def restrict_to_hyperplane(W: FormSpace, l: Form) -> FormSpace:
    """Image of W in ``A/(l)``, identified with forms in ``n-1`` variables.

    The last variable with a nonzero coefficient in ``l`` is eliminated.
    """
    if l.d != 1 or l.n != W.n or l.is_zero():
        raise ValueError("need a nonzero linear form in the same variables")
    coef = [l.coeffs.get(tuple(int(i == j) for j in range(W.n)), Fraction(0)) for i in range(W.n)]
    j = max(i for i, c in enumerate(coef) if c)
    n1 = W.n - 1
    images = []
    for i in range(W.n):
        if i == j:
            images.append(linear_form([-coef[v] / coef[j] for v in range(W.n) if v != j]))
        else:
            images.append(linear_form([int(v == i) for v in range(W.n) if v != j]))
    order = W.order.restricted(n1) if W.order.kind != "block" else LEX
    return span([f.substitute(images) for f in W.forms()], n1, W.d, order)


def lift(U: FormSpace, levels: int) -> FormSpace:
    """``U^(l)``: repeatedly adjoin ``x_{n+1} A(n+1)_{d-1}`` in a new variable."""
    if levels < 0:
        raise ValueError("levels must be non-negative")
    for _ in range(levels):
        n1 = U.n + 1
        order = U.order.extended(n1)
        forms = [Form(n1, U.d, {m + (0,): x for m, x in f.coeffs.items()}) for f in U.forms()]
        basis, _ = _desc_basis(n1, U.d, order)
        forms += [Form.monomial(m) for m in basis if m[-1] > 0]
        U = span(forms, n1, U.d, order)
    return U


# ----------------------------------------------------------------------------
# coordinate changes and initial monomials


def _invert(M: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        A[col], A[piv] = A[piv], A[col]
        lead = A[col][col]
        A[col] = [x / lead for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [row[n:] for row in A]


def apply_coordinate_change(U: FormSpace, M: Sequence[Sequence]) -> FormSpace:
    """``G U = {p(M^{-1} x) : p in U}`` for an invertible ``n x n`` matrix ``M``."""
    if len(M) != U.n or any(len(row) != U.n for row in M):
        raise ValueError(f"need an {U.n}x{U.n} matrix")
    Minv = _invert(M)
    images = [linear_form(row) for row in Minv]
    return span([f.substitute(images) for f in U.forms()], U.n, U.d, U.order)


def initial_subspace(U: FormSpace, order: MonomialOrder | None = None) -> set[Monomial]:
    """Leading monomials of all nonzero elements of U."""
    if order is None or order == U.order:
        return U.leading_monomials()
    return U.with_order(order).leading_monomials()


def random_invertible(n: int, rng, height: int = 100) -> list[list[int]]:
    while True:
        M = [[int(x) for x in rng.integers(-height, height + 1, size=n)] for _ in range(n)]
        try:
            _invert(M)
        except ValueError:
            continue
        return M


class GenericityError(RuntimeError):
    """Repeated random samples never agreed on a generic invariant."""


def generic_initial_monomials(
    U: FormSpace, t: int | None = None, seed: int = 0, trials: int = 5, height: int = 100
) -> set[Monomial]:
    """Degree-``t`` part of ``gin(<U>)``: leading monomials after a random change
    of coordinates, accepted once two independent samples agree."""
    import numpy as np

    t = U.d if t is None else t
    if t < U.d:
        raise ValueError("t must be at least the degree of U")
    rng = np.random.default_rng(seed)

    def sample():
        V = apply_coordinate_change(U, random_invertible(U.n, rng, height))
        if t > U.d:
            V = product_space(FormSpace.full(U.n, t - U.d, U.order), V)
        return frozenset(V.leading_monomials())

    previous = sample()
    for _ in range(trials):
        current = sample()
        if current == previous:
            return set(current)
        previous = current
    raise GenericityError(f"initial monomials disagreed across {trials + 1} samples")


# ----------------------------------------------------------------------------
# Hilbert functions and base points


@dataclass(frozen=True)
class HilbertTable:
    """``h[i] = dim (A/<U>)_i`` for ``i = 0..T``.

    ``status[i]`` is ``"exact"`` or ``"modp"``; a modular value can only
    overestimate the true one.
    """

    T: int
    h: tuple[int, ...]
    status: tuple[str, ...]

    def __getitem__(self, i: int) -> int:
        return self.h[i]

    @property
    def exact(self) -> bool:
        return all(s == "exact" for s in self.status)


def hilbert_value(U: FormSpace, i: int, method: str = "auto") -> int:
    if i < U.d:
        return num_monomials(U.n, i)
    if i == U.d:
        return U.codim
    return product_codim(FormSpace.full(U.n, i - U.d, U.order), U, method)


def _resolve(U: FormSpace, i: int, method: str) -> str:
    if method != "auto":
        return method
    if i <= U.d:
        return "exact"
    A = FormSpace.full(U.n, i - U.d, U.order)
    work = products.work_estimate(A.term_rows(), U.term_rows(), False)
    return "exact" if work <= products.EXACT_BUDGET else "modp"


def hilbert_table(U: FormSpace, T: int | None = None, method: str = "auto") -> HilbertTable:
    """Hilbert function of ``<U>`` up to degree ``T`` (default ``2d+2``)."""
    T = 2 * U.d + 2 if T is None else T
    if T < U.d:
        raise ValueError("T must be at least d")
    h, status = [], []
    for i in range(T + 1):
        if h and i > U.d and h[-1] == 0:
            # once the ideal contains A_i it contains every higher degree
            h.append(0)
            status.append(status[-1])
            continue
        m = _resolve(U, i, method)
        h.append(hilbert_value(U, i, m))
        status.append("exact" if m == "exact" else "modp")
    return HilbertTable(T, tuple(h), tuple(status))


@dataclass(frozen=True)
class BasePointCertificate:
    """``verdict`` is ``"base-point-free"``, ``"has-base-points"`` or ``"inconclusive"``."""

    verdict: str
    degree: int | None
    witness: str
    evidence: HilbertTable | None

    @property
    def base_point_free(self) -> bool:
        return self.verdict == "base-point-free"

    @property
    def has_base_points(self) -> bool:
        return self.verdict == "has-base-points"

    def __str__(self) -> str:
        if self.base_point_free:
            return f"BasePointFree(at degree {self.degree})"
        if self.has_base_points:
            return f"HasBasePoints({self.witness})"
        return f"Inconclusive(bound {self.degree})"


def _coordinate_point_zero(U: FormSpace) -> int | None:
    support = {m for f in U.forms() for m in f.coeffs}
    for i in range(U.n):
        if tuple(U.d if j == i else 0 for j in range(U.n)) not in support:
            return i
    return None


def base_point_certificate(U: FormSpace, T: int | None = None, method: str = "auto") -> BasePointCertificate:
    """Decide whether U has a common zero in projective space.

    Base-point-free is certified by a vanishing Hilbert value.  Base points
    are certified by a coordinate point where every form vanishes, or by
    maximal (Gotzmann) growth from a positive value, which pins a nonzero
    Hilbert polynomial.  Modular Hilbert values may only overestimate, so
    they are trusted for the first conclusion and never for the second.
    """
    T = 2 * U.d + 2 if T is None else T
    zero_at = _coordinate_point_zero(U)
    if zero_at is not None:
        point = ["0"] * U.n
        point[zero_at] = "1"
        return BasePointCertificate("has-base-points", None, f"common zero ({', '.join(point)})", None)
    if U.is_monomial():
        # every x_i^d lies in U; all monomials of degree n(d-1)+1 are then covered
        T = max(T, U.n * (U.d - 1) + 1)
    h, status = [], []
    for i in range(T + 1):
        m = _resolve(U, i, method)
        h.append(hilbert_value(U, i, m))
        status.append("exact" if m == "exact" else "modp")
        if i >= U.d and h[i] == 0:
            h += [0] * (T - i)
            status += [status[-1]] * (T - i)
            table = HilbertTable(T, tuple(h), tuple(status))
            return BasePointCertificate("base-point-free", i, f"h_{i} = 0", table)
        if (
            i > U.d
            and status[i] == status[i - 1] == "exact"
            and h[i - 1] > 0
            and gotzmann_persists(h[i - 1], h[i], i - 1)
        ):
            table = HilbertTable(i, tuple(h), tuple(status))
            return BasePointCertificate(
                "has-base-points", i - 1, f"maximal growth h_{i - 1}={h[i - 1]} -> h_{i}={h[i]}", table
            )
    return BasePointCertificate("inconclusive", T, "", HilbertTable(T, tuple(h), tuple(status)))


def contains_power_of_linear_form(W: FormSpace, T: int | None = None) -> bool | None:
    """Whether some ``l^d`` lies in W; ``None`` when undecided.

    ``l^d`` pairs with ``f`` to ``f(u)``, so W holds a d-th power exactly when
    its apolar complement has a common zero.
    """
    cert = base_point_certificate(apolar_complement(W), T)
    if cert.base_point_free:
        return False
    if cert.has_base_points:
        return True
    return None


def linear_multiple_factor(W: FormSpace) -> Form | None:
    """``F`` with ``W = F * A_1`` if W has that shape, else None."""
    if W.d < 1 or W.dim != W.n:
        return None
    Q = None
    for i in range(W.n):
        x = linear_form([int(j == i) for j in range(W.n)])
        q = ideal_quotient_by_linear(W, x)
        Q = q if Q is None else intersection(Q, q)
        if Q.dim == 0:
            return None
    if Q.dim != 1:
        return None
    F = Q.forms()[0]
    A1 = [linear_form([int(j == i) for j in range(W.n)]) for i in range(W.n)]
    if span([F * x for x in A1], W.n, W.d, W.order) == W:
        return F
    return None


def face_dimension(dim_U: int, n: int, d: int, codim_Usq: int) -> int:
    """``C(dim U + 1, 2) - dim A_{2d} + codim U^2``."""
    if min(dim_U, n, d, codim_Usq) < 0:
        raise ValueError("arguments must be non-negative")
    return comb(dim_U + 1, 2) - num_monomials(n, 2 * d) + codim_Usq


# ----------------------------------------------------------------------------
# interchange files


def space_to_dict(U: FormSpace) -> dict:
    return {
        "n": U.n,
        "d": U.d,
        "order": str(U.order),
        "generators": [
            {format_monomial(U.basis[c]): str(x) for c, x in row} for row in U.rows
        ],
    }


def space_from_dict(data: dict) -> FormSpace:
    """Build a space from the interchange schema.

    Keys: ``n``, ``d``, optional ``order`` (default ``lex``) and exactly one of
    ``generators`` (list of ``{monomial: "p/q"}`` maps) or
    ``complement_monomials`` (list of monomials whose span's apolar
    complement is the space).
    """
    try:
        n, d = int(data["n"]), int(data["d"])
    except KeyError as exc:
        raise ValueError(f"missing field {exc.args[0]!r}") from None
    order = parse_order(data.get("order", "lex"))
    has_gens = "generators" in data
    has_comp = "complement_monomials" in data
    if has_gens == has_comp:
        raise ValueError("give exactly one of 'generators' or 'complement_monomials'")
    if has_comp:
        excluded = [parse_monomial(t, n) for t in data["complement_monomials"]]
        for m in excluded:
            if sum(m) != d:
                raise ValueError(f"monomial {m} is not of degree {d}")
        return FormSpace.monomial_complement(n, d, excluded, order)
    forms = []
    for gen in data["generators"]:
        coeffs = {}
        for mono, value in gen.items():
            m = parse_monomial(mono, n)
            if sum(m) != d:
                raise ValueError(f"monomial {mono} is not of degree {d}")
            coeffs[tuple(m)] = coeffs.get(tuple(m), 0) + Fraction(value)
        forms.append(Form(n, d, coeffs))
    return span(forms, n, d, order)


def dumps_space(U: FormSpace) -> str:
    return json.dumps(space_to_dict(U), indent=2) + "\n"


def loads_space(text: str) -> FormSpace:
    return space_from_dict(json.loads(text))
