"""Seeded random forms, spaces and coordinate changes for the check harness."""

from __future__ import annotations

import zlib
from fractions import Fraction
from typing import Callable

import numpy as np

from .forms import (
    Form,
    FormSpace,
    GenericityError,
    _invert,
    apolar_complement,
    apply_coordinate_change,
    base_point_certificate,
    linear_form,
    random_invertible,
    span,
)
from .monomials import monomial_basis, num_monomials


def trial_rng(seed: int, label: str, trial: int) -> np.random.Generator:
    """Independent stream per (master seed, label, trial); identical in any worker."""
    return np.random.default_rng([seed, zlib.crc32(label.encode()), trial])


def random_coefficient(rng, height: int, nonzero: bool = False) -> int:
    while True:
        c = int(rng.integers(-height, height + 1))
        if c or not nonzero:
            return c


def random_form(n: int, d: int, rng, height: int = 100, style: str = "dense") -> Form:
    """A nonzero form; ``sparse`` uses 1 to 3 monomials, preferring lex-small ones."""
    basis = monomial_basis(n, d)
    while True:
        if style == "dense":
            coeffs = {m: random_coefficient(rng, height) for m in basis}
        elif style == "sparse":
            s = int(rng.integers(1, 4))
            # lex-small monomials are the ones strongly stable complements use
            weights = np.linspace(2.0, 1.0, len(basis)) ** 4
            picks = rng.choice(len(basis), size=min(s, len(basis)), replace=False, p=weights / weights.sum())
            coeffs = {basis[int(i)]: random_coefficient(rng, height, nonzero=True) for i in picks}
        else:
            raise ValueError(f"unknown style {style!r}")
        f = Form(n, d, coeffs)
        if not f.is_zero():
            return f


def random_linear(n: int, rng, height: int = 100) -> Form:
    while True:
        f = linear_form([random_coefficient(rng, height) for _ in range(n)])
        if not f.is_zero():
            return f


def random_space(n: int, d: int, dim: int, rng, height: int = 100, style: str = "dense") -> FormSpace:
    """Span of random forms, topped up until it has dimension ``dim``."""
    if not 0 <= dim <= num_monomials(n, d):
        raise ValueError(f"dim {dim} outside 0..{num_monomials(n, d)}")
    forms: list[Form] = []
    W = FormSpace.zero(n, d)
    while W.dim < dim:
        forms.append(random_form(n, d, rng, height, style))
        W = span(forms, n, d)
        if len(forms) > 4 * dim + 20:
            # sparse draws can stall on tiny spaces; fall back to dense
            style = "dense"
    return W


def contragredient(M) -> list[list[Fraction]]:
    """``M^{-T}``: the change acting on apolar complements alongside ``M``."""
    inv = _invert(M)
    n = len(inv)
    return [[inv[j][i] for j in range(n)] for i in range(n)]


def change_coordinates_dual(W: FormSpace, M) -> tuple[FormSpace, FormSpace]:
    """``(W', U')`` with ``U' = G(W^perp)`` and ``W' = U'^perp`` for the change ``M``.

    Only the small space W is substituted; the pairing is invariant under
    ``(p, q) -> (p o M^T, q o M^{-1})``.
    """
    W2 = apply_coordinate_change(W, contragredient(M))
    return W2, apolar_complement(W2)


def agreed_value(sample: Callable[[], object], retries: int = 5) -> tuple[object, int]:
    """Draw until two consecutive samples agree; returns ``(value, extra draws)``."""
    previous = sample()
    for extra in range(retries + 1):
        current = sample()
        if current == previous:
            return current, extra
        previous = current
    raise GenericityError(f"no two consecutive samples agreed in {retries + 2} draws")


class RejectionBudget(RuntimeError):
    """No acceptable instance was found within the allowed number of draws."""


def random_bpf_pair(
    n: int,
    d: int,
    k: int,
    rng,
    height: int = 100,
    style: str = "mixed",
    T: int | None = None,
    attempts: int = 40,
) -> tuple[FormSpace, FormSpace, int]:
    """``(W, U)`` with ``U = W^perp`` of codimension ``k`` certified base-point-free.

    Returns the number of rejected draws alongside.
    """
    rejected = 0
    for attempt in range(attempts):
        st = style
        if style == "mixed":
            st = "sparse" if rng.random() < 0.7 else "dense"
        W = random_space(n, d, k, rng, height, st)
        U = apolar_complement(W)
        if base_point_certificate(U, T).base_point_free:
            return W, U, rejected
        rejected += 1
    raise RejectionBudget(f"no certified base-point-free draw in {attempts} attempts")
