"""Seeded randomized checks of the bounds on ``codim U^2`` and related facts.

Every check draws its instances from ``trial_rng(seed, check_id, trial)``, so a
trial's outcome does not depend on which worker runs it.  Statements about a
*generic* linear form or coordinate change are evaluated with the agreement
protocol of :func:`gramfaces.sampling.agreed_value`; a trial whose samples
never agree is a genericity violation, kept apart from failures.
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Callable

from . import forms as fs
from .forms import (
    Form,
    FormSpace,
    GenericityError,
    apolar_complement,
    base_point_certificate,
    contains_power_of_linear_form,
    hilbert_value,
    ideal_quotient_by_linear,
    intersect_with_first_vars,
    lift,
    linear_form,
    linear_multiple_factor,
    product_codim,
    restrict_to_hyperplane,
    span,
    square_codim,
    space_to_dict,
    sum_space,
)
from .macaulay import green_restriction_bound, macaulay_growth_bound
from .monomials import is_borel_down_closed, monomial_basis, num_monomials
from .sampling import (
    RejectionBudget,
    agreed_value,
    change_coordinates_dual,
    random_form,
    random_invertible,
    random_linear,
    random_space,
    trial_rng,
)

# random spaces above this dimension use sparse generators only
DENSE_DIM_LIMIT = 6

STATUSES = ("pass", "fail", "violation", "outside", "undecided", "rejected-out")


def _json_value(v):
    if isinstance(v, (frozenset, set)):
        return sorted(_json_value(x) for x in v)
    if isinstance(v, tuple):
        return [_json_value(x) for x in v]
    return v


@dataclass
class TrialResult:
    trial: int
    status: str
    params: dict
    values: dict = field(default_factory=dict)
    resampled: int = 0
    rejected: int = 0
    payload: dict | None = None

    def record(self, check_id: str) -> dict:
        rec = {
            "check": check_id,
            "trial": self.trial,
            "status": self.status,
            "params": self.params,
            "values": {k: _json_value(v) for k, v in self.values.items()},
            "resampled": self.resampled,
            "rejected": self.rejected,
        }
        if self.payload is not None:
            rec["payload"] = self.payload
        return rec


@dataclass
class CheckReport:
    check_id: str
    params: dict
    seed: int
    height: int
    results: list[TrialResult]

    @property
    def counts(self) -> Counter:
        c = Counter({s: 0 for s in STATUSES})
        c.update(r.status for r in self.results)
        return c

    @property
    def trials(self) -> int:
        return len(self.results)

    @property
    def ok(self) -> bool:
        """No theorem failure; violations and hypothesis misses are not failures."""
        return self.counts["fail"] == 0

    def failures(self) -> list[TrialResult]:
        return [r for r in self.results if r.status == "fail"]

    def to_text(self) -> str:
        c = self.counts
        grid = " ".join(f"{k}={_fmt_range(v)}" for k, v in self.params.items())
        lines = [
            f"check {self.check_id}  {grid}  trials={self.trials} seed={self.seed} height={self.height}",
            "  " + "  ".join(f"{s} {c[s]}" for s in STATUSES),
            f"  resampled draws {sum(r.resampled for r in self.results)}"
            f"  rejected draws {sum(r.rejected for r in self.results)}",
        ]
        observed: dict[str, Counter] = {}
        for r in self.results:
            for k, v in r.values.items():
                if isinstance(v, (bool, int, str)) or v is None:
                    observed.setdefault(k, Counter())[v] += 1
        for k in sorted(observed):
            vals = observed[k]
            shown = ", ".join(f"{v}: {vals[v]}" for v in sorted(vals, key=lambda x: (str(type(x)), str(x))))
            lines.append(f"  {k}: {shown}")
        for r in self.failures():
            lines.append(f"  FAIL trial {r.trial} {json.dumps(r.params, sort_keys=True)} {json.dumps(r.record(self.check_id)['values'], sort_keys=True)}")
        return "\n".join(lines) + "\n"

    def to_records(self) -> str:
        return "".join(json.dumps(r.record(self.check_id), sort_keys=True) + "\n" for r in self.results)


def _fmt_range(v) -> str:
    if isinstance(v, (list, tuple)):
        v = list(v)
        if len(v) > 1 and v == list(range(v[0], v[-1] + 1)):
            return f"{v[0]}..{v[-1]}"
        return ",".join(str(x) for x in v)
    return str(v)


# ----------------------------------------------------------------------------
# per-trial context


class Outcome(Exception):
    """Ends a trial early with a status other than pass/fail."""

    def __init__(self, status: str, **values):
        super().__init__(status)
        self.status = status
        self.values = values


class Trial:
    def __init__(self, rng, n: int, d: int, k: int, height: int, options: dict):
        self.rng = rng
        self.n, self.d, self.k = n, d, k
        self.height = height
        self.options = options
        self.resampled = 0
        self.rejected = 0
        self.choices: dict = {}
        self.spaces: dict = {}

    def generic(self, sample: Callable[[], object]):
        value, extra = agreed_value(sample)
        self.resampled += extra
        return value

    def linear(self) -> Form:
        l = random_linear(self.n, self.rng, self.height)
        self.choices["l"] = [str(l.coeffs.get(tuple(int(i == j) for j in range(self.n)), 0)) for i in range(self.n)]
        return l

    def style(self) -> str:
        return "sparse" if self.rng.random() < 0.6 else "dense"

    def space(self, dim: int, n: int | None = None, d: int | None = None) -> FormSpace:
        style = self.style()
        if dim > DENSE_DIM_LIMIT:
            # dense spans of many forms have huge echelon coefficients
            style = "sparse"
        return random_space(n or self.n, d or self.d, dim, self.rng, self.height, style)

    def bpf_pair(self, attempts: int = 40) -> tuple[FormSpace, FormSpace]:
        for _ in range(attempts):
            W = self.space(self.k)
            U = apolar_complement(W)
            if base_point_certificate(U).base_point_free:
                self.keep(W=W)
                return W, U
            self.rejected += 1
        raise RejectionBudget("no certified base-point-free draw")

    def power_free(self, make: Callable[[], FormSpace], attempts: int = 40) -> FormSpace:
        """Draw W until it provably holds no d-th power of a linear form."""
        for _ in range(attempts):
            W = make()
            if contains_power_of_linear_form(W) is False:
                self.keep(W=W)
                return W
            self.rejected += 1
        raise RejectionBudget("no certified power-free draw")

    def keep(self, **spaces: FormSpace) -> None:
        for name, S in spaces.items():
            self.spaces[name] = space_to_dict(S)


def _codim(U: FormSpace, V: FormSpace | None = None, bound: int | None = None) -> int:
    """Product codimension; a modular value above ``bound`` is recomputed exactly."""
    V = U if V is None else V
    c = product_codim(U, V, "auto")
    if bound is not None and c > bound:
        c = product_codim(U, V, "exact")
    return c


# ----------------------------------------------------------------------------
# checks


@dataclass(frozen=True)
class Check:
    run: Callable[[Trial], tuple[bool, dict]]
    description: str
    defaults: dict
    valid: Callable[[int, int, int], bool]


REGISTRY: dict[str, Check] = {}


def register(check_id: str, description: str, defaults: dict, valid=lambda n, d, k: True):
    def wrap(fn):
        REGISTRY[check_id] = Check(fn, description, defaults, valid)
        return fn

    return wrap


def _fits(n, d, k):
    return 0 <= k <= num_monomials(n, d)


@register(
    "codim1-bpf",
    "base-point-free codim 1: codim U^2 <= 2 for d = 2 and in {0, 1} for d >= 3",
    {"n": [3, 4, 5], "d": [2, 3, 4], "k": [1]},
    lambda n, d, k: k == 1 and d >= 2,
)
def _codim1_bpf(t: Trial):
    W, U = t.bpf_pair()
    c = _codim(U, bound=2 if t.d == 2 else 1)
    ok = c <= 2 if t.d == 2 else c in (0, 1)
    return ok, {"codim_U2": c}


@register(
    "codim1-bp",
    "codim 1 with a base point (complement spanned by l^d): codim U^2 = n",
    {"n": [4], "d": [3], "k": [1]},
    lambda n, d, k: k == 1 and d >= 1,
)
def _codim1_bp(t: Trial):
    l = t.linear()
    W = span([l ** t.d])
    U = apolar_complement(W)
    t.keep(W=W)
    c = product_codim(U, U, "exact")
    cert = base_point_certificate(U)
    return c == t.n and not cert.base_point_free, {"codim_U2": c, "certificate": cert.verdict}


@register(
    "codim2-bpf",
    "base-point-free codim 2: codim U^2 <= 6 for d = 2 and <= 4 for d >= 3",
    {"n": [3, 4, 5], "d": [2, 3, 4], "k": [2]},
    lambda n, d, k: k == 2 and d >= 2,
)
def _codim2_bpf(t: Trial):
    W, U = t.bpf_pair()
    bound = 6 if t.d == 2 else 4
    c = _codim(U, bound=bound)
    return c <= bound, {"codim_U2": c}


@register(
    "var-reduction",
    "codim U^2 <= (n-m) codim U'R_{d-1} + codim U'^2 when U' = U meet A(m)_d keeps codim k",
    {"n": [3, 4, 5], "d": [2, 3, 4], "k": [1, 2, 3]},
    lambda n, d, k: d >= 2 and 0 <= k <= n and _fits(n, d, k),
)
def _var_reduction(t: Trial):
    n, d, k = t.n, t.d, t.k
    m = t.options.get("m") or int(t.rng.integers(max(2, k), n + 1))
    W = t.space(k)
    U = apolar_complement(W)
    t.keep(W=W)
    for attempt in range(6):
        M = random_invertible(n, t.rng, t.height)
        _, U2 = change_coordinates_dual(W, M)
        Ur = intersect_with_first_vars(U2, m)
        if Ur.codim == k:
            break
        t.resampled += 1
    else:
        raise Outcome("outside", m=m)
    t.choices["M"] = M
    rhs = (n - m) * hilbert_value(Ur, 2 * d - 1, "exact") + product_codim(Ur, Ur, "exact")
    lhs = _codim(U, bound=rhs)
    return lhs <= rhs, {"m": m, "codim_U2": lhs, "bound": rhs}


@register(
    "quotient-generic",
    "codim k <= d, generic l: <U, l>_d = A_d and codim (U : l) = k",
    {"n": [3, 4, 5], "d": [2, 3, 4, 5], "k": [1, 2, 3, 4, 5]},
    lambda n, d, k: 1 <= k <= d and _fits(n, d, k),
)
def _quotient_generic(t: Trial):
    W = t.space(t.k)
    U = apolar_complement(W)
    t.keep(W=W)
    lower = monomial_basis(t.n, t.d - 1)

    def sample():
        l = t.linear()
        S = sum_space(U, span([l * Form.monomial(m) for m in lower], t.n, t.d))
        return S.codim, ideal_quotient_by_linear(U, l).codim

    sum_codim, quot_codim = t.generic(sample)
    return sum_codim == 0 and quot_codim == t.k, {"codim_U_plus_l": sum_codim, "codim_quotient": quot_codim}


@register(
    "deg-reduction",
    "codim k <= d, V = (U : l): codim U^2 <= codim UV, and <= codim V^2 when k <= d-1",
    {"n": [3, 4], "d": [2, 3, 4], "k": [1, 2, 3, 4]},
    lambda n, d, k: 1 <= k <= d and _fits(n, d, k),
)
def _deg_reduction(t: Trial):
    W = t.space(t.k)
    U = apolar_complement(W)
    t.keep(W=W)

    def sample():
        V = ideal_quotient_by_linear(U, t.linear())
        uv = product_codim(U, V, "exact")
        vv = product_codim(V, V, "exact") if t.k <= t.d - 1 else None
        return V.codim, uv, vv

    vc, uv, vv = t.generic(sample)
    uu = _codim(U, bound=uv if vv is None else min(uv, vv))
    ok = uu <= uv and (vv is None or uu <= vv)
    return ok, {"codim_U2": uu, "codim_UV": uv, "codim_V2": vv, "codim_V": vc}


@register(
    "lift-formula",
    "codim (U^(l))^2 = codim U^2 + l * h_{2d-1}",
    {"n": [2, 3, 4], "d": [2, 3], "k": [1, 2, 3, 4], "levels": [1, 2]},
    lambda n, d, k: 1 <= k < num_monomials(n, d),
)
def _lift_formula(t: Trial):
    levels = t.options.get("levels", [1, 2])
    L = int(levels[int(t.rng.integers(len(levels)))]) if isinstance(levels, list) else int(levels)
    W = t.space(t.k)
    U = apolar_complement(W)
    t.keep(W=W)
    V = lift(U, L)
    h = hilbert_value(U, 2 * t.d - 1, "exact")
    lhs = product_codim(V, V, "exact")
    base = product_codim(U, U, "exact")
    ok = lhs == base + L * h and V.codim == U.codim
    return ok, {"levels": L, "h_2d-1": h, "codim_U2": base, "codim_lift2": lhs}


@register(
    "hf-codim2-quadrics",
    "base-point-free codim 2 in A_2: Hilbert function (1, n, 2, 0, ...)",
    {"n": [3, 4, 5, 6], "d": [2], "k": [2]},
    lambda n, d, k: d == 2 and k == 2,
)
def _hf_codim2(t: Trial):
    W, U = t.bpf_pair()
    h3 = hilbert_value(U, 3, "auto")
    if h3:
        h3 = hilbert_value(U, 3, "exact")
    h = (1, t.n, U.codim, h3)
    return h == (1, t.n, 2, 0), {"h": str(h)}


@register(
    "restriction-dichotomy",
    "dim W = k <= n, generic l: dim W-bar = k, or k - 1 with k = n and W = F A_1",
    {"n": [3, 4, 5], "d": [2, 3, 4], "k": [1, 2, 3, 4, 5]},
    lambda n, d, k: d >= 2 and 0 <= k <= n and _fits(n, d, k),
)
def _restriction_dichotomy(t: Trial):
    n, d, k = t.n, t.d, t.k
    if k == n and t.rng.random() < 0.5:
        F = random_form(n, d - 1, t.rng, t.height, t.style())
        W = span([F * linear_form([int(i == j) for j in range(n)]) for i in range(n)], n, d)
    else:
        W = t.space(k)
    t.keep(W=W)
    dim_bar = t.generic(lambda: restrict_to_hyperplane(W, t.linear()).dim)
    shape = linear_multiple_factor(W) is not None if dim_bar == k - 1 else None
    ok = dim_bar == k or (dim_bar == k - 1 and k == n and shape)
    return ok, {"dim_W_bar": dim_bar, "drop": k - dim_bar, "F_times_A1": shape}


@register(
    "quotient-vanishes",
    "dim W = k < n, generic l: dim (W : l) = 0",
    {"n": [3, 4, 5], "d": [2, 3, 4], "k": [1, 2, 3, 4]},
    lambda n, d, k: d >= 1 and 1 <= k < n and _fits(n, d, k),
)
def _quotient_vanishes(t: Trial):
    W = t.space(t.k)
    t.keep(W=W)
    q = t.generic(lambda: ideal_quotient_by_linear(W, t.linear()).dim)
    return q == 0, {"dim_quotient": q}


@register(
    "gin-counting",
    "members of the gin complement divisible by x_n number dim (W : l) for generic l",
    {"n": [3, 4, 5], "d": [2, 3, 4], "k": [1, 2, 3, 4]},
    lambda n, d, k: 1 <= k < num_monomials(n, d),
)
def _gin_counting(t: Trial):
    W = t.space(t.k)
    t.keep(W=W)

    def gin_complement():
        M = random_invertible(t.n, t.rng, t.height)
        _, U2 = change_coordinates_dual(W, M)
        leads = U2.leading_monomials()
        return frozenset(tuple(m) for m in monomial_basis(t.n, t.d) if m not in leads)

    comp = t.generic(gin_complement)
    count = sum(1 for m in comp if m[-1] > 0)
    q = t.generic(lambda: ideal_quotient_by_linear(W, t.linear()).dim)
    stable = is_borel_down_closed(comp)
    return count == q and stable, {"divisible_by_xn": count, "dim_quotient": q, "strongly_stable": stable}


@register(
    "stay-bpf",
    "dim W = k, n >= 3k+1, W without d-th powers: generic W-bar has none either",
    {"n": [3, 4, 5, 6, 7], "d": [2, 3], "k": [1, 2]},
    lambda n, d, k: 1 <= k < num_monomials(n, d) and n >= 2,
)
def _stay_bpf(t: Trial):
    n, d, k = t.n, t.d, t.k
    inside = n >= 3 * k + 1

    def make():
        if not inside and k == n - 1 and t.rng.random() < 0.5:
            # x_n^{d-1} A(n-1)_1 keeps its dimension but its restriction gains a power
            xn = linear_form([int(j == n - 1) for j in range(n)])
            return span([xn ** (d - 1) * linear_form([int(j == i) for j in range(n)]) for i in range(n - 1)], n, d)
        return t.space(k)

    W = t.power_free(make)
    power = t.generic(lambda: contains_power_of_linear_form(restrict_to_hyperplane(W, t.linear())))
    values = {"W_bar_has_power": power}
    if not inside:
        raise Outcome("outside", **values)
    if power is None:
        raise Outcome("undecided", **values)
    return power is False, values


@lru_cache(maxsize=None)
def m_reference(n: int, d: int, k: int) -> int:
    from .stable import m_value

    return m_value(n, d, k)[0]


SHARP_BOUNDS = {1: lambda d: 2 if d == 2 else 1, 2: lambda d: 6 if d == 2 else 4}


@register(
    "main-bound",
    "base-point-free codim k <= d-1: codim U^2 <= m(3k,k,k), and the codim 1 and 2 bounds",
    {"n": [4, 5, 6], "d": [2, 3, 4], "k": [1]},
    lambda n, d, k: 1 <= k <= d - 1 and _fits(n, d, k),
)
def _main_bound(t: Trial):
    W, U = t.bpf_pair()
    bound = m_reference(3 * t.k, t.k, t.k)
    sharp = SHARP_BOUNDS[t.k](t.d) if t.k in SHARP_BOUNDS else None
    limit = bound if sharp is None else min(bound, sharp)
    c = _codim(U, bound=limit)
    return c <= limit, {"codim_U2": c, "m(3k,k,k)": bound, "sharp": sharp}


@register(
    "macaulay-growth",
    "h_{i+1} <= (h_i)_(i)|^1_1 for i = d, d+1 on random U",
    {"n": [2, 3, 4, 5], "d": [2, 3, 4, 5], "k": [0]},
    lambda n, d, k: d >= 1,
)
def _macaulay_growth(t: Trial):
    N = num_monomials(t.n, t.d)
    r = int(t.rng.integers(1, N))
    U = t.space(r)
    t.keep(U=U)
    h = [hilbert_value(U, i, "exact") for i in (t.d, t.d + 1, t.d + 2)]
    bounds = [macaulay_growth_bound(h[0], t.d), macaulay_growth_bound(h[1], t.d + 1)]
    ok = h[1] <= bounds[0] and h[2] <= bounds[1]
    return ok, {"dim_U": r, "h": str(tuple(h)), "bounds": str(tuple(bounds))}


@register(
    "green-bound",
    "generic l: codim <U, l>_d <= (h_d)_(d)|^-1_0 on random U",
    {"n": [3, 4, 5], "d": [2, 3, 4, 5], "k": [0]},
    lambda n, d, k: n >= 2 and d >= 1,
)
def _green_bound(t: Trial):
    N = num_monomials(t.n, t.d)
    r = int(t.rng.integers(1, N))
    U = t.space(r)
    t.keep(U=U)
    lower = monomial_basis(t.n, t.d - 1)
    c = t.generic(lambda: sum_space(U, span([t.linear() * Form.monomial(m) for m in lower], t.n, t.d)).codim)
    bound = green_restriction_bound(U.codim, t.d)
    return c <= bound, {"dim_U": r, "c_d": c, "bound": bound}


def excluded_shape(W: FormSpace) -> bool:
    """Whether ``n = k+1`` and ``W = L^{d-1} span(L_2, ..., L_n)`` with ``L, L_2, ...`` a basis."""
    import sympy

    n, d, k = W.n, W.d, W.dim
    if n != k + 1 or d < 2:
        return False
    xs = sympy.symbols(f"x1:{n + 1}")
    polys = [
        sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod(x**e for x, e in zip(xs, m)) for m, c in f.coeffs.items()), *xs)
        for f in W.forms()
    ]
    g = polys[0]
    for p in polys[1:]:
        g = sympy.gcd(g, p)
    if g.total_degree() != d - 1:
        return False
    _, factors = sympy.factor_list(g)
    if len(factors) != 1 or factors[0][1] != d - 1 or factors[0][0].total_degree() != 1:
        return False
    L = factors[0][0]
    rows = [[sympy.Poly(sympy.quo(p, g), *xs).coeff_monomial(x) for x in xs] for p in polys]
    rows.append([L.coeff_monomial(x) for x in xs])
    return sympy.Matrix(rows).rank() == n


@register(
    "conj-bpf-intersection",
    "W without d-th powers, k <= d-1, n-1: generic W-bar has none, unless n = k+1 and W = L^{d-1} span(L_2..L_n)",
    {"n": [3, 4], "d": [3, 4], "k": [1, 2]},
    lambda n, d, k: n >= 3 and 1 <= k <= min(d - 1, n - 1),
)
def _conj_bpf_intersection(t: Trial):
    n, d, k = t.n, t.d, t.k

    def make():
        if n == k + 1 and t.rng.random() < 0.3:
            M = random_invertible(n, t.rng, t.height)
            Ls = [linear_form(row) for row in M]
            return span([Ls[0] ** (d - 1) * L for L in Ls[1:]], n, d)
        return t.space(k)

    W = t.power_free(make)
    power = t.generic(lambda: contains_power_of_linear_form(restrict_to_hyperplane(W, t.linear())))
    if power is None:
        raise Outcome("undecided", W_bar_has_power=None)
    if power is False:
        return True, {"W_bar_has_power": False}
    shape = excluded_shape(W)
    return shape, {"W_bar_has_power": True, "excluded_shape": shape}


# ----------------------------------------------------------------------------
# driver


def _grid(check: Check, params: dict) -> list[tuple[int, int, int]]:
    ns, ds, ks = (params[a] for a in ("n", "d", "k"))
    return [(n, d, k) for n, d, k in product(ns, ds, ks) if check.valid(n, d, k)]


def _as_list(v) -> list:
    return list(v) if isinstance(v, (list, tuple, range)) else [v]


def resolve_params(check_id: str, **params) -> dict:
    if check_id not in REGISTRY:
        raise KeyError(f"unknown check {check_id!r}; registered: {', '.join(sorted(REGISTRY))}")
    check = REGISTRY[check_id]
    out = {}
    for key, default in check.defaults.items():
        v = params.get(key)
        out[key] = _as_list(default if v is None else v)
    for key, v in params.items():
        if key not in out and v is not None:
            out[key] = v
    if not _grid(check, out):
        raise ValueError(f"no valid (n, d, k) for {check_id} in {out}")
    return out


def run_trial(check_id: str, params: dict, seed: int, height: int, trial: int) -> TrialResult:
    check = REGISTRY[check_id]
    rng = trial_rng(seed, check_id, trial)
    grid = _grid(check, params)
    n, d, k = grid[int(rng.integers(len(grid)))]
    options = {key: v for key, v in params.items() if key not in ("n", "d", "k")}
    t = Trial(rng, n, d, k, height, options)
    tp = {"n": n, "d": d, "k": k}
    try:
        ok, values = check.run(t)
        status = "pass" if ok else "fail"
    except Outcome as out:
        status, values = out.status, out.values
    except GenericityError as exc:
        status, values = "violation", {"reason": str(exc)}
    except RejectionBudget as exc:
        status, values = "rejected-out", {"reason": str(exc)}
    payload = None
    if status == "fail":
        payload = {"spaces": t.spaces, "choices": t.choices}
    return TrialResult(trial, status, tp, values, t.resampled, t.rejected, payload)


def _run_trial_args(args):
    return run_trial(*args)


def verify(
    check_id: str,
    trials: int = 50,
    seed: int = 0,
    height: int = 100,
    jobs: int = 1,
    **params,
) -> CheckReport:
    """Run ``trials`` seeded instances of a registered check."""
    params = resolve_params(check_id, **params)
    if trials < 1:
        raise ValueError("trials must be positive")
    tasks = [(check_id, params, seed, height, i) for i in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_trial_args, tasks, chunksize=max(1, trials // (4 * jobs))))
    else:
        results = [_run_trial_args(a) for a in tasks]
    results.sort(key=lambda r: r.trial)
    return CheckReport(check_id, params, seed, height, results)


# ----------------------------------------------------------------------------
# worked examples


@dataclass
class GalleryItem:
    name: str
    computed: object
    expected: object

    @property
    def match(self) -> bool:
        return self.computed == self.expected

    def line(self) -> str:
        flag = "match" if self.match else "MISMATCH"
        return f"{flag:8s} {self.name}: computed {self.computed}, expected {self.expected}"


def _x(n: int, i: int) -> Form:
    return linear_form([int(j == i - 1) for j in range(n)])


def example_gallery(max_lift_n: int = 8) -> list[GalleryItem]:
    from .stable import monomial_square_codim

    items: list[GalleryItem] = []

    # ternary quartics: rank r = 6 - k faces
    for k, r in ((0, 6), (1, 5), (2, 4), (3, 3)):
        m = m_reference(3, 2, k) if k else 0
        bound = fs.face_dimension(r, 3, 2, m)
        expected = {6: 6, 5: 3, 4: 1, 3: 1}[r]
        items.append(GalleryItem(f"ternary quartics, rank {r} face dimension bound", bound, expected))
    proper = {fs.face_dimension(6 - k, 3, 2, m_reference(3, 2, k)) for k in range(1, 6)}
    items.append(GalleryItem("ternary quartics, faces of dimension 4 or 5 possible", bool(proper & {4, 5}), False))

    # quaternary quadrics
    n = 4
    q = sum((_x(n, i) ** 2 for i in range(2, n + 1)), _x(n, 1) ** 2)
    diag = sum((c * _x(n, i) ** 2 for i, c in ((2, 2), (3, 3), (4, 5))), _x(n, 1) ** 2)
    U = apolar_complement(span([q, diag]))
    items.append(GalleryItem("quaternary quadrics, diagonal pencil: dim U^2", square_codim_dim(U), 34))
    rel1 = (_x(n, 1) * _x(n, 4)) * (_x(n, 2) * _x(n, 3)) - (_x(n, 1) * _x(n, 2)) * (_x(n, 3) * _x(n, 4))
    items.append(GalleryItem("quaternary quadrics, x1x4*x2x3 = x1x2*x3x4 with all factors in U",
                             rel1.is_zero() and all(U.contains(_x(n, i) * _x(n, j)) for i in range(1, 5) for j in range(i + 1, 5)), True))
    from .sampling import trial_rng as _rng

    rng = _rng(0, "gallery", 0)
    Ug = apolar_complement(random_space(4, 2, 2, rng))
    items.append(GalleryItem("quaternary quadrics, random codim 2: dim U^2", square_codim_dim(Ug), 34))

    # in(U)^2 versus in(U^2)
    for n in range(3, 7):
        U = apolar_complement(span([_x(n, 1) ** 2 + _x(n, 2) ** 2]))
        sq = fs.square(U)
        lead_sq = monomial_square_codim([m for m in monomial_basis(n, 2) if m not in U.leading_monomials()], n, 2)
        items.append(GalleryItem(f"U = (x1^2+x2^2)^perp, n={n}: codim in(U)^2, codim U^2, codim in(U^2)",
                                 (lead_sq, sq.codim, num_monomials(n, 4) - len(sq.leading_monomials())), (n, 2, 2)))

    # almost complete intersection and its lifts
    n = 4
    aci = span([_x(n, i) ** 3 for i in range(1, 5)] + [_x(n, 1) ** 2 * _x(n, 2) + _x(n, 3) ** 2 * _x(n, 4)])
    items.append(GalleryItem("almost complete intersection: codim U", aci.codim, 15))
    table = fs.hilbert_table(aci, T=7, method="exact")
    items.append(GalleryItem("almost complete intersection: Hilbert function", table.h[:7], (1, 4, 10, 15, 15, 7, 1)))
    items.append(GalleryItem("almost complete intersection: h_7", table.h[7], 0))
    base = product_codim(aci, aci, "exact")
    for n in range(5, max_lift_n + 1):
        V = lift(aci, n - 4)
        diff = product_codim(V, V, "exact") - base
        items.append(GalleryItem(f"almost complete intersection lifted to n={n}: codim V^2 - codim U^2", diff, 7 * (n - 4)))

    # extremal complements for k = 5 and k = 9 in three variables
    w5 = [(3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1)]
    w9 = [(9, 0, 0), (8, 1, 0), (8, 0, 1), (7, 2, 0), (7, 1, 1), (7, 0, 2), (6, 3, 0), (6, 2, 1), (5, 4, 0)]
    for d in range(5, 10):
        W = [(m[0] + d - 3, m[1], m[2]) for m in w5]
        items.append(GalleryItem(f"five-monomial complement, d={d}: codim U^2", monomial_square_codim(W, 3, d), 16))
    for d in range(9, 12):
        W = [(m[0] + d - 9, m[1], m[2]) for m in w9]
        items.append(GalleryItem(f"nine-monomial complement, d={d}: codim U^2", monomial_square_codim(W, 3, d), 31))

    # (U : l) need not be base-point-free
    n = 3
    Ub = FormSpace.monomial_complement(3, 3, [(2, 1, 0), (2, 0, 1), (1, 2, 0)])
    rng = _rng(0, "gallery", 1)
    Q = ideal_quotient_by_linear(Ub, random_linear(3, rng))
    items.append(GalleryItem("U = (x1^2x2, x1^2x3, x1x2^2)^perp: base-point-free, (U:l) has base points",
                             (base_point_certificate(Ub).verdict, Q.dim, base_point_certificate(Q).verdict),
                             ("base-point-free", 3, "has-base-points")))
    return items


def square_codim_dim(U: FormSpace) -> int:
    return num_monomials(U.n, 2 * U.d) - product_codim(U, U, "exact")


def gallery_text(items: list[GalleryItem]) -> str:
    return "".join(item.line() + "\n" for item in items)


# ----------------------------------------------------------------------------
# m(k,k,k) and m(3k,k,k)


def conjectured_mkkk(k: int) -> int:
    return (k**3 + 3 * k**2 + 2 * k) // 6


def conjecture_mkkk(k_max: int = 4, max_dim: int = 4000) -> list[dict]:
    """Raw values of ``m(k,k,k)`` and ``m(3k,k,k)`` next to the guessed closed forms.

    Cells whose degree-k space exceeds ``max_dim`` monomials are left uncomputed.
    """
    from .stable import m_value, monomial_square_codim

    rows = []
    for k in range(1, k_max + 1):
        row: dict = {"k": k}
        guess = conjectured_mkkk(k)
        row["guess_kkk"] = guess
        row["guess_3kkk"] = 2 * k * k + guess
        if k >= 2 and num_monomials(k, k) > k:
            row["m_kkk"] = m_value(k, k, k)[0]
        else:
            row["m_kkk"] = None
        # the complement x1^d, x1^{d-1}x2, ..., x1^{d-1}x_n with n = d = k
        if k >= 2:
            W = [tuple([k] + [0] * (k - 1))] + [tuple([k - 1] + [int(j == i) for j in range(1, k)]) for i in range(1, k)]
            row["witness_kkk"] = monomial_square_codim(W, k, k)
        else:
            row["witness_kkk"] = None
        if num_monomials(3 * k, k) <= max_dim:
            row["m_3kkk"] = m_value(3 * k, k, k)[0]
        else:
            row["m_3kkk"] = None
        rows.append(row)
    return rows


def conjecture_text(rows: list[dict]) -> str:
    def cell(v, guess):
        if v is None:
            return "not computed"
        return f"{v} ({'match' if v == guess else 'mismatch'})"

    lines = ["k | m(k,k,k) vs (k^3+3k^2+2k)/6 | witness complement | m(3k,k,k) vs 2k^2+(k^3+3k^2+2k)/6"]
    for r in rows:
        lines.append(
            f"{r['k']} | {cell(r['m_kkk'], r['guess_kkk'])} [guess {r['guess_kkk']}]"
            f" | {cell(r['witness_kkk'], r['guess_kkk'])}"
            f" | {cell(r['m_3kkk'], r['guess_3kkk'])} [guess {r['guess_3kkk']}]"
        )
    return "\n".join(lines) + "\n"
