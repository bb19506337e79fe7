"""Exact multivariate rational-function arithmetic.

All symbolic values in this package are elements of a fraction field
QQ(q, a_1..a_g, z, z_1..z_n) held by a Context.  We build on sympy's sparse
polynomial rings (sympy.polys.rings / sympy.polys.fields): a MultiPoly is a
sparse PolyElement (exponent-vector -> rational coefficient) and a
RationalExpr is a FracElement kept in canonical reduced form (gcd cancelled,
denominator sign-normalized) after every operation, so equality of reduced
forms is plain ``==``.

Symbol roles:

* ``q``       the base-field / Lefschetz symbol;
* ``a1..ag``  the Weil symbols.  The conjugate symbols are never stored:
              the (g+i)-th Weil number is always realized as ``q/a_i``;
* ``z``       the series symbol appearing inside coefficients;
* ``z1..zn``  residue symbols for the symmetrized kernel.

All values are immutable; every function here is pure.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import sympy
from sympy import QQ
from sympy.polys.fields import field as _field

from .errors import HigherOrderPole, PoleAtOrigin, ZeroDenominator

__all__ = [
    "Context",
    "get_context",
    "reduce",
    "adams",
    "taylor_z",
    "residue_chain",
    "substitute",
    "poly_coeffs_in",
    "is_free_of",
    "canonical_str",
]


class Context:
    """Symbol table plus the fraction field built over it.

    Symbol order is fixed as (q, a1..ag, z, z1..zn); the ring's monomial
    order (lex over that symbol order) is the repo-wide canonical order used
    for normalization and printing.
    """

    def __init__(self, genus: int, n_residue: int = 0):
        if genus < 0 or n_residue < 0:
            raise ValueError("genus and n_residue must be non-negative")
        self.genus = genus
        self.n_residue = n_residue
        names = (
            ["q"]
            + [f"a{i}" for i in range(1, genus + 1)]
            + ["z"]
            + [f"z{j}" for j in range(1, n_residue + 1)]
        )
        self.names = names
        created = _field(names, QQ)
        self.field = created[0]
        gens = created[1:]
        self.gens = list(gens)
        self.q = gens[0]
        self.a = list(gens[1 : 1 + genus])
        self.z = gens[1 + genus]
        self.zs = list(gens[2 + genus :])
        self._syms = sympy.symbols(names)
        self._ns = dict(zip(names, self._syms))

    # -- constructors -------------------------------------------------------

    @property
    def zero(self):
        return self.field.zero

    @property
    def one(self):
        return self.field.one

    def const(self, c):
        """Embed a rational constant into the field."""
        if isinstance(c, Fraction):
            c = QQ(c.numerator, c.denominator)
        return self.field.ground_new(QQ(c))

    def parse(self, text: str):
        """Parse a rational expression in the context's symbols."""
        expr = sympy.sympify(text, locals=self._ns)
        return self.field.from_expr(expr)

    def index_of(self, gen) -> int:
        return self.gens.index(gen)

    def __repr__(self):
        return f"Context(genus={self.genus}, n_residue={self.n_residue})"


@lru_cache(maxsize=None)
def get_context(genus: int, n_residue: int = 0) -> Context:
    """Shared Context per (genus, n_residue); field elements from the same
    context are directly comparable."""
    return Context(genus, n_residue)


def reduce(ctx: Context, num, den):
    """Canonical reduced fraction num/den.

    Accepts MultiPoly (PolyElement), RationalExpr (FracElement) or plain
    integers for either argument.  Idempotent: reduce(x.numer, x.denom) == x.
    """
    if den == 0:
        raise ZeroDenominator("denominator is zero")
    return _as_frac(ctx, num) / _as_frac(ctx, den)


def _as_frac(ctx: Context, x):
    """Lift a PolyElement / int / Fraction to the fraction field."""
    if hasattr(x, "numer") and hasattr(x, "denom"):
        return x
    if hasattr(x, "ring"):
        return ctx.field.new(x, x.ring.one)
    return ctx.const(x)


def _eval_poly(ctx: Context, p, vals):
    """Evaluate PolyElement p at vals: {generator index: RationalExpr}.

    Unassigned generators evaluate to themselves.
    """
    out = ctx.zero
    for monom, coeff in p.terms():
        term = ctx.const(coeff)
        for i, e in enumerate(monom):
            if e:
                v = vals.get(i)
                term = term * (ctx.gens[i] ** e if v is None else v**e)
        out = out + term
    return out


def substitute(ctx: Context, x, assignments):
    """Simultaneous substitution {generator: RationalExpr}, then reduction.

    Raises ZeroDenominator if the substitution kills the denominator, which
    signals a genuine pole of x at the assigned point.
    """
    vals = {ctx.index_of(g): _as_frac(ctx, v) for g, v in assignments.items()}
    den = _eval_poly(ctx, x.denom, vals)
    if den == 0:
        raise ZeroDenominator(f"substitution {assignments} kills the denominator")
    num = _eval_poly(ctx, x.numer, vals)
    return num / den


def adams(ctx: Context, n: int, x):
    """Adams endomorphism: every symbol s is replaced by s**n.

    A ring homomorphism with adams(1) = id and adams(n) o adams(m) =
    adams(n*m).
    """
    if n < 1:
        raise ValueError("adams requires n >= 1")
    if n == 1:
        return x
    vals = {i: g**n for i, g in enumerate(ctx.gens)}
    num = _eval_poly(ctx, x.numer, vals)
    den = _eval_poly(ctx, x.denom, vals)
    return num / den


def poly_coeffs_in(ctx: Context, p, var) -> dict:
    """Decompose PolyElement p by the exponent of one generator.

    Returns {exponent: RationalExpr free of var}.
    """
    idx = ctx.index_of(var)
    out: dict = {}
    for monom, coeff in p.terms():
        e = monom[idx]
        rest = list(monom)
        rest[idx] = 0
        term = ctx.const(coeff)
        for i, ei in enumerate(rest):
            if ei:
                term = term * ctx.gens[i] ** ei
        out[e] = out.get(e, ctx.zero) + term
    return {e: v for e, v in out.items() if v != 0}


def is_free_of(ctx: Context, x, var) -> bool:
    """True if the reduced form of x does not involve var."""
    idx = ctx.index_of(var)
    return x.numer.degree(idx) <= 0 and x.denom.degree(idx) <= 0


def taylor_z(ctx: Context, x, var, order: int) -> list:
    """Power-series coefficients c_0..c_order of x at var = 0.

    Requires the denominator to have a non-zero constant term in var; the
    coefficients satisfy the linear recurrence imposed by the denominator.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    num_c = poly_coeffs_in(ctx, x.numer, var)
    den_c = poly_coeffs_in(ctx, x.denom, var)
    d0 = den_c.get(0)
    if d0 is None:
        raise PoleAtOrigin(f"denominator of {x} vanishes at {var} = 0")
    coeffs = []
    for i in range(order + 1):
        acc = num_c.get(i, ctx.zero)
        for j, dj in den_c.items():
            if 1 <= j <= i:
                acc = acc - dj * coeffs[i - j]
        coeffs.append(acc / d0)
    return coeffs


def _pole_multiplicity(den_poly, linear) -> int:
    """Number of times the linear PolyElement divides den_poly."""
    mult = 0
    p = den_poly
    while p != 0:
        quo, rem = divmod(p, linear)
        if rem != 0:
            break
        mult += 1
        p = quo
    return mult


def residue_chain(ctx: Context, x, var, point):
    """Residue of the 1-form x * d(var)/var at var = point.

    point must be free of var and the pole at var = point must be simple;
    higher multiplicity raises HigherOrderPole (detected by repeated exact
    division of the reduced denominator).  Returns 0 if x is regular there.
    """
    point = _as_frac(ctx, point)
    if not is_free_of(ctx, point, var):
        raise ValueError("residue point must not involve the residue variable")
    # Linear factor with cleared denominators: pd*var - pn.
    linear = point.denom * var.numer - point.numer
    mult = _pole_multiplicity(x.denom, linear)
    if mult >= 2:
        raise HigherOrderPole(
            f"pole of order {mult} at {var} = {point}; simple pole required"
        )
    if mult == 0:
        return ctx.zero
    y = x * (var - point) / var
    return substitute(ctx, y, {var: point})


def _term_sort_key(monom):
    return (sum(monom), monom)


def _format_poly(ctx: Context, p) -> str:
    """Deterministic string form: terms in descending graded-lex order."""
    if p == 0:
        return "0"
    parts = []
    for monom, coeff in sorted(p.terms(), key=lambda t: _term_sort_key(t[0]), reverse=True):
        c = Fraction(coeff.numerator, coeff.denominator)
        factors = [
            (ctx.names[i] if e == 1 else f"{ctx.names[i]}^{e}")
            for i, e in enumerate(monom)
            if e
        ]
        if not factors:
            body = str(abs(c))
        else:
            mag = abs(c)
            body = "*".join(([] if mag == 1 else [str(mag)]) + factors)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def canonical_str(ctx: Context, x) -> str:
    """Canonical diffable string: expanded numerator / denominator."""
    num = _format_poly(ctx, x.numer)
    if x.denom == 1:
        return num
    return f"({num}) / ({_format_poly(ctx, x.denom)})"
