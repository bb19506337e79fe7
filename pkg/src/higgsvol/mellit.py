"""The simplified (partition-sum) pipeline.

Builds the two-variable generating series Omega over all partitions, takes
(1 - z^2) * Log, certifies that the w^r coefficients are Laurent in z,
evaluates at z = 1 and extracts the rank-r class by a sliced plethystic
exponential.
"""

from __future__ import annotations

from math import gcd

from . import algebra
from .curve import CurveModel, zeta_bundle
from .errors import NotLaurentInZ
from .partitions import enumerate_partitions, stats
from .plethystic import WSeries, pleth_exp, pleth_log

__all__ = [
    "omega",
    "h_mot",
    "h_at_one",
    "higgs_class_mellit",
]


def _box_product(c: CurveModel, part):
    """The product over boxes of L(z^(2a+1) q^(-l-1)) divided by
    (z^(2a+2) - q^l)(z^(2a) - q^(l+1))."""
    ctx = c.ctx
    z = ctx.z
    qx = c.q_expr()
    b = zeta_bundle(c)
    out = ctx.one
    for arm, leg in part.boxes():
        arg = z ** (2 * arm + 1) * qx ** (-leg - 1)
        num = algebra.substitute(ctx, b.L, {z: arg})
        den = (z ** (2 * arm + 2) - qx**leg) * (z ** (2 * arm) - qx ** (leg + 1))
        out = out * num / den
    return out


def omega(c: CurveModel, w_max: int) -> WSeries:
    """Coefficient at w^r: the sum over partitions of r of
    q^(g*<la,la>) * box product."""
    if w_max < 1:
        raise ValueError("w_max must be >= 1")
    ctx = c.ctx
    qx = c.q_expr()
    coeffs = [ctx.one]
    for r in range(1, w_max + 1):
        acc = ctx.zero
        for part in enumerate_partitions(r):
            acc = acc + qx ** (c.genus * part.pairing()) * _box_product(c, part)
        coeffs.append(acc)
    return WSeries.from_coeffs(ctx, coeffs)


def _denominator_z_profile(ctx, x):
    """Exponents of z occurring in the reduced denominator of x."""
    idx = ctx.index_of(ctx.z)
    return {monom[idx] for monom, _ in x.denom.terms()}


def _certify_laurent_in_z(ctx, x, where: str):
    """A Laurent polynomial in z over the coefficient ring has a denominator
    of the form z^k * (z-free polynomial); anything else is an error."""
    profile = _denominator_z_profile(ctx, x)
    if len(profile) > 1:
        raise NotLaurentInZ(
            f"{where}: reduced denominator still involves z non-trivially"
        )


def h_mot(c: CurveModel, w_max: int) -> WSeries:
    """(1 - z^2) * Log(omega); every w^r coefficient is certified to be a
    Laurent polynomial in z over the coefficient ring."""
    ctx = c.ctx
    z = ctx.z
    lg = pleth_log(omega(c, w_max))
    out = lg.map_coeffs(lambda x: (1 - z**2) * x)
    for r, coeff in enumerate(out.coeffs):
        _certify_laurent_in_z(ctx, coeff, f"w^{r} coefficient")
    return out


def h_at_one(c: CurveModel, w_max: int) -> WSeries:
    """h_mot with z = 1 substituted into each certified coefficient."""
    ctx = c.ctx
    hm = h_mot(c, w_max)
    return hm.map_coeffs(lambda x: algebra.substitute(ctx, x, {ctx.z: ctx.one}))


def higgs_class_mellit(c: CurveModel, r: int, d: int):
    """The rank-r degree-d semistable class: with d/r = d0/r0 in lowest
    terms, q^((g-1) r^2) times the w^r coefficient of
    Exp(q * (h at z=1) sliced to w-exponents divisible by r0)."""
    if r < 1:
        raise ValueError("rank must be >= 1")
    r0 = r // gcd(r, abs(d)) if d != 0 else 1
    ctx = c.ctx
    qx = c.q_expr()
    h1 = h_at_one(c, r)
    sliced = h1.slice_multiples(r0).scale(qx)
    # constant term of h1 is 0 already; Exp needs that
    e = pleth_exp(sliced)
    return qx ** ((c.genus - 1) * r * r) * e.coeffs[r]
