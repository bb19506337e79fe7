"""Specializing symbolic classes at a concrete curve.

The pipelines run symbolically in (q, a_1..a_g); evaluation at a concrete
curve happens last.  For genus 1 the evaluation is exact arithmetic in the
quadratic ring Q[x]/(x^2 - a*x + q) whose root plays the Weil number; the
final results must have zero irrational component (the hyperoctahedral
symmetry forces rationality) and this is asserted on every call.  For genus
>= 2 the Weil numbers are high-precision complex approximations with a
rational reconstruction that must survive doubling the working precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .algebra import get_context
from .curve import CurveModel
from .errors import DenominatorVanishes, PrecisionExhausted
from .plethystic import SlopeSeries, slope_log

__all__ = [
    "WeilEvaluation",
    "VolumeResult",
    "ev",
    "volume",
    "dt_invariants",
    "rank1_volume_oracle",
]


# ---------------------------------------------------------------------------
# Exact quadratic-ring arithmetic (genus 1).
# ---------------------------------------------------------------------------


class _QuadElement:
    """u + v*alpha with alpha^2 = trace*alpha - norm, over the rationals."""

    __slots__ = ("u", "v", "trace", "norm")

    def __init__(self, u, v, trace, norm):
        self.u, self.v = Fraction(u), Fraction(v)
        self.trace, self.norm = trace, norm

    def _like(self, u, v):
        return _QuadElement(u, v, self.trace, self.norm)

    def __add__(self, o):
        return self._like(self.u + o.u, self.v + o.v)

    def __sub__(self, o):
        return self._like(self.u - o.u, self.v - o.v)

    def __mul__(self, o):
        # (u1 + v1 a)(u2 + v2 a), a^2 = t*a - n
        u = self.u * o.u - self.v * o.v * self.norm
        v = self.u * o.v + self.v * o.u + self.v * o.v * self.trace
        return self._like(u, v)

    def inverse(self):
        # conjugate is (u + v*t) - v*a; N = u^2 + u*v*t + v^2*n
        n = self.u * self.u + self.u * self.v * self.trace + self.v * self.v * self.norm
        if n == 0:
            raise DenominatorVanishes("quadratic-ring element is not invertible")
        return self._like((self.u + self.v * self.trace) / n, -self.v / n)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self._like(1, 0)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out


@dataclass(frozen=True)
class WeilEvaluation:
    """Evaluation data of a concrete curve: q plus either the quadratic
    minimal polynomial data (genus 1) or the full numerator coefficients
    (genus >= 2, evaluated numerically)."""

    genus: int
    q: Fraction
    numerator: tuple  # c_0..c_{2g}

    @staticmethod
    def from_curve(c: CurveModel) -> "WeilEvaluation":
        if c.mode == "symbolic":
            raise ValueError("need a concrete (numerator/weierstrass) curve")
        return WeilEvaluation(genus=c.genus, q=c.q, numerator=c.numerator)

    @property
    def trace(self) -> Fraction:
        """Sum of the two genus-1 Weil numbers (= -c_1)."""
        return -self.numerator[1]


def _eval_poly_quad(ctx, p, q_val: Fraction, alpha: _QuadElement) -> _QuadElement:
    iq = ctx.index_of(ctx.q)
    ia = ctx.index_of(ctx.a[0])
    out = alpha._like(0, 0)
    for monom, coeff in p.terms():
        for i, e in enumerate(monom):
            if e and i not in (iq, ia):
                raise ValueError(
                    f"expression involves {ctx.names[i]}; not a coefficient-ring "
                    "element"
                )
        c = Fraction(coeff.numerator, coeff.denominator) * q_val ** monom[iq]
        out = out + alpha ** monom[ia] * alpha._like(c, 0)
    return out


def _ev_genus1(x, w: WeilEvaluation) -> Fraction:
    xctx = _ctx_of(x)
    alpha = _QuadElement(0, 1, w.trace, w.q)
    num = _eval_poly_quad(xctx, x.numer, w.q, alpha)
    den = _eval_poly_quad(xctx, x.denom, w.q, alpha)
    if den.u == 0 and den.v == 0:
        raise DenominatorVanishes("denominator vanishes at the curve's Weil data")
    val = num * den.inverse()
    assert val.v == 0, "irrational component survived; W-invariance violated"
    return val.u


def _ctx_of(x):
    """Recover the (cached) Context a field element belongs to."""
    names = [str(g) for g in x.field.gens]
    genus = sum(1 for n in names if n != "z" and n.startswith("a") and n[1:].isdigit())
    n_res = sum(1 for n in names if n != "z" and n.startswith("z") and n[1:].isdigit())
    return get_context(genus, n_res)


def _ev_numeric(x, w: WeilEvaluation) -> Fraction:
    """Genus >= 2: evaluate at certified high-precision Weil numbers and
    reconstruct a rational, requiring stability under doubled precision."""
    import mpmath

    ctx = _ctx_of(x)
    g = w.genus

    def attempt(dps):
        with mpmath.workdps(dps):
            # reciprocal roots of the numerator
            coeffs = [mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
                      for c in w.numerator]
            roots = mpmath.polyroots(list(reversed(coeffs)), maxsteps=200,
                                     extraprec=dps)
            alphas = [1 / r for r in roots]
            qm = mpmath.mpf(w.q.numerator) / mpmath.mpf(w.q.denominator)
            # pick one Weil number per conjugate pair {alpha, q/alpha}
            chosen = []
            pool = list(alphas)
            while pool:
                a = pool.pop(0)
                partner = min(pool, key=lambda b: abs(b - qm / a), default=None)
                if partner is not None:
                    pool.remove(partner)
                chosen.append(a)
            vals = {ctx.index_of(ctx.q): qm}
            for i, a in enumerate(chosen[:g]):
                vals[ctx.index_of(ctx.a[i])] = a

            def poly_val(p):
                out = mpmath.mpf(0)
                for monom, coeff in p.terms():
                    t = mpmath.mpf(coeff.numerator) / mpmath.mpf(coeff.denominator)
                    for idx, e in enumerate(monom):
                        if e:
                            if idx not in vals:
                                raise ValueError(
                                    f"expression involves {ctx.names[idx]}"
                                )
                            t *= vals[idx] ** e
                    out += t
                return out

            den = poly_val(x.denom)
            if abs(den) < mpmath.mpf(10) ** (-dps // 2):
                raise DenominatorVanishes(
                    "denominator vanishes at the curve's Weil data"
                )
            val = poly_val(x.numer) / den
            if abs(mpmath.im(val)) > mpmath.mpf(10) ** (-dps // 3):
                raise PrecisionExhausted("imaginary part did not vanish")
            return _rationalize(mpmath.re(val), dps)

    first = attempt(60)
    second = attempt(120)
    if first != second:
        raise PrecisionExhausted(
            "rational reconstruction unstable under doubled precision"
        )
    return first


def _rationalize(x, dps) -> Fraction:
    """Continued-fraction reconstruction of a rational from an mpf."""
    frac = Fraction(str(x)).limit_denominator(10 ** (dps // 3))
    return frac


def ev(x, w: WeilEvaluation) -> Fraction:
    """Exact rational value of a coefficient-ring element at a curve."""
    if not hasattr(x, "numer"):
        return Fraction(x)
    if w.genus == 1:
        return _ev_genus1(x, w)
    if w.genus == 0:
        # no Weil symbols; substitute q only
        ctx = _ctx_of(x)
        num = _eval_poly_quad_g0(ctx, x.numer, w.q)
        den = _eval_poly_quad_g0(ctx, x.denom, w.q)
        if den == 0:
            raise DenominatorVanishes("denominator vanishes at q")
        return num / den
    return _ev_numeric(x, w)


def _eval_poly_quad_g0(ctx, p, q_val: Fraction) -> Fraction:
    iq = ctx.index_of(ctx.q)
    out = Fraction(0)
    for monom, coeff in p.terms():
        for i, e in enumerate(monom):
            if e and i != iq:
                raise ValueError(f"expression involves {ctx.names[i]}")
        out += Fraction(coeff.numerator, coeff.denominator) * q_val ** monom[iq]
    return out


# ---------------------------------------------------------------------------
# Volumes and DT invariants.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VolumeResult:
    rank: int
    degree: int
    value: Fraction
    route: str
    w_max: int
    d_max: int | None
    curve: CurveModel


def symbolic_higgs_class(genus: int, r: int, d: int, route: str):
    """The symbolic rank-r degree-d class for a genus-g symbolic curve."""
    from . import mellit, schiffmann

    c = CurveModel.symbolic(genus)
    if route == "mellit":
        return mellit.higgs_class_mellit(c, r, d)
    if route == "schiffmann":
        return schiffmann.higgs_class_sch(c, r, d)
    raise ValueError(f"unknown route: {route!r}")


_class_cache: dict = {}


def _cached_class(genus: int, r: int, d: int, route: str):
    key = (genus, r, d, route)
    if key not in _class_cache:
        _class_cache[key] = symbolic_higgs_class(genus, r, d, route)
    return _class_cache[key]


def volume(c: CurveModel, r: int, d: int, route: str = "mellit") -> VolumeResult:
    """|Higgs^ss_{r,d}(F_q)| for a concrete curve: ev applied to the
    symbolic class (the plethystic operations need the symbol decomposition,
    so evaluation happens last)."""
    if c.mode == "symbolic":
        raise ValueError("volume needs a concrete curve; use the symbolic "
                         "pipelines directly for symbolic output")
    if c.genus < 1:
        raise ValueError("volumes are defined for genus >= 1")
    w = WeilEvaluation.from_curve(c)
    x = _cached_class(c.genus, r, d, route)
    val = ev(x, w)
    d_max = None
    if route == "schiffmann":
        from .schiffmann import _shift_exponent

        d_max = d + (_shift_exponent(CurveModel.symbolic(c.genus), r, d) + 1) * r
    return VolumeResult(
        rank=r, degree=d, value=val, route=route, w_max=r, d_max=d_max, curve=c
    )


def rank1_volume_oracle(c: CurveModel) -> Fraction:
    """Closed form for rank 1: a rank-1 pair is a line bundle plus a section
    of the twisting sheaf (a g-dimensional space), modulo the multiplicative
    automorphism group: |Pic^d| * q^g / (q - 1).  For genus 1, |Pic^d| = N."""
    if c.genus != 1:
        raise ValueError("oracle implemented for genus 1")
    return Fraction(c.n_points()) * c.q / (c.q - 1)


def dt_invariants(c: CurveModel, r_max: int, d_window, route: str = "mellit") -> dict:
    """Table {(r, d): Omega(r, d)} via the fixed-slope plethystic logarithm
    of the normalized symbolic classes, evaluated at the curve."""
    if c.genus < 1:
        raise ValueError("DT invariants are defined for genus >= 1")
    ctx = get_context(c.genus, 4)
    qx = ctx.q
    w = WeilEvaluation.from_curve(c)
    out = {}
    for r in range(1, r_max + 1):
        for d in d_window:
            g0 = gcd(r, abs(d)) if d != 0 else r
            r0, d0 = r // g0, d // g0
            n_top = r // r0
            terms = tuple(
                qx ** ((1 - c.genus) * (n * r0) ** 2)
                * _cached_class(c.genus, n * r0, n * d0, route)
                for n in range(1, n_top + 1)
            )
            lg = slope_log(SlopeSeries(ctx, r0, d0, terms))
            omega_sym = (qx - 1) * lg.term(n_top)
            out[(r, d)] = ev(omega_sym, w)
    return out
