"""Curve models and their zeta data.

A CurveModel is one of:

* symbolic     genus g with q and the Weil symbols a_1..a_g left free (the
               conjugate Weil numbers are realized as q/a_i, so the
               functional equation holds by construction);
* numerator    integer/rational zeta-numerator coefficients c_0..c_{2g} with
               c_0 = 1 plus a prime power q;
* weierstrass  a long Weierstrass curve over F_q (genus 1), whose numerator
               is obtained by brute-force point counting.

zeta_bundle packages L(z), zeta(z) = L/((1-z)(1-qz)) and the normalized
zeta_tilde(z) = z^(1-g) * zeta(z); zeta_star implements the three-branch
regularization used in the box products.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import algebra
from .algebra import Context, get_context
from .errors import FieldTooLarge, InvalidNumerator, SingularCurve

MAX_Q = 1 << 16


# ---------------------------------------------------------------------------
# Finite fields F_q for prime powers q (small, brute-force friendly).
# ---------------------------------------------------------------------------


def _factor_prime_power(q: int):
    """Return (p, k) with q = p**k, or raise if q is not a prime power."""
    if q < 2:
        raise ValueError(f"q = {q} is not a prime power")
    for p in range(2, int(math.isqrt(q)) + 1):
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                raise ValueError(f"q = {q} is not a prime power")
            return p, k
    return q, 1


def _is_irreducible(coeffs, p):
    """Deterministic irreducibility test for a monic poly over F_p
    (coefficients low to high, leading 1 implied absent)."""
    from sympy.polys.galoistools import gf_irreducible_p
    from sympy import ZZ

    # galoistools wants high-to-low including the leading coefficient
    f = [1] + [c % p for c in reversed(coeffs)]
    return gf_irreducible_p(f, p, ZZ)


def _find_irreducible(p, k):
    """Smallest monic irreducible of degree k over F_p, by counting up the
    non-leading coefficient vector (deterministic)."""
    for code in range(p**k):
        coeffs = []
        m = code
        for _ in range(k):
            coeffs.append(m % p)
            m //= p
        if _is_irreducible(coeffs, p):
            return coeffs
    raise RuntimeError("no irreducible polynomial found")  # unreachable


class GF:
    """Arithmetic in F_q, q = p**k.  Elements are tuples of k ints mod p
    (coefficients of the residue polynomial, low to high)."""

    def __init__(self, q: int):
        p, k = _factor_prime_power(q)
        self.q, self.p, self.k = q, p, k
        self.modulus = _find_irreducible(p, k) if k > 1 else None
        self.zero = (0,) * k
        self.one = tuple([1] + [0] * (k - 1))

    def from_int(self, n: int):
        """Encode an integer as base-p digits (the CLI-facing encoding)."""
        n %= self.q
        digits = []
        for _ in range(self.k):
            digits.append(n % self.p)
            n //= self.p
        return tuple(digits)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce by the monic modulus x^k + modulus
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j, m in enumerate(self.modulus or []):
                    prod[i - k + j] = (prod[i - k + j] - c * m) % p
        return tuple(prod[:k])

    def pow(self, a, e):
        out, base = self.one, a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero in GF")
        return self.pow(a, self.q - 2)

    def scalar(self, n: int):
        """The image of the integer n under Z -> F_q."""
        return tuple([n % self.p] + [0] * (self.k - 1))

    def elements(self):
        e = [0] * self.k
        for _ in range(self.q):
            yield tuple(e)
            for i in range(self.k):
                e[i] += 1
                if e[i] < self.p:
                    break
                e[i] = 0

    def trace(self, a):
        """Absolute trace to F_p (as an int)."""
        acc = self.zero
        x = a
        for _ in range(self.k):
            acc = self.add(acc, x)
            x = self.pow(x, self.p)
        assert all(c == 0 for c in acc[1:])
        return acc[0]


# ---------------------------------------------------------------------------
# Point counting on long Weierstrass curves.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PointCount:
    n_points: int  # projective points, including infinity
    trace: int  # a = q + 1 - N


def _discriminant(F: GF, a1, a2, a3, a4, a6):
    s = F.scalar
    m = F.mul
    b2 = F.add(m(a1, a1), m(s(4), a2))
    b4 = F.add(m(s(2), a4), m(a1, a3))
    b6 = F.add(m(a3, a3), m(s(4), a6))
    b8 = F.add(
        F.sub(
            F.add(m(m(a1, a1), a6), m(s(4), m(a2, a6))),
            m(a1, m(a3, a4)),
        ),
        F.sub(m(a2, m(a3, a3)), m(a4, a4)),
    )
    t1 = F.neg(m(m(b2, b2), b8))
    t2 = F.neg(m(s(8), m(b4, m(b4, b4))))
    t3 = F.neg(m(s(27), m(b6, b6)))
    t4 = m(s(9), m(b2, m(b4, b6)))
    return F.add(F.add(t1, t2), F.add(t3, t4))


def count_points(coeffs, q: int) -> PointCount:
    """Exhaustively count projective points of the long Weierstrass curve
    y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6 over F_q.

    coeffs = (a1, a2, a3, a4, a6) as integers in the base-p digit encoding.
    The Hasse bound |q + 1 - N| <= 2*sqrt(q) is asserted.
    """
    if q > MAX_Q:
        raise FieldTooLarge(f"q = {q} exceeds the brute-force bound {MAX_Q}")
    F = GF(q)
    a1, a2, a3, a4, a6 = (F.from_int(c) for c in coeffs)
    if _discriminant(F, a1, a2, a3, a4, a6) == F.zero:
        raise SingularCurve("Weierstrass discriminant vanishes")

    m, add = F.mul, F.add
    if F.p == 2:
        count = 0
        for x in F.elements():
            h = add(m(a1, x), a3)
            f = add(add(m(x, m(x, x)), m(a2, m(x, x))), add(m(a4, x), a6))
            if h == F.zero:
                count += 1  # squaring is a bijection in char 2
            else:
                c = m(f, F.inv(m(h, h)))
                count += 2 if F.trace(c) == 0 else 0
    else:
        sq_count = {}
        for y in F.elements():
            s = m(y, y)
            sq_count[s] = sq_count.get(s, 0) + 1
        inv4 = F.inv(F.scalar(4))
        for_count = 0
        for x in F.elements():
            h = add(m(a1, x), a3)
            f = add(add(m(x, m(x, x)), m(a2, m(x, x))), add(m(a4, x), a6))
            # complete the square: (y + h/2)^2 = f + h^2/4
            d = add(f, m(m(h, h), inv4))
            for_count += sq_count.get(d, 0)
        count = for_count
    n = count + 1
    a = q + 1 - n
    assert a * a <= 4 * q, "Hasse bound violated; counting bug"
    return PointCount(n_points=n, trace=a)


# ---------------------------------------------------------------------------
# Curve models.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CurveModel:
    genus: int
    mode: str  # "symbolic" | "numerator" | "weierstrass"
    q: Fraction | None = None
    numerator: tuple | None = None  # c_0..c_{2g}
    weierstrass: tuple | None = None  # (a1, a2, a3, a4, a6)
    n_residue: int = 4

    @staticmethod
    def symbolic(genus: int, n_residue: int = 4) -> "CurveModel":
        return CurveModel(genus=genus, mode="symbolic", n_residue=n_residue)

    @staticmethod
    def from_numerator(genus, coeffs, q, n_residue: int = 4) -> "CurveModel":
        coeffs = tuple(Fraction(c) for c in coeffs)
        q = Fraction(q)
        if len(coeffs) != 2 * genus + 1:
            raise InvalidNumerator(
                f"expected {2 * genus + 1} coefficients for genus {genus}, "
                f"got {len(coeffs)}"
            )
        if coeffs[0] != 1:
            raise InvalidNumerator("numerator must have constant term 1")
        for i in range(2 * genus + 1):
            if coeffs[2 * genus - i] != q ** (genus - i) * coeffs[i]:
                raise InvalidNumerator(
                    "functional-equation symmetry c_{2g-i} = q^(g-i) c_i fails"
                )
        return CurveModel(
            genus=genus, mode="numerator", q=q, numerator=coeffs, n_residue=n_residue
        )

    @staticmethod
    def from_weierstrass(coeffs, q, n_residue: int = 4) -> "CurveModel":
        coeffs = tuple(int(c) for c in coeffs)
        pc = count_points(coeffs, q)
        return CurveModel(
            genus=1,
            mode="weierstrass",
            q=Fraction(q),
            numerator=(Fraction(1), Fraction(-pc.trace), Fraction(q)),
            weierstrass=coeffs,
            n_residue=n_residue,
        )

    @property
    def ctx(self) -> Context:
        return get_context(self.genus, self.n_residue)

    def q_expr(self):
        """q as a field element: the symbol in symbolic mode, else the
        numeric value."""
        return self.ctx.q if self.mode == "symbolic" else self.ctx.const(self.q)

    def n_points(self) -> int:
        """N = L(1) for a concrete genus-1 curve."""
        if self.numerator is None or self.genus != 1:
            raise ValueError("point count only defined for concrete genus-1 curves")
        return int(sum(self.numerator))


@dataclass(frozen=True)
class ZetaBundle:
    L: object  # polynomial of degree 2g in z
    zeta: object  # L / ((1-z)(1-qz))
    zeta_tilde: object  # z^(1-g) * zeta


def zeta_bundle(c: CurveModel) -> ZetaBundle:
    ctx = c.ctx
    z = ctx.z
    qx = c.q_expr()
    if c.mode == "symbolic":
        L = ctx.one
        for ai in ctx.a:
            L = L * (1 - ai * z) * (1 - (ctx.q / ai) * z)
    else:
        L = ctx.zero
        for i, ci in enumerate(c.numerator):
            L = L + ctx.const(ci) * z**i
    zeta = L / ((1 - z) * (1 - qx * z))
    zeta_tilde = z ** (1 - c.genus) * zeta
    return ZetaBundle(L=L, zeta=zeta, zeta_tilde=zeta_tilde)


def L_at(c: CurveModel, arg):
    """The L-polynomial evaluated at an arbitrary field element."""
    ctx = c.ctx
    b = zeta_bundle(c)
    return algebra.substitute(ctx, b.L, {ctx.z: arg})


def zeta_star(c: CurveModel, u: int, v: int):
    """Regularized zeta value at L^(-u) z^v.

    Generic branch (v > 0 or u > 1): zeta(q^(-u) z^v); the two degenerate
    patterns (1,0) and (0,0) take the finite regularized values.
    """
    if u < 0 or v < 0:
        raise ValueError("zeta_star requires u >= 0 and v >= 0")
    ctx = c.ctx
    qx = c.q_expr()
    b = zeta_bundle(c)
    if v > 0 or u > 1:
        return algebra.substitute(ctx, b.zeta, {ctx.z: qx ** (-u) * ctx.z**v})
    if (u, v) == (1, 0):
        return algebra.substitute(ctx, b.L, {ctx.z: qx**-1}) / (1 - qx**-1)
    # (u, v) == (0, 0)
    return algebra.substitute(ctx, b.L, {ctx.z: ctx.one}) / (1 - qx)


def load_curve(doc: dict, n_residue: int = 4) -> CurveModel:
    """Build a CurveModel from the JSON curve document."""
    mode = doc.get("mode")
    if mode == "symbolic":
        return CurveModel.symbolic(int(doc["genus"]), n_residue=n_residue)
    if mode == "numerator":
        return CurveModel.from_numerator(
            int(doc["genus"]), doc["numerator"], doc["q"], n_residue=n_residue
        )
    if mode == "weierstrass":
        return CurveModel.from_weierstrass(
            doc["weierstrass"], int(doc["q"]), n_residue=n_residue
        )
    raise ValueError(f"unknown curve mode: {mode!r}")
