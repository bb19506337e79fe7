"""Truncated w-series and the plethystic calculus.

A WSeries is a truncated power series in w whose coefficients are exact
rational expressions (possibly involving q, the Weil symbols and z).  The
plethystic exponential is

    Exp(f) = exp( sum_{n>=1} psi_n(f) / n )

where psi_n raises w^k to w^(nk) and applies the Adams endomorphism (every
symbol s -> s^n, so z -> z^n inside coefficients).  Log is its two-sided
inverse, computed by Moebius inversion; Exp(m * Log A) defines the power
structure.

SlopeSeries restricts the same calculus to a single slope: all monomials sit
at w^(n*r0) z^(n*d0), so the series is univariate in u = w^r0 z^d0 and the
coefficients are z-free.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from sympy import mobius

from . import algebra
from .algebra import Context
from .errors import ConstantTermNotOne, NonzeroConstantTerm

__all__ = [
    "WSeries",
    "pleth_exp",
    "pleth_log",
    "power",
    "lambda_ops",
    "SlopeSeries",
    "slope_exp",
    "slope_log",
]


@dataclass(frozen=True)
class WSeries:
    """Truncated series sum_k coeffs[k] * w^k, exact modulo w^(order+1)."""

    ctx: Context
    order: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError("need exactly order+1 coefficients")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @staticmethod
    def from_coeffs(ctx: Context, coeffs) -> "WSeries":
        coeffs = [c if hasattr(c, "numer") else ctx.const(c) for c in coeffs]
        return WSeries(ctx, len(coeffs) - 1, tuple(coeffs))

    @staticmethod
    def zero(ctx: Context, order: int) -> "WSeries":
        return WSeries(ctx, order, (ctx.zero,) * (order + 1))

    @staticmethod
    def one(ctx: Context, order: int) -> "WSeries":
        return WSeries(ctx, order, (ctx.one,) + (ctx.zero,) * order)

    def __add__(self, other: "WSeries") -> "WSeries":
        self._check(other)
        return WSeries(
            self.ctx,
            self.order,
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __sub__(self, other: "WSeries") -> "WSeries":
        self._check(other)
        return WSeries(
            self.ctx,
            self.order,
            tuple(a - b for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __mul__(self, other: "WSeries") -> "WSeries":
        self._check(other)
        n = self.order
        out = [self.ctx.zero] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] = out[i + j] + a * b
        return WSeries(self.ctx, n, tuple(out))

    def scale(self, m) -> "WSeries":
        """Multiply every coefficient by the scalar m."""
        if not hasattr(m, "numer"):
            m = self.ctx.const(m)
        return WSeries(self.ctx, self.order, tuple(m * c for c in self.coeffs))

    def shift(self, k: int) -> "WSeries":
        """Multiply by w^k (truncated)."""
        out = [self.ctx.zero] * (self.order + 1)
        for i, c in enumerate(self.coeffs):
            if i + k <= self.order:
                out[i + k] = c
        return WSeries(self.ctx, self.order, tuple(out))

    def truncate(self, order: int) -> "WSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return WSeries(self.ctx, order, self.coeffs[: order + 1])

    def slice_multiples(self, r0: int) -> "WSeries":
        """Keep only coefficients at w^k with r0 | k."""
        return WSeries(
            self.ctx,
            self.order,
            tuple(
                c if k % r0 == 0 else self.ctx.zero
                for k, c in enumerate(self.coeffs)
            ),
        )

    def map_coeffs(self, fn) -> "WSeries":
        return WSeries(self.ctx, self.order, tuple(fn(c) for c in self.coeffs))

    def _check(self, other):
        if self.ctx is not other.ctx or self.order != other.order:
            raise ValueError("WSeries contexts/orders do not match")


def _psi(f: WSeries, n: int) -> WSeries:
    """The n-th plethystic power map on series: w^k -> w^(nk), Adams on
    coefficients."""
    ctx = f.ctx
    out = [ctx.zero] * (f.order + 1)
    for k, c in enumerate(f.coeffs):
        if c != 0 and n * k <= f.order:
            out[n * k] = algebra.adams(ctx, n, c)
    return WSeries(ctx, f.order, tuple(out))


def _exp(g: WSeries) -> WSeries:
    """Formal exponential of a series with zero constant term."""
    out = WSeries.one(g.ctx, g.order)
    term = WSeries.one(g.ctx, g.order)
    for j in range(1, g.order + 1):
        term = (term * g).scale(g.ctx.const(1) / j)
        out = out + term
    return out


def _log(f: WSeries) -> WSeries:
    """Formal logarithm of a series with constant term 1."""
    u = f - WSeries.one(f.ctx, f.order)
    out = WSeries.zero(f.ctx, f.order)
    term = WSeries.one(f.ctx, f.order)
    for j in range(1, f.order + 1):
        term = term * u
        sign = 1 if j % 2 == 1 else -1
        out = out + term.scale(f.ctx.const(sign) / j)
    return out


def pleth_exp(f: WSeries) -> WSeries:
    """Plethystic exponential; requires vanishing constant term."""
    if f.coeffs[0] != 0:
        raise NonzeroConstantTerm("Exp input must have zero constant term")
    ctx = f.ctx
    g = WSeries.zero(ctx, f.order)
    for n in range(1, f.order + 1):
        g = g + _psi(f, n).scale(ctx.const(1) / n)
    return _exp(g)


def pleth_log(f: WSeries) -> WSeries:
    """Plethystic logarithm (inverse of pleth_exp), by Moebius inversion."""
    if f.coeffs[0] != 1:
        raise ConstantTermNotOne("Log input must have constant term 1")
    ctx = f.ctx
    h = _log(f)
    out = WSeries.zero(ctx, f.order)
    for n in range(1, f.order + 1):
        mu = int(mobius(n))
        if mu:
            out = out + _psi(h, n).scale(ctx.const(mu) / n)
    return out


def power(A: WSeries, m) -> WSeries:
    """The power structure (A, m) -> Exp(m * Log A)."""
    return pleth_exp(pleth_log(A).scale(m))


def lambda_ops(ctx: Context, x, k: int):
    """The k-th lambda operation on the Adams model.

    Determined by Newton's identities from psi_n(x): the generating series
    sum_k lambda_k(x) t^k equals exp(sum_n (-1)^(n-1) psi_n(x) t^n / n).
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return ctx.one
    # univariate truncated exp in the bookkeeping variable t
    g = [ctx.zero] * (k + 1)
    for n in range(1, k + 1):
        sign = 1 if n % 2 == 1 else -1
        g[n] = algebra.adams(ctx, n, x) * ctx.const(sign) / n
    out = [ctx.zero] * (k + 1)
    out[0] = ctx.one
    term = [ctx.one] + [ctx.zero] * k
    for j in range(1, k + 1):
        nxt = [ctx.zero] * (k + 1)
        for i in range(k + 1):
            if term[i] == 0:
                continue
            for n in range(1, k + 1 - i):
                if g[n] != 0:
                    nxt[i + n] = nxt[i + n] + term[i] * g[n]
        term = [c / j for c in nxt]
        for i in range(k + 1):
            out[i] = out[i] + term[i]
    return out[k]


# ---------------------------------------------------------------------------
# Fixed-slope series.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SlopeSeries:
    """Series whose n-th term (n >= 1) sits at w^(n*r0) z^(n*d0); the stored
    coefficients are z-free.  gcd(r0, d0) = 1, r0 >= 1."""

    ctx: Context
    r0: int
    d0: int
    coeffs: tuple  # coeffs[i] is the term at n = i + 1

    def __post_init__(self):
        if self.r0 < 1:
            raise ValueError("r0 must be >= 1")
        from math import gcd

        if gcd(self.r0, abs(self.d0)) != 1:
            raise ValueError("slope must be in lowest terms")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    def term(self, n: int):
        return self.coeffs[n - 1] if 1 <= n <= len(self.coeffs) else self.ctx.zero


def slope_exp(S: SlopeSeries) -> SlopeSeries:
    """Plethystic Exp along one slope: a univariate Exp in u = w^r0 z^d0."""
    ctx = S.ctx
    N = len(S.coeffs)
    g = [ctx.zero] * (N + 1)
    for k in range(1, N + 1):
        for m in range(1, N // k + 1):
            b = S.term(m)
            if b != 0:
                g[k * m] = g[k * m] + algebra.adams(ctx, k, b) / k
    out = [ctx.zero] * (N + 1)
    out[0] = ctx.one
    term = [ctx.one] + [ctx.zero] * N
    for j in range(1, N + 1):
        nxt = [ctx.zero] * (N + 1)
        for i in range(N + 1):
            if term[i] == 0:
                continue
            for n in range(1, N + 1 - i):
                if g[n] != 0:
                    nxt[i + n] = nxt[i + n] + term[i] * g[n]
        term = [c / j for c in nxt]
        for i in range(N + 1):
            out[i] = out[i] + term[i]
    return SlopeSeries(ctx, S.r0, S.d0, tuple(out[1:]))


def slope_log(S: SlopeSeries) -> SlopeSeries:
    """Inverse of slope_exp."""
    ctx = S.ctx
    N = len(S.coeffs)
    # formal log of 1 + sum coeffs[n] u^n
    h = [ctx.zero] * (N + 1)
    term = [ctx.one] + [ctx.zero] * N
    u = [ctx.zero] + list(S.coeffs)
    for j in range(1, N + 1):
        nxt = [ctx.zero] * (N + 1)
        for i in range(N + 1):
            if term[i] == 0:
                continue
            for n in range(1, N + 1 - i):
                if u[n] != 0:
                    nxt[i + n] = nxt[i + n] + term[i] * u[n]
        term = nxt
        sign = 1 if j % 2 == 1 else -1
        for i in range(N + 1):
            h[i] = h[i] + term[i] * ctx.const(sign) / j
    out = [ctx.zero] * (N + 1)
    for k in range(1, N + 1):
        mu = int(mobius(k))
        if not mu:
            continue
        for m in range(1, N // k + 1):
            if h[m] != 0:
                out[k * m] = out[k * m] + algebra.adams(ctx, k, h[m]) * ctx.const(mu) / k
    return SlopeSeries(ctx, S.r0, S.d0, tuple(out[1:]))
