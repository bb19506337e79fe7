"""The iterated-residue pipeline.

For each partition, a product of regularized zeta values over boxes is
paired with an iterated residue of the symmetrized multivariate kernel; the
resulting generating series is plethystically inverted to extract the
B-table and re-exponentiated along a fixed slope to produce the stabilized
rank/degree classes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, gcd

from . import algebra
from .curve import CurveModel, zeta_bundle
from .errors import LimitExceeded, StabilizationFailure
from .partitions import Partition, enumerate_partitions
from .plethystic import SlopeSeries, WSeries, pleth_log, slope_exp

__all__ = [
    "ResidueSpec",
    "residue_spec",
    "j_lambda",
    "l_mot",
    "h_lambda",
    "omega_sch",
    "b_coefficients",
    "higgs_class_sch",
]

DEFAULT_N_LIMIT = 4


@dataclass(frozen=True)
class ResidueSpec:
    """Residue bookkeeping for a partition written as 1^{r_1} ... t^{r_t}.

    n is the number of parts.  Within the block of indices belonging to part
    size i (leader 1 + r_{<i}, then the next r_i - 1 indices), every
    non-leader index j carries the chain condition z_j / z_{j-1} = 1/q.  The
    leaders stay free and are finally substituted by z^i * q^(-r_{<i}).
    """

    partition: Partition
    n: int
    chains: tuple  # (j, j-1) pairs, in evaluation order (descending j)
    free: tuple  # ((index, part_size, prefix_count), ...)


def residue_spec(part: Partition) -> ResidueSpec:
    mults = part.multiplicities()
    prefix = part.prefix_counts()
    n = sum(mults)
    chains = []
    free = []
    for i in range(len(mults), 0, -1):
        r_i = mults[i - 1]
        if r_i == 0:
            continue
        leader = 1 + prefix[i - 1]
        free.append((leader, i, prefix[i - 1]))
        for j in range(leader + r_i - 1, leader, -1):
            chains.append((j, j - 1))
    spec = ResidueSpec(
        partition=part, n=n, chains=tuple(chains), free=tuple(free)
    )
    t_distinct = sum(1 for r in mults if r > 0)
    assert len(spec.chains) == n - t_distinct
    return spec


def j_lambda(c: CurveModel, part: Partition):
    """Product over boxes of the regularized zeta at L^(-1-leg) z^arm."""
    from .curve import zeta_star

    ctx = c.ctx
    out = ctx.one
    for arm, leg in part.boxes():
        out = out * zeta_star(c, 1 + leg, arm)
    return out


def _zeta_tilde_at(c: CurveModel, arg):
    """zeta_tilde evaluated at an arbitrary field element: arg^(1-g) *
    L(arg) / ((1-arg)(1-q*arg))."""
    ctx = c.ctx
    qx = c.q_expr()
    b = zeta_bundle(c)
    L = algebra.substitute(ctx, b.L, {ctx.z: arg})
    return arg ** (1 - c.genus) * L / ((1 - arg) * (1 - qx * arg))


def l_mot(c: CurveModel, n: int):
    """The symmetrized kernel in z_1..z_n.

    (1 / prod_{i<j} zt(z_i/z_j)) * sum over permutations sigma of
    sigma{ prod_{i<j} zt(z_i/z_j) * prod_{i<n} 1/(1 - q z_{i+1}/z_i)
           * 1/(1 - z_1) },
    where sigma acts by permuting the symbols z_1..z_n.
    """
    ctx = c.ctx
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > ctx.n_residue or n > DEFAULT_N_LIMIT:
        raise LimitExceeded(
            f"n = {n} exceeds the configured kernel limit "
            f"({min(ctx.n_residue, DEFAULT_N_LIMIT)})"
        )
    qx = c.q_expr()
    zs = ctx.zs

    def bracket(order):
        v = [zs[k] for k in order]
        out = ctx.one / (1 - v[0])
        for i in range(n - 1):
            out = out / (1 - qx * v[i + 1] / v[i])
        for i in range(n):
            for j in range(i + 1, n):
                out = out * _zeta_tilde_at(c, v[i] / v[j])
        return out

    total = ctx.zero
    for perm in itertools.permutations(range(n)):
        total = total + bracket(perm)
    prefactor = ctx.one
    for i in range(n):
        for j in range(i + 1, n):
            prefactor = prefactor * _zeta_tilde_at(c, zs[i] / zs[j])
    return total / prefactor


def h_lambda(c: CurveModel, part: Partition):
    """Iterated residue of the kernel along the partition's chain grid,
    followed by the substitution of the free block leaders by z^i q^(-r<i)."""
    ctx = c.ctx
    qx = c.q_expr()
    spec = residue_spec(part)
    if spec.n == 0:
        return ctx.one
    expr = l_mot(c, spec.n)
    for j, anchor in spec.chains:
        point = ctx.zs[anchor - 1] / qx
        # Orientation: the chain residue is taken in the ratio coordinate
        # u = z_j/z_{j-1} by dropping the simple-pole factor and evaluating,
        # i.e. [A]_{u=1/q} for A/(1 - q*u).  That is the negative of the
        # classical residue of x d(z_j)/z_j at z_j = z_{j-1}/q.
        expr = -algebra.residue_chain(ctx, expr, ctx.zs[j - 1], point)
    subs = {
        ctx.zs[leader - 1]: ctx.z**i * qx ** (-prefix)
        for leader, i, prefix in spec.free
    }
    return algebra.substitute(ctx, expr, subs)


def omega_sch(c: CurveModel, w_max: int) -> WSeries:
    """Sum over partitions of w^|la| q^((g-1)<la,la>) J_la(z) H_la(z)."""
    ctx = c.ctx
    qx = c.q_expr()
    coeffs = [ctx.one]
    for r in range(1, w_max + 1):
        acc = ctx.zero
        for part in enumerate_partitions(r):
            acc = acc + (
                qx ** ((c.genus - 1) * part.pairing())
                * j_lambda(c, part)
                * h_lambda(c, part)
            )
        coeffs.append(acc)
    return WSeries.from_coeffs(ctx, coeffs)


def b_coefficients(c: CurveModel, w_max: int, d_max: int) -> dict:
    """B[r][d] for 1 <= r <= w_max, 0 <= d <= d_max: the z-Taylor table of
    q * Log(omega_sch)."""
    ctx = c.ctx
    qx = c.q_expr()
    lg = pleth_log(omega_sch(c, w_max))
    table: dict = {}
    for r in range(1, w_max + 1):
        coeff = qx * lg.coeffs[r]
        table[r] = algebra.taylor_z(ctx, coeff, ctx.z, d_max)
    return table


def _shift_exponent(c: CurveModel, r: int, d: int) -> int:
    """Smallest admissible non-negative twist e: e >= (r-1)(g-1) - d/r and
    d + e*r >= 0.  The e-vs-(e+1) stabilization check downstream guards the
    boundary case."""
    bound = Fraction((r - 1) * (c.genus - 1)) - Fraction(d, r)
    e = max(0, ceil(bound), ceil(Fraction(-d, r)))
    return e


def _h_rd(c: CurveModel, r: int, d: int, b_table: dict):
    """H_{r,d} from the B-table via the fixed-slope exponential; requires
    d >= 0 with slope d/r in the table's range."""
    ctx = c.ctx
    qx = c.q_expr()
    g = gcd(r, abs(d)) if d != 0 else r
    r0, d0 = r // g, d // g
    n_terms = r // r0
    coeffs = tuple(b_table[n * r0][n * d0] for n in range(1, n_terms + 1))
    exp = slope_exp(SlopeSeries(ctx, r0, d0, coeffs))
    n = r // r0
    return qx ** ((c.genus - 1) * (r * r)) * exp.term(n)


def higgs_class_sch(c: CurveModel, r: int, d: int, check_stabilization: bool = True):
    """The rank-r degree-d semistable class along the residue pipeline:
    H_{r, d+er} for the smallest admissible twist e, cross-checked against
    e+1."""
    if r < 1:
        raise ValueError("rank must be >= 1")
    e = _shift_exponent(c, r, d)
    shifts = (e, e + 1) if check_stabilization else (e,)
    d_max = d + max(shifts) * r
    b_table = b_coefficients(c, r, d_max)
    values = [_h_rd(c, r, d + ei * r, b_table) for ei in shifts]
    if check_stabilization and values[0] != values[1]:
        raise StabilizationFailure(
            f"H_({r},{d + e * r}) != H_({r},{d + (e + 1) * r}); "
            "insufficient truncation"
        )
    return values[0]
