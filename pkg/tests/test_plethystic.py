"""Plethystic Exp/Log, the power structure, lambda operations and the
fixed-slope calculus."""

import pytest

from higgsvol import algebra
from higgsvol.algebra import get_context
from higgsvol.errors import ConstantTermNotOne, NonzeroConstantTerm
from higgsvol.plethystic import (
    SlopeSeries,
    WSeries,
    lambda_ops,
    pleth_exp,
    pleth_log,
    power,
    slope_exp,
    slope_log,
)

from conftest import (
    random_poly,
    random_rational,
    random_wseries_one_const,
    random_wseries_zero_const,
)


@pytest.fixture
def ctx():
    return get_context(1, 0)


def w_linear(ctx, coeff, order):
    return WSeries.from_coeffs(
        ctx, [ctx.zero, coeff] + [ctx.zero] * (order - 1)
    )


def test_exp_of_w(ctx):
    e = pleth_exp(w_linear(ctx, ctx.one, 6))
    assert all(c == 1 for c in e.coeffs)


def test_exp_of_qw(ctx):
    e = pleth_exp(w_linear(ctx, ctx.q, 6))
    for k, c in enumerate(e.coeffs):
        assert c == ctx.q**k


def test_exp_additivity(ctx):
    a = w_linear(ctx, ctx.q, 6)
    b = w_linear(ctx, ctx.one, 6)
    assert pleth_exp(a + b) == pleth_exp(a) * pleth_exp(b)


def test_exp_rejects_constant_term(ctx):
    with pytest.raises(NonzeroConstantTerm):
        pleth_exp(WSeries.one(ctx, 3))


def test_log_of_geometric_in_zw(ctx):
    # Exp(zw) has coefficient z^k at w^k; Log returns the single term
    e = pleth_exp(w_linear(ctx, ctx.z, 6))
    for k, c in enumerate(e.coeffs):
        assert c == ctx.z**k
    assert pleth_log(e) == w_linear(ctx, ctx.z, 6)


def test_log_rejects_wrong_constant(ctx):
    with pytest.raises(ConstantTermNotOne):
        pleth_log(WSeries.zero(ctx, 3))


def test_log_exp_inversion_random(ctx, rng):
    for _ in range(25):
        f = random_wseries_zero_const(ctx, rng, 6)
        assert pleth_log(pleth_exp(f)) == f
    for _ in range(25):
        g = random_wseries_one_const(ctx, rng, 6)
        assert pleth_exp(pleth_log(g)) == g


def test_log_multiplicativity_random(ctx, rng):
    for _ in range(10):
        f = random_wseries_one_const(ctx, rng, 6)
        g = random_wseries_one_const(ctx, rng, 6)
        assert pleth_log(f * g) == pleth_log(f) + pleth_log(g)


def test_log_linear_term(ctx, rng):
    for _ in range(10):
        g = random_wseries_one_const(ctx, rng, 5)
        assert pleth_log(g).coeffs[1] == g.coeffs[1]


# -- power structure --------------------------------------------------------


def test_power_zero_and_one(ctx, rng):
    for _ in range(5):
        A = random_wseries_one_const(ctx, rng, 6)
        assert power(A, 0) == WSeries.one(ctx, 6)
        assert power(A, 1) == A


def test_power_linear_term(ctx, rng):
    A = WSeries.from_coeffs(ctx, [ctx.one, ctx.one] + [ctx.zero] * 4)
    for m in (ctx.q, ctx.const(3), ctx.q**2 - 1):
        P = power(A, m)
        assert P.coeffs[0] == 1
        assert P.coeffs[1] == m


def test_power_multiplicativity_in_base(ctx, rng):
    for _ in range(5):
        A = random_wseries_one_const(ctx, rng, 6)
        B = random_wseries_one_const(ctx, rng, 6)
        m = random_poly(ctx, rng, gens=[ctx.q])
        assert power(A * B, m) == power(A, m) * power(B, m)


def test_power_additivity_in_exponent(ctx, rng):
    for _ in range(5):
        A = random_wseries_one_const(ctx, rng, 6)
        m1 = random_poly(ctx, rng, gens=[ctx.q])
        m2 = random_poly(ctx, rng, gens=[ctx.q])
        assert power(A, m1 + m2) == power(A, m1) * power(A, m2)


def test_power_tower_integer_exponents(ctx, rng):
    # (A^{m2})^{m1} = A^{m1 m2} for integer inner exponent, where the outer
    # power is iterated multiplication
    for _ in range(5):
        A = random_wseries_one_const(ctx, rng, 6)
        m = random_poly(ctx, rng, gens=[ctx.q])
        assert power(A, 3 * m) == power(power(A, m), 3)
        assert power(power(A, m), 3) == power(A, m) * power(A, m) * power(A, m)


def subst_z_to_zw(ws: WSeries) -> WSeries:
    """The monomial substitution z -> z*w on a series whose coefficients are
    polynomial in z: the z^j part of the w^k coefficient moves to w^(k+j)."""
    ctx = ws.ctx
    out = [ctx.zero] * (ws.order + 1)
    for k, c in enumerate(ws.coeffs):
        assert c.denom.degree(ctx.index_of(ctx.z)) <= 0
        num = algebra.poly_coeffs_in(ctx, c.numer, ctx.z)
        den = ctx.field.new(c.denom, c.denom.ring.one)
        for j, part in num.items():
            if k + j <= ws.order:
                out[k + j] = out[k + j] + part * ctx.z**j / den
    return WSeries(ctx, ws.order, tuple(out))


def test_power_commutes_with_monomial_substitution(ctx, rng):
    # axiom (vii) with the substitution z -> z*w
    for _ in range(5):
        coeffs = [ctx.one] + [
            random_poly(ctx, rng, max_terms=2, max_exp=2) for _ in range(6)
        ]
        A = WSeries.from_coeffs(ctx, coeffs)
        m = random_poly(ctx, rng, gens=[ctx.q])
        assert power(subst_z_to_zw(A), m) == subst_z_to_zw(power(A, m))


# -- lambda operations ------------------------------------------------------


def test_lambda_low_orders(ctx, rng):
    x = random_rational(ctx, rng)
    assert lambda_ops(ctx, x, 0) == ctx.one
    assert lambda_ops(ctx, x, 1) == x


def test_lambda_scaling_compatibility(ctx):
    # sum_k lambda_k(q * x) t^k = sum_k lambda_k(x) (q t)^k at x = 1:
    # the left side must be 1 + q t, i.e. lambda_k(q) = 0 for k >= 2
    assert lambda_ops(ctx, ctx.q, 0) == ctx.one
    assert lambda_ops(ctx, ctx.q, 1) == ctx.q
    for k in (2, 3, 4):
        assert lambda_ops(ctx, ctx.q, k) == ctx.zero


def test_lambda_newton_identity(ctx, rng):
    for _ in range(10):
        x = random_rational(ctx, rng)
        psi2 = algebra.adams(ctx, 2, x)
        assert psi2 == x * lambda_ops(ctx, x, 1) - 2 * lambda_ops(ctx, x, 2)


# -- fixed-slope series -----------------------------------------------------


def test_slope_exp_linear_term(ctx, rng):
    b1 = random_poly(ctx, rng, gens=[ctx.q])
    S = SlopeSeries(ctx, 2, 1, (b1, ctx.zero, ctx.zero))
    assert slope_exp(S).term(1) == b1


def test_slope_exp_second_term(ctx, rng):
    b1 = random_poly(ctx, rng, gens=[ctx.q])
    b2 = random_poly(ctx, rng, gens=[ctx.q])
    S = SlopeSeries(ctx, 1, 1, (b1, b2))
    got = slope_exp(S).term(2)
    want = b2 + b1 * b1 / 2 + algebra.adams(ctx, 2, b1) / 2
    assert got == want


def test_slope_roundtrip_random(ctx, rng):
    for _ in range(10):
        coeffs = tuple(
            random_poly(ctx, rng, gens=[ctx.q]) for _ in range(4)
        )
        S = SlopeSeries(ctx, 3, 2, coeffs)
        assert slope_exp(slope_log(S)).coeffs == S.coeffs
        assert slope_log(slope_exp(S)).coeffs == S.coeffs


def test_slope_requires_lowest_terms(ctx):
    with pytest.raises(ValueError):
        SlopeSeries(ctx, 2, 4, (ctx.one,))
