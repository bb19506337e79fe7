"""Shared helpers for the test suite: seeded random expression and series
generators over the exact coefficient fields."""

from __future__ import annotations

import random

import pytest

from higgsvol.algebra import get_context
from higgsvol.plethystic import WSeries


@pytest.fixture
def rng():
    return random.Random(20240817)


def random_poly(ctx, rnd, max_terms=3, max_exp=2, gens=None):
    """A random sparse polynomial (as a field element) in the given
    generators with small integer coefficients."""
    gens = gens if gens is not None else ctx.gens
    out = ctx.const(rnd.randint(-3, 3))
    for _ in range(rnd.randint(1, max_terms)):
        term = ctx.const(rnd.choice([-2, -1, 1, 2, 3]))
        for g in gens:
            e = rnd.randint(0, max_exp)
            if e:
                term = term * g**e
        out = out + term
    return out


def random_rational(ctx, rnd, gens=None):
    """A random non-degenerate rational expression."""
    num = random_poly(ctx, rnd, gens=gens)
    den = ctx.zero
    while den == 0:
        den = random_poly(ctx, rnd, gens=gens)
    return num / den


def random_wseries_zero_const(ctx, rnd, order, gens=None):
    """Random truncated series with vanishing constant term."""
    coeffs = [ctx.zero] + [
        random_poly(ctx, rnd, max_terms=2, max_exp=2, gens=gens)
        for _ in range(order)
    ]
    return WSeries.from_coeffs(ctx, coeffs)


def random_wseries_one_const(ctx, rnd, order, gens=None):
    """Random truncated series with constant term 1."""
    coeffs = [ctx.one] + [
        random_poly(ctx, rnd, max_terms=2, max_exp=2, gens=gens)
        for _ in range(order)
    ]
    return WSeries.from_coeffs(ctx, coeffs)
