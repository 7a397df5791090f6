"""Shared helpers for the test suite: deterministic random generators for
polynomials, invariants, Fourier data."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from rootlimits import invariants as inv
from rootlimits import rootsys as rsys
from rootlimits import weyl as wy
from rootlimits.polynomial import Poly


def random_poly(rng: random.Random, nvars: int, degree: int,
                terms: int = 6) -> Poly:
    out = {}
    for _ in range(terms):
        e = [0] * nvars
        budget = rng.randrange(degree + 1)
        for _ in range(budget):
            e[rng.randrange(nvars)] += 1
        out[tuple(e)] = out.get(tuple(e), Fraction(0)) + Fraction(
            rng.randrange(-9, 10), rng.randrange(1, 5)
        )
    p = Poly(nvars)
    p.terms = {e: c for e, c in out.items() if c}
    return p


def random_invariant(rng: random.Random, group: wy.WeylGroup,
                     degree: int, terms: int = 3) -> Poly:
    """A random polynomial in the invariant generators, degree-capped."""
    basis = inv.invariant_generators(group)
    n = group.dim
    result = Poly.zero(n)
    for _ in range(terms):
        total = 0
        factor = Poly.const(n, Fraction(rng.randrange(-6, 7), rng.randrange(1, 4)))
        order = list(range(len(basis.generators)))
        rng.shuffle(order)
        for i in order:
            d = basis.degrees[i]
            if total + d <= degree and rng.random() < 0.6:
                power = 1
                if total + 2 * d <= degree and rng.random() < 0.3:
                    power = 2
                factor = factor * basis.generators[i] ** power
                total += d * power
        result = result + factor
    return result


@pytest.fixture
def rng():
    return random.Random(20260809)
