import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rootlimits.errors import DomainError
from rootlimits.polynomial import Poly, monomials_of_degree, poly_from_terms

from conftest import random_poly


def small_polys(nvars=2):
    coef = st.integers(-6, 6)
    expo = st.tuples(*[st.integers(0, 3)] * nvars)
    return st.dictionaries(expo, coef, max_size=5).map(
        lambda d: poly_from_terms(nvars, list(d.items()))
    )


@settings(max_examples=40, deadline=None)
@given(small_polys(), small_polys(), small_polys())
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) * r == p * r + q * r
    assert p - p == Poly.zero(2)


@settings(max_examples=30, deadline=None)
@given(small_polys(), st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
       st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_shift_matches_evaluation(p, t, x):
    t = [Fraction(v) for v in t]
    x = [Fraction(v) for v in x]
    assert p.shift(t).eval(x) == p.eval([a + b for a, b in zip(x, t)])


def test_division_by_linear_form(rng):
    for _ in range(25):
        n = rng.randrange(2, 4)
        q = random_poly(rng, n, 4)
        form = Poly.linear_form([Fraction(rng.randrange(-3, 4)) for _ in range(n)])
        if form.is_zero():
            continue
        product = q * form
        quotient, rem = product.div_linear(form)
        assert rem.is_zero()
        assert quotient == q


def test_division_remainder_detected():
    p = Poly(2, {(2, 0): Fraction(1), (0, 0): Fraction(1)})  # x^2 + 1
    form = Poly.linear_form([Fraction(1), Fraction(0)])
    quotient, rem = p.div_linear(form)
    assert not rem.is_zero()
    assert quotient * form + rem == p


def test_eliminate_last_is_evaluation(rng):
    for _ in range(10):
        p = random_poly(rng, 3, 4)
        repl = Poly.linear_form([Fraction(-1), Fraction(-1)])
        e = p.eliminate_last(repl)
        x = [Fraction(rng.randrange(-3, 4)) for _ in range(2)]
        assert e.eval(x) == p.eval(x + [-x[0] - x[1]])


def test_signed_perm_action(rng):
    # p o w^{-1} evaluated at x equals p at w^{-1} x
    from rootlimits.weyl import WeylElement

    for _ in range(20):
        p = random_poly(rng, 3, 4)
        perm = list(range(3))
        rng.shuffle(perm)
        signs = [rng.choice((-1, 1)) for _ in range(3)]
        w = WeylElement(tuple(perm), tuple(signs))
        x = tuple(Fraction(rng.randrange(-4, 5)) for _ in range(3))
        assert p.apply_signed_perm(w.perm, w.signs).eval(x) == p.eval(
            w.inverse().act(x)
        )


def test_monomial_enumeration():
    monos = monomials_of_degree(3, 4)
    assert len(monos) == 15
    assert len(set(monos)) == 15
    assert all(sum(e) == 4 for e in monos)
    assert monomials_of_degree(2, 0) == [(0, 0)]


def test_degree_and_parts():
    p = Poly(2, {(2, 1): Fraction(1), (0, 1): Fraction(-2)})
    assert p.degree() == 3
    assert p.homogeneous_degrees() == [1, 3]
    assert p.homogeneous_part(1) == Poly(2, {(0, 1): Fraction(-2)})
    assert Poly.zero(2).degree() == -1


def test_dimension_mismatch_raises():
    with pytest.raises(DomainError):
        Poly.zero(2) + Poly.zero(3)
    with pytest.raises(DomainError):
        Poly.zero(2).eval([1])
