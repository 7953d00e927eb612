import random
from fractions import Fraction
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from gec.numeric import simplex_rule
from gec.poly import Poly, monomial_simplex_integral, monomials_up_to

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def polys(draw, nvars=3, max_degree=3):
    monos = list(monomials_up_to(nvars, max_degree))
    terms = draw(st.dictionaries(st.sampled_from(monos), coeffs, max_size=4))
    return Poly(nvars, terms)


def brute_force_simplex(exp):
    """Nested adaptive quadrature over {t >= 0, sum t <= 1}."""
    k = len(exp)

    def f(*t):
        return float(np.prod([ti**e for ti, e in zip(t, exp)]))

    def bounds(j):
        def b(*outer):
            return (0.0, 1.0 - sum(outer))
        return b

    # nquad passes inner variables first; limits for t_j depend on t_{j+1..}
    ranges = [bounds(j) for j in range(k)]
    val, _ = integrate.nquad(f, ranges, opts={"epsabs": 1e-12, "epsrel": 1e-12})
    return val


def test_monomial_formula_matches_brute_force_quadrature():
    rng = random.Random(7)
    for _ in range(10):
        k = rng.randint(1, 3)
        exp = tuple(rng.randint(0, 4) for _ in range(k))
        assert float(monomial_simplex_integral(exp)) == pytest.approx(brute_force_simplex(exp), rel=1e-9)


def test_monomial_formula_known_values():
    assert monomial_simplex_integral((0, 0)) == Fraction(1, 2)
    assert monomial_simplex_integral((1, 0, 0)) == Fraction(1, 24)
    assert monomial_simplex_integral(()) == 1


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_collapsed_rule_is_exact_to_its_order(k):
    pts, wts = simplex_rule(k, 4)
    assert wts.sum() == pytest.approx(1 / factorial(k))
    for exp in monomials_up_to(k, 4):
        approx = float(np.dot(wts, np.prod(pts**np.array(exp), axis=1)))
        assert approx == pytest.approx(float(monomial_simplex_integral(exp)), abs=1e-14)


def test_monomials_up_to_counts():
    # C(n + k, k) monomials of degree <= k in n variables
    assert len(list(monomials_up_to(3, 3))) == 20
    assert len(list(monomials_up_to(4, 3))) == 35
    assert list(monomials_up_to(0, 2)) == [()]


def test_arithmetic_and_derivative():
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    p = x * y + x * 3 - 1
    assert p.diff(0) == y + 3
    assert p.diff(1) == x
    assert p((2, 5)) == 15
    assert (x + y) ** 2 == x * x + x * y * 2 + y * y
    assert (p - p).is_zero()


def test_compose_affine_substitutes_linear_images():
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    # x -> 1 + t, y -> 2t
    q = (x * y).compose_affine((1, 0), [(1, 2)])
    t = Poly.var(1, 0)
    assert q == (t + 1) * t * 2


def test_floats_rejected_in_exact_mode():
    with pytest.raises(TypeError):
        Poly.const(2, 0.5)


@settings(max_examples=50, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@settings(max_examples=50, deadline=None)
@given(polys(), polys())
def test_product_rule(a, b):
    for i in range(3):
        assert (a * b).diff(i) == a.diff(i) * b + a * b.diff(i)
