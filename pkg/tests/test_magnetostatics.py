import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gec import randgen
from gec.electro import ElectroConfig, IdentityViolation
from gec.magnetostatics import (
    PolyVectorField,
    SkewStressField,
    axial_vector,
    cross,
    crosscheck_with_forms,
    curl,
    div,
    gradient,
    levi_civita,
    one_form,
    power_magneto,
    vector_from_two_form,
    flux_form,
)
from gec.meshgen import kuhn_box
from gec.poly import Poly
from gec.smoothform import coordinate

from oracles import to_sympy

X, Y, Z = (coordinate(3, i) for i in range(3))
ZERO = Poly.zero(3)
CUBE = kuhn_box(3, 1)
seeds = st.integers(min_value=0, max_value=10**6)
xs = sympy.symbols("x y z")


def sympy_outward_flux(u: PolyVectorField):
    """Flux of ``u`` out of the unit cube, face by face."""
    comps = [to_sympy(c, xs) for c in u.components]
    total = sympy.Integer(0)
    for i in range(3):
        a, b = [xs[j] for j in range(3) if j != i]
        for value, sign in ((1, 1), (0, -1)):
            f = comps[i].subs(xs[i], value)
            total += sign * sympy.integrate(f, (a, 0, 1), (b, 0, 1))
    return total


def test_levi_civita():
    assert levi_civita(0, 1, 2) == 1
    assert levi_civita(2, 1, 0) == -1
    assert levi_civita(0, 0, 1) == 0


def test_axial_vector_example():
    sigma = SkewStressField.from_upper(2, -5, 3)
    g = axial_vector(sigma)
    assert g == PolyVectorField((3, 5, 2))
    e1 = PolyVectorField((1, 0, 0))
    assert sigma.transpose_apply(e1) == PolyVectorField((0, 2, -5))
    assert cross(g, e1) == PolyVectorField((0, 2, -5))
    assert axial_vector(SkewStressField.from_upper(0, 0, 0)).is_zero()


def test_non_skew_rejected():
    one = Poly.const(3, 1)
    with pytest.raises(ValueError):
        SkewStressField(((ZERO, one, ZERO), (one, ZERO, ZERO), (ZERO, ZERO, ZERO)))


def test_curl_example_and_identities():
    assert curl(PolyVectorField((ZERO, ZERO, X * Y))) == PolyVectorField((X, -Y, ZERO))
    f = X * X * Y + Z * Y * 3
    assert curl(gradient(f)).is_zero()


def test_magneto_example_matches_sympy():
    g = PolyVectorField((ZERO, ZERO, X))
    w = PolyVectorField((ZERO, Y, ZERO))
    mp = power_magneto(CUBE, g, w)
    oracle = sympy_outward_flux(cross(g, w))
    assert oracle == sympy.Rational(-1, 2)
    assert (mp.surface, mp.divergence, mp.two_term, mp.current_form) == (Fraction(-1, 2),) * 4


def test_zero_velocity_gives_zero():
    mp = power_magneto(CUBE, PolyVectorField((X, Y, Z)), PolyVectorField.zero())
    assert (mp.surface, mp.divergence, mp.two_term, mp.current_form) == (0, 0, 0, 0)


def test_crosscheck_example_and_constant_g():
    g = PolyVectorField((ZERO, ZERO, X))
    w = PolyVectorField((ZERO, Y, ZERO))
    rep = crosscheck_with_forms(CUBE, g, w)
    assert rep.forms_power == Fraction(-1, 2)
    assert rep.holds
    const = PolyVectorField((1, 2, 3))
    assert curl(const).is_zero()
    assert crosscheck_with_forms(CUBE, const, w).holds


def test_flux_form_identification_roundtrip():
    rng = random.Random(15)
    for _ in range(5):
        u = randgen.vector_field(rng)
        assert vector_from_two_form(flux_form(u)) == u


def test_crosscheck_detects_sign_fault():
    rng = random.Random(16)
    while True:
        g, w = randgen.vector_field(rng, 2), randgen.vector_field(rng, 2)
        rep = crosscheck_with_forms(CUBE, g, w, check=False,
                                    cfg=ElectroConfig(3, 1, sign_fault=True))
        if not rep.holds:
            break
    with pytest.raises(IdentityViolation):
        crosscheck_with_forms(CUBE, g, w, cfg=ElectroConfig(3, 1, sign_fault=True))


def test_d_alpha_matches_curl_componentwise():
    from gec.smoothform import exterior_derivative

    rng = random.Random(17)
    for _ in range(20):
        w = randgen.vector_field(rng)
        assert vector_from_two_form(exterior_derivative(one_form(w))) == curl(w)


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_random_three_way_equality_against_sympy(seed):
    rng = random.Random(seed)
    g, w = randgen.vector_field(rng, 3), randgen.vector_field(rng, 3)
    mp = power_magneto(CUBE, g, w)
    assert sympy.Rational(mp.surface) == sympy_outward_flux(cross(g, w))


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_axial_law_and_div_curl(seed):
    rng = random.Random(seed)
    sigma = randgen.skew_stress(rng)
    w = randgen.vector_field(rng)
    assert sigma.transpose_apply(w) == cross(axial_vector(sigma), w)
    assert div(curl(w)).is_zero()
