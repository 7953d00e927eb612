import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gec import randgen
from gec.complex import DegreeError
from gec.electro import (
    ElectroConfig,
    IdentityViolation,
    field_strengths,
    maxwell_traction,
    power_chain_identity,
    power_chain_identity_discrete,
    total_power,
    variational_split,
    variational_stress,
)
from gec.meshgen import kuhn_box
from gec.smoothform import PolyForm, coordinate, de_rham, dx, exterior_derivative, wedge
from gec.stress import apply_traction, power_boundary_form, power_variational

from oracles import box_integral, to_sympy

X, Y, Z = (coordinate(3, i) for i in range(3))
CUBE = kuhn_box(3, 1)
CFG = ElectroConfig(3, 1)
seeds = st.integers(min_value=0, max_value=10**6)


def running():
    return dx(3, 1) * X, dx(3, 2) * Y


def sympy_box_bulk(flux):
    """Integral over the unit box of d(flux) for a (d-1)-form, computed with sympy."""
    d = flux.dim
    xs = sympy.symbols(f"x0:{d}")
    density = sympy.Integer(0)
    for j in range(d):
        idx = tuple(i for i in range(d) if i != j)
        c = flux.terms.get(idx)
        if c is not None:
            density += (-1) ** j * sympy.diff(to_sympy(c, xs), xs[j])
    return box_integral(density, xs)


def test_sign_convention():
    assert ElectroConfig(3, 1).sign == -1
    assert ElectroConfig(4, 1).sign == 1
    assert ElectroConfig(4, 2).sign == -1
    assert ElectroConfig(3, 1, sign_fault=True).sign == 1
    with pytest.raises(ValueError):
        ElectroConfig(3, 3)


def test_maxwell_stress_examples():
    g, alpha = running()
    assert apply_traction(maxwell_traction(g, CFG), alpha) == PolyForm(3, 2, {(1, 2): X * Y})
    assert maxwell_traction(PolyForm.zero(3, 1), CFG).terms == ()
    x2 = coordinate(2, 0)
    sigma = maxwell_traction(dx(2, 1), ElectroConfig(2, 0))
    assert apply_traction(sigma, PolyForm.scalar(2, x2)) == dx(2, 1) * x2


def test_maxwell_traction_rejects_wrong_degree():
    with pytest.raises(DegreeError):
        maxwell_traction(PolyForm.basis(3, (0, 1)), CFG)


def test_field_strengths_running_example():
    g, alpha = running()
    fs = field_strengths(alpha, g, CFG)
    assert fs.F == PolyForm.basis(3, (1, 2))
    assert fs.J == PolyForm.basis(3, (0, 1))
    assert exterior_derivative(fs.F).is_zero() and exterior_derivative(fs.J).is_zero()


def test_field_strengths_special_cases():
    phi = PolyForm.scalar(3, X * Y * Z)
    assert field_strengths(exterior_derivative(phi), dx(3, 0), CFG).F.is_zero()
    assert field_strengths(dx(3, 2), dx(3, 0) * 4, CFG).J.is_zero()


def test_running_example_power_chain():
    g, alpha = running()
    pc = power_chain_identity(CUBE, g, alpha, CFG)
    assert (pc.boundary, pc.bulk, pc.split) == (Fraction(1, 2),) * 3
    assert (pc.current_term, pc.field_term, pc.sign) == (Fraction(1, 2), 0, -1)
    assert total_power(CUBE, g, alpha, CFG) == Fraction(1, 2)
    assert sympy_box_bulk(wedge(g, alpha)) == sympy.Rational(1, 2)


def test_zero_fields_give_zero_power():
    g, alpha = running()
    pc = power_chain_identity(CUBE, PolyForm.zero(3, 1), alpha, CFG)
    assert (pc.boundary, pc.bulk, pc.split) == (0, 0, 0)
    assert total_power(CUBE, g, PolyForm.zero(3, 1), CFG) == 0


def test_variational_split_running_example():
    g, alpha = running()
    s0, s1 = variational_split(g, alpha, CFG)
    assert s0 == PolyForm(3, 3, {(0, 1, 2): Y})
    assert s1.is_zero()
    assert s0 + s1 == exterior_derivative(wedge(g, alpha))


def test_variational_split_special_cases():
    rng = random.Random(2)
    alpha = randgen.form(rng, 3, 1)
    s0, _ = variational_split(dx(3, 0) * 3, alpha, CFG)
    assert s0.is_zero()
    closed = exterior_derivative(PolyForm.scalar(3, X * X * Y))
    _, s1 = variational_split(randgen.form(rng, 3, 1), closed, CFG)
    assert s1.is_zero()


def test_sign_fault_breaks_identity():
    rng = random.Random(4)
    g, alpha = randgen.form(rng, 3, 1), randgen.form(rng, 3, 1)
    bad = ElectroConfig(3, 1, sign_fault=True)
    assert power_chain_identity(CUBE, g, alpha, CFG).holds
    with pytest.raises(IdentityViolation):
        power_chain_identity(CUBE, g, alpha, bad)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_power_chain_matches_sympy_bulk(seed):
    rng = random.Random(seed)
    d = rng.choice([3, 4])
    r = rng.randint(0, d - 2)
    cfg = ElectroConfig(d, r)
    g, alpha = randgen.form(rng, d, d - r - 1, 2), randgen.form(rng, d, r, 2)
    pc = power_chain_identity(kuhn_box(d, 1), g, alpha, cfg)
    assert sympy.Rational(pc.bulk) == sympy_box_bulk(wedge(g, alpha))


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_decomposition_and_variational_power(seed):
    rng = random.Random(seed)
    d = rng.choice([3, 4])
    r = rng.randint(0, d - 2)
    cfg = ElectroConfig(d, r)
    g, alpha = randgen.form(rng, d, d - r - 1, 2), randgen.form(rng, d, r, 2)
    s0, s1 = variational_split(g, alpha, cfg)
    assert s0 + s1 == exterior_derivative(wedge(g, alpha))
    S = variational_stress(g, cfg)
    assert S.density(alpha) == s0 + s1
    K = kuhn_box(d, 1)
    assert power_variational(K, S, alpha) == power_boundary_form(K, None, maxwell_traction(g, cfg), alpha)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_discrete_power_chain(seed):
    rng = random.Random(seed)
    d = rng.choice([2, 3])
    r = rng.randint(0, d - 2) if d > 2 else 0
    cfg = ElectroConfig(d, r)
    K = randgen.complex_(rng, d, max_top=40, flip=False)
    g = randgen.cochain(rng, K, d - r - 1)
    alpha = randgen.cochain(rng, K, r)
    assert power_chain_identity_discrete(K, g, alpha, cfg).holds
    gs, als = de_rham(randgen.form(rng, d, d - r - 1, 2), K), de_rham(randgen.form(rng, d, r, 2), K)
    assert power_chain_identity_discrete(K, gs, als, cfg).holds
