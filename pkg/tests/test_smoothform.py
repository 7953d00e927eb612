import random
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gec import randgen
from gec.affine import AffineMap
from gec.cochain import coboundary
from gec.complex import DegreeError, boundary_chain, build_complex, region_chain
from gec.meshgen import kuhn_box
from gec.numeric import ExprCoeff
from gec.poly import Poly
from gec.smoothform import (
    DegenerateSimplexWarning,
    PolyForm,
    PolyMultivectorField,
    coordinate,
    de_rham,
    dual_pairing,
    dx,
    exterior_derivative,
    integrate_chain,
    integrate_simplex,
    pullback,
    wedge,
)

from oracles import simplex_integral

seeds = st.integers(min_value=0, max_value=10**6)
X, Y, Z = (coordinate(3, i) for i in range(3))


def test_basis_sign_rule():
    assert wedge(dx(3, 0), dx(3, 1)) == -wedge(dx(3, 1), dx(3, 0))
    assert PolyForm.basis(3, (1, 0)) == -PolyForm.basis(3, (0, 1))
    assert PolyForm.basis(3, (1, 1)).is_zero()


def test_wedge_examples():
    assert wedge(dx(3, 1) * X, dx(3, 2) * Y) == PolyForm(3, 2, {(1, 2): X * Y})
    assert wedge(dx(3, 1) * X, dx(3, 1)).is_zero()


def test_wedge_degree_overflow():
    with pytest.raises(DegreeError):
        wedge(PolyForm.basis(2, (0, 1)), dx(2, 0))


def test_exterior_derivative_examples():
    assert exterior_derivative(dx(3, 1) * X) == PolyForm.basis(3, (0, 1))
    assert exterior_derivative(PolyForm(3, 2, {(1, 2): X * Y})) == PolyForm(3, 3, {(0, 1, 2): Y})
    with pytest.raises(DegreeError):
        exterior_derivative(PolyForm.basis(3, (0, 1, 2)))


def test_pullback_to_face_x_equals_one():
    phi = AffineMap((1, 0, 0), ((0, 1, 0), (0, 0, 1)))
    assert pullback(PolyForm(3, 2, {(1, 2): X}), phi) == PolyForm.basis(2, (0, 1))


def test_pullback_identity():
    assert pullback(dx(3, 0), AffineMap.identity(3)) == dx(3, 0)


def test_pullback_degree_too_high():
    phi = AffineMap((0, 0, 0), ((1, 0, 0),))
    with pytest.raises(DegreeError):
        pullback(PolyForm.basis(3, (0, 1)), phi)


def test_dual_pairing():
    X_ = PolyMultivectorField.basis(3, (1,), X)
    assert dual_pairing(dx(3, 1) * Y, X_) == X * Y
    assert dual_pairing(dx(3, 0), X_).is_zero()


def test_integration_examples():
    tri = [(0, 0), (1, 0), (0, 1)]
    assert integrate_simplex(PolyForm.basis(2, (0, 1)), tri) == Fraction(1, 2)
    assert integrate_simplex(dx(2, 0), [(0, 0), (1, 0)]) == 1
    K = build_complex(2, tri, [[0, 1, 2]])
    x = coordinate(2, 0)
    omega = dx(2, 1) * x
    bd = boundary_chain(region_chain(K))
    assert integrate_chain(omega, bd, K) == Fraction(1, 2)
    assert integrate_chain(exterior_derivative(omega), region_chain(K)) == Fraction(1, 2)


def test_reversed_simplex_changes_sign():
    a = PolyForm.basis(2, (0, 1), coordinate(2, 0) + 1)
    assert integrate_simplex(a, [(0, 0), (0, 1), (1, 0)]) == -integrate_simplex(a, [(0, 0), (1, 0), (0, 1)])


def test_degenerate_simplex_warns_and_returns_zero():
    with pytest.warns(DegenerateSimplexWarning):
        v = integrate_simplex(PolyForm.basis(2, (0, 1)), [(0, 0), (1, 0), (2, 0)])
    assert v == 0


def test_zero_form_integrates_by_evaluation():
    f = PolyForm.scalar(2, coordinate(2, 0) * 3 + 1)
    assert integrate_simplex(f, [(Fraction(1, 3), 5)]) == 2


def test_de_rham_examples():
    K = build_complex(1, [(0,), (1,)], [[0, 1]])
    assert de_rham(dx(1, 0), K)[(0, 1)] == 1
    sq = kuhn_box(2, 1)
    assert de_rham(PolyForm.zero(2, 0), sq).is_zero()


def test_exact_integration_matches_sympy_oracle():
    rng = random.Random(11)
    for _ in range(12):
        d = rng.randint(1, 3)
        k = rng.randint(0, d)
        a = randgen.form(rng, d, k, max_degree=3)
        while True:
            pts = [tuple(randgen.rational(rng, 3, 3) for _ in range(d)) for _ in range(k + 1)]
            if AffineMap.from_points(pts).is_embedding():
                break
        assert integrate_simplex(a, pts) == simplex_integral(a, pts)


def test_float_coefficients_use_quadrature():
    a = PolyForm(2, 2, {(0, 1): ExprCoeff.parse(2, "exp(x)")})
    v = integrate_simplex(a, [(0, 0), (1, 0), (0, 1)], order=8)
    # integral of e^x over the unit triangle is e - 2
    assert v == pytest.approx(0.718281828459045, rel=1e-9)


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_graded_commutativity_and_associativity(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 4)
    p = rng.randint(0, d)
    q = rng.randint(0, d - p)
    s = rng.randint(0, d - p - q)
    a, b, c = (randgen.form(rng, d, k, max_degree=2) for k in (p, q, s))
    assert wedge(a, b) == wedge(b, a) * (-1) ** (p * q)
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_d_leibniz_and_nilpotent(seed):
    rng = random.Random(seed)
    d = rng.randint(2, 4)
    p = rng.randint(0, d - 1)
    q = rng.randint(0, d - 1 - p)
    a, b = randgen.form(rng, d, p, max_degree=4), randgen.form(rng, d, q, max_degree=4)
    lhs = exterior_derivative(wedge(a, b))
    assert lhs == wedge(exterior_derivative(a), b) + wedge(a, exterior_derivative(b)) * (-1) ** p
    if p < d - 1:
        assert exterior_derivative(exterior_derivative(a)).is_zero()


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_pullback_is_algebra_morphism(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 4)
    phi = randgen.affine_map(rng, d)
    p = rng.randint(0, d)
    q = rng.randint(0, d - p)
    a, b = randgen.form(rng, d, p), randgen.form(rng, d, q)
    assert pullback(wedge(a, b), phi) == wedge(pullback(a, phi), pullback(b, phi))
    if p < d:
        assert pullback(exterior_derivative(a), phi) == exterior_derivative(pullback(a, phi))


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_de_rham_is_a_cochain_map(seed):
    rng = random.Random(seed)
    d = rng.randint(2, 3)
    K = randgen.complex_(rng, d, max_top=30)
    r = rng.randint(0, d - 1)
    a = randgen.form(rng, d, r, max_degree=3)
    assert de_rham(exterior_derivative(a), K) == coboundary(de_rham(a, K))


def test_forms_reject_bad_indices():
    with pytest.raises(ValueError):
        PolyForm(3, 1, {(3,): Poly.const(3, 1)})
    with pytest.raises(ValueError):
        PolyForm(3, 2, {(1, 0): Poly.const(3, 1)})


def test_no_warning_on_regular_simplex():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        integrate_simplex(dx(2, 0), [(0, 0), (1, 1)])
