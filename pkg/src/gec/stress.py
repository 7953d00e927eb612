"""Body forces, traction stresses and the power they expend on a region.

The value bundle is the bundle of r-forms: a generalized velocity ``v`` is a
PolyForm of degree r.  Stresses and body forces are finite sums of
(r-vector field, form) pairs acting by ``v -> sum <v, X> * beta``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .affine import AffineMap
from .complex import DegreeError, Key, SimplicialComplex, boundary_chain, boundary_subcomplex, region_chain
from .numeric import DEFAULT_QUADRATURE_ORDER, evaluate_coeff, simplex_rule
from .smoothform import (
    PolyForm,
    PolyMultivectorField,
    dual_pairing,
    exterior_derivative,
    integrate_chain,
    pullback,
)

Term = tuple[PolyMultivectorField, PolyForm]


def _check_terms(terms, dim: int, degree: int, form_degree: int, what: str):
    for X, beta in terms:
        if X.dim != dim or beta.dim != dim:
            raise DegreeError(f"{what} term lives in the wrong dimension")
        if X.degree != degree:
            raise DegreeError(f"{what} multivector has degree {X.degree}, expected {degree}")
        if beta.degree != form_degree:
            raise DegreeError(f"{what} form has degree {beta.degree}, expected {form_degree}")


def _act(terms, v: PolyForm, dim: int, degree: int, out_degree: int) -> PolyForm:
    if v.dim != dim or v.degree != degree:
        raise DegreeError(f"expected an {degree}-form on R^{dim}, got degree {v.degree} on R^{v.dim}")
    total = PolyForm.zero(dim, out_degree)
    for X, beta in terms:
        c = dual_pairing(v, X)
        if not c.is_zero():
            total = total + beta * c
    return total


@dataclass(frozen=True)
class TractionStressField:
    """Section of L(Lambda^r, Lambda^{d-1}) as ``sum_i (X_i, beta_i)``."""

    dim: int
    degree: int
    terms: tuple[Term, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        _check_terms(self.terms, self.dim, self.degree, self.dim - 1, "traction stress")

    def __call__(self, v: PolyForm) -> PolyForm:
        return apply_traction(self, v)


@dataclass(frozen=True)
class BodyForceField:
    """Section of L(Lambda^r, Lambda^d) as ``sum_i (X_i, rho_i)``."""

    dim: int
    degree: int
    terms: tuple[Term, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        _check_terms(self.terms, self.dim, self.degree, self.dim, "body force")

    def __call__(self, v: PolyForm) -> PolyForm:
        return _act(self.terms, v, self.dim, self.degree, self.dim)


@dataclass(frozen=True)
class VariationalStress:
    """Decomposed variational stress: ``S(j v) = S0(v) + S1(dv)``.

    ``s0`` pairs with r-forms, ``s1`` with (r+1)-forms; both produce d-forms.
    """

    dim: int
    degree: int
    s0: tuple[Term, ...] = ()
    s1: tuple[Term, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "s0", tuple(self.s0))
        object.__setattr__(self, "s1", tuple(self.s1))
        _check_terms(self.s0, self.dim, self.degree, self.dim, "S0")
        _check_terms(self.s1, self.dim, self.degree + 1, self.dim, "S1")

    def value_part(self, v: PolyForm) -> PolyForm:
        return _act(self.s0, v, self.dim, self.degree, self.dim)

    def derivative_part(self, w: PolyForm) -> PolyForm:
        return _act(self.s1, w, self.dim, self.degree + 1, self.dim)

    def density(self, v: PolyForm) -> PolyForm:
        """Power density ``S0(v) + S1(dv)``."""
        out = self.value_part(v)
        if self.s1 and self.degree < self.dim:
            out = out + self.derivative_part(exterior_derivative(v))
        return out


def zero_body_force(dim: int, degree: int) -> BodyForceField:
    return BodyForceField(dim, degree, ())


def apply_traction(sigma: TractionStressField, v: PolyForm) -> PolyForm:
    """Flux form ``sigma(v) = sum <v, X_i> beta_i`` of degree d-1."""
    return _act(sigma.terms, v, sigma.dim, sigma.degree, sigma.dim - 1)


def cauchy_traction(
    sigma: TractionStressField,
    boundary: tuple[SimplicialComplex, dict[Key, AffineMap]],
    v: PolyForm,
) -> dict[Key, PolyForm]:
    """Surface traction ``t = iota_D^* o sigma`` evaluated at ``v``, face by face.

    Each face's form lives on the face's own chart (the parameter domain of
    its oriented embedding), so integrating it over the standard
    (d-1)-simplex gives the face's share of the boundary power.
    """
    D, embeddings = boundary
    if D.dim != sigma.dim - 1:
        raise DegreeError("traction needs a boundary complex of dimension d-1")
    flux = apply_traction(sigma, v)
    out = {}
    for s in D.top:
        phi = embeddings[s.vertices]
        form = pullback(flux, phi)
        if D.dim == 0 and s.orientation_sign < 0:
            form = -form
        out[s.vertices] = form
    return out


def integrate_standard(form: PolyForm, order: int = DEFAULT_QUADRATURE_ORDER):
    """Integral of a top-degree form on R^k over the standard k-simplex."""
    k = form.dim
    if form.degree != k:
        raise DegreeError("only top-degree forms integrate over the standard simplex")
    f = form.terms.get(tuple(range(k)))
    if form.is_exact():
        if f is None:
            return Fraction(0)
        return f.integrate_standard_simplex() if k else f(())
    pts, wts = simplex_rule(k, order)
    return float(np.dot(wts, evaluate_coeff(f, pts))) if f is not None else 0.0


def _check_compatible(R: SimplicialComplex, b: BodyForceField | None, sigma: TractionStressField | None, v):
    for obj in (b, sigma):
        if obj is not None and (obj.dim != R.ambient_dim or obj.degree != v.degree):
            raise DegreeError("stress, body force, velocity and region disagree on (d, r)")
    if v.dim != R.ambient_dim or R.dim != R.ambient_dim:
        raise DegreeError("region must be a full-dimensional complex in the velocity's chart")


def power_boundary_form(R: SimplicialComplex, b: BodyForceField | None,
                        sigma: TractionStressField | None, v: PolyForm, *,
                        order: int = DEFAULT_QUADRATURE_ORDER):
    """``F_R(v) = int_R b(v) + int_{dR} iota^*(sigma(v))``."""
    _check_compatible(R, b, sigma, v)
    region = region_chain(R)
    total = Fraction(0) if v.is_exact() else 0.0
    if b is not None and b.terms:
        total += integrate_chain(b(v), region, R, order=order)
    if sigma is not None and sigma.terms:
        total += integrate_chain(apply_traction(sigma, v), boundary_chain(region), R, order=order)
    return total


def power_bulk_form(R: SimplicialComplex, b: BodyForceField | None,
                    sigma: TractionStressField | None, v: PolyForm, *,
                    order: int = DEFAULT_QUADRATURE_ORDER):
    """``F_R(v) = int_R b(v) + d(sigma(v))``."""
    _check_compatible(R, b, sigma, v)
    d = R.ambient_dim
    density = PolyForm.zero(d, d)
    if b is not None and b.terms:
        density = density + b(v)
    if sigma is not None and sigma.terms:
        density = density + exterior_derivative(apply_traction(sigma, v))
    return integrate_chain(density, region_chain(R), R, order=order)


def power_variational(R: SimplicialComplex, S: VariationalStress, v: PolyForm, *,
                      order: int = DEFAULT_QUADRATURE_ORDER):
    """``int_R S(j^1 v)`` for a decomposed variational stress."""
    if S.dim != R.ambient_dim or S.degree != v.degree:
        raise DegreeError("variational stress and velocity disagree on (d, r)")
    return integrate_chain(S.density(v), region_chain(R), R, order=order)


def power_from_tractions(R: SimplicialComplex, b: BodyForceField | None,
                         sigma: TractionStressField, v: PolyForm):
    """Boundary power assembled from :func:`cauchy_traction` face forms."""
    total = Fraction(0)
    if b is not None and b.terms:
        total += integrate_chain(b(v), region_chain(R), R)
    for form in cauchy_traction(sigma, boundary_subcomplex(R), v).values():
        total += integrate_standard(form)
    return total
