"""Generalized electrodynamics: the constitutive law sigma(alpha) = g ^ alpha.

``g`` is the (d-r-1)-form generalizing the Maxwell 2-form, ``alpha`` an
r-form variation of the potential.  Every formula takes its sign
``(-1)^(d-r-1)`` from :attr:`ElectroConfig.sign`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .cochain import Cochain, coboundary, cup, pair
from .complex import DegreeError, SimplicialComplex, boundary_chain, region_chain
from .smoothform import (
    PolyForm,
    PolyMultivectorField,
    exterior_derivative,
    integrate_chain,
    wedge,
)
from .stress import TractionStressField, VariationalStress


class IdentityViolation(AssertionError):
    """An identity that must hold exactly was found to fail."""


@dataclass(frozen=True)
class ElectroConfig:
    """Spacetime dimension ``d`` and potential degree ``r`` (``0 <= r <= d-1``).

    ``sign_fault`` flips the sign on purpose; it exists only so the
    verification suites can run a negative control.
    """

    d: int
    r: int
    sign_fault: bool = False

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be positive")
        if not 0 <= self.r <= self.d - 1:
            raise ValueError(f"potential degree r={self.r} must satisfy 0 <= r <= d-1={self.d - 1}")

    @property
    def sign(self) -> int:
        s = -1 if (self.d - self.r - 1) % 2 else 1
        return -s if self.sign_fault else s

    @property
    def maxwell_degree(self) -> int:
        return self.d - self.r - 1


def _check_g(g, cfg: ElectroConfig):
    if g.degree != cfg.maxwell_degree:
        raise DegreeError(f"Maxwell form must have degree d-r-1={cfg.maxwell_degree}, got {g.degree}")


def _check_alpha(alpha, cfg: ElectroConfig):
    if alpha.degree != cfg.r:
        raise DegreeError(f"potential variation must have degree r={cfg.r}, got {alpha.degree}")


def _check_dims(cfg: ElectroConfig, *forms: PolyForm):
    for f in forms:
        if f.dim != cfg.d:
            raise DegreeError(f"form on R^{f.dim} in a {cfg.d}-dimensional configuration")


def maxwell_traction(g: PolyForm, cfg: ElectroConfig) -> TractionStressField:
    """Traction stress ``alpha -> g ^ alpha`` as (r-vector, (d-1)-form) terms.

    Writing ``alpha = sum_I alpha_I dx^I`` gives
    ``g ^ alpha = sum_I <alpha, d/dx^I> (g ^ dx^I)``.
    """
    _check_g(g, cfg)
    _check_dims(cfg, g)
    terms = []
    if g.terms:
        for idx in combinations(range(cfg.d), cfg.r):
            beta = wedge(g, PolyForm.basis(cfg.d, idx))
            if not beta.is_zero():
                terms.append((PolyMultivectorField.basis(cfg.d, idx), beta))
    return TractionStressField(cfg.d, cfg.r, tuple(terms))


@dataclass(frozen=True)
class FieldStrengths:
    """``F = d alpha`` (Faraday-like) and ``J = d g`` (charge-current-like)."""

    F: PolyForm
    J: PolyForm


def _closed(form) -> bool:
    if form.degree >= form.dim:
        return True
    return exterior_derivative(form).is_zero()


def field_strengths(alpha: PolyForm, g: PolyForm, cfg: ElectroConfig) -> FieldStrengths:
    """Compute ``F`` and ``J`` and confirm both are closed.

    Raises:
        IdentityViolation: if ``dF`` or ``dJ`` is nonzero.
    """
    _check_alpha(alpha, cfg)
    _check_g(g, cfg)
    _check_dims(cfg, alpha, g)
    F = exterior_derivative(alpha)
    J = exterior_derivative(g)
    if not _closed(F):
        raise IdentityViolation("dF != 0")
    if not _closed(J):
        raise IdentityViolation("dJ != 0")
    return FieldStrengths(F, J)


@dataclass(frozen=True)
class PowerChain:
    """The four lines of the power identity for one region and one variation."""

    boundary: object      # int_{dR} g ^ alpha
    bulk: object          # int_R d(g ^ alpha)
    current_term: object  # int_R dg ^ alpha
    field_term: object    # int_R g ^ d alpha
    sign: int

    @property
    def split(self):
        return self.current_term + self.sign * self.field_term

    @property
    def holds(self) -> bool:
        return self.boundary == self.bulk == self.split


def power_chain_identity(R: SimplicialComplex, g: PolyForm, alpha: PolyForm,
                         cfg: ElectroConfig, *, check: bool = True) -> PowerChain:
    """Evaluate boundary, bulk and split power for smooth polynomial fields."""
    _check_alpha(alpha, cfg)
    _check_g(g, cfg)
    _check_dims(cfg, alpha, g)
    region = region_chain(R)
    flux = wedge(g, alpha)
    result = PowerChain(
        boundary=integrate_chain(flux, boundary_chain(region), R),
        bulk=integrate_chain(exterior_derivative(flux), region, R),
        current_term=integrate_chain(wedge(exterior_derivative(g), alpha), region, R),
        field_term=integrate_chain(wedge(g, exterior_derivative(alpha)), region, R),
        sign=cfg.sign,
    )
    if check and not result.holds:
        raise IdentityViolation(f"power chain broken: {result}")
    return result


def power_chain_identity_discrete(R: SimplicialComplex, g: Cochain, alpha: Cochain,
                                  cfg: ElectroConfig, *, check: bool = True) -> PowerChain:
    """Cochain version: cup product for the wedge, coboundary for d."""
    _check_alpha(alpha, cfg)
    _check_g(g, cfg)
    if R.dim != cfg.d:
        raise DegreeError("region dimension does not match the configuration")
    region = region_chain(R)
    flux = cup(g, alpha)
    result = PowerChain(
        boundary=pair(flux, boundary_chain(region)),
        bulk=pair(coboundary(flux), region),
        current_term=pair(cup(coboundary(g), alpha), region),
        field_term=pair(cup(g, coboundary(alpha)), region),
        sign=cfg.sign,
    )
    if check and not result.holds:
        raise IdentityViolation(f"discrete power chain broken: {result}")
    return result


def variational_split(g: PolyForm, alpha: PolyForm, cfg: ElectroConfig) -> tuple[PolyForm, PolyForm]:
    """``(S0(alpha), S1(d alpha)) = (J ^ alpha, sign * g ^ d alpha)``."""
    _check_alpha(alpha, cfg)
    _check_g(g, cfg)
    _check_dims(cfg, alpha, g)
    s0 = wedge(exterior_derivative(g), alpha)
    s1 = wedge(g, exterior_derivative(alpha)) * cfg.sign
    return s0, s1


def variational_stress(g: PolyForm, cfg: ElectroConfig, body=None) -> VariationalStress:
    """Variational stress of the Maxwell traction, optionally with a body force in S0."""
    _check_g(g, cfg)
    _check_dims(cfg, g)
    d, r = cfg.d, cfg.r
    s0, s1 = [], []
    if g.degree < d:
        J = exterior_derivative(g)
        if not J.is_zero():
            for idx in combinations(range(d), r):
                rho = wedge(J, PolyForm.basis(d, idx))
                if not rho.is_zero():
                    s0.append((PolyMultivectorField.basis(d, idx), rho))
    if g.terms:
        for idx in combinations(range(d), r + 1):
            rho = wedge(g, PolyForm.basis(d, idx)) * cfg.sign
            if not rho.is_zero():
                s1.append((PolyMultivectorField.basis(d, idx), rho))
    if body is not None:
        if body.dim != d or body.degree != r:
            raise DegreeError("body force does not match the configuration")
        s0.extend(body.terms)
    return VariationalStress(d, r, tuple(s0), tuple(s1))


def total_power(R: SimplicialComplex, g: PolyForm, alpha: PolyForm, cfg: ElectroConfig):
    """``F_R(alpha) = int_R J ^ alpha + sign * g ^ F``."""
    s0, s1 = variational_split(g, alpha, cfg)
    return integrate_chain(s0 + s1, region_chain(R), R)

