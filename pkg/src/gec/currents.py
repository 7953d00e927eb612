"""De Rham currents carried by chains, with boundary and contraction.

A :class:`Current` is a chain followed by a sequence of operations; it is
evaluated extensionally on test forms (polynomial forms or cochains):

* boundary:     ``(dT)(psi) = T(d psi)``
* contraction:  ``(T _| phi)(omega) = T(phi ^ omega)``
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .cochain import Cochain, coboundary, cup, pair
from .complex import Chain, DegreeError, SimplicialComplex, boundary_chain, region_chain
from .electro import ElectroConfig, IdentityViolation, field_strengths, total_power
from .poly import Poly, monomials_up_to
from .smoothform import PolyForm, exterior_derivative, integrate_chain, wedge

BOUNDARY = "boundary"
CONTRACT = "contract"


@dataclass(frozen=True)
class Current:
    """``ops`` are applied to ``base`` left to right; each is ``(BOUNDARY, None)``
    or ``(CONTRACT, phi)``."""

    base: Chain
    complex: SimplicialComplex
    ops: tuple = ()

    @property
    def degree(self) -> int:
        k = self.base.degree
        for kind, phi in self.ops:
            k -= 1 if kind == BOUNDARY else phi.degree
        return k

    @property
    def contractions(self) -> tuple:
        return tuple(phi for kind, phi in self.ops if kind == CONTRACT)

    def __call__(self, omega):
        return evaluate(self, omega)


def current_from_chain(c: Chain, K: SimplicialComplex | None = None) -> Current:
    K = K or c.complex
    if K is None:
        raise ValueError("chain carries no complex; pass it explicitly")
    return Current(c, K)


def evaluate(T: Current, omega):
    """Apply the current to a PolyForm or a Cochain of matching degree."""
    if omega.degree != T.degree:
        raise DegreeError(f"a {T.degree}-current cannot act on a degree-{omega.degree} form")
    discrete = isinstance(omega, Cochain)
    for kind, phi in reversed(T.ops):
        if kind == BOUNDARY:
            omega = coboundary(omega) if discrete else exterior_derivative(omega)
        else:
            omega = cup(phi, omega) if discrete else wedge(phi, omega)
    if discrete:
        return pair(omega, T.base)
    return integrate_chain(omega, T.base, T.complex)


def boundary_current(T: Current) -> Current:
    """Boundary of a current.

    A bare chain current is mapped to the current of its boundary chain;
    anything else gets a deferred boundary, evaluated as ``T(d psi)``.
    """
    if T.degree < 1:
        raise DegreeError("a 0-current has no boundary")
    if not T.ops:
        return Current(boundary_chain(T.base), T.complex)
    return Current(T.base, T.complex, T.ops + ((BOUNDARY, None),))


def contract_current(T: Current, phi) -> Current:
    """``T _| phi`` for a p-form (or p-cochain) ``phi`` with ``p <= deg T``."""
    if phi.degree > T.degree:
        raise DegreeError(f"cannot contract a {T.degree}-current with a {phi.degree}-form")
    return Current(T.base, T.complex, T.ops + ((CONTRACT, phi),))


def monomial_test_forms(d: int, r: int, max_degree: int = 3):
    """Spanning family ``x^e dx^I`` of r-forms with coefficient degree <= max_degree."""
    for idx in combinations(range(d), r):
        for exp in monomials_up_to(d, max_degree):
            yield PolyForm(d, r, {idx: Poly.monomial(exp)})


@dataclass(frozen=True)
class ForceIdentityRow:
    alpha: object
    total: object            # F_R(alpha)
    boundary_form: object    # (dR _| g)(alpha)
    split_form: object       # (R _| J)(alpha) + sign * d(R _| g)(alpha)

    @property
    def holds(self) -> bool:
        return self.total == self.boundary_form == self.split_form


@dataclass(frozen=True)
class ForceIdentityReport:
    rows: tuple[ForceIdentityRow, ...]

    @property
    def holds(self) -> bool:
        return all(r.holds for r in self.rows)


def force_functional_identity(R: SimplicialComplex, g: PolyForm, alphas, cfg: ElectroConfig,
                              *, check: bool = True) -> ForceIdentityReport:
    """Check ``F_R = dR _| g = R _| J + sign * d(R _| g)`` on each test potential."""
    region = current_from_chain(region_chain(R), R)
    as_boundary = contract_current(boundary_current(region), g)
    rows = []
    J = None
    for alpha in alphas:
        if J is None:
            J = field_strengths(alpha, g, cfg).J
        split_current_term = contract_current(region, J)
        split_field_term = boundary_current(contract_current(region, g))
        rows.append(ForceIdentityRow(
            alpha=alpha,
            total=total_power(R, g, alpha, cfg),
            boundary_form=as_boundary(alpha),
            split_form=split_current_term(alpha) + cfg.sign * split_field_term(alpha),
        ))
    report = ForceIdentityReport(tuple(rows))
    if check and not report.holds:
        bad = next(r for r in rows if not r.holds)
        raise IdentityViolation(f"force functional identity fails at alpha={bad.alpha}: {bad}")
    return report
