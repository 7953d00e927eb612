"""Classical vector calculus on Cartesian R^3, used to cross-check the forms engine.

Surface integrals ``int (u . n) dA`` are computed as integrals of the flux
2-form ``u1 dy^dz + u2 dz^dx + u3 dx^dy``, so no normals are needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .complex import SimplicialComplex, boundary_chain, region_chain
from .electro import ElectroConfig, IdentityViolation, field_strengths, total_power
from .poly import Poly
from .smoothform import PolyForm, integrate_chain

# 2-form basis identified with e1, e2, e3: (multi-index, sign)
_FLUX_BASIS = (((1, 2), 1), ((0, 2), -1), ((0, 1), 1))


def levi_civita(i: int, j: int, k: int) -> int:
    if len({i, j, k}) < 3:
        return 0
    return 1 if (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1


@dataclass(frozen=True)
class PolyVectorField:
    components: tuple[Poly, Poly, Poly]

    def __post_init__(self):
        comps = tuple(c if isinstance(c, Poly) else Poly.const(3, c) for c in self.components)
        if len(comps) != 3 or any(c.nvars != 3 for c in comps):
            raise ValueError("a vector field on R^3 needs three polynomials in 3 variables")
        object.__setattr__(self, "components", comps)

    @classmethod
    def zero(cls) -> "PolyVectorField":
        return cls((Poly.zero(3),) * 3)

    def __getitem__(self, i: int) -> Poly:
        return self.components[i]

    def __add__(self, other: "PolyVectorField") -> "PolyVectorField":
        return PolyVectorField(tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "PolyVectorField") -> "PolyVectorField":
        return PolyVectorField(tuple(a - b for a, b in zip(self.components, other.components)))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)


@dataclass(frozen=True)
class SkewStressField:
    """3x3 matrix of polynomials with ``sigma[i][j] == -sigma[j][i]``."""

    matrix: tuple[tuple[Poly, ...], ...]

    def __post_init__(self):
        m = tuple(
            tuple(c if isinstance(c, Poly) else Poly.const(3, c) for c in row) for row in self.matrix
        )
        if len(m) != 3 or any(len(row) != 3 for row in m):
            raise ValueError("stress must be 3x3")
        for i in range(3):
            for j in range(3):
                if m[i][j] != -m[j][i]:
                    raise ValueError(f"stress is not skew-symmetric at ({i}, {j})")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_upper(cls, s12, s13, s23) -> "SkewStressField":
        z = Poly.zero(3)
        s12, s13, s23 = (c if isinstance(c, Poly) else Poly.const(3, c) for c in (s12, s13, s23))
        return cls(((z, s12, s13), (-s12, z, s23), (-s13, -s23, z)))

    def transpose_apply(self, w: PolyVectorField) -> PolyVectorField:
        """``(sigma^T w)_i = sum_j sigma_ji w_j``."""
        return PolyVectorField(tuple(
            sum((self.matrix[j][i] * w[j] for j in range(3)), Poly.zero(3)) for i in range(3)
        ))


def axial_vector(sigma: SkewStressField) -> PolyVectorField:
    """``g_p = 1/2 eps_pjk sigma_jk``, so that ``sigma^T w = g x w``."""
    half = Fraction(1, 2)
    comps = []
    for p in range(3):
        acc = Poly.zero(3)
        for j in range(3):
            for k in range(3):
                e = levi_civita(p, j, k)
                if e:
                    acc = acc + sigma.matrix[j][k] * (half * e)
        comps.append(acc)
    return PolyVectorField(tuple(comps))


def cross(a: PolyVectorField, b: PolyVectorField) -> PolyVectorField:
    return PolyVectorField((
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ))


def dot(a: PolyVectorField, b: PolyVectorField) -> Poly:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def gradient(f: Poly) -> PolyVectorField:
    return PolyVectorField(tuple(f.diff(i) for i in range(3)))


def curl(v: PolyVectorField) -> PolyVectorField:
    return PolyVectorField((
        v[2].diff(1) - v[1].diff(2),
        v[0].diff(2) - v[2].diff(0),
        v[1].diff(0) - v[0].diff(1),
    ))


def div(v: PolyVectorField) -> Poly:
    return v[0].diff(0) + v[1].diff(1) + v[2].diff(2)


def flux_form(u: PolyVectorField) -> PolyForm:
    """2-form whose integral over an oriented surface is the flux of ``u``."""
    return PolyForm(3, 2, {idx: u[i] * s for i, (idx, s) in enumerate(_FLUX_BASIS)})


def volume_form(f: Poly) -> PolyForm:
    return PolyForm(3, 3, {(0, 1, 2): f})


def one_form(v: PolyVectorField) -> PolyForm:
    """Cartesian identification ``v -> v1 dx + v2 dy + v3 dz``."""
    return PolyForm(3, 1, {(i,): v[i] for i in range(3)})


def vector_from_two_form(F: PolyForm) -> PolyVectorField:
    """Inverse of :func:`flux_form`."""
    return PolyVectorField(tuple(
        F.terms.get(idx, Poly.zero(3)) * s for idx, s in _FLUX_BASIS
    ))


@dataclass(frozen=True)
class MagnetoPower:
    surface: Fraction      # int_{dR} (g x w) . n dA
    divergence: Fraction   # int_R div(g x w) dV
    two_term: Fraction     # int_R (curl g) . w dV - int_R g . (curl w) dV
    current_form: Fraction # int_R J . w dV - int_R g . f dV with J = curl g, f = curl w

    @property
    def holds(self) -> bool:
        return self.surface == self.divergence == self.two_term == self.current_form


def power_magneto(R: SimplicialComplex, g: PolyVectorField, w: PolyVectorField,
                  *, check: bool = True) -> MagnetoPower:
    """The classical power of a skew stress with axial vector ``g`` on velocity ``w``."""
    if R.ambient_dim != 3 or R.dim != 3:
        raise ValueError("magnetostatics lives on a 3-dimensional region in R^3")
    region = region_chain(R)
    gxw = cross(g, w)
    J = curl(g)
    f = curl(w)
    vol = lambda p: integrate_chain(volume_form(p), region, R)  # noqa: E731
    result = MagnetoPower(
        surface=integrate_chain(flux_form(gxw), boundary_chain(region), R),
        divergence=vol(div(gxw)),
        two_term=vol(dot(curl(g), w)) - vol(dot(g, curl(w))),
        current_form=vol(dot(J, w) - dot(g, f)),
    )
    if check and not result.holds:
        raise IdentityViolation(f"magnetostatic power expressions disagree: {result}")
    return result


@dataclass(frozen=True)
class CrosscheckReport:
    magneto: MagnetoPower
    forms_power: Fraction
    faraday_matches_curl: bool
    current_matches_curl: bool

    @property
    def holds(self) -> bool:
        return (self.magneto.holds and self.forms_power == self.magneto.surface
                and self.faraday_matches_curl and self.current_matches_curl)


def crosscheck_with_forms(R: SimplicialComplex, g: PolyVectorField, w: PolyVectorField,
                          *, cfg: ElectroConfig | None = None, check: bool = True) -> CrosscheckReport:
    """Compare the vector-calculus power with the d=3, r=1 forms power."""
    cfg = cfg or ElectroConfig(3, 1)
    g_form, alpha = one_form(g), one_form(w)
    fs = field_strengths(alpha, g_form, cfg)
    report = CrosscheckReport(
        magneto=power_magneto(R, g, w, check=False),
        forms_power=total_power(R, g_form, alpha, cfg),
        faraday_matches_curl=vector_from_two_form(fs.F) == curl(w),
        current_matches_curl=vector_from_two_form(fs.J) == curl(g),
    )
    if check and not report.holds:
        raise IdentityViolation(f"forms/vector-calculus crosscheck failed: {report}")
    return report


def vector_field(components: Sequence) -> PolyVectorField:
    return PolyVectorField(tuple(components))
