"""Differential forms and r-vector fields with polynomial coefficients on one chart.

A form of degree r on R^d is stored as ``{I: f_I}`` with ``I`` a strictly
increasing tuple of coordinate indices standing for ``dx^I``.  Coefficients
are :class:`~gec.poly.Poly` in exact mode; float-mode forms may instead carry
:class:`~gec.numeric.ExprCoeff` coefficients.
"""

from __future__ import annotations

import warnings
from functools import lru_cache
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .affine import AffineMap, minor
from .cochain import EXACT, FLOAT, Cochain
from .complex import DegreeError, SimplicialComplex, permutation_sign
from .numeric import DEFAULT_QUADRATURE_ORDER, ExprCoeff, evaluate_coeff, simplex_rule
from .poly import Poly

MultiIndex = tuple[int, ...]


class DegenerateSimplexWarning(UserWarning):
    """An integration domain collapsed to lower dimension; its integral is 0."""


def _coeff(d: int, c):
    if isinstance(c, (Poly, ExprCoeff)):
        if c.nvars != d:
            raise ValueError(f"coefficient in {c.nvars} variables on a {d}-dimensional chart")
        return c
    return Poly.const(d, c)


def _merge_sign(a: MultiIndex, b: MultiIndex) -> int:
    """Sign of ``dx^a ^ dx^b`` relative to ``dx^{sorted(a+b)}``; 0 on overlap."""
    if set(a) & set(b):
        return 0
    inversions = sum(1 for i in a for j in b if i > j)
    return -1 if inversions % 2 else 1


class _Graded:
    """Shared storage for forms and multivector fields."""

    __slots__ = ("dim", "degree", "terms")

    def __init__(self, dim: int, degree: int, terms: Mapping[Sequence[int], object] | None = None):
        if degree < 0 or degree > dim:
            raise DegreeError(f"degree {degree} outside 0..{dim}")
        self.dim = dim
        self.degree = degree
        out = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or any(b <= a for a, b in zip(idx, idx[1:])):
                raise ValueError(f"multi-index {idx} is not strictly increasing of length {degree}")
            if any(i < 0 or i >= dim for i in idx):
                raise ValueError(f"multi-index {idx} out of range for dimension {dim}")
            c = _coeff(dim, c)
            if idx in out:
                c = out[idx] + c
            if c.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = c
        self.terms = out

    @classmethod
    def _raw(cls, dim, degree, terms):
        f = cls.__new__(cls)
        f.dim, f.degree, f.terms = dim, degree, terms
        return f

    def is_zero(self) -> bool:
        return not self.terms

    def is_exact(self) -> bool:
        return all(isinstance(c, Poly) for c in self.terms.values())

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        if not self.terms and not other.terms:
            return self.dim == other.dim
        return (self.dim, self.degree) == (other.dim, other.degree) and self.terms == other.terms

    def __repr__(self) -> str:
        name = type(self).__name__
        body = " + ".join(f"({c})*{list(i)}" for i, c in sorted(self.terms.items())) or "0"
        return f"{name}[d={self.dim}, r={self.degree}]({body})"

    def _check(self, other):
        if type(other) is not type(self) or other.dim != self.dim or other.degree != self.degree:
            raise DegreeError("operands differ in type, dimension or degree")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for idx, c in other.terms.items():
            v = out[idx] + c if idx in out else c
            if v.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = v
        return type(self)._raw(self.dim, self.degree, out)

    def __neg__(self):
        return type(self)._raw(self.dim, self.degree, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        """Multiply by a number or by a scalar function (Poly/ExprCoeff)."""
        out = {}
        for idx, c in self.terms.items():
            v = c * scalar
            if not v.is_zero():
                out[idx] = v
        return type(self)._raw(self.dim, self.degree, out)

    __rmul__ = __mul__


class PolyForm(_Graded):
    """Differential r-form on R^d with polynomial coefficients."""

    __slots__ = ()

    @classmethod
    def zero(cls, dim: int, degree: int) -> "PolyForm":
        if degree < 0 or degree > dim:
            raise DegreeError(f"degree {degree} outside 0..{dim}")
        return cls._raw(dim, degree, {})

    @classmethod
    def scalar(cls, dim: int, f) -> "PolyForm":
        return cls(dim, 0, {(): f})

    @classmethod
    def basis(cls, dim: int, idx: Sequence[int], coeff=1) -> "PolyForm":
        """``coeff * dx^{i1} ^ ... ^ dx^{ir}`` for any distinct indices (sign folded in)."""
        idx = list(idx)
        if len(set(idx)) != len(idx):
            return cls.zero(dim, len(idx))
        return cls(dim, len(idx), {tuple(sorted(idx)): _coeff(dim, coeff) * permutation_sign(idx)})

    def __xor__(self, other: "PolyForm") -> "PolyForm":
        return wedge(self, other)


class PolyMultivectorField(_Graded):
    """r-vector field on R^d; the basis ``I`` stands for ``d/dx^{i1} ^ ... ^ d/dx^{ir}``."""

    __slots__ = ()

    @classmethod
    def basis(cls, dim: int, idx: Sequence[int], coeff=1) -> "PolyMultivectorField":
        idx = list(idx)
        if len(set(idx)) != len(idx):
            return cls._raw(dim, len(idx), {})
        return cls(dim, len(idx), {tuple(sorted(idx)): _coeff(dim, coeff) * permutation_sign(idx)})


def coordinate(dim: int, i: int) -> Poly:
    """The coordinate function ``x^i`` on R^dim."""
    return Poly.var(dim, i)


def dx(dim: int, i: int) -> PolyForm:
    return PolyForm.basis(dim, (i,))


def dual_pairing(form: PolyForm, field: PolyMultivectorField):
    """Metric-free pairing ``<form, field>`` of an r-form with an r-vector field."""
    if form.dim != field.dim or form.degree != field.degree:
        raise DegreeError("pairing needs a form and a multivector of equal degree")
    total = Poly.zero(form.dim)
    for idx, c in form.terms.items():
        x = field.terms.get(idx)
        if x is not None:
            total = c * x + total
    return total


def wedge(a: PolyForm, b: PolyForm) -> PolyForm:
    """Exterior product; graded-commutative and associative."""
    if a.dim != b.dim:
        raise ValueError(f"cannot wedge forms on R^{a.dim} and R^{b.dim}")
    p, q = a.degree, b.degree
    if p + q > a.dim:
        raise DegreeError(f"wedge of degrees {p} and {q} exceeds dimension {a.dim}")
    out: dict[MultiIndex, object] = {}
    for i, f in a.terms.items():
        for j, g in b.terms.items():
            s = _merge_sign(i, j)
            if not s:
                continue
            k = tuple(sorted(i + j))
            v = f * g if s > 0 else -(f * g)
            out[k] = out[k] + v if k in out else v
    return PolyForm._raw(a.dim, p + q, {k: v for k, v in out.items() if not v.is_zero()})


def exterior_derivative(a: PolyForm) -> PolyForm:
    """``d(f dx^I) = sum_j (df/dx^j) dx^j ^ dx^I``."""
    if a.degree >= a.dim:
        raise DegreeError(f"d of a top-degree ({a.degree}) form is undefined")
    out: dict[MultiIndex, object] = {}
    for idx, f in a.terms.items():
        for j in range(a.dim):
            if j in idx:
                continue
            df = f.diff(j)
            if df.is_zero():
                continue
            pos = sum(1 for i in idx if i < j)
            k = idx[:pos] + (j,) + idx[pos:]
            v = df if pos % 2 == 0 else -df
            out[k] = out[k] + v if k in out else v
    return PolyForm._raw(a.dim, a.degree + 1, {k: v for k, v in out.items() if not v.is_zero()})


def pullback(a: PolyForm, phi: AffineMap) -> PolyForm:
    """Pull a form on R^d back along an affine map R^k -> R^d."""
    if a.dim != phi.target_dim:
        raise ValueError(f"form on R^{a.dim} cannot be pulled back along a map into R^{phi.target_dim}")
    k, r = phi.source_dim, a.degree
    if r > k:
        raise DegreeError(f"cannot pull a {r}-form back to a {k}-dimensional source")
    cols = phi.directions
    out: dict[MultiIndex, object] = {}
    for idx, f in a.terms.items():
        g = f.compose_affine(phi.translation, cols)
        if g.is_zero():
            continue
        for jdx in combinations(range(k), r):
            m = minor([cols[j] for j in jdx], idx) if r else Fraction(1)
            if not m:
                continue
            v = g * m
            out[jdx] = out[jdx] + v if jdx in out else v
    return PolyForm._raw(k, r, {j: v for j, v in out.items() if not v.is_zero()})


class _SimplexIntegrator:
    """Exact integrals of monomials over one affine simplex, memoized.

    ``monomial(e)`` is the integral of ``x^e o phi`` over the standard
    simplex; powers of the coordinate images are shared between monomials.
    """

    def __init__(self, phi: AffineMap):
        self.phi = phi
        k = phi.source_dim
        self.images = [
            Poly.linear(phi.translation[j], [phi.directions[i][j] for i in range(k)])
            for j in range(phi.target_dim)
        ]
        self.powers = [[Poly.const(k, 1)] for _ in self.images]
        self.cache: dict[tuple[int, ...], Fraction] = {}
        self.minors: dict[MultiIndex, Fraction] = {}

    def minor(self, idx: MultiIndex) -> Fraction:
        m = self.minors.get(idx)
        if m is None:
            m = minor(self.phi.directions, idx) if idx else Fraction(1)
            self.minors[idx] = m
        return m

    def monomial(self, exp: tuple[int, ...]) -> Fraction:
        v = self.cache.get(exp)
        if v is None:
            k = self.phi.source_dim
            prod = Poly.const(k, 1)
            for j, e in enumerate(exp):
                if e:
                    pw = self.powers[j]
                    while len(pw) <= e:
                        pw.append(pw[-1] * self.images[j])
                    prod = prod * pw[e]
            v = prod.integrate_standard_simplex()
            self.cache[exp] = v
        return v

    def integrate(self, a: PolyForm) -> Fraction:
        total = Fraction(0)
        for idx, f in a.terms.items():
            m = self.minor(idx)
            if not m:
                continue
            s = Fraction(0)
            for exp, c in f.terms.items():
                s += c * self.monomial(exp)
            total += m * s
        return total


@lru_cache(maxsize=8192)
def _integrator(translation: tuple, directions: tuple) -> _SimplexIntegrator:
    return _SimplexIntegrator(AffineMap(translation, directions))


def integrate_simplex(a: PolyForm, points: Sequence[Sequence], *,
                      order: int = DEFAULT_QUADRATURE_ORDER):
    """Integral of a k-form over the oriented simplex ``points[0], ..., points[k]``.

    Exact (a Fraction) for polynomial coefficients; otherwise evaluated with
    a collapsed Gauss rule exact for degree ``order`` and returned as float.
    A degenerate simplex integrates to zero and emits
    :class:`DegenerateSimplexWarning`.
    """
    k = len(points) - 1
    if a.degree != k:
        raise DegreeError(f"cannot integrate a {a.degree}-form over a {k}-simplex")
    phi = AffineMap.from_points(points)
    if phi.target_dim != a.dim:
        raise ValueError("simplex does not live in the form's chart")
    if not phi.is_embedding():
        warnings.warn(f"degenerate {k}-simplex", DegenerateSimplexWarning, stacklevel=2)
        return Fraction(0) if a.is_exact() else 0.0
    if a.is_exact():
        if k == 0:
            f = a.terms.get(())
            return f(phi.translation) if f is not None else Fraction(0)
        return _integrator(phi.translation, phi.directions).integrate(a)
    return _quadrature(a, phi, order)


def _quadrature(a: PolyForm, phi: AffineMap, order: int) -> float:
    k = phi.source_dim
    pts, wts = simplex_rule(k, order)
    base = np.array([float(x) for x in phi.translation])
    jac = np.array([[float(x) for x in v] for v in phi.directions]).reshape(k, phi.target_dim)
    xs = base + pts @ jac
    total = 0.0
    for idx, f in a.terms.items():
        m = float(minor(phi.directions, idx)) if idx else 1.0
        if m:
            total += m * float(np.dot(wts, evaluate_coeff(f, xs)))
    return total


def de_rham(a: PolyForm, K: SimplicialComplex, *, order: int = DEFAULT_QUADRATURE_ORDER) -> Cochain:
    """Integrate a k-form over every canonically oriented k-simplex of ``K``."""
    if a.dim != K.ambient_dim:
        raise ValueError("form and complex live in different dimensions")
    mode = EXACT if a.is_exact() else FLOAT
    if a.degree > K.dim:
        raise DegreeError(f"complex has no {a.degree}-simplices")
    values = {}
    if a.terms:
        for key in K.simplices_of_dim(a.degree):
            v = integrate_simplex(a, K.points(key), order=order)
            if v:
                values[key] = v
    return Cochain._raw(a.degree, K, values, mode)


def integrate_chain(a: PolyForm, chain, K: SimplicialComplex | None = None, *,
                    order: int = DEFAULT_QUADRATURE_ORDER):
    """``sum_s c(s) * integral_s a`` over a chain of embedded simplices."""
    K = K or chain.complex
    if K is None:
        raise ValueError("chain has no embedding; pass the complex explicitly")
    if chain.degree != a.degree:
        raise DegreeError(f"cannot integrate a {a.degree}-form over a {chain.degree}-chain")
    exact = a.is_exact()
    total = Fraction(0) if exact else 0.0
    if not a.terms:
        return total
    for key, coef in chain.coeffs.items():
        v = integrate_simplex(a, K.points(key), order=order)
        total += coef * v if exact else float(coef) * v
    return total
