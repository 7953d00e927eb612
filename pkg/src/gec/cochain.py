"""Discrete forms: cochains with coboundary, cup product, restriction and pairing."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .complex import Chain, ComplexError, DegreeError, Key, Simplex, SimplicialComplex
from .poly import as_fraction

EXACT = "exact"
FLOAT = "float"


def _scalar(value, mode: str):
    if mode == FLOAT:
        return float(value)
    return as_fraction(value)


class Cochain:
    """Degree-r cochain on a complex, stored sparsely (missing values are 0).

    Values are keyed by canonical (ascending) vertex tuples and refer to the
    canonically oriented simplex.
    """

    __slots__ = ("degree", "values", "complex", "scalar_mode")

    def __init__(self, degree: int, complex: SimplicialComplex,
                 values: Mapping[Sequence[int], object] | None = None,
                 scalar_mode: str = EXACT):
        if scalar_mode not in (EXACT, FLOAT):
            raise ValueError(f"unknown scalar mode {scalar_mode!r}")
        if degree < 0 or degree > complex.dim:
            raise DegreeError(f"cochain degree {degree} outside 0..{complex.dim}")
        self.degree = degree
        self.complex = complex
        self.scalar_mode = scalar_mode
        out = {}
        for verts, v in (values or {}).items():
            s = Simplex.from_vertices(verts)
            if s.dim != degree:
                raise ComplexError(f"simplex {tuple(verts)} does not have dimension {degree}")
            if not complex.contains(s.vertices):
                raise ComplexError(f"simplex {tuple(verts)} is not in the complex")
            v = _scalar(v, scalar_mode) * s.orientation_sign
            if v:
                out[s.vertices] = out.get(s.vertices, 0) + v
        self.values = {k: v for k, v in out.items() if v}

    @classmethod
    def _raw(cls, degree, complex, values, mode):
        c = cls.__new__(cls)
        c.degree, c.complex, c.values, c.scalar_mode = degree, complex, values, mode
        return c

    @classmethod
    def zero(cls, degree: int, complex: SimplicialComplex, scalar_mode: str = EXACT) -> "Cochain":
        return cls._raw(degree, complex, {}, scalar_mode)

    def __getitem__(self, key: Sequence[int]):
        s = Simplex.from_vertices(key)
        zero = 0.0 if self.scalar_mode == FLOAT else Fraction(0)
        return self.values.get(s.vertices, zero) * s.orientation_sign

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        if not self.values and not other.values:
            return True
        return self.degree == other.degree and self.values == other.values

    def __repr__(self) -> str:
        return f"Cochain[{self.degree}]({len(self.values)} nonzero values)"

    def _check(self, other: "Cochain"):
        if self.degree != other.degree:
            raise DegreeError("cochains of different degree")
        if self.complex is not other.complex:
            raise ComplexError("cochains live on different complexes")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        out = dict(self.values)
        for k, v in other.values.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Cochain._raw(self.degree, self.complex, out, self.scalar_mode)

    def __neg__(self) -> "Cochain":
        return Cochain._raw(self.degree, self.complex,
                            {k: -v for k, v in self.values.items()}, self.scalar_mode)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def __mul__(self, scalar) -> "Cochain":
        s = _scalar(scalar, self.scalar_mode)
        if not s:
            return Cochain.zero(self.degree, self.complex, self.scalar_mode)
        return Cochain._raw(self.degree, self.complex,
                            {k: v * s for k, v in self.values.items()}, self.scalar_mode)

    __rmul__ = __mul__


def pair(omega: Cochain, c: Chain):
    """Evaluate a cochain on a chain: ``sum_s c(s) * omega(s)``."""
    if omega.degree != c.degree:
        raise DegreeError(f"cannot pair a {omega.degree}-cochain with a {c.degree}-chain")
    if c.complex is not None and c.complex is not omega.complex:
        for key in c.coeffs:
            if not omega.complex.contains(key):
                raise ComplexError(f"simplex {key} of the chain is not in the cochain's complex")
    total = 0.0 if omega.scalar_mode == FLOAT else Fraction(0)
    vals = omega.values
    for key, coef in c.coeffs.items():
        v = vals.get(key)
        if v:
            total += coef * v
    return total


def coboundary(omega: Cochain) -> Cochain:
    """Discrete exterior derivative, ``(d omega)(s) = omega(boundary s)``."""
    K = omega.complex
    if omega.degree >= K.dim:
        raise DegreeError(f"coboundary of a top-degree ({omega.degree}) cochain is undefined")
    vals = omega.values
    out: dict[Key, object] = {}
    if vals:
        for key in K.simplices_of_dim(omega.degree + 1):
            total = 0
            for i in range(len(key)):
                v = vals.get(key[:i] + key[i + 1:])
                if v:
                    total = total + v if i % 2 == 0 else total - v
            if total:
                out[key] = total
    return Cochain._raw(omega.degree + 1, K, out, omega.scalar_mode)


def cup(a: Cochain, b: Cochain) -> Cochain:
    """Cup product: front p-face of ``a`` times back q-face of ``b``.

    This is the cochain-level wedge. It satisfies the Leibniz rule exactly
    but is only graded-commutative up to homotopy.
    """
    if a.complex is not b.complex:
        raise ComplexError("cochains live on different complexes")
    if a.scalar_mode != b.scalar_mode:
        raise ValueError("cannot mix exact and float cochains")
    p, q = a.degree, b.degree
    K = a.complex
    if p + q > K.dim:
        raise DegreeError(f"cup of degrees {p} and {q} exceeds dimension {K.dim}")
    out = {}
    av, bv = a.values, b.values
    if av and bv:
        for key in K.simplices_of_dim(p + q):
            x = av.get(key[: p + 1])
            if not x:
                continue
            y = bv.get(key[p:])
            if y:
                out[key] = x * y
    return Cochain._raw(p + q, K, out, a.scalar_mode)


def restrict(omega: Cochain, D: SimplicialComplex) -> Cochain:
    """Discrete pullback to a subcomplex: keep the values on simplices of ``D``."""
    if omega.degree > D.dim:
        raise DegreeError(
            f"a {omega.degree}-cochain has no restriction to a {D.dim}-dimensional subcomplex"
        )
    out = {}
    for key in D.simplices_of_dim(omega.degree):
        if not omega.complex.contains(key):
            raise ComplexError(f"simplex {key} of the subcomplex is absent from the complex")
        v = omega.values.get(key)
        if v:
            out[key] = v
    return Cochain._raw(omega.degree, D, out, omega.scalar_mode)

