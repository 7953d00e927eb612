"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` / decimal strings to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError("floats are not admitted in exact mode")
    return Fraction(value)


class Poly:
    """Polynomial in ``nvars`` variables, stored as ``{exponent: coefficient}``.

    Zero coefficients are never stored, so ``not p.terms`` means ``p == 0``.
    Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None):
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != nvars:
                    raise ValueError(f"exponent {exp} has wrong length for {nvars} variables")
                c = as_fraction(c)
                if c:
                    clean[exp] = clean.get(exp, Fraction(0)) + c
                    if not clean[exp]:
                        del clean[exp]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction]) -> "Poly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        c = as_fraction(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        exp = [0] * nvars
        exp[i] = 1
        return cls._raw(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "Poly":
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def linear(cls, const, coeffs: Sequence) -> "Poly":
        """``const + sum(coeffs[i] * x_i)``."""
        n = len(coeffs)
        p = cls.const(n, const)
        for i, c in enumerate(coeffs):
            c = as_fraction(c)
            if c:
                p = p + cls.var(n, i) * c
        return p

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, c in sorted(self.terms.items()):
            mono = "*".join(
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exp) if e
            )
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)

    # arithmetic
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different numbers of variables")
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other) -> "Poly":
        if not isinstance(other, _SCALARS):
            return NotImplemented
        other = self._coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for exp, c in other.terms.items():
            v = out.get(exp, 0) + c
            if v:
                out[exp] = v
            else:
                out.pop(exp, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, _SCALARS):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, _SCALARS):
            return NotImplemented
        if not isinstance(other, Poly):
            c = as_fraction(other)
            if not c:
                return Poly.zero(self.nvars)
            return Poly._raw(self.nvars, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        result = Poly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # calculus
    def diff(self, i: int) -> "Poly":
        out = {}
        for exp, c in self.terms.items():
            k = exp[i]
            if k:
                e = list(exp)
                e[i] = k - 1
                out[tuple(e)] = c * k
        return Poly._raw(self.nvars, out)

    def __call__(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for exp, c in self.terms.items():
            term = c
            for x, k in zip(point, exp):
                if k:
                    term *= x**k
            total += term
        return total

    def evaluate_float(self, point: Sequence[float]) -> float:
        total = 0.0
        for exp, c in self.terms.items():
            term = float(c)
            for x, k in zip(point, exp):
                if k:
                    term *= x**k
            total += term
        return total

    def compose_affine(self, translation: Sequence, columns: Sequence[Sequence]) -> "Poly":
        """Substitute ``x_j = translation[j] + sum_i columns[i][j] * t_i``.

        ``columns`` holds one direction vector per new variable ``t_i``; the
        result is a polynomial in ``len(columns)`` variables.
        """
        k = len(columns)
        if len(translation) != self.nvars:
            raise ValueError("affine map target dimension does not match polynomial")
        images = [
            Poly.linear(translation[j], [columns[i][j] for i in range(k)])
            for j in range(self.nvars)
        ]
        powers: list[list[Poly]] = [[Poly.const(k, 1)] for _ in range(self.nvars)]
        out = Poly.zero(k)
        for exp, c in self.terms.items():
            term = Poly.const(k, c)
            for j, e in enumerate(exp):
                if e:
                    pw = powers[j]
                    while len(pw) <= e:
                        pw.append(pw[-1] * images[j])
                    term = term * pw[e]
            out = out + term
        return out

    def integrate_standard_simplex(self) -> Fraction:
        """Exact integral over ``{t_i >= 0, sum t_i <= 1}`` in ``nvars`` variables."""
        total = Fraction(0)
        for exp, c in self.terms.items():
            total += c * monomial_simplex_integral(exp)
        return total


_SCALARS = (Poly, int, Fraction, str)


def monomial_simplex_integral(exp: Sequence[int]) -> Fraction:
    """Integral of ``prod t_i^a_i`` over the standard k-simplex.

    Uses the Dirichlet identity ``prod(a_i!) / (k + sum a_i)!``.
    """
    k = len(exp)
    num = 1
    for a in exp:
        num *= factorial(a)
    return Fraction(num, factorial(k + sum(exp)))


def monomials_up_to(nvars: int, max_degree: int) -> Iterable[Exponent]:
    """All exponent vectors of total degree <= ``max_degree`` in graded order."""
    def rec(prefix: list[int], remaining: int, slots: int):
        if slots == 1:
            yield tuple(prefix + [remaining])
            return
        for e in range(remaining, -1, -1):
            yield from rec(prefix + [e], remaining - e, slots - 1)

    if nvars == 0:
        yield ()
        return
    for deg in range(max_degree + 1):
        yield from rec([], deg, nvars)
