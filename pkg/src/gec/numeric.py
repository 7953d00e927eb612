"""Float-mode support: symbolic non-polynomial coefficients and simplex quadrature.

Exact mode never touches this module. It exists for refinement studies with
fields such as ``sin(pi*x)`` whose integrals are not computed in closed form.
"""

from __future__ import annotations

from functools import lru_cache
from math import ceil

import numpy as np
import sympy

from .poly import Poly

DEFAULT_QUADRATURE_ORDER = 4


@lru_cache(maxsize=None)
def coordinate_symbols(n: int) -> tuple[sympy.Symbol, ...]:
    return tuple(sympy.Symbol(f"x{i}", real=True) for i in range(n))


def poly_to_expr(p: Poly) -> sympy.Expr:
    xs = coordinate_symbols(p.nvars)
    out = sympy.Integer(0)
    for exp, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for x, e in zip(xs, exp):
            if e:
                term *= x**e
        out += term
    return out


class ExprCoeff:
    """A smooth coefficient function given as a sympy expression in ``x0..x{n-1}``."""

    __slots__ = ("nvars", "expr", "_fn")

    def __init__(self, nvars: int, expr):
        self.nvars = nvars
        self.expr = sympy.sympify(expr)
        self._fn = None

    @classmethod
    def parse(cls, nvars: int, text: str) -> "ExprCoeff":
        """Parse text such as ``"sin(pi*x0)*x1"``; ``x, y, z, w`` alias ``x0..x3``."""
        xs = coordinate_symbols(nvars)
        names = {f"x{i}": s for i, s in enumerate(xs)}
        for alias, s in zip("xyzw", xs):
            names.setdefault(alias, s)
        return cls(nvars, sympy.sympify(text, locals=names))

    def _lift(self, other) -> "ExprCoeff":
        if isinstance(other, ExprCoeff):
            if other.nvars != self.nvars:
                raise ValueError("coefficients live in different numbers of variables")
            return other
        if isinstance(other, Poly):
            return ExprCoeff(self.nvars, poly_to_expr(other))
        return ExprCoeff(self.nvars, sympy.nsimplify(other))

    def __add__(self, other):
        return ExprCoeff(self.nvars, self.expr + self._lift(other).expr)

    __radd__ = __add__

    def __neg__(self):
        return ExprCoeff(self.nvars, -self.expr)

    def __sub__(self, other):
        return ExprCoeff(self.nvars, self.expr - self._lift(other).expr)

    def __rsub__(self, other):
        return ExprCoeff(self.nvars, self._lift(other).expr - self.expr)

    def __mul__(self, other):
        return ExprCoeff(self.nvars, self.expr * self._lift(other).expr)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return self.expr != 0

    def is_zero(self) -> bool:
        return self.expr == 0

    def __eq__(self, other) -> bool:
        try:
            other = self._lift(other)
        except (TypeError, sympy.SympifyError):
            return NotImplemented
        return sympy.simplify(self.expr - other.expr) == 0

    __hash__ = None

    def __repr__(self) -> str:
        return str(self.expr)

    def diff(self, i: int) -> "ExprCoeff":
        return ExprCoeff(self.nvars, sympy.diff(self.expr, coordinate_symbols(self.nvars)[i]))

    def compose_affine(self, translation, columns) -> "ExprCoeff":
        k = len(columns)
        ts = coordinate_symbols(k)
        tmp = [sympy.Dummy() for _ in range(self.nvars)]
        images = []
        for j in range(self.nvars):
            e = sympy.Rational(translation[j])
            for i in range(k):
                e += sympy.Rational(columns[i][j]) * ts[i]
            images.append(e)
        xs = coordinate_symbols(self.nvars)
        expr = self.expr.subs(dict(zip(xs, tmp)), simultaneous=True)
        expr = expr.subs(dict(zip(tmp, images)), simultaneous=True)
        return ExprCoeff(k, expr)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Vectorized evaluation at an ``(m, nvars)`` array of points."""
        if self._fn is None:
            self._fn = sympy.lambdify(coordinate_symbols(self.nvars), self.expr, "numpy")
        vals = self._fn(*points.T)
        return np.broadcast_to(np.asarray(vals, dtype=float), (points.shape[0],))


def evaluate_coeff(c, points: np.ndarray) -> np.ndarray:
    if isinstance(c, ExprCoeff):
        return c.evaluate(points)
    return np.array([c.evaluate_float(p) for p in points], dtype=float)


@lru_cache(maxsize=None)
def simplex_rule(k: int, order: int = DEFAULT_QUADRATURE_ORDER) -> tuple[np.ndarray, np.ndarray]:
    """Collapsed (Duffy) Gauss-Legendre rule on the standard k-simplex.

    Integrates polynomials of total degree ``<= order`` exactly; returns
    points of shape ``(m, k)`` and weights summing to ``1/k!``.
    """
    if k == 0:
        return np.zeros((1, 0)), np.ones(1)
    # the collapsed Jacobian adds up to k-1 degrees in the first direction
    n = max(1, ceil((order + k) / 2))
    x, w = np.polynomial.legendre.leggauss(n)
    x = (x + 1) / 2
    w = w / 2
    grids = np.meshgrid(*([x] * k), indexing="ij")
    wgrids = np.meshgrid(*([w] * k), indexing="ij")
    u = np.stack([g.ravel() for g in grids], axis=1)
    weights = np.prod(np.stack([g.ravel() for g in wgrids], axis=1), axis=1)
    # t_0 = u_0, t_j = u_j * prod_{i<j}(1-u_i) ... mapped so that sum t <= 1
    pts = np.empty_like(u)
    scale = np.ones(u.shape[0])
    for j in range(k):
        pts[:, j] = scale * u[:, j]
        weights = weights * scale if j > 0 else weights
        scale = scale * (1 - u[:, j])
    return pts, weights
