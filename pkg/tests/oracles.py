"""Independent sympy oracles: integrals computed by symbolic iterated integration."""

import sympy

from gec.poly import Poly


def to_sympy(p: Poly, xs):
    out = sympy.Integer(0)
    for exp, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for x, e in zip(xs, exp):
            term *= x**e
        out += term
    return out


def simplex_integral(form, points):
    """Integral of a polynomial k-form over the oriented simplex spanned by ``points``."""
    k = len(points) - 1
    d = len(points[0])
    ts = sympy.symbols(f"t0:{k}") if k else ()
    p0 = [sympy.Rational(c) for c in points[0]]
    X = [p0[i] + sum((sympy.Rational(points[j + 1][i]) - p0[i]) * ts[j] for j in range(k))
         for i in range(d)]
    integrand = sympy.Integer(0)
    for idx, coeff in form.terms.items():
        c = to_sympy(coeff, X)
        if k:
            jac = sympy.Matrix([[sympy.diff(X[i], t) for t in ts] for i in idx])
            c *= jac.det()
        integrand += c
    integrand = sympy.expand(integrand)
    for j in reversed(range(k)):
        integrand = sympy.integrate(integrand, (ts[j], 0, 1 - sum(ts[:j])))
    return sympy.Rational(integrand)


def box_integral(expr, xs):
    """Integral of a sympy expression over the unit box in the variables ``xs``."""
    for x in xs:
        expr = sympy.integrate(expr, (x, 0, 1))
    return sympy.nsimplify(expr)
