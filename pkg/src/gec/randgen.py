"""Seeded random generators of exact test data (polynomials, forms, meshes, maps)."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import factorial

from .affine import AffineMap, det
from .cochain import Cochain
from .complex import Chain, ComplexError, SimplicialComplex, build_complex
from .magnetostatics import PolyVectorField, SkewStressField
from .meshgen import kuhn_box_mesh
from .poly import Poly, monomials_up_to
from .smoothform import PolyForm, PolyMultivectorField


def rational(rng: random.Random, bound: int = 5, max_den: int = 4, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))
        if q or not nonzero:
            return q


def poly(rng: random.Random, nvars: int, max_degree: int = 3, nterms: int = 3) -> Poly:
    monos = list(monomials_up_to(nvars, max_degree))
    terms = {}
    for _ in range(nterms):
        terms[rng.choice(monos)] = rational(rng, nonzero=True)
    return Poly(nvars, terms)


def form(rng: random.Random, d: int, r: int, max_degree: int = 3, nterms: int = 2,
         density: float = 0.7) -> PolyForm:
    terms = {}
    for idx in combinations(range(d), r):
        if rng.random() < density:
            terms[idx] = poly(rng, d, max_degree, nterms)
    return PolyForm(d, r, terms)


def multivector(rng: random.Random, d: int, r: int, max_degree: int = 2, nterms: int = 2,
                density: float = 0.7) -> PolyMultivectorField:
    terms = {}
    for idx in combinations(range(d), r):
        if rng.random() < density:
            terms[idx] = poly(rng, d, max_degree, nterms)
    return PolyMultivectorField(d, r, terms)


def vector_field(rng: random.Random, max_degree: int = 3, nterms: int = 3) -> PolyVectorField:
    return PolyVectorField(tuple(poly(rng, 3, max_degree, nterms) for _ in range(3)))


def skew_stress(rng: random.Random, max_degree: int = 2) -> SkewStressField:
    return SkewStressField.from_upper(*(poly(rng, 3, max_degree) for _ in range(3)))


def affine_map(rng: random.Random, d: int, bound: int = 3) -> AffineMap:
    """Random invertible affine self-map of R^d with small rational entries."""
    while True:
        cols = [[rational(rng, bound, 2) for _ in range(d)] for _ in range(d)]
        if det(cols):
            return AffineMap([rational(rng, bound, 2) for _ in range(d)], cols)


def subdivisions_for(d: int, max_top: int) -> int:
    n = 1
    while factorial(d) * (n + 1) ** d <= max_top:
        n += 1
    return n


def complex_(rng: random.Random, d: int, max_top: int = 200, *, jitter: bool = True,
             flip: bool = True, keep: float = 1.0) -> SimplicialComplex:
    """Kuhn mesh of the unit box with perturbed vertices, optional random
    orientation flips and an optional random subset of top simplices."""
    n = rng.randint(1, subdivisions_for(d, max_top))
    mesh = kuhn_box_mesh(d, n)
    simplices = [list(s) for s in mesh["simplices"]]
    if keep < 1.0:
        chosen = [s for s in simplices if rng.random() < keep]
        simplices = chosen or [rng.choice(simplices)]
    if flip:
        for s in simplices:
            if rng.random() < 0.5:
                s[0], s[1] = s[1], s[0]
    for scale in (8, 16, 64):
        verts = mesh["vertices"]
        if jitter:
            verts = [[c + Fraction(rng.randint(-1, 1), scale * n) for c in p] for p in verts]
        try:
            return build_complex(d, verts, simplices)
        except ComplexError:
            continue
    return build_complex(d, mesh["vertices"], simplices)


def chain(rng: random.Random, K: SimplicialComplex, k: int, density: float = 0.5) -> Chain:
    coeffs = {s: rational(rng) for s in K.simplices_of_dim(k) if rng.random() < density}
    return Chain(k, coeffs, K)


def cochain(rng: random.Random, K: SimplicialComplex, r: int, density: float = 0.8) -> Cochain:
    vals = {s: rational(rng) for s in K.simplices_of_dim(r) if rng.random() < density}
    return Cochain(r, K, vals)
