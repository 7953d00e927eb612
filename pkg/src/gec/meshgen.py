"""Kuhn (Freudenthal) triangulations of [0,1]^d and the standard simplex."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product

from .complex import ComplexError, SimplicialComplex, build_complex, permutation_sign

SUPPORTED_DIMS = (1, 2, 3, 4)


def kuhn_box_mesh(d: int, subdivisions: int = 1) -> dict:
    """Mesh dict for [0,1]^d cut into ``subdivisions^d`` cubes of ``d!`` simplices each.

    Every simplex is listed with positive orientation (positive volume), so
    the region chain carries the standard orientation of R^d.
    """
    if d not in SUPPORTED_DIMS:
        raise ComplexError(f"unsupported dimension {d}; expected one of {SUPPORTED_DIMS}")
    if subdivisions < 1:
        raise ComplexError("subdivisions must be >= 1")
    n = subdivisions
    lattice = list(product(range(n + 1), repeat=d))
    index = {p: i for i, p in enumerate(lattice)}
    vertices = [[Fraction(c, n) for c in p] for p in lattice]
    simplices = []
    for cell in product(range(n), repeat=d):
        for perm in permutations(range(d)):
            p = list(cell)
            verts = [index[tuple(p)]]
            for axis in perm:
                p[axis] += 1
                verts.append(index[tuple(p)])
            # the edge matrix is a permutation matrix with determinant sign(perm)
            if permutation_sign(perm) < 0:
                verts[-2], verts[-1] = verts[-1], verts[-2]
            simplices.append(verts)
    return {"dimension": d, "vertices": vertices, "simplices": simplices}


def standard_simplex_mesh(d: int) -> dict:
    if d not in SUPPORTED_DIMS:
        raise ComplexError(f"unsupported dimension {d}; expected one of {SUPPORTED_DIMS}")
    vertices = [[Fraction(0)] * d]
    for i in range(d):
        vertices.append([Fraction(int(i == j)) for j in range(d)])
    return {"dimension": d, "vertices": vertices, "simplices": [list(range(d + 1))]}


def mesh_gen(kind: str, d: int, subdivisions: int = 1) -> dict:
    if kind == "box":
        return kuhn_box_mesh(d, subdivisions)
    if kind == "simplex":
        return standard_simplex_mesh(d)
    raise ComplexError(f"unknown mesh kind {kind!r}")


def complex_from_mesh(mesh: dict) -> SimplicialComplex:
    return build_complex(mesh["dimension"], mesh["vertices"], mesh["simplices"])


def kuhn_box(d: int, subdivisions: int = 1) -> SimplicialComplex:
    return complex_from_mesh(kuhn_box_mesh(d, subdivisions))
