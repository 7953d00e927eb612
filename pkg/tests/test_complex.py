from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gec import randgen
from gec.affine import AffineMap
from gec.complex import (
    Chain,
    ComplexError,
    DegreeError,
    Simplex,
    boundary_chain,
    boundary_subcomplex,
    build_complex,
    permutation_sign,
    region_chain,
    subcomplex,
    transform_complex,
)
from gec.meshgen import kuhn_box

TRI = [(0, 0), (1, 0), (0, 1)]
SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]


def triangle():
    return build_complex(2, TRI, [[0, 1, 2]])


def square():
    return build_complex(2, SQUARE, [[0, 1, 2], [0, 2, 3]])


def test_single_triangle_face_counts():
    assert triangle().counts() == [3, 3, 1]


def test_orientation_from_vertex_order():
    K = build_complex(2, TRI, [[1, 0, 2]])
    assert K.top[0] == Simplex((0, 1, 2), -1)


@pytest.mark.parametrize(
    "coords, simplices",
    [
        ([(0, 0), (1, 0), (2, 0)], [[0, 1, 2]]),  # collinear
        (TRI, [[0, 0, 1]]),  # repeated vertex
        (TRI, [[0, 1, 5]]),  # out of range
        (TRI, [[0, 1]]),  # wrong size
        (TRI, [[0, 1, 2], [2, 1, 0]]),  # duplicate
    ],
)
def test_invalid_meshes_rejected(coords, simplices):
    with pytest.raises(ComplexError):
        build_complex(2, coords, simplices)


def test_permutation_sign():
    assert permutation_sign([0, 1, 2]) == 1
    assert permutation_sign([1, 0, 2]) == -1
    assert permutation_sign([2, 0, 1]) == 1
    assert permutation_sign([3, 2, 1, 0]) == 1


def test_oriented_vertices_realize_sign():
    for verts in ([0, 1, 2], [1, 0, 2], [2, 1, 0], [3, 1, 0, 2]):
        s = Simplex.from_vertices(verts)
        assert permutation_sign(s.oriented_vertices()) == s.orientation_sign
    assert Simplex((4,), -1).oriented_vertices() == (4,)


def test_boundary_of_triangle():
    K = triangle()
    c = Chain(2, {(0, 1, 2): 1}, K)
    assert boundary_chain(c) == Chain(1, {(1, 2): 1, (0, 2): -1, (0, 1): 1})


def test_boundary_of_boundary_of_tetrahedron():
    c = Chain(3, {(0, 1, 2, 3): 1})
    assert boundary_chain(boundary_chain(c)).is_zero()


def test_boundary_of_edge_combination():
    c = Chain(1, {(0, 1): 2, (1, 2): -1})
    assert boundary_chain(c) == Chain(0, {(1,): 3, (0,): -2, (2,): -1})


def test_boundary_of_zero_chain_is_degree_error():
    with pytest.raises(DegreeError):
        boundary_chain(Chain(0, {(0,): 1}))


def test_chain_orientation_folding():
    assert Chain(1, {(1, 0): 1}) == Chain(1, {(0, 1): -1})
    assert Chain(1, {(1, 0): 1, (0, 1): 1}).is_zero()


def test_region_chains():
    assert region_chain(triangle()) == Chain(2, {(0, 1, 2): 1})
    assert region_chain(square()) == Chain(2, {(0, 1, 2): 1, (0, 2, 3): 1})
    empty = build_complex(2, TRI, [])
    assert region_chain(empty).is_zero()


def test_boundary_subcomplex_triangle_matches_boundary_chain():
    K = triangle()
    D, emb = boundary_subcomplex(K)
    assert region_chain(D) == boundary_chain(region_chain(K))
    assert len(emb) == 3


def test_boundary_subcomplex_square_cancels_diagonal():
    D, _ = boundary_subcomplex(square())
    assert len(D.top) == 4
    assert (0, 2) not in {s.vertices for s in D.top}


@pytest.mark.parametrize("d, faces", [(2, 4), (3, 12), (4, 48)])
def test_kuhn_box_boundary_face_counts(d, faces):
    # 2 * d cube facets, each carrying (d-1)! Kuhn simplices
    D, _ = boundary_subcomplex(kuhn_box(d, 1))
    assert len(D.top) == faces


def test_boundary_embeddings_point_outward():
    # positively oriented outward face x=1 of the unit square runs (1,0) -> (1,1)
    D, emb = boundary_subcomplex(square())
    phi = emb[(1, 2)]
    assert phi.translation == (1, 0) and phi.directions == ((0, 1),)


def test_subcomplex_and_transform():
    K = square()
    S = subcomplex(K, [(0, 2, 3)])
    assert S.counts() == [3, 3, 1]
    with pytest.raises(ComplexError):
        subcomplex(K, [(0, 1, 3)])
    T = transform_complex(K, AffineMap((1, 1), ((2, 0), (0, 3))))
    assert T.coords[2] == (Fraction(3), Fraction(4))


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10**6), st.sampled_from([2, 3, 4]))
def test_boundary_squared_zero_random(seed, d):
    import random

    rng = random.Random(seed)
    K = randgen.complex_(rng, d, max_top=60)
    for k in range(2, d + 1):
        c = randgen.chain(rng, K, k)
        assert boundary_chain(boundary_chain(c)).is_zero()


def test_boundary_subcomplex_rejects_inconsistent_orientation():
    K = build_complex(2, SQUARE, [[0, 1, 2], [0, 3, 2]])
    with pytest.raises(ComplexError, match="consistently oriented"):
        boundary_subcomplex(K)
