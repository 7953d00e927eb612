from fractions import Fraction

import pytest

from gec.complex import ComplexError, boundary_subcomplex, region_chain
from gec.meshgen import kuhn_box, kuhn_box_mesh, mesh_gen, standard_simplex_mesh
from gec.smoothform import PolyForm, integrate_chain, integrate_simplex


def test_square_counts():
    K = kuhn_box(2, 1)
    assert len(K.top) == 2
    assert len(boundary_subcomplex(K)[0].top) == 4


def test_cube_counts():
    K = kuhn_box(3, 1)
    assert len(K.top) == 6
    assert len(boundary_subcomplex(K)[0].top) == 12


def test_standard_simplex():
    m = standard_simplex_mesh(3)
    assert m["simplices"] == [[0, 1, 2, 3]]
    assert mesh_gen("simplex", 3)["vertices"] == m["vertices"]


@pytest.mark.parametrize("d, n", [(1, 3), (2, 2), (3, 2), (4, 1)])
def test_box_is_positively_oriented_with_unit_volume(d, n):
    K = kuhn_box(d, n)
    vol = PolyForm.basis(d, tuple(range(d)))
    for s in K.top:
        assert integrate_simplex(vol, K.points(s.oriented_vertices())) > 0
    assert integrate_chain(vol, region_chain(K)) == 1
    assert len(K.top) == n**d * [1, 1, 2, 6, 24][d]


def test_vertices_are_exact():
    m = kuhn_box_mesh(2, 3)
    assert m["vertices"][1] == [Fraction(0), Fraction(1, 3)]


@pytest.mark.parametrize("args", [("box", 5, 1), ("box", 0, 1), ("box", 2, 0), ("hex", 2, 1)])
def test_invalid_requests(args):
    with pytest.raises(ComplexError):
        mesh_gen(*args)
