import pytest
from hypothesis import given

from edgeideal.errors import HomologyError, UsageError
from edgeideal.graph import empty_graph, from_edge_list, iter_bits
from edgeideal.homology import (
    GF2,
    RATIONALS,
    FaceList,
    Field,
    boundary_composition,
    boundary_rows,
    check_chain_complex,
    independence_faces,
    induced_homology,
    reduced_homology_dims,
)
from tests.unit.strategies import graphs

C4 = from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
K2 = from_edge_list(2, [(0, 1)])


@pytest.mark.parametrize(
    "text, characteristic",
    [("GF2", 2), ("gf(3)", 3), ("GF7", 7), ("F5", 5), ("Q", 0), ("QQ", 0), ("rationals", 0)],
)
def test_field_parse(text, characteristic):
    assert Field.parse(text) == Field(characteristic)


@pytest.mark.parametrize("text", ["GF4", "GF(1)", "R", ""])
def test_field_parse_rejects(text):
    with pytest.raises(UsageError):
        Field.parse(text)


def test_independence_faces_of_cycle():
    faces = independence_faces(C4)
    assert faces.sizes() == (1, 4, 2)
    assert faces.faces(1) == (0b0101, 0b1010)


def test_independence_faces_small_cases():
    assert independence_faces(K2).sizes() == (1, 2)
    assert independence_faces(empty_graph(3)).sizes() == (1, 3, 3, 1)
    assert independence_faces(empty_graph(0)).sizes() == (1,)


@given(graphs(max_n=8))
def test_faces_are_independent_and_downward_closed(g):
    faces = independence_faces(g)
    all_faces = {face for layer in faces.layers for face in layer}
    for d in range(faces.dimension + 1):
        layer = faces.faces(d)
        assert list(layer) == sorted(set(layer))
        for face in layer:
            assert g.is_independent(face)
            assert all(face & ~(1 << v) in all_faces for v in iter_bits(face))
    brute = [w for w in range(1 << g.n) if g.is_independent(w)]
    assert sorted(all_faces) == brute


def test_homology_of_cycle_complex():
    # Ind(C4) is two disjoint edges
    assert reduced_homology_dims(independence_faces(C4), GF2) == (0, 1, 0)
    assert reduced_homology_dims(independence_faces(C4), RATIONALS) == (0, 1, 0)


def test_homology_of_void_graph_complex():
    assert reduced_homology_dims(independence_faces(empty_graph(0))) == (1,)


@pytest.mark.parametrize("field", [GF2, RATIONALS, Field(3)])
def test_simplex_is_acyclic(field):
    assert reduced_homology_dims(independence_faces(empty_graph(3)), field) == (0, 0, 0, 0)


@given(graphs(max_n=8))
def test_boundary_of_boundary_is_zero(g):
    faces = independence_faces(g)
    for k in range(faces.dimension):
        assert boundary_composition(faces, k) == {}
    check_chain_complex(faces)


def test_face_list_missing_a_facet_is_rejected():
    # the triangle {0,1,2} without its edge {1,2} is not a simplicial complex
    faces = FaceList(((0,), (0b001, 0b010, 0b100), (0b011, 0b101), (0b111,)))
    with pytest.raises(HomologyError):
        check_chain_complex(faces)


@given(graphs(max_n=7))
def test_euler_characteristic_matches_homology(g):
    faces = independence_faces(g)
    chain_side = sum((-1) ** d * len(faces.faces(d)) for d in range(faces.dimension + 1)) - 1
    for field in (GF2, RATIONALS):
        dims = reduced_homology_dims(faces, field)
        homology_side = sum((-1) ** (k - 1) * dim for k, dim in enumerate(dims))
        assert homology_side == chain_side


@given(graphs(max_n=7))
def test_isolated_vertex_makes_complex_a_cone(g):
    coned = from_edge_list(g.n + 1, g.edges())
    assert set(reduced_homology_dims(independence_faces(coned))) == {0}


@given(graphs(max_n=6))
def test_gf2_and_rationals_agree_on_small_graphs(g):
    faces = independence_faces(g)
    assert reduced_homology_dims(faces, GF2) == reduced_homology_dims(faces, RATIONALS)


def test_induced_homology_conventions():
    assert induced_homology(C4, 0) == ((-1, 1),)
    assert induced_homology(C4, 0b0101) == ()
    assert induced_homology(C4, 0b1111) == ((0, 1),)
    assert induced_homology(C4, 0b1111, RATIONALS) == ((0, 1),)


def test_boundary_signs_alternate_by_position():
    faces = independence_faces(empty_graph(3))
    assert boundary_rows(faces, 2) == [{2: 1, 1: -1, 0: 1}]


@pytest.mark.parametrize("text", ["GF0", "GF(0)", "F0"])
def test_field_parse_rejects_zero_characteristic(text):
    with pytest.raises(UsageError):
        Field.parse(text)
