import random
from itertools import combinations
from math import factorial

import pytest

from complexes import (
    SimplicialComplex,
    SimplicialMap,
    barycentric_subdivision,
    build_complex,
    circle,
    constant_map,
    euler_characteristic,
    full_subcomplex,
    identity_map,
    is_automorphism,
    iterated_subdivision,
    mapping_torus,
    point,
    polygon,
    product,
    reflection,
    simplex,
    sphere,
    subdivide_map,
    wedge,
)
from corpus import random_complex, standard_complexes
from errors import MalformedInputError, UnsupportedInputError
from groups import abelianization, edge_path_presentation


def test_circle_and_sphere_counts():
    assert circle().f_vector() == [3, 3]
    assert euler_characteristic(circle()) == 0
    S2 = sphere(2, "s2")
    assert S2.f_vector() == [4, 6, 4]
    assert euler_characteristic(S2) == 2
    assert point().dimension == 0


def test_build_complex_closes_faces():
    X = build_complex([[0, 1, 2]], "triangle")
    assert X.f_vector() == [3, 3, 1]
    assert X.maximal_simplices() == [(0, 1, 2)]


def test_missing_face_is_named():
    with pytest.raises(MalformedInputError, match=r"face closure violated: \[1\] is a face of \[0, 1\]"):
        SimplicialComplex(2, frozenset({(0,), (0, 1)}))


def test_phantom_vertex_is_rejected():
    with pytest.raises(MalformedInputError, match="phantom vertex 2"):
        SimplicialComplex(3, frozenset({(0,), (1,), (0, 1)}))


def test_unsorted_simplex_is_rejected():
    with pytest.raises(MalformedInputError, match="strictly increasing"):
        SimplicialComplex(2, frozenset({(0,), (1,), (1, 0)}))


def test_duplicate_vertex_in_input_simplex():
    with pytest.raises(MalformedInputError, match="duplicate vertex"):
        build_complex([[0, 0, 1]])


def test_torus_counts():
    torus, (pr1, pr2) = product(circle("s1"), circle("s1"), "torus")
    assert torus.f_vector() == [9, 27, 18]
    assert euler_characteristic(torus) == 0
    assert pr1.target.name == "s1" and pr2.target.name == "s1"
    # fibres over a vertex are copies of the other factor
    assert len(pr2.preimage([0])) == 3
    assert len(pr1.preimage([1])) == 3


def test_product_euler_characteristic_multiplies():
    X, Y = sphere(2, "s2"), build_complex([[0, 1], [1, 2]], "path")
    total, _ = product(X, Y)
    assert euler_characteristic(total) == euler_characteristic(X) * euler_characteristic(Y)


def test_wedge_counts():
    eight = wedge([circle(), circle()], [0, 0], "figure_eight")
    assert eight.f_vector() == [5, 6]
    assert euler_characteristic(eight) == -1
    rose = wedge([circle(), circle(), circle()], [0, 1, 2])
    assert euler_characteristic(rose) == -2
    single = wedge([circle()], [0])
    assert single.simplices == circle().simplices


def test_wedge_rejects_bad_basepoint():
    with pytest.raises(MalformedInputError):
        wedge([circle(), circle()], [0, 5])


def test_klein_bottle_mapping_torus():
    hexagon = polygon(6, "hexagon")
    g = SimplicialMap(hexagon, hexagon, reflection(6).vertex_map, "reflection")
    assert is_automorphism(g)
    klein, projection, fibre = mapping_torus(hexagon, g)
    assert euler_characteristic(klein) == 0
    assert fibre == frozenset(range(6))
    P, _ = edge_path_presentation(klein)
    invariants = abelianization(P)
    assert invariants.rank == 1
    assert invariants.torsion == (2,)


def test_identity_mapping_torus_matches_product():
    hexagon = polygon(6, "hexagon")
    M, _, _ = mapping_torus(hexagon, identity_map(hexagon))
    Q, _ = product(hexagon, circle())
    assert M.f_vector() == Q.f_vector()
    assert euler_characteristic(M) == euler_characteristic(Q)
    assert abelianization(edge_path_presentation(M)[0]) == abelianization(edge_path_presentation(Q)[0])


def test_mapping_torus_needs_automorphism():
    hexagon = polygon(6)
    with pytest.raises(UnsupportedInputError):
        mapping_torus(hexagon, constant_map(hexagon, hexagon))
    with pytest.raises(UnsupportedInputError, match="multiple of 3"):
        mapping_torus(hexagon, identity_map(hexagon), layers=4)


def test_subdivision_keeps_original_vertices():
    step = barycentric_subdivision(simplex(2, "triangle"))
    assert step.subdivided.f_vector() == [7, 12, 6]
    for v in range(3):
        assert step.carrier[v] == (v,)
        assert step.barycenter((v,)) == v
    assert step.carrier_dimension(6) == 2


@pytest.mark.parametrize("name", sorted(standard_complexes()))
def test_subdivision_preserves_euler_characteristic(name):
    X = standard_complexes()[name]
    chi = euler_characteristic(X)
    for step in iterated_subdivision(X, 3):
        assert euler_characteristic(step.subdivided) == chi


@pytest.mark.parametrize("name", ["torus", "klein", "s2", "simplex3", "genus2"])
def test_top_simplices_multiply_by_factorial(name):
    X = standard_complexes()[name]
    assert X.is_pure()
    n = X.dimension
    count = len(X.maximal_simplices())
    for step in iterated_subdivision(X, 2):
        count *= factorial(n + 1)
        assert len(step.subdivided.maximal_simplices()) == count


def test_subdivided_projection_is_simplicial():
    torus, (pr1, _) = product(circle("s1"), circle("s1"), "torus")
    f = subdivide_map(pr1)
    assert f.source.vertex_count == len(torus.simplices)
    assert f.target.vertex_count == 6


def test_full_subcomplex_records_origin():
    X = sphere(2, "s2")
    sub = full_subcomplex(X, [3, 1, 2])
    assert sub.vertex_origin == (1, 2, 3)
    assert sub.f_vector() == [3, 3, 1]


def test_simplicial_map_rejects_non_simplex_image():
    hexagon = polygon(6)
    with pytest.raises(MalformedInputError):
        SimplicialMap(hexagon, hexagon, (0, 2, 4, 0, 2, 4), "bad")


def test_genus_two_surface():
    X = standard_complexes()["genus2"]
    assert X.vertex_count == 15
    assert euler_characteristic(X) == -2
    invariants = abelianization(edge_path_presentation(X)[0])
    assert invariants.rank == 4
    assert invariants.torsion == ()


# --- seeded properties over random small complexes ---

def _assert_closed(X):
    """Face closure, index bounds and no phantom vertices, checked directly."""
    used = set()
    for sigma in X.simplices:
        assert list(sigma) == sorted(set(sigma))
        assert 0 <= sigma[0] and sigma[-1] < X.vertex_count
        for size in range(1, len(sigma)):
            for face in combinations(sigma, size):
                assert face in X.simplices
        used.update(sigma)
    assert used == set(range(X.vertex_count))


def _origin_simplices(sub):
    return {tuple(sub.vertex_origin[v] for v in sigma) for sigma in sub.simplices}


@pytest.mark.parametrize("seed", range(30))
def test_random_subdivision_preserves_euler_characteristic(seed):
    X = random_complex(random.Random(seed))
    step = barycentric_subdivision(X)
    assert euler_characteristic(step.subdivided) == euler_characteristic(X)
    assert step.subdivided.vertex_count == len(X.simplices)


@pytest.mark.parametrize("seed", range(30))
def test_constructors_keep_complexes_closed(seed):
    rng = random.Random(seed)
    X = random_complex(rng, vertices=5, simplices=4)
    _assert_closed(X)
    _assert_closed(barycentric_subdivision(X).subdivided)
    _assert_closed(full_subcomplex(X, rng.sample(range(X.vertex_count), rng.randint(0, X.vertex_count))))
    _assert_closed(product(X, circle())[0])
    _assert_closed(wedge([X, circle()], [rng.randrange(X.vertex_count), 0]))
    _assert_closed(mapping_torus(X, identity_map(X))[0])


@pytest.mark.parametrize("seed", range(30))
def test_full_subcomplex_is_monotone(seed):
    rng = random.Random(seed)
    X = random_complex(rng)
    S = rng.sample(range(X.vertex_count), rng.randint(0, X.vertex_count))
    smaller = rng.sample(S, rng.randint(0, len(S)))
    big, small = full_subcomplex(X, S), full_subcomplex(X, smaller)
    assert _origin_simplices(small) <= _origin_simplices(big)
    assert _origin_simplices(big) == {s for s in X.simplices if set(s) <= set(S)}


@pytest.mark.parametrize("seed", range(30))
def test_subdivided_maps_stay_simplicial(seed):
    rng = random.Random(seed)
    X = random_complex(rng, vertices=6, simplices=5)
    target = simplex(2, "triangle")
    # every vertex map into a full simplex is simplicial
    f = SimplicialMap(X, target, tuple(rng.randrange(3) for _ in range(X.vertex_count)), "f")
    source_step, target_step = barycentric_subdivision(X), barycentric_subdivision(target)
    g = subdivide_map(f, source_step, target_step)
    for sigma in g.source.simplices:
        assert g.image(sigma) in g.target.simplices
    for v, sigma in enumerate(source_step.carrier):
        assert target_step.carrier[g.vertex_map[v]] == f.image(sigma)


@pytest.mark.parametrize("seed", range(20))
def test_product_fibres_are_copies_of_the_other_factor(seed):
    rng = random.Random(seed)
    X = random_complex(rng, vertices=4, simplices=3)
    Y = random_complex(rng, vertices=4, simplices=3)
    total, (pr1, pr2) = product(X, Y)
    for x in range(X.vertex_count):
        fibre = full_subcomplex(total, pr1.preimage([x]))
        assert {pr2.image(fibre.vertex_origin[v] for v in s) for s in fibre.simplices} == set(Y.simplices)
        assert fibre.f_vector() == Y.f_vector()
    for y in range(Y.vertex_count):
        fibre = full_subcomplex(total, pr2.preimage([y]))
        assert {pr1.image(fibre.vertex_origin[v] for v in s) for s in fibre.simplices} == set(X.simplices)
        assert fibre.f_vector() == X.f_vector()


@pytest.mark.parametrize("seed", range(15))
def test_identity_mapping_torus_matches_product_on_random_complexes(seed):
    X = random_complex(random.Random(seed), vertices=5, simplices=4)
    M, projection, _ = mapping_torus(X, identity_map(X))
    Q, _ = product(X, circle())
    assert M.f_vector() == Q.f_vector()
    assert abelianization(edge_path_presentation(M)[0]) == abelianization(edge_path_presentation(Q)[0])
    assert projection.target == circle()
