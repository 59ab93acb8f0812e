import random

import pytest

from certify import FactStore, Statement, query, saturate
from complexes import SimplicialMap, barycentric_subdivision, full_subcomplex, identity_map, simplex
from corpus import amenable_covers, random_complex, standard_complexes, torus_projection
from covers import VertexCover, multiplicity_and_nerve, stars_cover, validate_cover
from errors import MalformedInputError, UnsupportedInputError
from fca import check_fca, cover_to_fca_witness, fca_to_cover, point_fibre
from groups import AMENABLE, TRIVIAL, Answer, GroupClass


def test_torus_projection_has_circle_fibres():
    f = torus_projection()
    result = check_fca(f, GroupClass.parse("subexp<1/2"), 1)
    assert result.verdict.answer == Answer.YES
    # three vertices and three edges of the base circle
    assert len(result.reports) == 6
    assert all(r.overall.answer == Answer.YES for r in result.reports)


def test_dimension_gate():
    genus2 = standard_complexes()["genus2"]
    result = check_fca(identity_map(genus2), AMENABLE, 1)
    assert result.verdict.answer == Answer.NO
    assert result.reports == ()


def test_point_fibre_over_vertex_is_a_circle():
    fibre = point_fibre(torus_projection(), [0])
    assert fibre.is_connected()
    assert fibre.f_vector()[0] == fibre.f_vector()[1]


def test_point_fibre_needs_a_target_simplex():
    with pytest.raises(MalformedInputError, match="not a simplex"):
        point_fibre(torus_projection(), [0, 1, 2])


@pytest.mark.parametrize("cover", amenable_covers(), ids=lambda c: c.complex.name)
def test_amenable_partitions_give_fca_witnesses(cover):
    X = cover.complex
    f, result = cover_to_fca_witness(X, cover, AMENABLE)
    k = multiplicity_and_nerve(cover).multiplicity - 1
    assert result.k == k
    assert result.verdict.answer == Answer.YES

    store = FactStore()
    store.add_computed(Statement.of("fca", X.name, AMENABLE, k), f)
    saturate(store)
    assert query(store, Statement.of("cat_upper", X.name, AMENABLE, cover.cardinality)).success


def test_fca_witness_needs_partition():
    X = standard_complexes()["hexagon"]
    overlapping = VertexCover(X, ((0, 1, 2, 3), (3, 4, 5, 0)))
    with pytest.raises(UnsupportedInputError):
        cover_to_fca_witness(X, overlapping, AMENABLE)
    with pytest.raises(MalformedInputError):
        cover_to_fca_witness(standard_complexes()["s1"], stars_cover(X), AMENABLE)


def test_fca_map_gives_cover_by_image_dimension():
    f = torus_projection()
    cover = fca_to_cover(f)
    assert cover.partition
    assert cover.cardinality == 2
    assert cover.complex.vertex_count == 9 + 27 + 18


# --- seeded properties ---

def _random_map(rng, X):
    return SimplicialMap(X, simplex(2), tuple(rng.randrange(3) for _ in range(X.vertex_count)), "f")


@pytest.mark.parametrize("seed", range(15))
def test_point_fibres_are_full_subcomplexes(seed):
    rng = random.Random(seed)
    X = random_complex(rng, vertices=5, simplices=4)
    f = _random_map(rng, X)
    subdivided = barycentric_subdivision(X).subdivided
    for tau in sorted({f.image(sigma) for sigma in X.simplices}):
        fibre = point_fibre(f, tau)
        assert fibre.vertex_count > 0
        assert fibre.simplices == full_subcomplex(subdivided, fibre.vertex_origin).simplices


@pytest.mark.parametrize("seed", range(12))
@pytest.mark.parametrize("C", [TRIVIAL, AMENABLE], ids=str)
def test_good_partitions_give_collapsing_maps(seed, C):
    rng = random.Random(seed)
    X = random_complex(rng, vertices=5, simplices=4)
    labels = [rng.randrange(3) for _ in range(X.vertex_count)]
    pieces = tuple(tuple(v for v in range(X.vertex_count) if labels[v] == i) for i in sorted(set(labels)))
    partition = VertexCover(X, pieces, True)
    _, result = cover_to_fca_witness(X, partition, C)
    if validate_cover(partition, C).overall.answer == Answer.YES:
        assert result.verdict.answer != Answer.NO
