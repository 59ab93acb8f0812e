import random

import pytest

from complexes import sphere
from corpus import hexagon, klein_bundle, s1, torus_bundle
from covers import VertexCover, validate_cover
from errors import MalformedInputError, NoTrivializationError, UnsupportedInputError
from fibration import (
    BundleData,
    BundleKind,
    circle_arc_cover,
    combine_covers,
    mapping_torus_bound,
    product_bundle,
)
from groups import AMENABLE, Answer


def _whole(X):
    return VertexCover(X, (tuple(range(X.vertex_count)),), True)


def test_product_bundle_fibre_is_a_column():
    b = torus_bundle()
    assert b.kind == BundleKind.PRODUCT
    assert b.fibre_vertices == frozenset({0, 3, 6})
    assert b.total.f_vector() == [9, 27, 18]


def test_bundle_checks_fibre_vertices():
    b = torus_bundle()
    with pytest.raises(MalformedInputError, match="preimage of the base point"):
        BundleData(b.total, b.base, b.projection, b.kind, frozenset({0, 1}), b.fibre)


def test_torus_cover_from_whole_fibre_and_arcs():
    b = torus_bundle()
    combined = combine_covers(b, _whole(b.fibre), circle_arc_cover(b.base))
    assert combined.pieces == ((0, 1, 3, 4, 6, 7), (2, 5, 8))
    assert combined.partition
    assert validate_cover(combined, AMENABLE).overall.answer == Answer.YES


def test_product_pieces_are_fibre_piece_times_base_piece():
    b = torus_bundle()
    fibre_cover = VertexCover(b.fibre, ((0, 1), (2,)), True)
    combined = combine_covers(b, fibre_cover, circle_arc_cover(b.base))
    assert combined.cardinality == 4
    assert (0, 1, 3, 4) in combined.pieces
    assert (2, 5) in combined.pieces
    assert (8,) in combined.pieces
    assert sorted(v for p in combined.pieces for v in p) == list(range(9))


def test_klein_cover_has_two_amenable_pieces():
    b = klein_bundle()
    assert b.kind == BundleKind.MAPPING_TORUS
    assert b.fibre_vertices == frozenset(range(6))
    combined = combine_covers(b, _whole(hexagon()), circle_arc_cover(b.base))
    assert combined.cardinality == 2
    assert validate_cover(combined, AMENABLE).overall.answer == Answer.YES


def test_klein_base_piece_over_every_layer_has_no_trivialization():
    b = klein_bundle()
    with pytest.raises(NoTrivializationError):
        combine_covers(b, _whole(hexagon()), _whole(b.base))


def test_base_pieces_must_be_contractible():
    b = torus_bundle()
    with pytest.raises(UnsupportedInputError, match="trivial fundamental group"):
        combine_covers(b, _whole(b.fibre), _whole(b.base))


def test_covers_must_live_on_fibre_and_base():
    b = torus_bundle()
    with pytest.raises(MalformedInputError, match="fibre cover"):
        combine_covers(b, _whole(hexagon()), circle_arc_cover(b.base))
    with pytest.raises(MalformedInputError, match="base cover"):
        combine_covers(b, _whole(b.fibre), _whole(hexagon()))


def test_abstract_bundles_are_not_combined():
    t = torus_bundle()
    abstract = BundleData(t.total, t.base, t.projection, BundleKind.ABSTRACT, t.fibre_vertices, t.fibre)
    with pytest.raises(UnsupportedInputError):
        combine_covers(abstract, _whole(t.fibre), circle_arc_cover(t.base))


def test_product_bundle_of_sphere_over_circle():
    b = product_bundle(sphere(2, "s2"), s1(), "s2xs1")
    combined = combine_covers(b, _whole(b.fibre), circle_arc_cover(b.base))
    assert combined.cardinality == 2
    assert validate_cover(combined, AMENABLE).overall.answer == Answer.YES


def test_mapping_torus_bound():
    # hyperbolic surface fibre: amcat(N) = 3 only gives 6 for the 3-manifold
    facts = mapping_torus_bound(3, 2)
    assert [str(s) for s in facts] == ["cat_upper(M, amenable, 6)"]
    # an amenable fibre (amcat 1) of dimension 2 reaches dim M
    facts = mapping_torus_bound(1, 2, "E")
    assert [str(s) for s in facts] == ["cat_upper(E, amenable, 2)", "cat_upper(E, amenable, 3)"]
    # circle fibre: both bounds equal dim M = 2
    assert {str(s) for s in mapping_torus_bound(1, 1)} == {"cat_upper(M, amenable, 2)"}
    with pytest.raises(MalformedInputError):
        mapping_torus_bound(0, 2)


# --- seeded properties ---

BUNDLES = [torus_bundle, klein_bundle, lambda: product_bundle(sphere(2, "s2"), s1(), "s2xs1")]


def _random_fibre_cover(rng, F):
    pieces = [tuple(rng.sample(range(F.vertex_count), rng.randint(1, F.vertex_count))) for _ in range(rng.randint(1, 3))]
    missing = set(range(F.vertex_count)) - {v for p in pieces for v in p}
    if missing:
        pieces.append(tuple(sorted(missing)))
    return VertexCover(F, tuple(pieces))


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("bundle", range(len(BUNDLES)))
def test_combined_cardinality_is_at_most_the_product(seed, bundle):
    rng = random.Random(seed)
    b = BUNDLES[bundle]()
    fibre_cover = _random_fibre_cover(rng, b.fibre)
    base_cover = circle_arc_cover(b.base)
    combined = combine_covers(b, fibre_cover, base_cover)
    assert combined.complex == b.total
    assert combined.cardinality <= fibre_cover.cardinality * base_cover.cardinality
    assert validate_cover(combined, AMENABLE).overall.answer != Answer.NO
