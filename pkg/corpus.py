"""
The bundled standard corpus: standard complexes, bundles, maps, covers and
facts files for the torus, Klein bottle, entropy and non-collapsing pipelines.
"""

import logging
import random
from pathlib import Path
from typing import Dict, List

from certify import FactStore, Statement
from complexes import SimplicialComplex, SimplicialMap, build_complex, circle, point, polygon, product, reflection, simplex, sphere, wedge
from covers import VertexCover
from fibration import BundleData, circle_arc_cover, combine_covers, mapping_torus_bundle, product_bundle
from groups import AMENABLE, subexp_below
from workspace import complex_to_dict, cover_to_dict, fact_lines, map_to_dict, write_json

logger = logging.getLogger(__name__)


def s1() -> SimplicialComplex:
    return circle("s1")


def hexagon() -> SimplicialComplex:
    return polygon(6, "hexagon")


def torus_bundle() -> BundleData:
    return product_bundle(s1(), s1(), "torus")


def klein_bundle() -> BundleData:
    g = reflection(6)
    X = hexagon()
    return mapping_torus_bundle(X, SimplicialMap(X, X, g.vertex_map, "reflection"), "klein")


def genus_two() -> SimplicialComplex:
    """Two 9-vertex tori with the triangle [0, 1, 4] removed, glued along its boundary."""
    T = torus_bundle().total
    hole = (0, 1, 4)
    tops = [t for t in T.maximal_simplices() if t != hole]
    relabel, fresh = {}, T.vertex_count
    for v in range(T.vertex_count):
        if v in hole:
            relabel[v] = v
        else:
            relabel[v], fresh = fresh, fresh + 1
    copy = [[relabel[v] for v in t] for t in tops]
    return build_complex([list(t) for t in tops] + copy, "genus2")


def standard_complexes() -> Dict[str, SimplicialComplex]:
    circles = [s1(), s1()]
    complexes = [
        point(),
        s1(),
        hexagon(),
        sphere(2, "s2"),
        torus_bundle().total,
        klein_bundle().total,
        wedge(circles, [0, 0], "figure_eight"),
        genus_two(),
        simplex(1, "simplex1"),
        simplex(2, "simplex2"),
        simplex(3, "simplex3"),
    ]
    return {X.name: X for X in complexes}


def torus_projection() -> SimplicialMap:
    _, (first, _) = product(s1(), s1(), "torus")
    return SimplicialMap(first.source, first.target, first.vertex_map, "torus_projection")


def _whole_fibre(b: BundleData) -> VertexCover:
    return VertexCover(b.fibre, (tuple(range(b.fibre.vertex_count)),), True)


def amenable_covers() -> List[VertexCover]:
    """The single-piece cover of s1 and the two-piece covers of the torus and the Klein bottle."""
    single = VertexCover(s1(), ((0, 1, 2),), True)
    torus, klein = torus_bundle(), klein_bundle()
    return [
        single,
        combine_covers(torus, _whole_fibre(torus), circle_arc_cover(torus.base)),
        combine_covers(klein, _whole_fibre(klein), circle_arc_cover(klein.base)),
    ]


def torus_facts() -> FactStore:
    store = FactStore()
    store.add_computed(Statement.of("cat_upper", "s1", AMENABLE, 1), VertexCover(s1(), ((0, 1, 2),), True))
    store.assert_axiom(Statement.of("lscat_upper", "s1", 2), "the circle is covered by two contractible arcs")
    store.assert_axiom(Statement.of("bundle", "torus", "s1", "s1"), "torus = s1 x s1 projected to the second factor")
    store.assert_axiom(Statement.of("manifold", "torus", 2, True, True, True), "the torus is a closed oriented surface")
    return store


def klein_facts() -> FactStore:
    store = FactStore()
    klein = klein_bundle()
    cover = combine_covers(klein, _whole_fibre(klein), circle_arc_cover(klein.base))
    store.add_computed(Statement.of("cat_upper", "klein", AMENABLE, 2), cover)
    store.assert_axiom(Statement.of("manifold", "klein", 2, False, True, True), "the Klein bottle is a closed non-orientable surface")
    return store


def mapping_torus_facts() -> FactStore:
    """Fibered hyperbolic 3-manifold M with genus-2 fibre N: 6 is the best the fibration bound gives."""
    store = FactStore()
    store.assert_axiom(Statement.of("cat_upper", "N", AMENABLE, 3), "amenable category of a closed hyperbolic surface is 3")
    store.assert_axiom(Statement.of("mapping_torus", "M", "N"), "M fibres over the circle with fibre N")
    store.assert_axiom(Statement.of("cat_lower", "M", AMENABLE, 4), "amenable category of a closed hyperbolic 3-manifold is 4")
    store.assert_axiom(Statement.of("manifold", "M", 3, True, True, True), "M is a closed oriented hyperbolic 3-manifold")
    store.assert_axiom(Statement.of("simvol_positive", "M"), "closed hyperbolic manifolds have positive simplicial volume")
    return store


def entropy_facts() -> FactStore:
    store = FactStore()
    T = torus_bundle().total
    store.add_computed(Statement.of("fca", "torus", subexp_below("1/2"), 1), torus_projection())
    store.add_computed(Statement.of("dimension", "torus", 2), T)
    store.assert_axiom(Statement.of("ent_lower", "surface", "1/2"), "a closed hyperbolic surface has positive minimal volume entropy")
    store.assert_axiom(Statement.of("wedge_power", "rose", "surface", 4), "rose is a wedge of four copies of surface")
    return store


def fnca_facts() -> FactStore:
    """Product of hyperbolic manifolds: positivity of entropy from axioms about its fundamental group."""
    store = FactStore()
    M = "hyperbolic_product"
    store.assert_axiom(Statement.of("simvol_positive", M), "products of closed hyperbolic manifolds have positive simplicial volume")
    store.assert_axiom(Statement.of("manifold", M, 4, True, True, True), "product of two closed hyperbolic surfaces")
    store.assert_axiom(Statement.of("dimension", M, 4), "triangulated 4-manifold")
    store.assert_axiom(
        Statement.of("amenable_or_uexp", M, "1/10"),
        "every finitely generated subgroup of the fundamental group is amenable or grows uniformly exponentially",
    )
    store.assert_axiom(Statement.of("finite_cover", M, "quotient", 3), "M is a 3-sheeted cover of quotient")
    return store


def random_complex(rng: random.Random, vertices: int = 7, simplices: int = 6, max_dim: int = 2) -> SimplicialComplex:
    """Face closure of random simplices, relabelled so that no vertex is a phantom."""
    tops = []
    for _ in range(simplices):
        size = rng.randint(1, max_dim + 1)
        tops.append(rng.sample(range(vertices), min(size, vertices)))
    used = sorted({v for t in tops for v in t})
    position = {v: i for i, v in enumerate(used)}
    return build_complex([[position[v] for v in t] for t in tops], f"random{rng.randint(0, 10 ** 6)}")


def write_corpus(directory) -> List[Path]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written: List[Path] = []

    def emit(name: str, data) -> None:
        path = out / name
        write_json(path, data)
        written.append(path)

    for name, X in standard_complexes().items():
        emit(f"{name}.json", complex_to_dict(X))
    emit("torus_projection.json", map_to_dict(torus_projection()))
    emit("torus.bundle.json", {"kind": "product", "factors": ["s1", "s1"], "name": "torus"})
    emit("klein.bundle.json", {
        "kind": "mapping_torus", "fibre": "hexagon",
        "automorphism": list(reflection(6).vertex_map), "name": "klein",
    })
    for cover in amenable_covers():
        emit(f"{cover.complex.name}.amenable.cover.json", cover_to_dict(cover))
    emit("hexagon.amenable.cover.json", cover_to_dict(_whole_fibre(klein_bundle())))
    emit("s1.arcs.cover.json", cover_to_dict(circle_arc_cover(s1())))
    # base of every mapping torus bundle
    emit("circle.json", complex_to_dict(circle()))
    emit("circle.arcs.cover.json", cover_to_dict(circle_arc_cover()))

    for name, store in (
        ("torus.facts", torus_facts()),
        ("klein.facts", klein_facts()),
        ("hyperbolic_mapping_torus.facts", mapping_torus_facts()),
        ("entropy.facts", entropy_facts()),
        ("fnca.facts", fnca_facts()),
    ):
        path = out / name
        path.write_text("".join(line + "\n" for line in fact_lines(store)), encoding="utf-8")
        written.append(path)
    logger.info("wrote %d corpus files to %s", len(written), out)
    return written
