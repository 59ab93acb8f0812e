"""
Standard complexes and the product / wedge / mapping-torus constructions.
"""

import logging
from itertools import combinations
from typing import FrozenSet, List, Sequence, Tuple

from errors import MalformedInputError, UnsupportedInputError
from .simplicial_complex import SimplicialComplex, SimplicialMap, build_complex

logger = logging.getLogger(__name__)


def point(name: str = "point") -> SimplicialComplex:
    return build_complex([[0]], name)


def simplex(n: int, name: str = "") -> SimplicialComplex:
    """The solid n-simplex."""
    return build_complex([list(range(n + 1))], name or f"simplex{n}")


def sphere(n: int, name: str = "") -> SimplicialComplex:
    """Boundary of the (n+1)-simplex."""
    return build_complex(
        [list(face) for face in combinations(range(n + 2), n + 1)], name or f"sphere{n}"
    )


def circle(name: str = "circle") -> SimplicialComplex:
    """Triangle boundary; the base of every mapping torus."""
    return sphere(1, name)


def polygon(n: int, name: str = "") -> SimplicialComplex:
    if n < 3:
        raise MalformedInputError("a polygon needs at least 3 vertices")
    return build_complex([[i, (i + 1) % n] for i in range(n)], name or f"polygon{n}")


def _staircases(p: int, q: int) -> List[List[Tuple[int, int]]]:
    """Monotone lattice paths from (0, 0) to (p, q)."""
    paths = []
    for x_steps in combinations(range(p + q), p):
        i = j = 0
        path = [(0, 0)]
        for step in range(p + q):
            if step in x_steps:
                i += 1
            else:
                j += 1
            path.append((i, j))
        paths.append(path)
    return paths


def product(X: SimplicialComplex, Y: SimplicialComplex, name: str = "") -> Tuple[SimplicialComplex, Tuple[SimplicialMap, SimplicialMap]]:
    """Staircase triangulation of |X| x |Y|.

    Vertex (x, y) gets index x * |Y| + y.
    """
    width = Y.vertex_count
    tops = []
    for sigma in X.maximal_simplices():
        for tau in Y.maximal_simplices():
            for path in _staircases(len(sigma) - 1, len(tau) - 1):
                tops.append([sigma[i] * width + tau[j] for i, j in path])
    total = build_complex(tops, name or f"{X.name}x{Y.name}")
    first = SimplicialMap(total, X, tuple(v // width for v in range(total.vertex_count)), "pr1")
    second = SimplicialMap(total, Y, tuple(v % width for v in range(total.vertex_count)), "pr2")
    return total, (first, second)


def wedge(complexes: Sequence[SimplicialComplex], basepoints: Sequence[int], name: str = "") -> SimplicialComplex:
    """One-point union; the wedge point keeps the first complex's basepoint index."""
    if not complexes:
        raise MalformedInputError("wedge needs at least one complex")
    if len(basepoints) != len(complexes):
        raise MalformedInputError("wedge needs exactly one basepoint per complex")
    for X, b in zip(complexes, basepoints):
        if not 0 <= b < X.vertex_count:
            raise MalformedInputError(f"basepoint {b} out of range for {X.name}")

    hub = basepoints[0]
    tops: List[List[int]] = [list(s) for s in complexes[0].maximal_simplices()]
    offset = complexes[0].vertex_count
    for X, b in zip(complexes[1:], basepoints[1:]):
        relabel = {}
        for v in range(X.vertex_count):
            if v == b:
                relabel[v] = hub
            else:
                relabel[v] = offset
                offset += 1
        tops.extend([relabel[v] for v in s] for s in X.maximal_simplices())
    return build_complex(tops, name or "v".join(X.name for X in complexes))


def is_automorphism(g: SimplicialMap) -> bool:
    X = g.source
    if g.target.simplices != X.simplices or g.target.vertex_count != X.vertex_count:
        return False
    if sorted(g.vertex_map) != list(range(X.vertex_count)):
        return False
    return {g.image(s) for s in X.simplices} == set(X.simplices)


def mapping_torus(
    X: SimplicialComplex, g: SimplicialMap, layers: int = 3, name: str = ""
) -> Tuple[SimplicialComplex, SimplicialMap, FrozenSet[int]]:
    """Mapping torus of an automorphism g, built from `layers` staircase prisms.

    Vertex (v, l) of level l gets index l * |X| + v. The top of the last prism
    is glued to level 0 through g. `layers` must be a positive multiple of 3 so
    that level l projects to vertex l mod 3 of the triangle-boundary circle.
    """
    if not is_automorphism(g):
        raise UnsupportedInputError(f"{g.name} is not a simplicial automorphism of {X.name}")
    if layers < 3 or layers % 3:
        raise UnsupportedInputError("mapping torus layers must be a positive multiple of 3")
    n = X.vertex_count

    def bottom(v: int, level: int) -> int:
        return level * n + v

    def top(v: int, level: int) -> int:
        if level == layers - 1:
            return g.vertex_map[v]
        return (level + 1) * n + v

    tops = []
    for level in range(layers):
        for sigma in X.maximal_simplices():
            for i in range(len(sigma)):
                tops.append([bottom(v, level) for v in sigma[: i + 1]] + [top(v, level) for v in sigma[i:]])
    total = build_complex(tops, name or f"T({X.name})")
    base = circle()
    projection = SimplicialMap(total, base, tuple((v // n) % 3 for v in range(total.vertex_count)), "p")
    logger.debug("mapping torus of %s: %d vertices", X.name, total.vertex_count)
    return total, projection, frozenset(range(n))


def reflection(n: int) -> SimplicialMap:
    """v -> -v mod n on the n-gon; fixes 0 (and n/2 when n is even)."""
    P = polygon(n, f"polygon{n}")
    return SimplicialMap(P, P, tuple((-v) % n for v in range(n)), "reflection")
