import logging
from dataclasses import dataclass
from itertools import permutations
from typing import Dict, List, Optional, Tuple

from .simplicial_complex import (
    Simplex,
    SimplicialComplex,
    SimplicialMap,
    build_complex,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SubdivisionCarrier:
    """Barycentric subdivision together with the simplex each new vertex is the barycenter of.

    Subdivided vertices are numbered in (dimension, lexicographic) order of
    their carriers, so b_{(v,)} = v for every original vertex v.
    """
    original: SimplicialComplex
    subdivided: SimplicialComplex
    carrier: Tuple[Simplex, ...]

    def barycenter(self, sigma: Simplex) -> int:
        return self._index()[tuple(sigma)]

    def carrier_dimension(self, vertex: int) -> int:
        return len(self.carrier[vertex]) - 1

    def _index(self) -> Dict[Simplex, int]:
        cached = self.__dict__.get("_barycenter_index")
        if cached is None:
            cached = {sigma: i for i, sigma in enumerate(self.carrier)}
            object.__setattr__(self, "_barycenter_index", cached)
        return cached


def barycentric_subdivision(X: SimplicialComplex, name: Optional[str] = None) -> SubdivisionCarrier:
    carrier = tuple(X.sorted_simplices())
    index = {sigma: i for i, sigma in enumerate(carrier)}
    flags: List[List[int]] = []
    for top in X.maximal_simplices():
        # every full flag of faces of `top` is an ordering of its vertices
        for order in permutations(top):
            flags.append([index[tuple(sorted(order[: i + 1]))] for i in range(len(order))])
    subdivided = build_complex(flags, name or f"{X.name}'")
    logger.debug("subdivided %s: %d -> %d simplices", X.name, len(X.simplices), len(subdivided.simplices))
    return SubdivisionCarrier(X, subdivided, carrier)


def iterated_subdivision(X: SimplicialComplex, depth: int) -> List[SubdivisionCarrier]:
    """Carriers of X', X'', ... (depth of them, possibly none)."""
    steps: List[SubdivisionCarrier] = []
    current = X
    for _ in range(depth):
        step = barycentric_subdivision(current)
        steps.append(step)
        current = step.subdivided
    return steps


def subdivide_map(
    f: SimplicialMap,
    source_carrier: Optional[SubdivisionCarrier] = None,
    target_carrier: Optional[SubdivisionCarrier] = None,
) -> SimplicialMap:
    """f' with f'(b_σ) = b_{f(σ)} between the barycentric subdivisions."""
    source_carrier = source_carrier or barycentric_subdivision(f.source)
    target_carrier = target_carrier or barycentric_subdivision(f.target)
    vertex_map = tuple(target_carrier.barycenter(f.image(sigma)) for sigma in source_carrier.carrier)
    return SimplicialMap(source_carrier.subdivided, target_carrier.subdivided, vertex_map, f"{f.name}'")

