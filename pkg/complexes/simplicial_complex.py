import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from errors import MalformedInputError

logger = logging.getLogger(__name__)

Simplex = Tuple[int, ...]


def _face_closure(simplices: Iterable[Simplex]) -> FrozenSet[Simplex]:
    closed = set()
    for sigma in simplices:
        if sigma in closed:
            continue
        for size in range(1, len(sigma) + 1):
            closed.update(combinations(sigma, size))
    return frozenset(closed)


def simplex_order(sigma: Simplex) -> Tuple[int, Simplex]:
    """Sort key: dimension first, then lexicographic."""
    return (len(sigma), sigma)


@dataclass(frozen=True)
class SimplicialComplex:
    """Finite abstract simplicial complex on vertices 0..vertex_count-1.

    `vertex_origin`, when present, records for every vertex the index it had
    in the complex this one was cut out of (see full_subcomplex).
    """
    vertex_count: int
    simplices: FrozenSet[Simplex]
    name: str = "X"
    vertex_origin: Optional[Tuple[int, ...]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        """Raise MalformedInputError naming the first broken invariant."""
        if self.vertex_count < 0:
            raise MalformedInputError("vertex_count must be nonnegative")
        seen_vertices = set()
        for sigma in sorted(self.simplices, key=simplex_order):
            if len(sigma) == 0:
                raise MalformedInputError("simplices must be nonempty")
            if any(sigma[i] >= sigma[i + 1] for i in range(len(sigma) - 1)):
                raise MalformedInputError(
                    f"simplex vertices must be strictly increasing: {list(sigma)}"
                )
            if sigma[0] < 0 or sigma[-1] >= self.vertex_count:
                raise MalformedInputError(
                    f"vertex index out of range [0, {self.vertex_count}) in {list(sigma)}"
                )
            for size in range(1, len(sigma)):
                for face in combinations(sigma, size):
                    if face not in self.simplices:
                        raise MalformedInputError(
                            f"face closure violated: {list(face)} is a face of {list(sigma)} but is missing"
                        )
            seen_vertices.update(sigma)
        if len(seen_vertices) != self.vertex_count:
            phantom = min(set(range(self.vertex_count)) - seen_vertices)
            raise MalformedInputError(f"phantom vertex {phantom} appears in no simplex")

    @property
    def dimension(self) -> int:
        """-1 for the empty complex."""
        return max((len(s) for s in self.simplices), default=0) - 1

    def simplices_of_dim(self, k: int) -> List[Simplex]:
        return sorted(s for s in self.simplices if len(s) == k + 1)

    def sorted_simplices(self) -> List[Simplex]:
        return sorted(self.simplices, key=simplex_order)

    def f_vector(self) -> List[int]:
        counts = [0] * (self.dimension + 1)
        for sigma in self.simplices:
            counts[len(sigma) - 1] += 1
        return counts

    def maximal_simplices(self) -> List[Simplex]:
        cofaces = set()
        for sigma in self.simplices:
            for size in range(1, len(sigma)):
                cofaces.update(combinations(sigma, size))
        return sorted(s for s in self.simplices if s not in cofaces)

    def edges(self) -> List[Tuple[int, int]]:
        return [(s[0], s[1]) for s in self.simplices_of_dim(1)]

    def is_pure(self) -> bool:
        dims = {len(s) for s in self.maximal_simplices()}
        return len(dims) <= 1

    def one_skeleton(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from(self.edges())
        return graph

    def components(self) -> List[List[int]]:
        """Vertex sets of path-components, each sorted, ordered by least vertex."""
        parts = [sorted(c) for c in nx.connected_components(self.one_skeleton())]
        return sorted(parts)

    def is_connected(self) -> bool:
        return self.vertex_count > 0 and len(self.components()) == 1

    def renamed(self, name: str) -> "SimplicialComplex":
        return SimplicialComplex(self.vertex_count, self.simplices, name, self.vertex_origin)


@dataclass(frozen=True)
class SimplicialMap:
    """Vertex map carrying every source simplex onto a target simplex."""
    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: Tuple[int, ...]
    name: str = "f"

    def __post_init__(self):
        if len(self.vertex_map) != self.source.vertex_count:
            raise MalformedInputError(
                f"vertex_map has length {len(self.vertex_map)}, expected {self.source.vertex_count}"
            )
        for v in self.vertex_map:
            if not 0 <= v < self.target.vertex_count:
                raise MalformedInputError(f"vertex_map entry {v} is not a target vertex")
        for sigma in self.source.sorted_simplices():
            if self.image(sigma) not in self.target.simplices:
                raise MalformedInputError(
                    f"simplicial map invariant violated: image of {list(sigma)} is not a target simplex"
                )

    def image(self, sigma: Sequence[int]) -> Simplex:
        return tuple(sorted({self.vertex_map[v] for v in sigma}))

    def preimage(self, vertices: Iterable[int]) -> FrozenSet[int]:
        wanted = set(vertices)
        return frozenset(v for v, w in enumerate(self.vertex_map) if w in wanted)

    def compose(self, inner: "SimplicialMap") -> "SimplicialMap":
        """self ∘ inner."""
        return SimplicialMap(
            inner.source, self.target,
            tuple(self.vertex_map[w] for w in inner.vertex_map),
            f"{self.name}o{inner.name}",
        )


def build_complex(maximal_simplices: Sequence[Sequence[int]], name: str = "X") -> SimplicialComplex:
    """Face closure of the given simplices; vertex_count is one more than the largest index."""
    normalized = []
    for raw in maximal_simplices:
        if len(raw) == 0:
            raise MalformedInputError("simplices must be nonempty")
        if any((not isinstance(v, int)) or v < 0 for v in raw):
            raise MalformedInputError(f"vertex indices must be nonnegative integers: {list(raw)}")
        if len(set(raw)) != len(raw):
            raise MalformedInputError(f"duplicate vertex inside simplex {list(raw)}")
        normalized.append(tuple(sorted(raw)))
    vertex_count = 1 + max((s[-1] for s in normalized), default=-1)
    return SimplicialComplex(vertex_count, _face_closure(normalized), name)


def euler_characteristic(X: SimplicialComplex) -> int:
    return sum((-1) ** (len(s) - 1) for s in X.simplices)


def full_subcomplex(X: SimplicialComplex, S: Iterable[int], name: Optional[str] = None) -> SimplicialComplex:
    """Induced subcomplex on S, re-indexed by the sorted order of S.

    vertex_origin maps each new index back to its vertex of X.
    """
    chosen = sorted(set(S))
    for v in chosen:
        if not 0 <= v < X.vertex_count:
            raise MalformedInputError(f"vertex {v} is not a vertex of {X.name}")
    position: Dict[int, int] = {v: i for i, v in enumerate(chosen)}
    simplices = frozenset(
        tuple(position[v] for v in sigma)
        for sigma in X.simplices
        if all(v in position for v in sigma)
    )
    return SimplicialComplex(len(chosen), simplices, name or f"{X.name}[sub]", tuple(chosen))


def identity_map(X: SimplicialComplex) -> SimplicialMap:
    return SimplicialMap(X, X, tuple(range(X.vertex_count)), "id")


def constant_map(X: SimplicialComplex, target: SimplicialComplex, vertex: int = 0) -> SimplicialMap:
    return SimplicialMap(X, target, tuple([vertex] * X.vertex_count), "const")
