"""
Edge-path presentations of fundamental groups and inclusion-induced images.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from complexes import SimplicialComplex, full_subcomplex
from errors import MalformedInputError, UnsupportedInputError
from .words import Word, concat, free_reduce, inverse

logger = logging.getLogger(__name__)

EdgeWordMap = Dict[Tuple[int, int], Word]


@dataclass(frozen=True)
class GroupPresentation:
    generator_count: int
    relators: Tuple[Word, ...] = ()

    def __post_init__(self):
        if self.generator_count < 0:
            raise MalformedInputError("generator_count must be nonnegative")
        for r in self.relators:
            for letter in r:
                if letter == 0 or abs(letter) > self.generator_count:
                    raise MalformedInputError(
                        f"relator letter {letter} outside generators 1..{self.generator_count}"
                    )
            if free_reduce(r) != tuple(r):
                raise MalformedInputError(f"relator {list(r)} is not freely reduced")

    @classmethod
    def from_lists(cls, generator_count: int, relators: Sequence[Sequence[int]]) -> "GroupPresentation":
        return cls(generator_count, tuple(free_reduce(r) for r in relators))

    def to_dict(self) -> Dict:
        return {"generators": self.generator_count, "relators": [list(r) for r in self.relators]}


@dataclass(frozen=True)
class ComponentImage:
    """One path-component of a subspace: its own presentation and its generators' images."""
    vertices: Tuple[int, ...]
    presentation: GroupPresentation
    generators: Tuple[Word, ...]
    # group the generators live in, when it differs per component (images under a map)
    ambient: Optional[GroupPresentation] = None


@dataclass(frozen=True)
class Pi1Image:
    ambient: GroupPresentation
    components: Tuple[ComponentImage, ...]

    @property
    def component_generators(self) -> List[List[Word]]:
        return [list(c.generators) for c in self.components]

    def is_trivial(self) -> bool:
        return all(len(free_reduce(w)) == 0 for c in self.components for w in c.generators)


def edge_word(edge_words: EdgeWordMap, u: int, v: int) -> Word:
    """Word of the oriented edge u -> v."""
    if u < v:
        return edge_words[(u, v)]
    return inverse(edge_words[(v, u)])


def path_word(edge_words: EdgeWordMap, vertices: Sequence[int]) -> Word:
    return concat(*(edge_word(edge_words, a, b) for a, b in zip(vertices, vertices[1:])))


@dataclass
class _SpanningData:
    parent: Dict[int, int]
    generator_edges: List[Tuple[int, int]]
    edge_words: EdgeWordMap

    def path_from_root(self, v: int) -> List[int]:
        path = [v]
        while self.parent.get(path[-1]) is not None:
            path.append(self.parent[path[-1]])
        return list(reversed(path))


def _spanning_data(X: SimplicialComplex, basepoint: int) -> Tuple[List[int], _SpanningData]:
    graph = X.one_skeleton()
    component = sorted(nx.node_connected_component(graph, basepoint))
    inside = set(component)
    # one_skeleton inserts edges in sorted order, so neighbours are visited by index
    parent: Dict[int, int] = {basepoint: None}
    tree = set()
    for u, v in nx.bfs_edges(graph, basepoint):
        parent[v] = u
        tree.add((min(u, v), max(u, v)))
    edges = [e for e in X.edges() if e[0] in inside]
    generator_edges = [e for e in edges if e not in tree]
    edge_words: EdgeWordMap = {e: () for e in edges}
    for i, e in enumerate(generator_edges, start=1):
        edge_words[e] = (i,)
    return component, _SpanningData(parent, generator_edges, edge_words)


def _presentation(X: SimplicialComplex, component: List[int], data: _SpanningData) -> GroupPresentation:
    inside = set(component)
    relators = [
        path_word(data.edge_words, [a, b, c, a])
        for a, b, c in X.simplices_of_dim(2)
        if a in inside
    ]
    return GroupPresentation(len(data.generator_edges), tuple(relators))


def edge_path_presentation(X: SimplicialComplex, basepoint: int = 0) -> Tuple[GroupPresentation, EdgeWordMap]:
    """Edge-path presentation of pi1(X, basepoint), restricted to the basepoint's component.

    The spanning tree is breadth-first by vertex index; generators are the
    non-tree edges in lexicographic order; there is one relator per triangle.
    """
    if not 0 <= basepoint < X.vertex_count:
        raise MalformedInputError(f"basepoint {basepoint} out of range for {X.name}")
    component, data = _spanning_data(X, basepoint)
    presentation = _presentation(X, component, data)
    logger.debug(
        "pi1(%s): %d generators, %d relators",
        X.name, presentation.generator_count, len(presentation.relators),
    )
    return presentation, data.edge_words


def inclusion_image(
    X: SimplicialComplex,
    S: Sequence[int],
    ambient: GroupPresentation,
    edge_words: EdgeWordMap,
) -> Pi1Image:
    """Images in `ambient` of the fundamental groups of the components of full_subcomplex(X, S).

    Conjugating into the ambient basepoint runs along ambient tree edges,
    whose words are trivial, so the loop words are used as they are.
    """
    sub = full_subcomplex(X, S)
    origin = sub.vertex_origin
    components = []
    for comp in sub.components():
        base = comp[0]
        _, data = _spanning_data(sub, base)
        try:
            generators = tuple(
                path_word(
                    edge_words,
                    [origin[w] for w in data.path_from_root(u) + list(reversed(data.path_from_root(v)))],
                )
                for u, v in data.generator_edges
            )
        except KeyError:
            raise UnsupportedInputError(
                f"component at vertex {origin[base]} of {X.name} lies outside the ambient component"
            ) from None
        components.append(
            ComponentImage(
                tuple(origin[w] for w in comp), _presentation(sub, comp, data), generators
            )
        )
    return Pi1Image(ambient, tuple(components))
