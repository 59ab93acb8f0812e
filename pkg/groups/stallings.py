"""
Stallings folding: exact rank of a finitely generated subgroup of a free group.
"""

import logging
from typing import Dict, List, Sequence, Set, Tuple

from .words import Word, free_reduce

logger = logging.getLogger(__name__)

Edge = Tuple[int, int, int]


class _UnionFind:
    def __init__(self):
        self.parent: List[int] = []

    def add(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if y < x:
            x, y = y, x
        self.parent[y] = x
        return True


def _fold(words: Sequence[Word]) -> Tuple[int, Set[Edge]]:
    nodes = _UnionFind()
    base = nodes.add()
    edges: Set[Edge] = set()
    for word in words:
        word = free_reduce(word)
        if not word:
            continue
        current = base
        for i, letter in enumerate(word):
            nxt = base if i == len(word) - 1 else nodes.add()
            if letter > 0:
                edges.add((current, letter, nxt))
            else:
                edges.add((nxt, -letter, current))
            current = nxt

    changed = True
    while changed:
        changed = False
        edges = {(nodes.find(u), a, nodes.find(v)) for u, a, v in edges}
        outgoing: Dict[Tuple[int, int], int] = {}
        for u, a, v in sorted(edges):
            for key, target in (((u, a), v), ((v, -a), u)):
                seen = outgoing.get(key)
                if seen is None:
                    outgoing[key] = target
                elif nodes.find(seen) != nodes.find(target):
                    nodes.union(seen, target)
                    changed = True
    vertices = {nodes.find(x) for x in range(len(nodes.parent))}
    return len(vertices), edges


def subgroup_rank(words: Sequence[Word]) -> int:
    """Rank of the subgroup of a free group generated by `words`."""
    vertex_count, edges = _fold(words)
    rank = len(edges) - vertex_count + 1
    logger.debug("folded %d words: %d vertices, %d edges, rank %d", len(words), vertex_count, len(edges), rank)
    return rank
