"""
Covers of total spaces assembled from a cover of the fibre and an LS-cover of
the base, for product bundles and mapping tori.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Optional

from certify.statements import Statement
from complexes import SimplicialComplex, SimplicialMap, circle, mapping_torus, product
from covers import VertexCover, validate_cover
from errors import MalformedInputError, NoTrivializationError, UnsupportedInputError
from groups import AMENABLE, TRIVIAL, GroupClass

logger = logging.getLogger(__name__)


class BundleKind(str, Enum):
    PRODUCT = "product"
    MAPPING_TORUS = "mapping_torus"
    ABSTRACT = "abstract"


@dataclass(frozen=True)
class BundleData:
    total: SimplicialComplex
    base: SimplicialComplex
    projection: SimplicialMap
    kind: BundleKind
    fibre_vertices: FrozenSet[int]
    fibre: SimplicialComplex
    automorphism: Optional[SimplicialMap] = None
    basepoint: int = 0

    def __post_init__(self):
        if self.projection.source != self.total or self.projection.target != self.base:
            raise MalformedInputError("projection must map the total space onto the base")
        if self.fibre_vertices != self.projection.preimage([self.basepoint]):
            raise MalformedInputError("fibre vertices must be the preimage of the base point")
        if self.kind == BundleKind.MAPPING_TORUS and self.automorphism is None:
            raise MalformedInputError("a mapping torus bundle needs its automorphism")


def product_bundle(F: SimplicialComplex, B: SimplicialComplex, name: str = "") -> BundleData:
    """F x B over B; vertex (x, y) has index x * |B| + y."""
    total, (_, pr2) = product(F, B, name)
    fibre_vertices = frozenset(x * B.vertex_count for x in range(F.vertex_count))
    return BundleData(total, B, pr2, BundleKind.PRODUCT, fibre_vertices, F)


def mapping_torus_bundle(X: SimplicialComplex, g: SimplicialMap, name: str = "") -> BundleData:
    total, projection, fibre_vertices = mapping_torus(X, g, 3, name)
    return BundleData(total, projection.target, projection, BundleKind.MAPPING_TORUS, fibre_vertices, X, g)


def circle_arc_cover(base: Optional[SimplicialComplex] = None) -> VertexCover:
    """LS-cover of the triangle-boundary circle by the arc {0, 1} and the vertex {2}."""
    return VertexCover(base or circle(), ((0, 1), (2,)), True)


def _cut_layer(levels: FrozenSet[int], layers: int) -> int:
    for layer in range(layers):
        if not (layer in levels and (layer + 1) % layers in levels):
            return layer
    raise NoTrivializationError("base piece spans every layer interface of the mapping torus")


def _fibre_coordinates(b: BundleData, base_piece) -> Dict[int, int]:
    """Fibre coordinate of every total-space vertex over base_piece, in a trivialization over it."""
    over = sorted(b.projection.preimage(base_piece))
    if b.kind == BundleKind.PRODUCT:
        return {v: v // b.base.vertex_count for v in over}
    n = b.fibre.vertex_count
    layers = b.total.vertex_count // n
    levels = frozenset(v // n for v in over)
    cut = _cut_layer(levels, layers)
    if cut == layers - 1:
        return {v: v % n for v in over}
    # crossing the gluing from the last level to level 0 applies g, so levels 0..cut are untwisted by g^-1
    undo = {w: v for v, w in enumerate(b.automorphism.vertex_map)}
    return {v: undo[v % n] if v // n <= cut else v % n for v in over}


def combine_covers(b: BundleData, fibre_cover: VertexCover, base_ls_cover: VertexCover) -> VertexCover:
    """Pieces (i, j): vertices over base piece j whose fibre coordinate lies in fibre piece i."""
    if b.kind == BundleKind.ABSTRACT:
        raise UnsupportedInputError("covers can only be combined for product bundles and mapping tori")
    if fibre_cover.complex != b.fibre:
        raise MalformedInputError("fibre cover does not live on the fibre")
    if base_ls_cover.complex != b.base:
        raise MalformedInputError("base cover does not live on the base")
    coordinates = [_fibre_coordinates(b, piece) for piece in base_ls_cover.pieces]
    contractible = validate_cover(base_ls_cover, TRIVIAL)
    if not contractible.overall.is_yes:
        raise UnsupportedInputError("every base piece must have trivial fundamental group image")

    pieces: List[tuple] = []
    for fibre_piece in fibre_cover.pieces:
        inside = set(fibre_piece)
        for coords in coordinates:
            piece = tuple(sorted(v for v, x in coords.items() if x in inside))
            if piece:
                pieces.append(piece)
    combined = VertexCover(b.total, tuple(pieces), fibre_cover.partition and base_ls_cover.partition)
    logger.info(
        "combined %d fibre pieces and %d base pieces into %d pieces on %s",
        fibre_cover.cardinality, base_ls_cover.cardinality, combined.cardinality, b.total.name,
    )
    return combined


def mapping_torus_bound(
    fibre_bound: int, fibre_dim: int, total: str = "M", group_class: GroupClass = AMENABLE
) -> List[Statement]:
    """cat(M) <= 2n, and cat(M) <= dim M when 2n <= dim N + 1."""
    if fibre_bound < 1:
        raise MalformedInputError("fibre bound must be at least 1")
    facts = [Statement.of("cat_upper", total, group_class, 2 * fibre_bound)]
    if 2 * fibre_bound <= fibre_dim + 1:
        facts.append(Statement.of("cat_upper", total, group_class, fibre_dim + 1))
    return facts
