"""
Vertex-family covers, 𝒢-cover validation, nerves and cat_𝒢 upper-bound search.

A piece S stands for the union of the open stars of its vertices, which
deformation retracts onto full_subcomplex(X, S).
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from sympy.utilities.iterables import multiset_partitions

import parallel
from complexes import (
    SimplicialComplex,
    SimplicialMap,
    barycentric_subdivision,
    build_complex,
    full_subcomplex,
    iterated_subdivision,
)
from errors import MalformedInputError, UnsupportedInputError
from groups import (
    Answer,
    Budget,
    ComponentImage,
    GroupClass,
    GroupPresentation,
    Verdict,
    classify_component,
    classify_group,
    edge_path_presentation,
    inclusion_image,
)
from groups.presentation import EdgeWordMap, _spanning_data, path_word
from settings import DEFAULT_EXACT_VERTEX_CAP, DEFAULT_GREEDY_DEPTH

logger = logging.getLogger(__name__)

Piece = Tuple[int, ...]


@dataclass(frozen=True)
class VertexCover:
    complex: SimplicialComplex
    pieces: Tuple[Piece, ...]
    partition: bool = False

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(tuple(sorted(set(p))) for p in self.pieces))
        covered = set()
        for i, piece in enumerate(self.pieces):
            if not piece:
                raise MalformedInputError(f"piece {i} is empty")
            for v in piece:
                if not 0 <= v < self.complex.vertex_count:
                    raise MalformedInputError(f"piece {i} references unknown vertex {v}")
            if self.partition and covered.intersection(piece):
                raise MalformedInputError(f"partition pieces overlap at piece {i}")
            covered.update(piece)
        if len(covered) != self.complex.vertex_count:
            missing = min(set(range(self.complex.vertex_count)) - covered)
            raise MalformedInputError(f"covering condition violated: vertex {missing} lies in no piece")

    @property
    def cardinality(self) -> int:
        return len(self.pieces)

    def to_dict(self) -> Dict:
        return {
            "complex": self.complex.name,
            "pieces": [list(p) for p in self.pieces],
            "partition": self.partition,
        }


@dataclass(frozen=True)
class CoverValidation:
    piece_verdicts: Tuple[Verdict, ...]
    overall: Verdict


@dataclass(frozen=True)
class NerveResult:
    nerve: SimplicialComplex
    multiplicity: int
    index_map: Optional[SimplicialMap] = None


@dataclass(frozen=True)
class CatBound:
    """Upper bound n with the validated cover witnessing it."""
    bound: int
    cover: VertexCover
    validation: CoverValidation
    strategy: str
    optimal: bool = False
    subdivision_depth: int = 0
    trace: Tuple[str, ...] = field(default=())


@dataclass(frozen=True)
class _Ambient:
    vertices: FrozenSet[int]
    presentation: GroupPresentation
    edge_words: EdgeWordMap


@lru_cache(maxsize=256)
def _ambients(X: SimplicialComplex) -> Tuple[_Ambient, ...]:
    groups = []
    for comp in X.components():
        presentation, words = edge_path_presentation(X, comp[0])
        groups.append(_Ambient(frozenset(comp), presentation, words))
    return tuple(groups)


def component_verdicts(X: SimplicialComplex, piece: Sequence[int], C: GroupClass, budget: Budget = Budget()) -> List[Verdict]:
    """One verdict per component of full_subcomplex(X, piece): is its π₁-image in C."""
    verdicts = []
    for ambient in _ambients(X):
        part = [v for v in piece if v in ambient.vertices]
        if not part:
            continue
        image = inclusion_image(X, part, ambient.presentation, ambient.edge_words)
        verdicts.extend(
            classify_component(image.ambient, c.generators, c.presentation, C, budget)
            for c in image.components
        )
    return verdicts


def piece_verdict(X: SimplicialComplex, piece: Sequence[int], C: GroupClass, budget: Budget = Budget()) -> Verdict:
    return Verdict.combine(component_verdicts(X, piece, C, budget), "component ")


def validate_cover(c: VertexCover, C: GroupClass, budget: Budget = Budget()) -> CoverValidation:
    verdicts = tuple(parallel.ordered_map(lambda piece: piece_verdict(c.complex, piece, C, budget), c.pieces))
    overall = Verdict.combine(verdicts, "piece ")
    logger.info("cover of %s with %d pieces against %s: %s", c.complex.name, c.cardinality, C, overall.answer.value)
    return CoverValidation(verdicts, overall)


def multiplicity_and_nerve(c: VertexCover) -> NerveResult:
    where: Dict[int, List[int]] = {}
    for i, piece in enumerate(c.pieces):
        for v in piece:
            where.setdefault(v, []).append(i)
    touched = set()
    for sigma in c.complex.simplices:
        touched.add(tuple(sorted({i for v in sigma for i in where[v]})))
    nerve = build_complex(sorted(touched), f"N({c.complex.name})")
    multiplicity = max((len(s) for s in touched), default=0)
    index_map = None
    if c.partition:
        index_map = SimplicialMap(
            c.complex, nerve, tuple(where[v][0] for v in range(c.complex.vertex_count)), "index"
        )
    return NerveResult(nerve, multiplicity, index_map)


def stars_cover(X: SimplicialComplex) -> VertexCover:
    """Partition of X' by the dimension of each vertex's carrier simplex."""
    step = barycentric_subdivision(X)
    pieces = [[] for _ in range(X.dimension + 1)]
    for v, sigma in enumerate(step.carrier):
        pieces[len(sigma) - 1].append(v)
    return VertexCover(step.subdivided, tuple(tuple(p) for p in pieces), True)


def _stars_bound(X: SimplicialComplex, C: GroupClass, budget: Budget) -> CatBound:
    cover = stars_cover(X)
    validation = validate_cover(cover, C, budget)
    return CatBound(cover.cardinality, cover, validation, "stars", subdivision_depth=1)


def _greedy_bound(X: SimplicialComplex, C: GroupClass, budget: Budget, depth: int) -> CatBound:
    steps = iterated_subdivision(X, max(0, depth - 1))
    base = steps[-1].subdivided if steps else X
    start = stars_cover(base)
    Y = start.complex
    pieces: List[Piece] = list(start.pieces)
    verdicts: List[Verdict] = list(validate_cover(start, C, budget).piece_verdicts)
    trace = [f"start: stars partition of {base.name} with {len(pieces)} pieces"]
    batch = parallel.worker_count()

    merged = True
    while merged and len(pieces) > 1:
        merged = False
        pairs = [(a, b) for a in range(len(pieces)) for b in range(a + 1, len(pieces))]
        for start_at in range(0, len(pairs), batch):
            chunk = pairs[start_at:start_at + batch]
            results = parallel.ordered_map(
                lambda ab: piece_verdict(Y, pieces[ab[0]] + pieces[ab[1]], C, budget), chunk
            )
            hit = next(((ab, v) for ab, v in zip(chunk, results) if v.is_yes), None)
            if hit is not None:
                (a, b), verdict = hit
                union = tuple(sorted(pieces[a] + pieces[b]))
                rest = [(p, v) for i, (p, v) in enumerate(zip(pieces, verdicts)) if i not in (a, b)]
                rest.append((union, verdict))
                rest.sort(key=lambda pv: pv[0])
                pieces = [p for p, _ in rest]
                verdicts = [v for _, v in rest]
                trace.append(f"merged pieces {a} and {b}: {len(pieces)} remain")
                merged = True
                break
    cover = VertexCover(Y, tuple(pieces), True)
    validation = CoverValidation(tuple(verdicts), Verdict.combine(verdicts, "piece "))
    return CatBound(len(pieces), cover, validation, "greedy", subdivision_depth=max(1, depth), trace=tuple(trace))


def _exact_bound(X: SimplicialComplex, C: GroupClass, budget: Budget, cap: int) -> CatBound:
    if X.vertex_count > cap:
        raise UnsupportedInputError(
            f"exact search allows at most {cap} vertices, {X.name} has {X.vertex_count}"
        )
    cache: Dict[Piece, Verdict] = {}
    saw_unknown = False

    def verdict_of(piece: Piece) -> Verdict:
        if piece not in cache:
            cache[piece] = piece_verdict(X, piece, C, budget)
        return cache[piece]

    for k in range(1, X.vertex_count + 1):
        for parts in multiset_partitions(list(range(X.vertex_count)), k):
            pieces = tuple(sorted(tuple(p) for p in parts))
            verdicts = []
            for piece in pieces:
                v = verdict_of(piece)
                verdicts.append(v)
                if v.answer == Answer.UNKNOWN:
                    saw_unknown = True
                if not v.is_yes:
                    break
            else:
                cover = VertexCover(X, pieces, True)
                validation = CoverValidation(tuple(verdicts), Verdict.combine(verdicts, "piece "))
                # an unknown smaller candidate is harmless once the lower bound meets k
                optimal = not saw_unknown or k <= cat_lower(X, C, budget)
                return CatBound(k, cover, validation, "exact", optimal=optimal)
    raise UnsupportedInputError(f"{X.name} has no vertices")


def cat_upper(
    X: SimplicialComplex,
    C: GroupClass,
    strategy: str = "greedy",
    budget: Budget = Budget(),
    exact_vertex_cap: int = DEFAULT_EXACT_VERTEX_CAP,
    greedy_depth: int = DEFAULT_GREEDY_DEPTH,
) -> CatBound:
    """Smallest validated cover found by the strategy; an upper bound for cat_C(X)."""
    if not X.is_connected():
        raise UnsupportedInputError(f"{X.name} is not connected")
    if strategy == "stars":
        result = _stars_bound(X, C, budget)
    elif strategy == "greedy":
        result = _greedy_bound(X, C, budget, greedy_depth)
    elif strategy == "exact":
        result = _exact_bound(X, C, budget, exact_vertex_cap)
    else:
        raise MalformedInputError(f"unknown strategy {strategy!r}")
    logger.info("cat_%s(%s) <= %d (%s)", C, X.name, result.bound, strategy)
    return result


def cat_lower(X: SimplicialComplex, C: GroupClass, budget: Budget = Budget()) -> int:
    """2 when a single C-piece is impossible, else 1."""
    if not X.is_connected():
        raise UnsupportedInputError(f"{X.name} is not connected")
    presentation, _ = edge_path_presentation(X, 0)
    verdict = classify_group(presentation, C, budget)
    return 2 if verdict.answer == Answer.NO else 1


def pullback_cover(f: SimplicialMap, c: VertexCover) -> VertexCover:
    """Preimages of the pieces of a cover of f.target (empty preimages dropped)."""
    if c.complex != f.target:
        raise MalformedInputError("cover does not live on the target of the map")
    pieces = [tuple(sorted(f.preimage(p))) for p in c.pieces]
    return VertexCover(f.source, tuple(p for p in pieces if p), c.partition)


def map_inclusion_image(f: SimplicialMap, piece: Sequence[int]) -> List[ComponentImage]:
    """For each component of full_subcomplex(f.source, piece): its π₁ generators pushed into π₁(f.target)."""
    X, Y = f.source, f.target
    sub = full_subcomplex(X, piece)
    origin = sub.vertex_origin
    images = []
    for comp in sub.components():
        # each component lands in the target component of its first vertex
        target_ambient = next(a for a in _ambients(Y) if f.vertex_map[origin[comp[0]]] in a.vertices)
        _, data = _spanning_data(sub, comp[0])
        presentation, _ = edge_path_presentation(sub, comp[0])
        words = []
        for u, v in data.generator_edges:
            loop = data.path_from_root(u) + list(reversed(data.path_from_root(v)))
            pushed = [f.vertex_map[origin[w]] for w in loop]
            pushed = [w for i, w in enumerate(pushed) if i == 0 or w != pushed[i - 1]]
            words.append(path_word(target_ambient.edge_words, pushed))
        images.append(ComponentImage(
            tuple(origin[w] for w in comp), presentation, tuple(words), target_ambient.presentation
        ))
    return images


def validate_map_cover(f: SimplicialMap, c: VertexCover, C: GroupClass, budget: Budget = Budget()) -> CoverValidation:
    """Check that every piece of a cover of f.source is a C-set for f."""
    if c.complex != f.source:
        raise MalformedInputError("cover does not live on the source of the map")

    def check(piece: Piece) -> Verdict:
        return Verdict.combine(
            [
                classify_component(im.ambient, im.generators, im.presentation, C, budget)
                for im in map_inclusion_image(f, piece)
            ],
            "component ",
        )

    verdicts = tuple(parallel.ordered_map(check, c.pieces))
    return CoverValidation(verdicts, Verdict.combine(verdicts, "piece "))
