"""
Point-fibres of simplicial maps and the fibre collapsing assumption.

The fibre over an open simplex τ of the target is represented by the full
subcomplex of the source subdivision on the barycenters b_σ with f(σ) = τ;
fibre type is constant over open simplices, so one fibre per target
simplex covers every point.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import parallel
from complexes import (
    Simplex,
    SimplicialComplex,
    SimplicialMap,
    SubdivisionCarrier,
    barycentric_subdivision,
    full_subcomplex,
)
from covers import VertexCover, component_verdicts, multiplicity_and_nerve
from errors import MalformedInputError, UnsupportedInputError
from groups import Answer, Budget, GroupClass, Verdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FibreReport:
    target_simplex: Simplex
    fibre: SimplicialComplex
    component_verdicts: Tuple[Verdict, ...]
    overall: Verdict


@dataclass(frozen=True)
class FcaResult:
    verdict: Verdict
    reports: Tuple[FibreReport, ...]
    k: int


def _fibre_vertices(f: SimplicialMap, step: SubdivisionCarrier, tau: Simplex) -> List[int]:
    if tuple(tau) not in f.target.simplices:
        raise MalformedInputError(f"{list(tau)} is not a simplex of {f.target.name}")
    return [v for v, sigma in enumerate(step.carrier) if f.image(sigma) == tuple(tau)]


def point_fibre(f: SimplicialMap, tau: Sequence[int]) -> SimplicialComplex:
    step = barycentric_subdivision(f.source)
    tau = tuple(sorted(tau))
    return full_subcomplex(step.subdivided, _fibre_vertices(f, step, tau), f"{f.name}^-1{list(tau)}")


def check_fca(f: SimplicialMap, C: GroupClass, k: int, budget: Budget = Budget()) -> FcaResult:
    """Whether f witnesses the fibre collapsing assumption for C in dimension k."""
    if f.target.dimension > k:
        note = f"target dimension {f.target.dimension} exceeds {k}"
        return FcaResult(Verdict(Answer.NO, (note,)), (), k)

    step = barycentric_subdivision(f.source)
    X = step.subdivided

    def report(tau: Simplex) -> FibreReport:
        vertices = _fibre_vertices(f, step, tau)
        verdicts = tuple(component_verdicts(X, vertices, C, budget))
        fibre = full_subcomplex(X, vertices, f"{f.name}^-1{list(tau)}")
        return FibreReport(tau, fibre, verdicts, Verdict.combine(verdicts, "component "))

    reports = tuple(parallel.ordered_map(report, f.target.sorted_simplices()))
    verdict = Verdict.combine([r.overall for r in reports], "fibre ")
    logger.info("FCA for %s against %s in dimension %d: %s", f.name, C, k, verdict.answer.value)
    return FcaResult(verdict, reports, k)


def cover_to_fca_witness(
    X: SimplicialComplex, partition: VertexCover, C: GroupClass, budget: Budget = Budget()
) -> Tuple[SimplicialMap, FcaResult]:
    """Nerve index map of a partition, checked for FCA in dimension multiplicity - 1."""
    if not partition.partition:
        raise UnsupportedInputError("an FCA witness needs a partition cover")
    if partition.complex != X:
        raise MalformedInputError(f"cover does not live on {X.name}")
    nerve = multiplicity_and_nerve(partition)
    return nerve.index_map, check_fca(nerve.index_map, C, nerve.multiplicity - 1, budget)


def fca_to_cover(f: SimplicialMap) -> VertexCover:
    """Partition of the source subdivision by the dimension of f(σ) for each barycenter b_σ.

    Two adjacent barycenters with images of equal dimension have equal images,
    so every piece's components sit inside single point-fibres.
    """
    step = barycentric_subdivision(f.source)
    groups: List[List[int]] = [[] for _ in range(f.target.dimension + 1)]
    for v, sigma in enumerate(step.carrier):
        groups[len(f.image(sigma)) - 1].append(v)
    return VertexCover(step.subdivided, tuple(tuple(g) for g in groups if g), True)
