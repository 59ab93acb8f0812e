"""
Fact store, forward-chaining saturation and goal queries.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Tuple

import parallel
from complexes import SimplicialComplex, SimplicialMap
from covers import VertexCover, cat_lower, validate_cover, validate_map_cover
from errors import MalformedInputError, UnsupportedInputError
from fca import check_fca
from groups import Budget
from settings import DEFAULT_MAX_FACTS, DEFAULT_SATURATION_ROUNDS
from .rules import RULES, FactIndex, Rule, rule_lookup
from .statements import Predicate, Statement, entails

logger = logging.getLogger(__name__)


class ProvenanceKind(str, Enum):
    AXIOM = "axiom"
    COMPUTED = "computed"
    DERIVED = "derived"


@dataclass(frozen=True)
class Provenance:
    kind: ProvenanceKind
    citation: str = ""
    witness: Any = None
    rule_id: str = ""
    premises: Tuple[int, ...] = ()

    def label(self) -> str:
        if self.kind == ProvenanceKind.DERIVED:
            rule = rule_lookup[self.rule_id]
            external = " (external axiom)" if rule.external else ""
            return f"[{self.rule_id}] {rule.citation}{external}"
        if self.kind == ProvenanceKind.AXIOM:
            return f"[axiom] {self.citation}"
        return f"[computed] {self.citation}"


@dataclass(frozen=True)
class Fact:
    id: int
    statement: Statement
    provenance: Provenance
    depth: int = 0


def _check_witness(statement: Statement, witness: Any, budget: Budget) -> str:
    """Validate a computed fact's witness; returns a short description of it."""
    pred, args = statement.predicate, statement.args
    if pred == Predicate.CAT_UPPER and isinstance(witness, VertexCover):
        space, C, n = args
        if witness.complex.name != space:
            raise MalformedInputError(f"witness cover lives on {witness.complex.name}, not {space}")
        if witness.cardinality > n:
            raise MalformedInputError(f"witness cover has {witness.cardinality} pieces, more than {n}")
        if not validate_cover(witness, C, budget).overall.is_yes:
            raise MalformedInputError(f"witness cover does not validate against {C}")
        return f"validated {witness.cardinality}-piece cover of {space}"
    if pred == Predicate.CAT_LOWER and isinstance(witness, SimplicialComplex):
        space, C, n = args
        if witness.name != space or cat_lower(witness, C, budget) < n:
            raise MalformedInputError(f"cat_lower of {witness.name} does not reach {n}")
        return f"fundamental group of {space} is not in {C}"
    if pred == Predicate.DIMENSION and isinstance(witness, SimplicialComplex):
        space, d = args
        if witness.name != space or witness.dimension != d:
            raise MalformedInputError(f"{witness.name} does not have dimension {d}")
        return f"complex {space}"
    if pred == Predicate.FCA and isinstance(witness, SimplicialMap):
        space, C, k = args
        if witness.source.name != space:
            raise MalformedInputError(f"witness map starts at {witness.source.name}, not {space}")
        if not check_fca(witness, C, k, budget).verdict.is_yes:
            raise MalformedInputError(f"witness map {witness.name} does not satisfy FCA for {C} in dimension {k}")
        return f"simplicial map {witness.name}: {space} -> {witness.target.name}"
    if pred == Predicate.MAP_CAT_UPPER and isinstance(witness, tuple) and len(witness) == 2:
        f, cover = witness
        name, C, n = args
        if f.name != name or cover.cardinality > n:
            raise MalformedInputError(f"map cover witness does not bound {name} by {n}")
        if not validate_map_cover(f, cover, C, budget).overall.is_yes:
            raise MalformedInputError(f"witness cover is not a {C}-cover for {name}")
        return f"validated {cover.cardinality}-piece cover for {name}"
    raise UnsupportedInputError(f"no computed witness of this kind for {pred.value}")


class FactStore:
    """Single-writer store; fact ids are positions in insertion order."""

    def __init__(self, budget: Budget = Budget()):
        self.budget = budget
        self._facts: List[Fact] = []
        self._ids: Dict[Statement, int] = {}

    def __len__(self) -> int:
        return len(self._facts)

    def __iter__(self) -> Iterator[Fact]:
        return iter(self._facts)

    def get(self, fact_id: int) -> Fact:
        return self._facts[fact_id]

    def find(self, statement: Statement) -> Optional[Fact]:
        fact_id = self._ids.get(statement)
        return None if fact_id is None else self._facts[fact_id]

    def _add(self, statement: Statement, provenance: Provenance, depth: int) -> int:
        if not statement.is_ground:
            raise MalformedInputError(f"facts cannot contain wildcards: {statement}")
        existing = self._ids.get(statement)
        if existing is not None:
            return existing
        fact = Fact(len(self._facts), statement, provenance, depth)
        self._facts.append(fact)
        self._ids[statement] = fact.id
        return fact.id

    def assert_axiom(self, statement: Statement, citation: str) -> int:
        if not citation or not citation.strip():
            raise MalformedInputError(f"axiom {statement} needs a citation")
        return self._add(statement, Provenance(ProvenanceKind.AXIOM, citation.strip()), 0)

    def add_computed(self, statement: Statement, witness: Any) -> int:
        description = _check_witness(statement, witness, self.budget)
        return self._add(statement, Provenance(ProvenanceKind.COMPUTED, description, witness), 0)

    def add_derived(self, statement: Statement, rule_id: str, premises: Tuple[int, ...]) -> int:
        for p in premises:
            if not 0 <= p < len(self._facts):
                raise MalformedInputError(f"premise {p} does not exist")
        depth = 1 + max((self._facts[p].depth for p in premises), default=0)
        return self._add(statement, Provenance(ProvenanceKind.DERIVED, rule_id=rule_id, premises=premises), depth)


@dataclass(frozen=True)
class Contradiction:
    description: str
    fact_ids: Tuple[int, int]


@dataclass
class SaturationReport:
    derived: List[int] = field(default_factory=list)
    rounds: int = 0
    exhausted: bool = False
    reason: str = ""
    contradictions: List[Contradiction] = field(default_factory=list)


def _instances(rule: Rule, index: FactIndex) -> List[Tuple[Statement, Tuple[int, ...]]]:
    return list(rule.apply(index))


def saturate(
    store: FactStore,
    max_rounds: int = DEFAULT_SATURATION_ROUNDS,
    max_facts: int = DEFAULT_MAX_FACTS,
) -> SaturationReport:
    """Apply every rule until nothing new appears or the budget runs out.

    Each round evaluates all rules against the same snapshot and commits the
    new conclusions in (rule, premise ids) order, so a fact's first
    derivation is one of minimal depth.
    """
    report = SaturationReport()
    order = {rule.rule_id: i for i, rule in enumerate(RULES)}
    while True:
        if report.rounds >= max_rounds:
            report.exhausted, report.reason = True, f"stopped after {max_rounds} rounds"
            break
        report.rounds += 1
        index = FactIndex(store)
        per_rule = parallel.ordered_map(lambda rule: _instances(rule, index), RULES)
        candidates = sorted(
            ((order[rule.rule_id], premises, str(statement), rule.rule_id, statement)
             for rule, found in zip(RULES, per_rule)
             for statement, premises in found),
            key=lambda c: c[:3],
        )
        added = 0
        for _, premises, _, rule_id, statement in candidates:
            if store.find(statement) is not None:
                continue
            if len(store) >= max_facts:
                report.exhausted, report.reason = True, f"fact limit {max_facts} reached"
                break
            report.derived.append(store.add_derived(statement, rule_id, premises))
            added += 1
        logger.debug("saturation round %d added %d facts", report.rounds, added)
        if report.exhausted or added == 0:
            break
    if report.exhausted:
        logger.warning("saturation budget exhausted: %s", report.reason)
    report.contradictions = find_contradictions(store)
    for c in report.contradictions:
        logger.warning("contradiction: %s", c.description)
    logger.info("saturation derived %d facts in %d rounds", len(report.derived), report.rounds)
    return report


def find_contradictions(store: FactStore) -> List[Contradiction]:
    found: List[Contradiction] = []
    by_pred: Dict[Predicate, List[Fact]] = {}
    for fact in store:
        by_pred.setdefault(fact.statement.predicate, []).append(fact)

    def clash(a: Predicate, b: Predicate, same, text: str) -> None:
        for x in by_pred.get(a, []):
            for y in by_pred.get(b, []):
                if same(x.statement, y.statement):
                    found.append(Contradiction(f"{x.statement} vs {y.statement}: {text}", (x.id, y.id)))

    subject = lambda s, t: s.args[0] == t.args[0]
    clash(Predicate.SIMVOL_ZERO, Predicate.SIMVOL_POSITIVE, subject, "simplicial volume")
    clash(Predicate.ENT_ZERO, Predicate.ENT_POSITIVE, subject, "minimal volume entropy")
    clash(Predicate.ENT_ZERO, Predicate.ENT_LOWER, lambda s, t: subject(s, t) and t.args[1].value > 0,
          "minimal volume entropy")
    clash(
        Predicate.CAT_UPPER, Predicate.CAT_LOWER,
        lambda s, t: subject(s, t) and s.args[1].without_closure() == t.args[1].without_closure()
        and s.args[2] < t.args[2],
        "category bounds",
    )
    return found


@dataclass(frozen=True)
class TraceNode:
    fact: Fact
    children: Tuple["TraceNode", ...] = ()

    @property
    def depth(self) -> int:
        return self.fact.depth

    def rule_ids(self) -> List[str]:
        """Rule ids in the order they were applied (premises first)."""
        ids: List[str] = []
        for child in self.children:
            ids.extend(r for r in child.rule_ids() if r not in ids)
        if self.fact.provenance.kind == ProvenanceKind.DERIVED and self.fact.provenance.rule_id not in ids:
            ids.append(self.fact.provenance.rule_id)
        return ids

    def render(self, indent: int = 0) -> List[str]:
        lines = ["  " * indent + f"{self.fact.statement}  {self.fact.provenance.label()}"]
        for child in self.children:
            lines.extend(child.render(indent + 1))
        return lines


@dataclass(frozen=True)
class QueryResult:
    goal: Statement
    trace: Optional[TraceNode]
    missing: Tuple[Tuple[str, Tuple[Statement, ...]], ...] = ()

    @property
    def success(self) -> bool:
        return self.trace is not None

    def render(self) -> str:
        if self.trace is not None:
            return "\n".join(self.trace.render())
        lines = [f"cannot derive {self.goal}"]
        for rule_id, premises in self.missing:
            lines.append(f"  {rule_id} needs: " + ", ".join(str(p) for p in premises))
        return "\n".join(lines)


def _trace(store: FactStore, fact: Fact) -> TraceNode:
    children = tuple(_trace(store, store.get(p)) for p in fact.provenance.premises)
    return TraceNode(fact, children)


def _missing(store: FactStore, goal: Statement) -> Tuple[Tuple[str, Tuple[Statement, ...]], ...]:
    index = FactIndex(store)
    options = []
    for rule in RULES:
        if rule.hints is None or goal.predicate not in rule.concludes:
            continue
        lacking = tuple(p for p in rule.hints(goal, index) if not index.holds(p))
        if lacking:
            options.append((len(lacking), rule.rule_id, lacking))
    if not options:
        return ()
    fewest = min(n for n, _, _ in options)
    return tuple((rule_id, lacking) for n, rule_id, lacking in options if n == fewest)


def query(store: FactStore, goal: Statement) -> QueryResult:
    """Minimal-depth derivation of a fact entailing `goal`, or the closest missing premises."""
    matches = [f for f in store if entails(f.statement, goal)]
    if not matches:
        return QueryResult(goal, None, _missing(store, goal))
    best = min(matches, key=lambda f: (f.depth, f.id))
    return QueryResult(goal, _trace(store, best))
