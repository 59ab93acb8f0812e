"""
Inference rules over statements.

Each rule reads a snapshot of the store (FactIndex) and yields every
(conclusion, premise ids) instance it can build from it. `hints` lists the
premises that would make a goal derivable; the engine uses them to explain
failed queries.
"""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple

from groups import AMENABLE, ClassKind, GroupClass, LogRate, exp_below, finite_cover_rate, subexp_below
from .statements import Predicate, Statement, entails

P = Predicate
Instance = Tuple[Statement, Tuple[int, ...]]


class FactIndex:
    """Read-only snapshot of the store, grouped by predicate."""

    def __init__(self, facts: Iterable):
        self._by_predicate: Dict[Predicate, List[Tuple[int, Statement]]] = defaultdict(list)
        classes = {}
        for fact in facts:
            self._by_predicate[fact.statement.predicate].append((fact.id, fact.statement))
            for arg in fact.statement.args:
                if isinstance(arg, GroupClass):
                    classes[str(arg)] = arg
        self.classes: List[GroupClass] = [classes[k] for k in sorted(classes)]

    def get(self, predicate: Predicate) -> List[Tuple[int, Statement]]:
        return self._by_predicate.get(predicate, [])

    def holds(self, pattern: Statement) -> bool:
        return any(entails(s, pattern) for _, s in self.get(pattern.predicate))


def _s(predicate: str, *args) -> Statement:
    return Statement.of(predicate, *args)


def _amenable_kind(C: GroupClass) -> bool:
    return C.implies(AMENABLE)


def _r0(ix: FactIndex) -> Iterator[Instance]:
    for pred in (P.CAT_UPPER, P.FCA):
        for i, s in ix.get(pred):
            X, H, n = s.args
            for G in ix.classes:
                if G != H and H.implies(G):
                    yield Statement(pred, (X, G, n)), (i,)
    for i, s in ix.get(P.CAT_LOWER):
        X, G, n = s.args
        for H in ix.classes:
            if H != G and H.implies(G):
                yield _s("cat_lower", X, H, n), (i,)


def _r1(ix: FactIndex) -> Iterator[Instance]:
    for i, bundle in ix.get(P.BUNDLE):
        E, F, B = bundle.args
        for j, cat in ix.get(P.CAT_UPPER):
            if cat.args[0] != F or not cat.args[1].is_subgroup_closed:
                continue
            for k, ls in ix.get(P.LSCAT_UPPER):
                if ls.args[0] == B:
                    yield _s("cat_upper", E, cat.args[1], cat.args[2] * ls.args[1]), (i, j, k)


def _r2(ix: FactIndex) -> Iterator[Instance]:
    for i, s in ix.get(P.CAT_UPPER):
        X, C, n = s.args
        if _amenable_kind(C):
            yield _s("comp_zero", X, n), (i,)
            yield _s("seminorm_zero", X, n), (i,)


def _r3(ix: FactIndex) -> Iterator[Instance]:
    for i, m in ix.get(P.MANIFOLD):
        M, d, oriented, closed, connected = m.args
        if not (oriented and closed and connected):
            continue
        for j, s in ix.get(P.CAT_UPPER):
            if s.args[0] == M and _amenable_kind(s.args[1]) and s.args[2] <= d:
                yield _s("simvol_zero", M), (i, j)


def _r20(ix: FactIndex) -> Iterator[Instance]:
    for i, m in ix.get(P.MANIFOLD):
        M, d, oriented, closed, connected = m.args
        if oriented or not (closed and connected):
            continue
        for j, s in ix.get(P.CAT_UPPER):
            if s.args[0] == M and _amenable_kind(s.args[1]) and s.args[2] <= d:
                yield _s("simvol_zero", M), (i, j)


def _r4(ix: FactIndex) -> Iterator[Instance]:
    for i, t in ix.get(P.MAPPING_TORUS):
        M, N = t.args
        for j, s in ix.get(P.CAT_UPPER):
            _, C, n = s.args
            if s.args[0] != N or not C.is_subgroup_closed:
                continue
            yield _s("cat_upper", M, C, 2 * n), (i, j)
            for k, dim in ix.get(P.DIMENSION):
                if dim.args[0] == N and 2 * n <= dim.args[1] + 1:
                    yield _s("cat_upper", M, C, dim.args[1] + 1), (i, j, k)


def _r5(ix: FactIndex) -> Iterator[Instance]:
    for i, dim in ix.get(P.DIMENSION):
        for C in ix.classes:
            yield _s("cat_upper", dim.args[0], C, dim.args[1] + 1), (i,)


def _r6(ix: FactIndex) -> Iterator[Instance]:
    for i, eq in ix.get(P.PI1_EQUIVALENT):
        X, Y = eq.args
        for j, s in ix.get(P.CAT_UPPER):
            Z, C, n = s.args
            if Z == X:
                yield _s("cat_upper", Y, C, n), (i, j)
            elif Z == Y:
                yield _s("cat_upper", X, C, n), (i, j)


def _r7(ix: FactIndex) -> Iterator[Instance]:
    for i, s in ix.get(P.FCA):
        X, C, k = s.args
        yield _s("cat_upper", X, C, k + 1), (i,)


def _r8(ix: FactIndex) -> Iterator[Instance]:
    for i, s in ix.get(P.CAT_UPPER):
        X, C, n = s.args
        if n >= 1 and C.is_subgroup_closed:
            yield _s("fca", X, C, n - 1), (i,)


def _r9(ix: FactIndex) -> Iterator[Instance]:
    for i, s in ix.get(P.FCA):
        X, C, k = s.args
        for j, dim in ix.get(P.DIMENSION):
            n = dim.args[1]
            if dim.args[0] == X and k < n and C.implies(subexp_below(Fraction(n - k, n))):
                yield _s("ent_zero", X), (i, j)


def _r10a(ix: FactIndex) -> Iterator[Instance]:
    for i, s in ix.get(P.CAT_LOWER):
        X, C, m = s.args
        if C.kind != ClassKind.EXP_BELOW:
            continue
        for j, dim in ix.get(P.DIMENSION):
            if dim.args[0] == X and m >= dim.args[1] + 1:
                yield _s("fnca", X, C.rate), (i, j)


def _r10b(ix: FactIndex) -> Iterator[Instance]:
    for i, s in ix.get(P.FNCA):
        if s.args[1].value > 0:
            yield _s("ent_positive", s.args[0]), (i,)


def _r11(ix: FactIndex) -> Iterator[Instance]:
    for i, s in ix.get(P.FNCA):
        cover, delta = s.args
        for j, fc in ix.get(P.FINITE_COVER):
            if fc.args[0] == cover and fc.args[2] >= 1:
                yield _s("fnca", fc.args[1], finite_cover_rate(delta, fc.args[2])), (i, j)


def _r12(ix: FactIndex) -> Iterator[Instance]:
    dims = {}
    for k, dim in ix.get(P.DIMENSION):
        dims.setdefault(dim.args[0], (k, dim.args[1]))
    for i, bundle in ix.get(P.BUNDLE):
        M, N, B = bundle.args
        if M not in dims or B not in dims or dims[M][1] < 1:
            continue
        (km, m), (kb, b) = dims[M], dims[B]
        for j, s in ix.get(P.CAT_UPPER):
            _, C, n = s.args
            if s.args[0] == N and n * (b + 1) <= m and C.implies(subexp_below(Fraction(1, m))):
                yield _s("ent_zero", M), (i, j, km, kb)


def _r13(ix: FactIndex) -> Iterator[Instance]:
    for i, sub in ix.get(P.SUBDIVISION):
        Y, X = sub.args
        other = {X: Y, Y: X}
        for pred in (P.ENT_ZERO, P.ENT_POSITIVE, P.ENT_LOWER):
            for j, s in ix.get(pred):
                if s.args[0] in other:
                    yield Statement(pred, (other[s.args[0]],) + s.args[1:]), (i, j)


def _r14(ix: FactIndex) -> Iterator[Instance]:
    for i, w in ix.get(P.WEDGE_POWER):
        Z, Y, m = w.args
        if m < 1:
            continue
        for j, s in ix.get(P.ENT_LOWER):
            if s.args[0] == Y:
                yield _s("ent_lower", Z, LogRate(s.args[1].value * m)), (i, j)
        for j, s in ix.get(P.ENT_POSITIVE):
            if s.args[0] == Y:
                yield _s("ent_positive", Z), (i, j)
    for i, w in ix.get(P.WEDGE):
        W, A, B = w.args
        lowers = ix.get(P.ENT_LOWER)
        for j, a in lowers:
            if a.args[0] != A:
                continue
            for k, b in lowers:
                if b.args[0] == B:
                    yield _s("ent_lower", W, LogRate(a.args[1].value + b.args[1].value)), (i, j, k)
        for j, s in ix.get(P.ENT_POSITIVE):
            if s.args[0] in (A, B):
                yield _s("ent_positive", W), (i, j)
    for i, s in ix.get(P.ENT_LOWER):
        if s.args[1].value > 0:
            yield _s("ent_positive", s.args[0]), (i,)


def _r15(ix: FactIndex) -> Iterator[Instance]:
    cats = ix.get(P.CAT_UPPER)
    for i, m in ix.get(P.MAP):
        f, X, Y = m.args
        for j, s in cats:
            if s.args[0] in (X, Y):
                yield _s("map_cat_upper", f, s.args[1], s.args[2]), (i, j)
    for i, c in ix.get(P.COMPOSITE):
        h, g, f = c.args
        for j, s in ix.get(P.MAP_CAT_UPPER):
            if s.args[0] in (g, f):
                yield _s("map_cat_upper", h, s.args[1], s.args[2]), (i, j)
    for i, inc in ix.get(P.FIBRE_INCLUSION):
        iota, F, E = inc.args
        for j, s in cats:
            if s.args[0] in (F, E):
                yield _s("map_cat_upper", iota, s.args[1], s.args[2]), (i, j)
        for j, s in ix.get(P.MAP_CAT_UPPER):
            if s.args[0] == iota and s.args[1].is_extension_closed:
                yield _s("cat_upper", F, s.args[1], s.args[2]), (i, j)


def _r16(ix: FactIndex) -> Iterator[Instance]:
    for i, dim in ix.get(P.DIMENSION):
        yield _s("lscat_upper", dim.args[0], dim.args[1] + 1), (i,)


def _r17(ix: FactIndex) -> Iterator[Instance]:
    for i, pos in ix.get(P.SIMVOL_POSITIVE):
        for j, m in ix.get(P.MANIFOLD):
            M, d, oriented, closed, connected = m.args
            if M == pos.args[0] and oriented and closed and connected:
                yield _s("cat_lower", M, AMENABLE, d + 1), (i, j)


def _r18(ix: FactIndex) -> Iterator[Instance]:
    for i, dich in ix.get(P.AMENABLE_OR_UEXP):
        M, delta = dich.args
        if delta.value <= 0:
            continue
        for j, s in ix.get(P.CAT_LOWER):
            if s.args[0] == M and s.args[1].kind == ClassKind.AMENABLE:
                yield _s("cat_lower", M, exp_below(delta.value), s.args[2]), (i, j)


def _r19(ix: FactIndex) -> Iterator[Instance]:
    for i, s in ix.get(P.UEXP_LOWER):
        X, delta = s.args
        if delta.value > 0:
            yield _s("cat_lower", X, exp_below(delta.value), 2), (i,)


# hints: goal -> premises that would derive it (wildcards allowed)

def _first(ix: FactIndex, predicate: Predicate, subject: str) -> Optional[Statement]:
    return next((s for _, s in ix.get(predicate) if s.args[0] == subject), None)


def _h_r1(goal: Statement, ix: FactIndex) -> List[Statement]:
    E, C, n = goal.args
    bundle = _first(ix, P.BUNDLE, E)
    if bundle is None:
        return [_s("bundle", E, "_", "_")]
    return [bundle, _s("cat_upper", bundle.args[1], C, "_"), _s("lscat_upper", bundle.args[2], "_")]


def _h_r3(goal: Statement, ix: FactIndex) -> List[Statement]:
    M = goal.args[0]
    m = next((s for _, s in ix.get(P.MANIFOLD) if s.args[0] == M and all(s.args[2:])), None)
    if m is None:
        return [_s("manifold", M, "_", True, True, True), _s("cat_upper", M, AMENABLE, "_")]
    return [m, _s("cat_upper", M, AMENABLE, m.args[1])]


def _h_r4(goal: Statement, ix: FactIndex) -> List[Statement]:
    M, C, n = goal.args
    torus = _first(ix, P.MAPPING_TORUS, M)
    if torus is None:
        return [_s("mapping_torus", M, "_")]
    return [torus, _s("cat_upper", torus.args[1], C, n // 2 if n is not None else "_")]


def _h_r5(goal: Statement, ix: FactIndex) -> List[Statement]:
    X, _, n = goal.args
    return [_s("dimension", X, n - 1 if n else "_")]


def _h_r7(goal: Statement, ix: FactIndex) -> List[Statement]:
    X, C, n = goal.args
    return [_s("fca", X, C, n - 1 if n else "_")]


def _h_r8(goal: Statement, ix: FactIndex) -> List[Statement]:
    X, C, k = goal.args
    return [_s("cat_upper", X, C, k + 1 if k is not None else "_")]


def _h_r9(goal: Statement, ix: FactIndex) -> List[Statement]:
    X = goal.args[0]
    dim = _first(ix, P.DIMENSION, X)
    if dim is None or dim.args[1] < 1:
        return [_s("dimension", X, "_"), _s("fca", X, "_", "_")]
    n = dim.args[1]
    return [dim, _s("fca", X, subexp_below(Fraction(1, n)), n - 1)]


def _h_r10a(goal: Statement, ix: FactIndex) -> List[Statement]:
    X, delta = goal.args
    dim = _first(ix, P.DIMENSION, X)
    if dim is None or delta is None or delta.value <= 0:
        return [_s("dimension", X, "_"), _s("cat_lower", X, "_", "_")]
    return [dim, _s("cat_lower", X, exp_below(delta.value), dim.args[1] + 1)]


def _h_r10b(goal: Statement, ix: FactIndex) -> List[Statement]:
    return [_s("fnca", goal.args[0], "_")]


def _h_r16(goal: Statement, ix: FactIndex) -> List[Statement]:
    B, b = goal.args
    return [_s("dimension", B, b - 1 if b else "_")]


def _h_r17(goal: Statement, ix: FactIndex) -> List[Statement]:
    M, _, n = goal.args
    return [_s("simvol_positive", M), _s("manifold", M, n - 1 if n else "_", True, True, True)]


def _h_r19(goal: Statement, ix: FactIndex) -> List[Statement]:
    X, C, _ = goal.args
    return [_s("uexp_lower", X, C.rate if C is not None and C.rate is not None else "_")]


@dataclass(frozen=True)
class Rule:
    rule_id: str
    name: str
    citation: str
    apply: Callable[[FactIndex], Iterator[Instance]]
    concludes: Tuple[Predicate, ...]
    hints: Optional[Callable[[Statement, FactIndex], List[Statement]]] = None
    external: bool = False


rule_catalog = {
    "R0": {
        "rule": "Class monotonicity",
        "citation": "if H is contained in G then cat_G <= cat_H",
        "apply": _r0, "concludes": (P.CAT_UPPER, P.FCA, P.CAT_LOWER),
    },
    "R1": {
        "rule": "Fibration bound",
        "citation": "cat_G(E) <= cat_G(F) * lscat(B) for a fibration F -> E -> B",
        "apply": _r1, "concludes": (P.CAT_UPPER,), "hints": _h_r1,
    },
    "R2": {
        "rule": "Gromov vanishing",
        "citation": "comparison maps and l1-seminorms vanish in every degree s >= amcat(X)",
        "apply": _r2, "concludes": (P.COMP_ZERO, P.SEMINORM_ZERO),
    },
    "R3": {
        "rule": "Manifold vanishing",
        "citation": "an oriented closed connected manifold with amcat(M) <= dim M has zero simplicial volume",
        "apply": _r3, "concludes": (P.SIMVOL_ZERO,), "hints": _h_r3,
    },
    "R4": {
        "rule": "Mapping torus",
        "citation": "cat_G(M) <= 2 cat_G(N), and cat_G(M) <= dim M once 2 cat_G(N) <= dim N + 1",
        "apply": _r4, "concludes": (P.CAT_UPPER,), "hints": _h_r4,
    },
    "R5": {
        "rule": "Dimension bound",
        "citation": "open stars of the barycentric subdivision give cat_G(X) <= dim X + 1",
        "apply": _r5, "concludes": (P.CAT_UPPER,), "hints": _h_r5,
    },
    "R6": {
        "rule": "Fundamental group invariance",
        "citation": "cat_G only depends on the space through its fundamental group data",
        "apply": _r6, "concludes": (P.CAT_UPPER,),
    },
    "R7": {
        "rule": "FCA to category",
        "citation": "a map to a k-dimensional complex with G-fibres gives cat_G(X) <= k + 1",
        "apply": _r7, "concludes": (P.CAT_UPPER,), "hints": _h_r7,
    },
    "R8": {
        "rule": "Category to FCA",
        "citation": "a G-cover of cardinality k + 1 collapses onto its k-dimensional nerve after subdivision",
        "apply": _r8, "concludes": (P.FCA,), "hints": _h_r8,
    },
    "R9": {
        "rule": "Entropy vanishing",
        "citation": "the fibre collapsing assumption for Subexp<(n-k)/n in dimension k forces ent(X) = 0",
        "apply": _r9, "concludes": (P.ENT_ZERO,), "hints": _h_r9,
    },
    "R10a": {
        "rule": "Non-collapsing from category",
        "citation": "cat_{Exp<d}(X) = dim X + 1 gives the fibre non-collapsing condition for d",
        "apply": _r10a, "concludes": (P.FNCA,), "hints": _h_r10a,
    },
    "R10b": {
        "rule": "Entropy positivity",
        "citation": "the fibre non-collapsing condition forces ent(X) > 0",
        "apply": _r10b, "concludes": (P.ENT_POSITIVE,), "hints": _h_r10b,
    },
    "R11": {
        "rule": "Finite covers",
        "citation": "a non-collapsing rate d of a k-sheeted cover gives rate d/(2k-1) downstairs",
        "apply": _r11, "concludes": (P.FNCA,),
    },
    "R12": {
        "rule": "Entropy of fibre bundles",
        "citation": "cat_{Subexp<1/dim M}(N) * (dim B + 1) <= dim M forces ent(M) = 0",
        "apply": _r12, "concludes": (P.ENT_ZERO,),
    },
    "R13": {
        "rule": "Subdivision invariance",
        "citation": "minimal volume entropy is unchanged by barycentric subdivision",
        "apply": _r13, "concludes": (P.ENT_ZERO, P.ENT_POSITIVE, P.ENT_LOWER),
    },
    "R14": {
        "rule": "Wedge entropy",
        "citation": "the entropy of a wedge is at least the sum of the entropies of its summands",
        "apply": _r14, "concludes": (P.ENT_LOWER, P.ENT_POSITIVE), "external": True,
    },
    "R15": {
        "rule": "Map bounds",
        "citation": "cat_G(g o f) <= min(cat_G(g), cat_G(f)) and cat_G(f) <= min(cat_G(X), cat_G(Y)); "
                    "the fibre inclusion and the fibre agree for extension-closed classes",
        "apply": _r15, "concludes": (P.MAP_CAT_UPPER, P.CAT_UPPER),
    },
    "R16": {
        "rule": "LS-category dimension bound",
        "citation": "lscat(B) <= dim B + 1",
        "apply": _r16, "concludes": (P.LSCAT_UPPER,), "hints": _h_r16,
    },
    "R17": {
        "rule": "Positive volume",
        "citation": "positive simplicial volume forces amcat(M) = dim M + 1",
        "apply": _r17, "concludes": (P.CAT_LOWER,), "hints": _h_r17,
    },
    "R18": {
        "rule": "Amenable or uniformly exponential",
        "citation": "when every f.g. subgroup is amenable or of uniform exponential growth >= d, "
                    "Exp<d-sets are amenable sets",
        "apply": _r18, "concludes": (P.CAT_LOWER,),
    },
    "R19": {
        "rule": "Uniform growth obstruction",
        "citation": "a fundamental group of uniform exponential growth >= d is not in Exp<d",
        "apply": _r19, "concludes": (P.CAT_LOWER,), "hints": _h_r19,
    },
    "R20": {
        "rule": "Orientation double cover",
        "citation": "amenable covers pull back to the orientation double cover, so a non-orientable "
                    "closed connected manifold with amcat(M) <= dim M has zero simplicial volume",
        "apply": _r20, "concludes": (P.SIMVOL_ZERO,),
    },
}

RULES: Tuple[Rule, ...] = tuple(
    Rule(
        rule_id, info["rule"], info["citation"], info["apply"], info["concludes"],
        info.get("hints"), info.get("external", False),
    )
    for rule_id, info in rule_catalog.items()
)

rule_lookup: Dict[str, Rule] = {rule.rule_id: rule for rule in RULES}
