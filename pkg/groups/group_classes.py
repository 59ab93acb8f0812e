"""
Group classes, growth rates and three-valued membership oracles.

Every Yes or No carries the rules that produced it; anything else is Unknown.
"""

import logging
import re
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import List, Optional, Sequence, Tuple

from errors import MalformedInputError
from settings import DEFAULT_MAX_COSETS, DEFAULT_TIETZE_MOVES
from .abelian import abelianization
from .coset_enumeration import Index, generators_commute, todd_coxeter
from .presentation import GroupPresentation, Pi1Image
from .stallings import subgroup_rank
from .tietze import Simplification, simplify_with_map
from .words import Word, cyclic_reduce, exponent_sums, free_reduce, substitute

logger = logging.getLogger(__name__)


class RoundingMode(str, Enum):
    LOWER_BOUND = "lower"
    UPPER_BOUND = "upper"


def render_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class LogRate:
    """Natural-log exponential growth rate, kept as an exact rational."""
    value: Fraction
    rounding: RoundingMode = RoundingMode.LOWER_BOUND
    base: str = "e"

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if self.value < 0:
            raise MalformedInputError("growth rates are nonnegative")

    @classmethod
    def parse(cls, text: str, rounding: RoundingMode = RoundingMode.LOWER_BOUND) -> "LogRate":
        try:
            return cls(Fraction(text.strip()), rounding)
        except (ValueError, ZeroDivisionError):
            raise MalformedInputError(f"not a rational rate: {text!r}") from None

    def divided_by(self, k: int) -> "LogRate":
        return LogRate(self.value / k, self.rounding, self.base)

    def __str__(self) -> str:
        return render_fraction(self.value)


# log 3 = 1.0986122886..., floored at nine decimals
LOG3_LOWER = LogRate(Fraction(1098612288, 10 ** 9), RoundingMode.LOWER_BOUND)


def finite_cover_rate(delta: LogRate, d: int) -> LogRate:
    """Rate inherited by a group containing the given one with index d: the (2d-1)-th root."""
    if d < 1:
        raise ValueError("cover degree must be at least 1")
    return delta.divided_by(2 * d - 1)


class ClassKind(str, Enum):
    TRIVIAL = "trivial"
    FINITE = "finite"
    ABELIAN = "abelian"
    AMENABLE = "amenable"
    POLY = "poly"
    SUBEXP_BELOW = "subexp<"
    SUBEXP = "subexp"
    EXP_BELOW = "exp<"


_RATED = (ClassKind.SUBEXP_BELOW, ClassKind.EXP_BELOW)
# kinds that contain every finite and every abelian (f.g.) group
_CONTAINS_POLY = (
    ClassKind.POLY, ClassKind.SUBEXP_BELOW, ClassKind.SUBEXP, ClassKind.AMENABLE, ClassKind.EXP_BELOW,
)
_AMENABLE_SUBCLASSES = (
    ClassKind.TRIVIAL, ClassKind.FINITE, ClassKind.ABELIAN, ClassKind.POLY,
    ClassKind.SUBEXP_BELOW, ClassKind.SUBEXP, ClassKind.AMENABLE,
)


@dataclass(frozen=True)
class GroupClass:
    kind: ClassKind
    rate: Optional[LogRate] = None
    fg_closure_applied: bool = False

    def __post_init__(self):
        if self.kind in _RATED:
            if self.rate is None or self.rate.value <= 0:
                raise MalformedInputError(f"{self.kind.value} needs a strictly positive rate")
        elif self.rate is not None:
            raise MalformedInputError(f"{self.kind.value} takes no rate")

    @classmethod
    def parse(cls, descriptor: str) -> "GroupClass":
        text = descriptor.strip().lower()
        closure = False
        match = re.fullmatch(r"bar\((.*)\)", text)
        if match:
            closure, text = True, match.group(1).strip()
        for kind in _RATED:
            if text.startswith(kind.value):
                return cls(kind, LogRate.parse(text[len(kind.value):]), closure)
        try:
            return cls(ClassKind(text), None, closure)
        except ValueError:
            raise MalformedInputError(f"unknown group class {descriptor!r}") from None

    def __str__(self) -> str:
        text = self.kind.value + (str(self.rate) if self.rate is not None else "")
        return f"bar({text})" if self.fg_closure_applied else text

    def without_closure(self) -> "GroupClass":
        return replace(self, fg_closure_applied=False)

    @property
    def is_subgroup_closed(self) -> bool:
        # Exp_{<δ} is not closed under finitely generated subgroups
        return self.kind != ClassKind.EXP_BELOW

    @property
    def is_extension_closed(self) -> bool:
        """Closed under extensions with abelian kernel."""
        return self.kind == ClassKind.AMENABLE

    def implies(self, other: "GroupClass") -> bool:
        """Whether membership in self entails membership in other (self ⊆ other)."""
        a, b = self.kind, other.kind
        if a == ClassKind.TRIVIAL:
            return True
        if a in (ClassKind.FINITE, ClassKind.ABELIAN, ClassKind.POLY):
            return b == a or b in _CONTAINS_POLY
        if a == ClassKind.SUBEXP_BELOW:
            if b in _RATED:
                return self.rate.value <= other.rate.value
            return b in (ClassKind.SUBEXP, ClassKind.AMENABLE)
        if a == ClassKind.SUBEXP:
            return b in (ClassKind.SUBEXP, ClassKind.AMENABLE)
        if a == ClassKind.AMENABLE:
            return b == ClassKind.AMENABLE
        return b == ClassKind.EXP_BELOW and self.rate.value <= other.rate.value


AMENABLE = GroupClass(ClassKind.AMENABLE)
TRIVIAL = GroupClass(ClassKind.TRIVIAL)


def subexp_below(q) -> GroupClass:
    return GroupClass(ClassKind.SUBEXP_BELOW, LogRate(Fraction(q)))


def exp_below(q) -> GroupClass:
    return GroupClass(ClassKind.EXP_BELOW, LogRate(Fraction(q)))


class Answer(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    answer: Answer
    justification: Tuple[str, ...] = ()

    @classmethod
    def combine(cls, verdicts: Sequence["Verdict"], label: str = "") -> "Verdict":
        """Yes iff all Yes, No iff some No, otherwise Unknown."""
        notes = tuple(f"{label}{i}: {v.answer.value}" for i, v in enumerate(verdicts))
        if any(v.answer == Answer.NO for v in verdicts):
            return cls(Answer.NO, notes)
        if all(v.answer == Answer.YES for v in verdicts):
            return cls(Answer.YES, notes)
        return cls(Answer.UNKNOWN, notes)

    @property
    def is_yes(self) -> bool:
        return self.answer == Answer.YES


@dataclass(frozen=True)
class Budget:
    max_cosets: int = DEFAULT_MAX_COSETS
    tietze_moves: int = DEFAULT_TIETZE_MOVES

    def __post_init__(self):
        if self.max_cosets < 1:
            raise MalformedInputError(f"max_cosets must be at least 1, got {self.max_cosets}")
        if self.tietze_moves < 0:
            raise MalformedInputError(f"tietze_moves must be nonnegative, got {self.tietze_moves}")


class _ProfileAnswers:
    trivial: Optional[bool]
    finite: Optional[bool]
    abelian: Optional[bool]
    polynomial_growth: Optional[bool]
    free_nonabelian: bool
    non_amenable: bool

    def answer(self, C: GroupClass) -> Answer:
        kind = C.kind
        if self.trivial:
            return Answer.YES
        if kind == ClassKind.TRIVIAL:
            return Answer.NO if self.trivial is False else Answer.UNKNOWN
        if kind == ClassKind.FINITE:
            return {True: Answer.YES, False: Answer.NO}.get(self.finite, Answer.UNKNOWN)
        if kind == ClassKind.ABELIAN:
            return {True: Answer.YES, False: Answer.NO}.get(self.abelian, Answer.UNKNOWN)
        if self.finite or self.abelian or self.polynomial_growth:
            return Answer.YES
        if kind == ClassKind.EXP_BELOW:
            if self.free_nonabelian and C.rate.value <= LOG3_LOWER.value:
                return Answer.NO
            return Answer.UNKNOWN
        if self.non_amenable and kind in _AMENABLE_SUBCLASSES:
            return Answer.NO
        return Answer.UNKNOWN


@dataclass(frozen=True)
class GroupProfile(_ProfileAnswers):
    """What the sound rules established about one group. Shared by the caches."""
    trivial: Optional[bool] = None
    finite: Optional[bool] = None
    abelian: Optional[bool] = None
    polynomial_growth: Optional[bool] = None
    free_nonabelian: bool = False
    non_amenable: bool = False
    notes: Tuple[str, ...] = ()


@dataclass
class _Profile(_ProfileAnswers):
    trivial: Optional[bool] = None
    finite: Optional[bool] = None
    abelian: Optional[bool] = None
    polynomial_growth: Optional[bool] = None
    free_nonabelian: bool = False
    non_amenable: bool = False
    notes: List[str] = field(default_factory=list)

    def infinite_nonabelian(self, note: str) -> None:
        self.trivial, self.finite, self.abelian = False, False, False
        self.notes.append(note)

    def freeze(self) -> GroupProfile:
        return GroupProfile(
            self.trivial, self.finite, self.abelian, self.polynomial_growth,
            self.free_nonabelian, self.non_amenable, tuple(self.notes),
        )


def _is_commutator_of(r: Word, a: int, b: int) -> bool:
    """r is x y x^-1 y^-1 up to rotation with {|x|, |y|} = {a, b}; each such word says ab = ba."""
    if len(r) != 4:
        return False
    x, y, x2, y2 = r
    return x2 == -x and y2 == -y and {abs(x), abs(y)} == {a, b}


def _has_all_commutators(P: GroupPresentation) -> bool:
    relators = [cyclic_reduce(r) for r in P.relators]
    for a in range(1, P.generator_count + 1):
        for b in range(a + 1, P.generator_count + 1):
            if not any(_is_commutator_of(rot, a, b) for r in relators for rot in _rotations4(r)):
                return False
    return True


def _rotations4(r: Word) -> List[Word]:
    return [r[i:] + r[:i] for i in range(len(r))] if len(r) == 4 else []


def _surface_type(P: GroupPresentation) -> Optional[Tuple[bool, int]]:
    """(orientable, genus) when P is the one-relator presentation of a closed surface.

    The relator must use every generator exactly twice and the polygon it
    describes must glue up with a single vertex class.
    """
    relators = [cyclic_reduce(r) for r in P.relators if cyclic_reduce(r)]
    n = P.generator_count
    if len(relators) != 1 or n == 0:
        return None
    r = relators[0]
    if len(r) != 2 * n or any(sum(1 for x in r if abs(x) == g) != 2 for g in range(1, n + 1)):
        return None
    corners = list(range(2 * n))

    def find(x: int) -> int:
        while corners[x] != x:
            x = corners[x]
        return x

    ends = {}
    for i, letter in enumerate(r):
        tail, head = (i, (i + 1) % (2 * n)) if letter > 0 else ((i + 1) % (2 * n), i)
        ends.setdefault(abs(letter), []).append((tail, head))
    for (t1, h1), (t2, h2) in ends.values():
        for x, y in ((t1, t2), (h1, h2)):
            rx, ry = find(x), find(y)
            if rx != ry:
                corners[ry] = rx
    if len({find(x) for x in range(2 * n)}) != 1:
        return None
    orientable = all(sorted(x > 0 for x in r if abs(x) == g) == [False, True] for g in range(1, n + 1))
    return (True, n // 2) if orientable else (False, n)


def _cheap_profile(P: GroupPresentation) -> _Profile:
    profile = _Profile()
    n = P.generator_count
    if n == 0:
        profile.trivial = profile.finite = profile.abelian = True
        profile.notes.append("rule (a): no generators, trivial group")
        return profile
    if n == 1:
        m = 0
        for r in P.relators:
            m = gcd(m, exponent_sums(r, 1)[0])
        profile.abelian = True
        profile.trivial = m == 1
        profile.finite = m != 0
        profile.notes.append(f"rule (c): one generator, cyclic of order {m or 'infinity'}")
        return profile
    if not any(P.relators):
        profile.free_nonabelian = profile.non_amenable = True
        profile.infinite_nonabelian(f"rule (e): free of rank {n}")
        return profile

    invariants = abelianization(P)
    if _has_all_commutators(P):
        profile.abelian = True
        profile.trivial = invariants.is_trivial()
        profile.finite = invariants.rank == 0
        profile.notes.append(f"rule (d): all generator commutators are relators, abelian {invariants.to_dict()}")
        return profile

    surface = _surface_type(P)
    if surface is not None:
        orientable, genus = surface
        if orientable and genus == 1:
            profile.abelian, profile.trivial, profile.finite = True, False, False
            profile.notes.append("rule (f): torus relator, Z^2")
            return profile
        if not orientable and genus == 2:
            profile.polynomial_growth = True
            profile.infinite_nonabelian("rule (f): Klein bottle relator, virtually Z^2")
            return profile
        if (orientable and genus >= 2) or (not orientable and genus >= 3):
            profile.non_amenable = True
            kind = "orientable" if orientable else "non-orientable"
            profile.infinite_nonabelian(
                f"rule (f): closed {kind} surface relator of genus {genus}, not amenable (axiom)"
            )
            return profile

    if not invariants.is_trivial():
        profile.trivial = False
        profile.notes.append(f"abelianization {invariants.to_dict()} is nontrivial")
    if invariants.rank > 0:
        profile.finite = False
        profile.notes.append("abelianization has positive rank, group infinite")
    return profile


@lru_cache(maxsize=4096)
def _simplified(P: GroupPresentation, moves: int) -> Simplification:
    return simplify_with_map(P, moves)


@lru_cache(maxsize=4096)
def _profile(P: GroupPresentation, budget: Budget, enumerate_cosets: bool) -> GroupProfile:
    simplified = _simplified(P, budget.tietze_moves).presentation
    profile = _cheap_profile(simplified)
    if enumerate_cosets:
        result = todd_coxeter(simplified, (), budget.max_cosets)
        if isinstance(result, Index):
            commute = generators_commute(result)
            profile.trivial = result.n == 1
            profile.finite = True
            profile.abelian = commute
            rule = "rule (a)" if result.n == 1 else "rule (b)"
            profile.notes.append(f"{rule}: coset enumeration closed with order {result.n}")
        else:
            profile.notes.append(f"coset enumeration exceeded {result.max_cosets} cosets")
    return profile.freeze()


@lru_cache(maxsize=16384)
def classify_group(P: GroupPresentation, C: GroupClass, budget: Budget = Budget()) -> Verdict:
    """Three-valued membership of the presented group in C.

    The closure flag does not change the answer: for finitely generated
    groups membership in the closure and in the class coincide.
    """
    C = C.without_closure()
    profile = _profile(P, budget, False)
    answer = profile.answer(C)
    if answer == Answer.UNKNOWN:
        profile = _profile(P, budget, True)
        answer = profile.answer(C)
    logger.debug("classify %s against %s: %s", P.to_dict(), C, answer.value)
    return Verdict(answer, tuple(profile.notes))


def _free_image_verdict(rank: int, C: GroupClass) -> Verdict:
    profile = _Profile()
    if rank == 0:
        profile.trivial = True
        profile.notes.append("image folds to rank 0, trivial")
    elif rank == 1:
        profile.abelian, profile.trivial, profile.finite = True, False, False
        profile.notes.append("image folds to rank 1, infinite cyclic")
    else:
        profile.free_nonabelian = profile.non_amenable = True
        profile.infinite_nonabelian(f"image folds to a free subgroup of rank {rank}")
    return Verdict(profile.answer(C), tuple(profile.notes))


def classify_component(
    ambient: GroupPresentation,
    words: Sequence[Word],
    component_presentation: GroupPresentation,
    C: GroupClass,
    budget: Budget = Budget(),
) -> Verdict:
    C = C.without_closure()
    if all(not free_reduce(w) for w in words):
        return Verdict(Answer.YES, ("trivial image",))
    own = classify_group(component_presentation, C, budget)
    if own.is_yes:
        return Verdict(Answer.YES, ("image is a quotient of the component group",) + own.justification)
    if C.is_subgroup_closed:
        whole = classify_group(ambient, C, budget)
        if whole.is_yes:
            return Verdict(Answer.YES, ("image is a subgroup of the ambient group",) + whole.justification)
    simplified = _simplified(ambient, budget.tietze_moves)
    if simplified.presentation.generator_count >= 2 and not any(simplified.presentation.relators):
        images = {g: w for g, w in enumerate(simplified.images, start=1)}
        mapped = [substitute(w, images) for w in words]
        verdict = _free_image_verdict(subgroup_rank(mapped), C)
        if verdict.answer != Answer.UNKNOWN:
            return Verdict(verdict.answer, ("ambient is free",) + verdict.justification)
    return Verdict(Answer.UNKNOWN, ("no rule applies to the image",) + own.justification)


def classify_image(
    im: Pi1Image,
    subcomplex_presentations: Optional[Sequence[GroupPresentation]],
    C: GroupClass,
    budget: Budget = Budget(),
) -> Verdict:
    """Membership of every component image of `im` in C.

    subcomplex_presentations defaults to the presentations stored with the components.
    """
    presentations = subcomplex_presentations or [c.presentation for c in im.components]
    verdicts = [
        classify_component(im.ambient, c.generators, p, C, budget)
        for c, p in zip(im.components, presentations)
    ]
    if not verdicts:
        return Verdict(Answer.YES, ("empty subspace",))
    return Verdict.combine(verdicts, "component ")
