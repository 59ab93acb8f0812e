"""
Typed statements about spaces, maps and groups, their text and JSON forms,
and the entailment order used when answering goals.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from errors import MalformedInputError
from groups import GroupClass, LogRate


class Predicate(str, Enum):
    CAT_UPPER = "cat_upper"
    CAT_LOWER = "cat_lower"
    LSCAT_UPPER = "lscat_upper"
    MAP_CAT_UPPER = "map_cat_upper"
    FCA = "fca"
    FNCA = "fnca"
    SIMVOL_ZERO = "simvol_zero"
    SIMVOL_POSITIVE = "simvol_positive"
    SEMINORM_ZERO = "seminorm_zero"
    COMP_ZERO = "comp_zero"
    ENT_ZERO = "ent_zero"
    ENT_POSITIVE = "ent_positive"
    ENT_LOWER = "ent_lower"
    PI1_EQUIVALENT = "pi1_equivalent"
    UEXP_LOWER = "uexp_lower"
    AMENABLE_OR_UEXP = "amenable_or_uexp"
    MANIFOLD = "manifold"
    DIMENSION = "dimension"
    BUNDLE = "bundle"
    MAPPING_TORUS = "mapping_torus"
    FINITE_COVER = "finite_cover"
    SUBDIVISION = "subdivision"
    WEDGE_POWER = "wedge_power"
    WEDGE = "wedge"
    MAP = "map"
    COMPOSITE = "composite"
    FIBRE_INCLUSION = "fibre_inclusion"


class ArgKind(str, Enum):
    NAME = "name"
    CLASS = "class"
    COUNT = "count"
    # integer where a smaller value in a fact entails a larger one in a goal
    UPPER = "upper"
    # integer where a larger value entails a smaller one
    LOWER = "lower"
    RATE_LOWER = "rate_lower"
    FLAG = "flag"


_N, _C, _K, _U, _L, _R, _F = (
    ArgKind.NAME, ArgKind.CLASS, ArgKind.COUNT, ArgKind.UPPER, ArgKind.LOWER, ArgKind.RATE_LOWER, ArgKind.FLAG,
)

SIGNATURES: Dict[Predicate, Tuple[ArgKind, ...]] = {
    Predicate.CAT_UPPER: (_N, _C, _U),
    Predicate.CAT_LOWER: (_N, _C, _L),
    Predicate.LSCAT_UPPER: (_N, _U),
    Predicate.MAP_CAT_UPPER: (_N, _C, _U),
    Predicate.FCA: (_N, _C, _U),
    Predicate.FNCA: (_N, _R),
    Predicate.SIMVOL_ZERO: (_N,),
    Predicate.SIMVOL_POSITIVE: (_N,),
    Predicate.SEMINORM_ZERO: (_N, _U),
    Predicate.COMP_ZERO: (_N, _U),
    Predicate.ENT_ZERO: (_N,),
    Predicate.ENT_POSITIVE: (_N,),
    Predicate.ENT_LOWER: (_N, _R),
    Predicate.PI1_EQUIVALENT: (_N, _N),
    Predicate.UEXP_LOWER: (_N, _R),
    Predicate.AMENABLE_OR_UEXP: (_N, _R),
    # space, dimension, oriented, closed, connected
    Predicate.MANIFOLD: (_N, _K, _F, _F, _F),
    Predicate.DIMENSION: (_N, _K),
    # total, fibre, base
    Predicate.BUNDLE: (_N, _N, _N),
    # total, fibre
    Predicate.MAPPING_TORUS: (_N, _N),
    # cover, base, sheets
    Predicate.FINITE_COVER: (_N, _N, _K),
    # subdivided, original
    Predicate.SUBDIVISION: (_N, _N),
    # wedge, summand, copies
    Predicate.WEDGE_POWER: (_N, _N, _K),
    Predicate.WEDGE: (_N, _N, _N),
    # map, source, target
    Predicate.MAP: (_N, _N, _N),
    # h = g o f as (h, g, f)
    Predicate.COMPOSITE: (_N, _N, _N),
    # inclusion, fibre, total
    Predicate.FIBRE_INCLUSION: (_N, _N, _N),
}

WILDCARD = "_"


def _split_args(text: str) -> List[str]:
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    last = "".join(current).strip()
    if last or parts:
        parts.append(last)
    return parts


def _parse_arg(kind: ArgKind, raw: Any):
    if raw is None or raw == WILDCARD:
        return None
    try:
        if kind == ArgKind.NAME:
            name = str(raw).strip()
            if not name or any(c in name for c in "(),"):
                raise MalformedInputError(f"bad name {raw!r}")
            return name
        if kind == ArgKind.CLASS:
            return raw if isinstance(raw, GroupClass) else GroupClass.parse(str(raw))
        if kind == ArgKind.RATE_LOWER:
            return raw if isinstance(raw, LogRate) else LogRate.parse(str(raw))
        if kind == ArgKind.FLAG:
            if isinstance(raw, bool):
                return raw
            text = str(raw).strip().lower()
            if text not in ("true", "false"):
                raise MalformedInputError(f"expected true or false, got {raw!r}")
            return text == "true"
        if isinstance(raw, bool):
            raise MalformedInputError(f"expected an integer, got {raw!r}")
        value = int(raw)
        if value < 0:
            raise MalformedInputError(f"expected a nonnegative integer, got {raw!r}")
        return value
    except ValueError as e:
        if isinstance(e, MalformedInputError):
            raise
        raise MalformedInputError(f"cannot read {raw!r} as {kind.value}") from None


def _render_arg(value) -> str:
    if value is None:
        return WILDCARD
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


@dataclass(frozen=True)
class Statement:
    """predicate(args...); an argument of None is a wildcard and only allowed in goals."""
    predicate: Predicate
    args: Tuple[Any, ...]

    def __post_init__(self):
        kinds = SIGNATURES[self.predicate]
        if len(self.args) != len(kinds):
            raise MalformedInputError(
                f"{self.predicate.value} takes {len(kinds)} arguments, got {len(self.args)}"
            )
        object.__setattr__(self, "args", tuple(_parse_arg(k, a) for k, a in zip(kinds, self.args)))

    @classmethod
    def of(cls, predicate: str, *args) -> "Statement":
        try:
            return cls(Predicate(predicate), tuple(args))
        except ValueError as e:
            if isinstance(e, MalformedInputError):
                raise
            raise MalformedInputError(f"unknown predicate {predicate!r}") from None

    @classmethod
    def parse(cls, text: str) -> "Statement":
        text = text.strip()
        if not text.endswith(")") or "(" not in text:
            raise MalformedInputError(f"expected predicate(args), got {text!r}")
        head, body = text.split("(", 1)
        return cls.of(head.strip(), *_split_args(body[:-1]))

    @property
    def is_ground(self) -> bool:
        return all(a is not None for a in self.args)

    @property
    def subject(self) -> Optional[str]:
        return self.args[0]

    def __str__(self) -> str:
        return f"{self.predicate.value}({', '.join(_render_arg(a) for a in self.args)})"

    def to_dict(self) -> Dict:
        args = []
        for a in self.args:
            args.append(a if isinstance(a, (bool, int)) or a is None else str(a))
        return {"predicate": self.predicate.value, "args": args}

    @classmethod
    def from_dict(cls, data: Dict) -> "Statement":
        if not isinstance(data, dict) or "predicate" not in data or not isinstance(data.get("args"), list):
            raise MalformedInputError("statement needs 'predicate' and a list of 'args'")
        return cls.of(data["predicate"], *data["args"])


def _arg_entails(kind: ArgKind, have, want) -> bool:
    if want is None:
        return True
    if kind == ArgKind.UPPER:
        return have <= want
    if kind == ArgKind.LOWER:
        return have >= want
    if kind == ArgKind.RATE_LOWER:
        return have.value >= want.value
    if kind == ArgKind.CLASS:
        return have.without_closure() == want.without_closure()
    return have == want


def entails(fact: Statement, goal: Statement) -> bool:
    """Whether the ground statement `fact` establishes the (possibly wildcarded) `goal`."""
    if fact.predicate != goal.predicate:
        return False
    kinds = SIGNATURES[fact.predicate]
    return all(_arg_entails(k, h, w) for k, h, w in zip(kinds, fact.args, goal.args))


def rate(value) -> LogRate:
    return LogRate(Fraction(value))
