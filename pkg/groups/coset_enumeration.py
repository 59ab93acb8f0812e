"""
Bounded Todd-Coxeter coset enumeration (HLT strategy, via sympy).

Only completed enumerations produce an answer; running out of cosets is the
value Exceeded and says nothing about finiteness.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from sympy.combinatorics.coset_table import coset_enumeration_r
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

from errors import MalformedInputError
from .presentation import GroupPresentation
from .words import Word, free_reduce

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Index:
    n: int
    # permutation action of each generator on the cosets, when enumerated over the trivial subgroup
    generator_actions: Optional[Tuple[Tuple[int, ...], ...]] = None


@dataclass(frozen=True)
class Exceeded:
    max_cosets: int


EnumerationResult = Union[Index, Exceeded]


def _to_element(word: Sequence[int], generators):
    element = generators[0] ** 0
    for letter in word:
        g = generators[abs(letter) - 1]
        element = element * (g if letter > 0 else g ** -1)
    return element


def todd_coxeter(P: GroupPresentation, subgroup_words: Sequence[Word] = (), max_cosets: int = 10_000) -> EnumerationResult:
    """Index of the subgroup generated by subgroup_words, or Exceeded."""
    if max_cosets < 1:
        raise MalformedInputError(f"max_cosets must be at least 1, got {max_cosets}")
    if P.generator_count == 0:
        return Index(1, ())
    free, *generators = free_group(", ".join(f"x{i}" for i in range(1, P.generator_count + 1)))
    relators = [_to_element(r, generators) for r in P.relators if r]
    subgroup = [_to_element(w, generators) for w in subgroup_words if free_reduce(w)]
    group = FpGroup(free, relators)
    try:
        table = coset_enumeration_r(group, subgroup, max_cosets=max_cosets)
    except ValueError:
        logger.debug("coset enumeration exceeded %d cosets", max_cosets)
        return Exceeded(max_cosets)
    table.compress()
    table.standardize()
    n = len(table.table)
    actions = None
    if not subgroup:
        # columns of the table are x1, x1^-1, x2, x2^-1, ...
        actions = tuple(
            tuple(table.table[c][2 * i] for c in range(n)) for i in range(P.generator_count)
        )
    logger.debug("coset enumeration finished with index %d", n)
    return Index(n, actions)


def generators_commute(result: Index) -> bool:
    """Whether the generator permutations of a regular action pairwise commute."""
    actions: List[Tuple[int, ...]] = list(result.generator_actions or ())
    for i, a in enumerate(actions):
        for b in actions[i + 1:]:
            if any(a[b[c]] != b[a[c]] for c in range(len(a))):
                return False
    return True
