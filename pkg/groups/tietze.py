"""
Bounded Tietze simplification.

Moves used: dropping trivial or repeated relators, and eliminating a
generator that occurs exactly once in some relator. Each elimination or
repeated-relator removal spends one unit of the move budget.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .presentation import GroupPresentation
from .words import Word, canonical_cyclic, cyclic_reduce, inverse, rotations, substitute

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Simplification:
    presentation: GroupPresentation
    # image of every original generator (1-based) as a word in the new generators
    images: Tuple[Word, ...]
    moves: int


def _tidy(relators: List[Word], budget_left: int) -> Tuple[List[Word], int]:
    kept: List[Word] = []
    seen = set()
    spent = 0
    for r in relators:
        r = cyclic_reduce(r)
        if not r:
            continue
        key = canonical_cyclic(r)
        if key in seen:
            if spent < budget_left:
                spent += 1
                continue
        seen.add(key)
        kept.append(r)
    return kept, spent


def _find_elimination(relators: List[Word]) -> Optional[Tuple[int, int]]:
    """(relator position, generator) for the shortest relator with a generator occurring once."""
    order = sorted(range(len(relators)), key=lambda i: (len(relators[i]), i))
    for i in order:
        counts: Dict[int, int] = {}
        for letter in relators[i]:
            counts[abs(letter)] = counts.get(abs(letter), 0) + 1
        once = sorted(g for g, c in counts.items() if c == 1)
        if once:
            return i, once[0]
    return None


def _solve(relator: Word, generator: int) -> Word:
    """Value of `generator` forced by relator = 1."""
    for rotation in rotations(relator):
        if abs(rotation[0]) == generator:
            rest = rotation[1:]
            # x w = 1 gives x = w^-1; x^-1 w = 1 gives x = w
            return inverse(rest) if rotation[0] > 0 else tuple(rest)
    raise ValueError(f"generator {generator} does not occur in relator")


def simplify_with_map(P: GroupPresentation, move_budget: int) -> Simplification:
    if move_budget < 0:
        raise ValueError("move_budget must be nonnegative")
    alive = list(range(1, P.generator_count + 1))
    values: Dict[int, Word] = {}
    relators, moves = _tidy(list(P.relators), move_budget)

    while moves < move_budget:
        found = _find_elimination(relators)
        if found is None:
            break
        position, generator = found
        value = _solve(relators[position], generator)
        rule = {generator: value}
        relators = [substitute(r, rule) for j, r in enumerate(relators) if j != position]
        values = {g: substitute(w, rule) for g, w in values.items()}
        values[generator] = value
        alive.remove(generator)
        moves += 1
        relators, spent = _tidy(relators, move_budget - moves)
        moves += spent

    renumber = {old: new for new, old in enumerate(alive, start=1)}
    rename = {old: (new,) for old, new in renumber.items()}
    images = tuple(
        substitute(values[g], rename) if g in values else (renumber[g],)
        for g in range(1, P.generator_count + 1)
    )
    simplified = GroupPresentation(len(alive), tuple(substitute(r, rename) for r in relators))
    logger.debug(
        "tietze: %d/%d generators, %d/%d relators after %d moves",
        simplified.generator_count, P.generator_count,
        len(simplified.relators), len(P.relators), moves,
    )
    return Simplification(simplified, images, moves)


def simplify_presentation(P: GroupPresentation, move_budget: int) -> GroupPresentation:
    return simplify_with_map(P, move_budget).presentation
