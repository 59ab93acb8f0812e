"""
Words in free groups as tuples of nonzero signed generator indices.

Generator i (1-based) is written i, its inverse -i.
"""

from typing import Dict, Iterable, List, Sequence, Tuple

Word = Tuple[int, ...]


def free_reduce(word: Iterable[int]) -> Word:
    stack: List[int] = []
    for letter in word:
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def inverse(word: Sequence[int]) -> Word:
    return tuple(-letter for letter in reversed(word))


def concat(*words: Sequence[int]) -> Word:
    joined: List[int] = []
    for w in words:
        joined.extend(w)
    return free_reduce(joined)


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = list(free_reduce(word))
    start, end = 0, len(w)
    while end - start >= 2 and w[start] == -w[end - 1]:
        start += 1
        end -= 1
    return tuple(w[start:end])


def rotations(word: Sequence[int]) -> List[Word]:
    w = tuple(word)
    return [w[i:] + w[:i] for i in range(len(w))] or [()]


def canonical_cyclic(word: Sequence[int]) -> Word:
    """Least rotation of the word or its inverse; identifies relators that say the same thing."""
    w = cyclic_reduce(word)
    return min(rotations(w) + rotations(inverse(w)))


def exponent_sums(word: Sequence[int], generator_count: int) -> List[int]:
    sums = [0] * generator_count
    for letter in word:
        sums[abs(letter) - 1] += 1 if letter > 0 else -1
    return sums


def substitute(word: Sequence[int], images: Dict[int, Word]) -> Word:
    """Replace each generator g by images[g] (generators without an image stay)."""
    out: List[int] = []
    for letter in word:
        image = images.get(abs(letter), (abs(letter),))
        out.extend(image if letter > 0 else inverse(image))
    return free_reduce(out)


def letter_name(letter: int) -> str:
    base = f"x{abs(letter)}"
    return base if letter > 0 else base + "^-1"


def render(word: Sequence[int]) -> str:
    return " ".join(letter_name(letter) for letter in word) or "1"
