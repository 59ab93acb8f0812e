"""
Runtime configuration.

Values come from the environment (optionally a .env file). The command line
starts from the plain defaults so its output depends only on its arguments.
"""

import os
from dataclasses import dataclass, replace

from dotenv import load_dotenv

from errors import MalformedInputError

load_dotenv()

DEFAULT_MAX_COSETS = 10_000
DEFAULT_TIETZE_MOVES = 200
DEFAULT_EXACT_VERTEX_CAP = 10
DEFAULT_GREEDY_DEPTH = 1
DEFAULT_SATURATION_ROUNDS = 64
DEFAULT_MAX_FACTS = 20_000
DEFAULT_WORKERS = 4

_MINIMUMS = {
    "max_cosets": 1,
    "tietze_moves": 0,
    "exact_vertex_cap": 0,
    "greedy_depth": 0,
    "saturation_rounds": 1,
    "max_facts": 1,
    "workers": 1,
}


def _get_int(name: str, default: int, minimum: int = 0) -> int:
    try:
        return max(minimum, int(os.getenv(name, str(default))))
    except ValueError:
        return default


@dataclass(frozen=True)
class Settings:
    max_cosets: int = DEFAULT_MAX_COSETS
    tietze_moves: int = DEFAULT_TIETZE_MOVES
    exact_vertex_cap: int = DEFAULT_EXACT_VERTEX_CAP
    greedy_depth: int = DEFAULT_GREEDY_DEPTH
    saturation_rounds: int = DEFAULT_SATURATION_ROUNDS
    max_facts: int = DEFAULT_MAX_FACTS
    workers: int = DEFAULT_WORKERS
    seed: int = 0

    def __post_init__(self):
        for name, minimum in _MINIMUMS.items():
            value = getattr(self, name)
            if value < minimum:
                raise MalformedInputError(f"{name} must be at least {minimum}, got {value}")

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            max_cosets=_get_int("CATCOVER_MAX_COSETS", DEFAULT_MAX_COSETS, 1),
            tietze_moves=_get_int("CATCOVER_TIETZE_MOVES", DEFAULT_TIETZE_MOVES),
            exact_vertex_cap=_get_int("CATCOVER_EXACT_VERTEX_CAP", DEFAULT_EXACT_VERTEX_CAP),
            greedy_depth=_get_int("CATCOVER_GREEDY_DEPTH", DEFAULT_GREEDY_DEPTH),
            saturation_rounds=_get_int("CATCOVER_SATURATION_ROUNDS", DEFAULT_SATURATION_ROUNDS, 1),
            max_facts=_get_int("CATCOVER_MAX_FACTS", DEFAULT_MAX_FACTS, 1),
            workers=_get_int("CATCOVER_WORKERS", DEFAULT_WORKERS, 1),
        )

    def with_overrides(self, **changes) -> "Settings":
        """Return a copy with every non-None keyword applied."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})
