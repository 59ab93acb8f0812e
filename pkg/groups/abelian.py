from dataclasses import dataclass
from typing import Tuple

import numpy as np
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from .presentation import GroupPresentation
from .words import exponent_sums


@dataclass(frozen=True)
class AbelianInvariants:
    """Z^rank + Z/t1 + ... + Z/tk with t1 | t2 | ... | tk."""
    rank: int
    torsion: Tuple[int, ...] = ()

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def to_dict(self):
        return {"rank": self.rank, "torsion": list(self.torsion)}


def relator_matrix(P: GroupPresentation) -> np.ndarray:
    """Exponent-sum matrix, one row per relator."""
    rows = [exponent_sums(r, P.generator_count) for r in P.relators if r]
    return np.array(rows, dtype=np.int64).reshape(len(rows), P.generator_count)


def abelianization(P: GroupPresentation) -> AbelianInvariants:
    matrix = relator_matrix(P)
    if matrix.size == 0 or not matrix.any():
        return AbelianInvariants(P.generator_count)
    snf = smith_normal_form(Matrix(matrix.tolist()), domain=ZZ)
    diagonal = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    nonzero = [d for d in diagonal if d != 0]
    torsion = tuple(sorted(d for d in nonzero if d > 1))
    return AbelianInvariants(P.generator_count - len(nonzero), torsion)
