from dataclasses import dataclass
from typing import List

import numpy as np

from src.models.abelian import AbelianDecomposition
from src.models.group import FiniteGroup


@dataclass(frozen=True)
class BilinearMap:
    """f: B x B -> A with table[x, y] the C(A) index of f(x, y)."""

    A: AbelianDecomposition
    B: AbelianDecomposition
    table: np.ndarray

    @property
    def size_a(self) -> int:
        return self.A.order

    @property
    def size_b(self) -> int:
        return self.B.order


@dataclass(frozen=True)
class GfGroup:
    """G_f on B x_c A: (b, a) at index b + |B| * a, with A central."""

    f: BilinearMap
    group: FiniteGroup

    def index(self, b: int, a: int) -> int:
        return b + self.f.size_b * a

    def split(self, index: int):
        return index % self.f.size_b, index // self.f.size_b

    @property
    def a_points(self) -> List[int]:
        return [self.index(0, a) for a in range(self.f.size_a)]

    @property
    def b_points(self) -> List[int]:
        return list(range(self.f.size_b))


@dataclass(frozen=True)
class CorrectionCheck:
    """Outcome of comparing phi_phi's additivity with the twisted isometry criterion."""

    homomorphism: bool
    criterion: bool
    fixes_a_pointwise: bool
    beta_inverse_isometry: bool
