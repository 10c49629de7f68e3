from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from src.models.abelian import AbelianDecomposition
from src.models.coloring import CisCertificate
from src.models.group import FiniteGroup, Subgroup, SubnormalSeries
from src.models.permutation import Subcoset


@dataclass(frozen=True)
class RadicalDerivedSeries:
    """1 = C_0 < C_1 < ... < C_m = G: the derived series of Rad(G), then G.

    factors[i] is C_{i+1}/C_i; lifts[i] sends each factor element to the
    smallest G-index of its coset and projections[i] sends elements of
    C_{i+1} to factor indices (-1 elsewhere).
    """

    series: SubnormalSeries
    factors: Tuple[FiniteGroup, ...]
    lifts: Tuple[np.ndarray, ...]
    projections: Tuple[np.ndarray, ...]
    semisimple_top: bool

    @property
    def parent(self) -> FiniteGroup:
        return self.series.parent

    @property
    def chain(self) -> Tuple[Subgroup, ...]:
        return self.series.chain

    @property
    def length(self) -> int:
        return len(self.factors)

    @property
    def factor_orders(self) -> List[int]:
        return [F.order for F in self.factors]

    @property
    def strides(self) -> np.ndarray:
        out = np.ones(len(self.factors), dtype=np.int64)
        for i in range(1, len(self.factors)):
            out[i] = out[i - 1] * self.factors[i - 1].order
        return out


@dataclass(frozen=True)
class FactorShape:
    """C(F_i): a canonical decomposition, or the distinguished semisimple top."""

    decomposition: Optional[AbelianDecomposition] = None
    top: Optional[FiniteGroup] = field(default=None, compare=False)
    top_order: int = 0

    @property
    def is_top(self) -> bool:
        return self.decomposition is None

    @property
    def label(self) -> str:
        return self.decomposition.label if self.decomposition is not None else f"top({self.top_order})"


@dataclass(frozen=True)
class TildeGroup:
    """G~ on the product index set of the C(F_i), with the isomorphism G -> G~."""

    source: FiniteGroup
    series: RadicalDerivedSeries
    shapes: Tuple[FactorShape, ...]
    factor_groups: Tuple[FiniteGroup, ...]
    group: FiniteGroup
    iso_from_source: np.ndarray

    @property
    def prefix_orders(self) -> List[int]:
        out, acc = [1], 1
        for F in self.factor_groups:
            acc *= F.order
            out.append(acc)
        return out


@dataclass
class PipelineResult:
    iso: Subcoset
    reason: Optional[str] = None
    instances: int = 0
    certificate: Optional[CisCertificate] = None
    factor_shapes: List[str] = field(default_factory=list)

    @property
    def iso_order(self) -> int:
        return self.iso.order
