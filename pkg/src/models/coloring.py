from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from src.models.group import FiniteGroup, SimpleFactorLabel
from src.models.permutation import PermGroup, Subcoset
from src.utils.errors import MalformedInput

KINDS = {1: "points", 2: "pairs", 3: "triples"}


@dataclass(frozen=True)
class Coloring:
    """Colors of points, ordered pairs or ordered triples of {0, ..., n-1}."""

    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values)
        if values.ndim not in KINDS:
            raise MalformedInput(f"colorings have 1 to 3 axes, got {values.ndim}")
        if len(set(values.shape)) != 1:
            raise MalformedInput(f"coloring shape {values.shape} is not a cube")
        if values.size and (values.dtype.kind not in "iu" or values.min() < 0):
            raise MalformedInput("colors must be non-negative integers")
        if values.dtype.kind not in "iu":
            values = values.astype(np.int64)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def kind(self) -> str:
        return KINDS[self.values.ndim]

    @property
    def degree(self) -> int:
        return int(self.values.shape[0])

    def histogram(self, length: int = 0) -> np.ndarray:
        return np.bincount(self.values.ravel(), minlength=length)


@dataclass
class ColorIsoInstance:
    coset: Subcoset
    f1: Coloring
    f2: Coloring

    def __post_init__(self):
        if self.f1.kind != self.f2.kind:
            raise MalformedInput(f"colorings of different kinds: {self.f1.kind} vs {self.f2.kind}")
        if self.f1.degree != self.coset.degree or self.f2.degree != self.coset.degree:
            raise MalformedInput(
                f"colorings on {self.f1.degree}/{self.f2.degree} points against a coset of degree {self.coset.degree}"
            )


@dataclass
class CisComponent:
    """One factor of a tower: Hol(F), Sym(k), an abstract group or a permutation group."""

    kind: str
    group: Optional[FiniteGroup] = None
    perm_group: Optional[PermGroup] = None
    degree: int = 0
    multiplicity: int = 1


@dataclass
class CisCertificate:
    labels: List[SimpleFactorLabel] = field(default_factory=list)
    in_cis: bool = True
    offending: List[SimpleFactorLabel] = field(default_factory=list)
