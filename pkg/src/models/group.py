from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, List, Sequence, Tuple

import numpy as np


class FiniteGroup:
    """A group of order n stored as its dense Cayley table.

    Element 0 is the identity and `table[i, j]` is the index of i*j.
    Instances are only created through `services.group_core.construct_group`
    (or builders that call it), so the table is already validated here.
    """

    def __init__(self, table: np.ndarray, inverse: np.ndarray, name: str = ""):
        table = np.array(table, dtype=np.int32, order="C")
        inverse = np.array(inverse, dtype=np.int32, order="C")
        table.setflags(write=False)
        inverse.setflags(write=False)
        self.table = table
        self.inverse = inverse
        self.name = name

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    @cached_property
    def rows(self) -> List[List[int]]:
        # plain lists for the scalar-heavy backtracking loops
        return self.table.tolist()

    @cached_property
    def inverse_list(self) -> List[int]:
        return self.inverse.tolist()

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def inv(self, a: int) -> int:
        return self.inverse_list[a]

    def power(self, a: int, k: int) -> int:
        rows = self.rows
        result, base = 0, a
        while k:
            if k & 1:
                result = rows[result][base]
            base = rows[base][base]
            k >>= 1
        return result

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup(name={self.name!r}, order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(compare=False, hash=False, repr=False)
    elements: Tuple[int, ...]

    @cached_property
    def members(self) -> FrozenSet[int]:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def as_array(self) -> np.ndarray:
        return np.asarray(self.elements, dtype=np.int64)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members


@dataclass(frozen=True)
class SubnormalSeries:
    parent: FiniteGroup = field(repr=False)
    chain: Tuple[Subgroup, ...]

    @property
    def orders(self) -> List[int]:
        return [s.order for s in self.chain]


@dataclass(frozen=True)
class DerivedSeries:
    """Descending chain G = G^(0) > G^(1) > ... stopping at the first repeat."""

    parent: FiniteGroup = field(repr=False)
    chain: Tuple[Subgroup, ...]
    solvable: bool

    @property
    def orders(self) -> List[int]:
        return [s.order for s in self.chain]


@dataclass(frozen=True)
class SimpleFactorLabel:
    order: int
    names: FrozenSet[str]

    def __post_init__(self):
        if not self.names:
            raise ValueError("a simple factor label needs at least one name")

    @property
    def is_cyclic(self) -> bool:
        return any(name.startswith("Cyclic(") for name in self.names)

    @property
    def is_psl(self) -> bool:
        return any(name.startswith("PSL(") for name in self.names)

    @property
    def in_cis_class(self) -> bool:
        return self.is_cyclic or self.is_psl

    def display(self) -> str:
        return "/".join(sorted(self.names))

    def __lt__(self, other: "SimpleFactorLabel") -> bool:
        return (self.order, sorted(self.names)) < (other.order, sorted(other.names))


def sorted_labels(labels: Sequence[SimpleFactorLabel]) -> List[SimpleFactorLabel]:
    return sorted(labels, key=lambda label: (label.order, sorted(label.names)))
