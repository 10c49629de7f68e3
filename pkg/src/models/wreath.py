from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np

from src.models.group import FiniteGroup
from src.models.permutation import Permutation, PermGroup
from src.utils.errors import MalformedInput


@dataclass(frozen=True)
class TowerLevel:
    group: PermGroup
    size: int
    label: str = ""


@dataclass(frozen=True)
class WreathTower:
    """Iterated wreath product; level 0 is the bottom (least significant) coordinate.

    A point is a tuple (x_0, ..., x_{k-1}) stored at sum x_i * stride_i.
    """

    levels: Tuple[TowerLevel, ...]

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(level.size for level in self.levels)

    @cached_property
    def strides(self) -> Tuple[int, ...]:
        out, acc = [], 1
        for size in self.sizes:
            out.append(acc)
            acc *= size
        return tuple(out)

    @property
    def domain_size(self) -> int:
        result = 1
        for size in self.sizes:
            result *= size
        return result

    @cached_property
    def coordinates(self) -> np.ndarray:
        idx = np.arange(self.domain_size, dtype=np.int64)
        sizes = np.asarray(self.sizes, dtype=np.int64)
        return (idx[:, None] // np.asarray(self.strides, dtype=np.int64)[None, :]) % sizes[None, :]

    def coords(self, index: int) -> Tuple[int, ...]:
        return tuple(int(c) for c in self.coordinates[index])

    def index(self, coords: Sequence[int]) -> int:
        return int(sum(c * s for c, s in zip(coords, self.strides)))

    def suffixes(self, level: int) -> Iterator[Tuple[int, ...]]:
        """Every value of the coordinates strictly above `level`."""
        return product(*(range(size) for size in self.sizes[level + 1:]))

    def component_keys(self) -> Iterator[Tuple[int, Tuple[int, ...]]]:
        for level in range(len(self.levels)):
            for suffix in self.suffixes(level):
                yield level, suffix


@dataclass
class WreathElement:
    """Component permutations keyed by (level, suffix of input coordinates above it).

    The map is dense: every key of the tower is present exactly once, and
    each component lies in its level group.
    """

    tower: WreathTower
    components: Dict[Tuple[int, Tuple[int, ...]], Permutation]

    def __post_init__(self):
        keys = set(self.tower.component_keys())
        given = set(self.components)
        if given != keys:
            missing, unexpected = sorted(keys - given), sorted(given - keys)
            raise MalformedInput(
                f"wreath element must give every (level, suffix) once: missing {missing[:4]}, unexpected {unexpected[:4]}"
            )
        for (level, suffix), perm in self.components.items():
            on_level = self.tower.levels[level]
            if perm.degree != on_level.size or perm not in on_level.group:
                raise MalformedInput(f"component at ({level}, {suffix}) is outside the level group")

    @classmethod
    def identity(cls, tower: WreathTower) -> "WreathElement":
        return cls(tower, {key: Permutation.identity(tower.sizes[key[0]]) for key in tower.component_keys()})

    @classmethod
    def with_components(cls, tower: WreathTower,
                        given: Dict[Tuple[int, Tuple[int, ...]], Permutation]) -> "WreathElement":
        """The given components, identities at every other key."""
        components = {key: Permutation.identity(tower.sizes[key[0]]) for key in tower.component_keys()}
        components.update({(level, tuple(suffix)): perm for (level, suffix), perm in given.items()})
        return cls(tower, components)

    def component(self, level: int, suffix: Tuple[int, ...]) -> Permutation:
        return self.components[(level, tuple(suffix))]


@dataclass
class Holomorph:
    """Hol(G) = G x| Aut(G) acting on G by x -> g * phi(x)."""

    base: FiniteGroup
    automorphisms: PermGroup
    action: PermGroup

    @property
    def order(self) -> int:
        return self.action.order

    def element(self, g: int, phi: Permutation) -> Permutation:
        return Permutation(self.base.table[g, list(phi.images)].tolist())

    def generators(self) -> List[Permutation]:
        return list(self.action.generators)
