from dataclasses import dataclass, field
from functools import cached_property, reduce
from itertools import product
from math import lcm
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.utils.errors import MalformedInput


class Permutation:
    """Bijection of {0, ..., n-1} stored as its image tuple.

    Composition follows function notation: (p * q)(x) == p(q(x)).
    """

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        self.images: Tuple[int, ...] = tuple(int(i) for i in images)
        self._hash = hash(self.images)

    @classmethod
    def checked(cls, images: Sequence[int]) -> "Permutation":
        images = [int(i) for i in images]
        n = len(images)
        if sorted(images) != list(range(n)):
            raise MalformedInput(f"not a permutation of {n} points: {images}")
        return cls(images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        images = list(range(n))
        for cycle in cycles:
            for i, point in enumerate(cycle):
                images[point] = cycle[(i + 1) % len(cycle)]
        return cls.checked(images)

    @classmethod
    def from_array(cls, array: np.ndarray) -> "Permutation":
        return cls(array.tolist())

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        mine = self.images
        return Permutation(mine[i] for i in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, image in enumerate(self.images):
            inv[image] = i
        return Permutation(inv)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    @property
    def is_identity(self) -> bool:
        return all(i == image for i, image in enumerate(self.images))

    def moved_points(self) -> List[int]:
        return [i for i, image in enumerate(self.images) if i != image]

    def cycles(self) -> List[Tuple[int, ...]]:
        seen = [False] * len(self.images)
        result = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cycle = []
            x = start
            while not seen[x]:
                seen[x] = True
                cycle.append(x)
                x = self.images[x]
            if len(cycle) > 1:
                result.append(tuple(cycle))
        return result

    @property
    def order(self) -> int:
        return reduce(lcm, (len(c) for c in self.cycles()), 1)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.int64)

    def direct_sum(self, other: "Permutation") -> "Permutation":
        """Act by self on the first block and by other on a shifted second block."""
        shift = self.degree
        return Permutation(self.images + tuple(shift + i for i in other.images))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if self.is_identity:
            return f"Permutation(id, n={self.degree})"
        return f"Permutation({self.cycles()}, n={self.degree})"


@dataclass
class PermGroup:
    """Permutation group together with a stabilizer chain.

    Level i stabilizes base[:i] pointwise; `transversals[i]` maps each point
    of the level-i orbit of base[i] to an element sending base[i] there.
    Built by `services.perm_core.build_chain`.
    """

    degree: int
    generators: Tuple[Permutation, ...]
    base: Tuple[int, ...]
    level_generators: Tuple[Tuple[Permutation, ...], ...]
    transversals: Tuple[Dict[int, Permutation], ...]
    inverse_transversals: Tuple[Dict[int, Permutation], ...] = field(repr=False)

    @cached_property
    def order(self) -> int:
        result = 1
        for transversal in self.transversals:
            result *= len(transversal)
        return result

    @property
    def depth(self) -> int:
        return len(self.base)

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def sift(self, perm: Permutation, start: int = 0) -> Tuple[Permutation, int]:
        """Strip perm through levels start.. and return (residue, level reached)."""
        g = perm
        for level in range(start, len(self.base)):
            x = g.images[self.base[level]]
            inverse_rep = self.inverse_transversals[level].get(x)
            if inverse_rep is None:
                return g, level
            g = inverse_rep * g
        return g, len(self.base)

    def __contains__(self, perm: Permutation) -> bool:
        if perm.degree != self.degree:
            return False
        residue, level = self.sift(perm)
        return level == len(self.base) and residue.is_identity

    @cached_property
    def _sorted_transversals(self) -> List[List[Permutation]]:
        # base point first, so the first element listed is the identity
        return [[t[b]] + [t[x] for x in sorted(t) if x != b] for b, t in zip(self.base, self.transversals)]

    def elements(self) -> Iterator[Permutation]:
        """Every element exactly once, as products u_0 * u_1 * ... of transversal reps."""
        identity = self.identity
        for combo in product(*self._sorted_transversals):
            g = identity
            for u in combo:
                g = g * u
            yield g

    def random_element(self, rng: np.random.Generator) -> Permutation:
        g = self.identity
        for reps in self._sorted_transversals:
            g = g * reps[int(rng.integers(len(reps)))]
        return g

    def fixed_points(self, level: int) -> List[int]:
        """Points fixed by the whole level-`level` stabilizer."""
        gens = self.level_generators[level] if level < len(self.base) else ()
        return [x for x in range(self.degree) if all(g.images[x] == x for g in gens)]

    def orbit(self, point: int) -> List[int]:
        seen = {point}
        queue = [point]
        for x in queue:
            for g in self.generators:
                y = g.images[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)


@dataclass
class Subcoset:
    """A left coset representative * group, or the empty subcoset.

    `reason` is only set on empty results and records why no element exists.
    """

    representative: Optional[Permutation]
    group: PermGroup
    reason: Optional[str] = None

    @property
    def is_empty(self) -> bool:
        return self.representative is None

    @property
    def degree(self) -> int:
        return self.group.degree

    @property
    def order(self) -> int:
        return 0 if self.is_empty else self.group.order

    def __contains__(self, perm: Permutation) -> bool:
        if self.is_empty:
            return False
        return self.representative.inverse() * perm in self.group

    def elements(self) -> Iterator[Permutation]:
        if self.is_empty:
            return
        for g in self.group.elements():
            yield self.representative * g

    def random_element(self, rng: np.random.Generator) -> Permutation:
        if self.is_empty:
            raise ValueError("empty subcoset has no elements")
        return self.representative * self.group.random_element(rng)
