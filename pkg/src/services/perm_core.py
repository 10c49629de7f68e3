import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Protocol, Sequence, Set, Tuple

import numpy as np

from src.models.permutation import Permutation, PermGroup, Subcoset
from src.utils.config import Config
from src.utils.errors import InvariantViolation, MalformedInput, NotASubcoset

logger = logging.getLogger(__name__)


class _ChainBuilder:
    """Incremental Schreier-Sims.

    The base starts as `base_prefix` (levels with trivial orbits allowed)
    and grows at the end with the first point moved by a new strong
    generator. Schreier generators already sifted are remembered per level
    as (orbit point, generator) pairs, so completing a level again only
    looks at new pairs.
    """

    def __init__(self, degree: int, base_prefix: Sequence[int] = ()):
        self.degree = degree
        self.identity = Permutation.identity(degree)
        self.base: List[int] = []
        self.gens: List[List[Permutation]] = []
        self.trans: List[Dict[int, Permutation]] = []
        self.inv_trans: List[Dict[int, Permutation]] = []
        self.orbit: List[List[int]] = []
        self.checked: List[Set[Tuple[int, int]]] = []
        seen = set()
        for point in base_prefix:
            if point in seen or not 0 <= point < degree:
                raise MalformedInput(f"bad base prefix point {point}")
            seen.add(point)
            self._new_level(point)

    def _new_level(self, point: int) -> None:
        self.base.append(point)
        self.gens.append([])
        self.trans.append({point: self.identity})
        self.inv_trans.append({point: self.identity})
        self.orbit.append([point])
        self.checked.append(set())

    def _extend_orbit(self, level: int) -> None:
        trans, inv_trans, orbit = self.trans[level], self.inv_trans[level], self.orbit[level]
        gens = self.gens[level]
        i = 0
        while i < len(orbit):
            x = orbit[i]
            ux = trans[x]
            for s in gens:
                y = s.images[x]
                if y not in trans:
                    uy = s * ux
                    trans[y] = uy
                    inv_trans[y] = uy.inverse()
                    orbit.append(y)
            i += 1

    def _strip(self, g: Permutation, start: int) -> Tuple[Permutation, int]:
        for level in range(start, len(self.base)):
            x = g.images[self.base[level]]
            inverse_rep = self.inv_trans[level].get(x)
            if inverse_rep is None:
                return g, level
            g = inverse_rep * g
        return g, len(self.base)

    def _install(self, h: Permutation, low: int, top: int) -> None:
        """Add the non-identity h, which fixes base[:top], at levels low..top."""
        if top == len(self.base):
            self._new_level(h.moved_points()[0])
        for level in range(low, top + 1):
            self.gens[level].append(h)
            self._extend_orbit(level)

    def add_generator(self, g: Permutation) -> bool:
        """Enlarge the group by g; False when g is already a member."""
        if g.degree != self.degree:
            raise MalformedInput(f"generator of degree {g.degree} in a group of degree {self.degree}")
        h, level = self._strip(g, 0)
        if level == len(self.base) and h.is_identity:
            return False
        self._install(h, 0, level)
        self._complete(level)
        return True

    def _complete(self, start: int) -> None:
        i = start
        while i >= 0:
            restart = self._process_level(i)
            if restart is None:
                i -= 1
            else:
                i = restart

    def _process_level(self, i: int) -> Optional[int]:
        trans, inv_trans, checked = self.trans[i], self.inv_trans[i], self.checked[i]
        orbit, gens = self.orbit[i], self.gens[i]
        k = 0
        while k < len(orbit):
            p = orbit[k]
            up = trans[p]
            for j, s in enumerate(gens):
                if (p, j) in checked:
                    continue
                checked.add((p, j))
                schreier = inv_trans[s.images[p]] * (s * up)
                if schreier.is_identity:
                    continue
                h, level = self._strip(schreier, i + 1)
                if level == len(self.base) and h.is_identity:
                    continue
                self._install(h, i + 1, level)
                return level
            k += 1
        return None

    def freeze(self, generators: Sequence[Permutation], strip_redundant: bool = False) -> PermGroup:
        levels = range(len(self.base))
        if strip_redundant:
            levels = [i for i in levels if len(self.orbit[i]) > 1]
        return PermGroup(
            degree=self.degree,
            generators=tuple(g for g in generators if not g.is_identity),
            base=tuple(self.base[i] for i in levels),
            level_generators=tuple(tuple(self.gens[i]) for i in levels),
            transversals=tuple(dict(self.trans[i]) for i in levels),
            inverse_transversals=tuple(dict(self.inv_trans[i]) for i in levels),
        )


def build_chain(generators: Sequence[Permutation], degree: Optional[int] = None,
                base: Sequence[int] = (), strip_redundant: Optional[bool] = None) -> PermGroup:
    """Stabilizer chain of <generators>.

    With a base prefix, levels for every prefix point are kept (so the
    level after the prefix is its pointwise stabilizer) unless
    strip_redundant is set.
    """
    if degree is None:
        if not generators:
            raise MalformedInput("degree is required for a group without generators")
        degree = generators[0].degree
    builder = _ChainBuilder(degree, base)
    for g in generators:
        builder.add_generator(g)
    if strip_redundant is None:
        strip_redundant = not base
    group = builder.freeze(generators, strip_redundant=strip_redundant)
    logger.debug(f"chain of degree {degree}: order {group.order}, base length {group.depth}")
    return group


def trivial_group(degree: int) -> PermGroup:
    return build_chain([], degree=degree)


def rebase(group: PermGroup, base: Sequence[int], strip_redundant: bool = False) -> PermGroup:
    """Same group, chain rebuilt over a new base prefix."""
    builder = _ChainBuilder(group.degree, base)
    for g in group.generators:
        builder.add_generator(g)
    return builder.freeze(group.generators, strip_redundant=strip_redundant)


@dataclass
class Membership:
    member: bool
    factors: List[Permutation] = field(default_factory=list)


def membership(group: PermGroup, perm: Permutation) -> Membership:
    """Sift perm; members come back with transversal reps u_0, u_1, ... whose product is perm."""
    if perm.degree != group.degree:
        raise MalformedInput(f"permutation of degree {perm.degree} against group of degree {group.degree}")
    factors = []
    g = perm
    for level, b in enumerate(group.base):
        x = g.images[b]
        if x not in group.transversals[level]:
            return Membership(False)
        factors.append(group.transversals[level][x])
        g = group.inverse_transversals[level][x] * g
    if not g.is_identity:
        return Membership(False)
    return Membership(True, factors)


def reduce_generators(group: PermGroup) -> PermGroup:
    """Keep a generator only if it enlarges the span of those kept before it."""
    builder = _ChainBuilder(group.degree)
    kept = [g for g in group.generators if builder.add_generator(g)]
    reduced = builder.freeze(kept, strip_redundant=True)
    if reduced.order != group.order:
        raise InvariantViolation(f"reduced group has order {reduced.order}, expected {group.order}")
    return reduced


def pointwise_stabilizer(group: PermGroup, points: Sequence[int]) -> PermGroup:
    chain = rebase(group, points)
    depth = len(points)
    gens = chain.level_generators[depth] if depth < chain.depth else ()
    return build_chain(list(gens), degree=group.degree)


def conjugate_group(group: PermGroup, alpha: Permutation) -> PermGroup:
    """alpha^-1 * group * alpha."""
    inv = alpha.inverse()
    return build_chain([inv * g * alpha for g in group.generators], degree=group.degree)


def union_of_subcosets(parts: Sequence[Subcoset], degree: int) -> Subcoset:
    """Union of subcosets that together form one subcoset; empty parts are skipped."""
    live = [c for c in parts if not c.is_empty]
    if not live:
        reasons = sorted({c.reason for c in parts if c.reason})
        return Subcoset(None, trivial_group(degree), reason=reasons[0] if reasons else "search-exhausted")
    rep = live[0].representative
    rep_inv = rep.inverse()
    gens = []
    for c in live:
        gens.extend(c.group.generators)
        shift = rep_inv * c.representative
        if not shift.is_identity:
            gens.append(shift)
    group = reduce_generators(build_chain(gens, degree=degree))
    return Subcoset(rep, group)


def perm_group_to_finite_group(group: PermGroup, name: str = ""):
    """Cayley table of a permutation group; returns (group, element list)."""
    from src.services.group_core import construct_group

    elements = list(group.elements())
    stack = np.array([g.images for g in elements], dtype=np.int64).reshape(len(elements), group.degree)
    base = list(group.base)
    if not base:
        return construct_group(np.zeros((1, 1), dtype=np.int64), name=name), elements
    # an element is determined by its base images
    lookup = _base_image_lookup(stack[:, base], group.degree)
    table = np.empty((len(elements), len(elements)), dtype=np.int64)
    for i in range(len(elements)):
        products = stack[i][stack]            # row j is elements[i] * elements[j]
        table[i] = lookup(products[:, base])
    return construct_group(table, name=name), elements


def _base_image_lookup(images: np.ndarray, degree: int) -> Callable[[np.ndarray], np.ndarray]:
    if degree ** images.shape[1] < 2**62:
        weights = degree ** np.arange(images.shape[1], dtype=np.int64)
        codes = images @ weights
        order = np.argsort(codes)
        sorted_codes = codes[order]
        return lambda rows: order[np.searchsorted(sorted_codes, rows @ weights)]
    index = {tuple(row): i for i, row in enumerate(images.tolist())}
    return lambda rows: np.array([index[tuple(row)] for row in rows.tolist()], dtype=np.int64)


# ---------------------------------------------------------------------------
# coset backtracking


class CosetProperty(Protocol):
    """A property of permutations that can be checked as images are fixed.

    `partial(perm, new_points, known_points)` is called once the values of
    perm on `known_points` are final; `new_points` are those that just
    became final. `complete` says whether the partial checks, once every
    point is known, already decide the property.
    """

    complete: bool

    def partial(self, perm: Permutation, new_points: Sequence[int], known_points: Sequence[int]) -> bool:
        ...

    def full(self, perm: Permutation) -> bool:
        ...


@dataclass
class PredicateProperty:
    test: Callable[[Permutation], bool]
    complete: bool = False

    def partial(self, perm, new_points, known_points) -> bool:
        return True

    def full(self, perm) -> bool:
        return bool(self.test(perm))


class CosetSearch:
    """Depth-first search of sigma * group along the group's stabilizer chain.

    At depth d the product u_0 * ... * u_{d-1} is final on the points
    fixed by the level-d stabilizer, which is what `partial` checks.
    """

    def __init__(self, coset: Subcoset, prop: CosetProperty, base: Optional[Sequence[int]] = None):
        self.sigma = coset.representative
        self.prop = prop
        self.group = rebase(coset.group, base, strip_redundant=True) if base is not None else coset.group
        depth = self.group.depth
        fixed = [self.group.fixed_points(d) for d in range(depth + 1)]
        self.known = fixed
        self.new = [fixed[0]] + [sorted(set(fixed[d]) - set(fixed[d - 1])) for d in range(1, depth + 1)]
        self.choices = [sorted(t.items()) for t in self.group.transversals]
        self.nodes = 0

    def _descend(self, depth: int, current: Permutation) -> Optional[Permutation]:
        if depth == self.group.depth:
            if self.prop.complete or self.prop.full(current):
                return current
            return None
        for _, u in self.choices[depth]:
            candidate = current * u
            self.nodes += 1
            if not self.prop.partial(candidate, self.new[depth + 1], self.known[depth + 1]):
                continue
            found = self._descend(depth + 1, candidate)
            if found is not None:
                return found
        return None

    def representative(self) -> Optional[Permutation]:
        if not self.prop.partial(self.sigma, self.new[0], self.known[0]):
            return None
        return self._descend(0, self.sigma)

    def stabilizing_subgroup(self, rep: Permutation) -> PermGroup:
        """{g in group : rep * g has the property}, assuming rep has it."""
        gens: List[Permutation] = []
        base = self.group.base
        for depth in range(self.group.depth - 1, -1, -1):
            b = base[depth]
            reached = _orbit(b, gens)
            for x, u in self.choices[depth]:
                if x in reached:
                    continue
                candidate = rep * u
                self.nodes += 1
                if not self.prop.partial(candidate, self.new[depth + 1], self.known[depth + 1]):
                    continue
                found = self._descend(depth + 1, candidate)
                if found is None:
                    continue
                gens.append(rep.inverse() * found)
                reached = _orbit(b, gens)
        return build_chain(gens, degree=self.group.degree)

    def run(self) -> Subcoset:
        rep = self.representative()
        if rep is None:
            logger.debug(f"coset search exhausted after {self.nodes} nodes")
            return Subcoset(None, trivial_group(self.group.degree), reason="search-exhausted")
        K = self.stabilizing_subgroup(rep)
        logger.debug(f"coset search: |K| = {K.order} after {self.nodes} nodes")
        return Subcoset(rep, K)


def _orbit(point: int, gens: Sequence[Permutation]) -> Set[int]:
    seen = {point}
    queue = [point]
    for x in queue:
        for g in gens:
            y = g.images[x]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def subcoset_intersect_filter(coset: Subcoset, test: Callable[[Permutation], bool],
                              rng: Optional[np.random.Generator] = None, samples: int = 100) -> Subcoset:
    """Elements of the coset passing test, which must themselves form a subcoset."""
    if coset.is_empty:
        return coset
    if coset.order <= Config.limit("subcoset_exhaustive_limit"):
        passing = [g for g in coset.elements() if test(g)]
        if not passing:
            return Subcoset(None, trivial_group(coset.degree), reason="search-exhausted")
        rep = passing[0]
        rep_inv = rep.inverse()
        K = build_chain([rep_inv * g for g in passing[1:]], degree=coset.degree)
        if K.order != len(passing):
            raise NotASubcoset(f"{len(passing)} passing elements do not form a coset (span has order {K.order})")
        return Subcoset(rep, reduce_generators(K))

    result = CosetSearch(coset, PredicateProperty(test)).run()
    if result.is_empty:
        return result
    rng = rng or np.random.default_rng(Config.RUN["seed"])
    for _ in range(samples):
        g = result.random_element(rng)
        if not test(g):
            raise NotASubcoset(f"sampled element {g} of the candidate subcoset fails the test")
    return result


def coset_of(group: PermGroup, representative: Optional[Permutation] = None) -> Subcoset:
    return Subcoset(representative or group.identity, group)


def random_permutation(degree: int, rng: np.random.Generator, support: Optional[Sequence[int]] = None) -> Permutation:
    """Uniform on Sym(support), the identity elsewhere."""
    images = np.arange(degree)
    points = np.arange(degree) if support is None else np.asarray(support, dtype=np.int64)
    images[points] = rng.permutation(points)
    return Permutation(images.tolist())


def random_subgroup(degree: int, rng: np.random.Generator, max_generators: int = 2) -> PermGroup:
    """Group generated by a few random permutations, each moving a random subset of points."""
    gens = []
    for _ in range(int(rng.integers(1, max_generators + 1))):
        size = int(rng.integers(min(2, degree), degree + 1))
        support = rng.choice(degree, size=size, replace=False)
        gens.append(random_permutation(degree, rng, support))
    return build_chain(gens, degree=degree)


def symmetric_group_gens(degree: int, points: Optional[Sequence[int]] = None) -> List[Permutation]:
    """A transposition and a long cycle generating Sym(points) (all points by default)."""
    points = tuple(range(degree)) if points is None else tuple(points)
    if len(points) < 2:
        return []
    gens = [Permutation.from_cycles(degree, points[:2])]
    if len(points) > 2:
        gens.append(Permutation.from_cycles(degree, points))
    return gens


def symmetric_perm_group(degree: int) -> PermGroup:
    return build_chain(symmetric_group_gens(degree), degree=degree)
