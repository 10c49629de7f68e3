import logging
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from src.models.group import FiniteGroup
from src.models.permutation import Permutation, PermGroup
from src.models.wreath import Holomorph, TowerLevel, WreathElement, WreathTower
from src.services.abelian_aut import aut_group, canonical_decomposition
from src.services.group_core import brute_force_isomorphisms, generating_sequence
from src.services.perm_core import build_chain, reduce_generators
from src.utils.config import Config
from src.utils.errors import DomainTooLarge, InvariantViolation, MalformedInput, NotMember

logger = logging.getLogger(__name__)


def automorphism_group(G: FiniteGroup) -> PermGroup:
    """Aut(G) acting on the element indices of G."""
    if G.is_abelian:
        form = canonical_decomposition(G)
        on_canonical = aut_group(G)
        gens = [
            Permutation(form.from_canonical[np.asarray(phi.images)[form.to_canonical]].tolist())
            for phi in on_canonical.generators
        ]
        group = build_chain(gens, degree=G.order)
    else:
        group = reduce_generators(build_chain(brute_force_isomorphisms(G, G), degree=G.order))
    logger.debug(f"|Aut({G.name or G.order})| = {group.order}")
    return group


def holomorph(G: FiniteGroup, automorphisms: PermGroup = None) -> Holomorph:
    automorphisms = automorphisms if automorphisms is not None else automorphism_group(G)
    translations = [Permutation(G.table[g].tolist()) for g in generating_sequence(G)]
    action = build_chain(translations + list(automorphisms.generators), degree=G.order)
    hol = Holomorph(G, automorphisms, action)
    expected = G.order * automorphisms.order
    if action.order != expected:
        raise InvariantViolation(f"Hol({G.name}) has order {action.order}, expected {expected}")
    return hol


def holomorph_pair_product(G: FiniteGroup, first: Tuple[int, Permutation], second: Tuple[int, Permutation]):
    """(g1, phi1)(g2, phi2) = (g1 * phi1(g2), phi1 o phi2)."""
    g1, phi1 = first
    g2, phi2 = second
    return G.mul(g1, phi1(g2)), phi1 * phi2


def holomorph_pairs(hol: Holomorph) -> Iterator[Tuple[int, Permutation]]:
    for phi in hol.automorphisms.elements():
        for g in range(hol.base.order):
            yield g, phi


def tower_from_groups(groups: Sequence[PermGroup], labels: Sequence[str] = ()) -> WreathTower:
    labels = list(labels) + [""] * (len(groups) - len(labels))
    return WreathTower(tuple(TowerLevel(g, g.degree, label) for g, label in zip(groups, labels)))


def tower_order_formula(tower: WreathTower) -> int:
    total = 1
    for i, level in enumerate(tower.levels):
        copies = 1
        for size in tower.sizes[i + 1:]:
            copies *= size
        total *= level.group.order ** copies
    return total


def _check_domain(tower: WreathTower) -> None:
    if tower.domain_size > Config.limit("domain_bound"):
        raise DomainTooLarge(f"tower domain has {tower.domain_size} points (bound {Config.limit('domain_bound')})")


def embed_component(tower: WreathTower, level: int, suffix: Tuple[int, ...], perm: Permutation) -> Permutation:
    """The domain permutation acting by perm on coordinate `level` where the suffix matches."""
    coords = tower.coordinates
    idx = np.arange(tower.domain_size, dtype=np.int64)
    mask = np.ones(tower.domain_size, dtype=bool)
    for offset, value in enumerate(suffix):
        mask &= coords[:, level + 1 + offset] == value
    local = coords[:, level]
    moved = perm.as_array()[local]
    images = np.where(mask, idx + (moved - local) * tower.strides[level], idx)
    return Permutation(images.tolist())


def tower_group(tower: WreathTower) -> PermGroup:
    """The whole tower as a permutation group of the product domain."""
    _check_domain(tower)
    gens: List[Permutation] = []
    for level, tower_level in enumerate(tower.levels):
        for suffix in tower.suffixes(level):
            for g in tower_level.group.generators:
                gens.append(embed_component(tower, level, suffix, g))
    group = build_chain(gens, degree=tower.domain_size)
    expected = tower_order_formula(tower)
    if group.order != expected:
        raise InvariantViolation(f"tower group has order {group.order}, expected {expected}")
    return group


def wreath_evaluate(element: WreathElement, point: Sequence[int]) -> Tuple[int, ...]:
    tower = element.tower
    point = tuple(point)
    if len(point) != len(tower.levels):
        raise MalformedInput(f"point {point} has the wrong number of coordinates")
    return tuple(element.component(i, point[i + 1:])(point[i]) for i in range(len(point)))


def wreath_to_permutation(element: WreathElement) -> Permutation:
    tower = element.tower
    _check_domain(tower)
    images = [tower.index(wreath_evaluate(element, tower.coords(x))) for x in range(tower.domain_size)]
    return Permutation(images)


def wreath_decompose(tower: WreathTower, perm: Permutation) -> WreathElement:
    """Recover the components of a domain permutation, or raise NotMember."""
    _check_domain(tower)
    if perm.degree != tower.domain_size:
        raise MalformedInput(f"permutation of degree {perm.degree} on a domain of {tower.domain_size} points")
    coords = tower.coordinates
    image_coords = coords[perm.as_array()]
    components = {}
    for level in range(len(tower.levels) - 1, -1, -1):
        maps = {}
        for x in range(tower.domain_size):
            key = tuple(int(c) for c in coords[x, level + 1:])
            source, target = int(coords[x, level]), int(image_coords[x, level])
            table = maps.setdefault(key, {})
            if table.setdefault(source, target) != target:
                raise NotMember(f"coordinate {level} of the image is not determined by coordinates above it")
        group = tower.levels[level].group
        for key, table in maps.items():
            images = [table[i] for i in range(tower.sizes[level])]
            if sorted(images) != list(range(tower.sizes[level])):
                raise NotMember(f"component at level {level}, suffix {key} is not a permutation")
            component = Permutation(images)
            if component not in group:
                raise NotMember(f"component at level {level}, suffix {key} is outside the level group")
            components[(level, key)] = component
    element = WreathElement(tower, components)
    if wreath_to_permutation(element) != perm:
        raise InvariantViolation("decomposed wreath element does not reproduce the permutation")
    return element


def random_wreath_element(tower: WreathTower, rng: np.random.Generator) -> WreathElement:
    components = {}
    for level, tower_level in enumerate(tower.levels):
        for suffix in tower.suffixes(level):
            components[(level, suffix)] = tower_level.group.random_element(rng)
    return WreathElement(tower, components)


def wreath_compose(first: WreathElement, second: WreathElement) -> WreathElement:
    """Components of first o second (second acts first).

    The level-i component at suffix s is first's component at the image of
    s under second, times second's component at s.
    """
    tower = first.tower
    if second.tower.sizes != tower.sizes:
        raise MalformedInput("wreath elements live on different towers")
    k = len(tower.levels)
    components = {}
    for level in range(k):
        for suffix in tower.suffixes(level):
            moved = tuple(
                second.component(j, suffix[j - level:])(suffix[j - level - 1]) for j in range(level + 1, k)
            )
            components[(level, suffix)] = first.component(level, moved) * second.component(level, suffix)
    return WreathElement(tower, components)
