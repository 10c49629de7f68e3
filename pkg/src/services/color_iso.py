import logging
from math import factorial
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.models.coloring import CisCertificate, CisComponent, Coloring, ColorIsoInstance
from src.models.group import FiniteGroup, SimpleFactorLabel, sorted_labels
from src.models.permutation import Permutation, PermGroup, Subcoset
from src.services.abelian_aut import aut_factor_profile, canonical_decomposition
from src.services.group_core import composition_factors
from src.services.perm_core import CosetSearch, perm_group_to_finite_group, trivial_group
from src.services.simple_groups import CLASSIFICATION_BOUND, cyclic_label, cyclic_labels_for, label_for_order
from src.services.wreath_holomorph import automorphism_group, holomorph
from src.utils.config import Config
from src.utils.errors import ComponentTooLarge, MalformedInput

logger = logging.getLogger(__name__)


class ColoringProperty:
    """f2(pi x) == f1(x) for every point, pair or triple x.

    Partial checks compare every tuple of known points that contains at
    least one newly known point, one axis at a time.
    """

    complete = True

    def __init__(self, f1: Coloring, f2: Coloring):
        self.f1 = f1.values
        self.f2 = f2.values
        self.ndim = self.f1.ndim

    def partial(self, perm: Permutation, new_points: Sequence[int], known_points: Sequence[int]) -> bool:
        if not len(new_points):
            return True
        images = perm.as_array()
        new = np.asarray(new_points, dtype=np.int64)
        if self.ndim == 1:
            return bool(np.array_equal(self.f2[images[new]], self.f1[new]))
        known = np.asarray(known_points, dtype=np.int64)
        for axis in range(self.ndim):
            axes = [known] * self.ndim
            axes[axis] = new
            source = self.f1[np.ix_(*axes)]
            target = self.f2[np.ix_(*[images[a] for a in axes])]
            if not np.array_equal(source, target):
                return False
        return True

    def full(self, perm: Permutation) -> bool:
        images = perm.as_array()
        return bool(np.array_equal(self.f2[np.ix_(*[images] * self.ndim)], self.f1))


def histogram_precheck(f1: Coloring, f2: Coloring) -> bool:
    length = int(max(f1.values.max(initial=0), f2.values.max(initial=0))) + 1
    return bool(np.array_equal(f1.histogram(length), f2.histogram(length)))


def rarity_order(f1: Coloring) -> List[int]:
    """Points by ascending size of their diagonal color class, ties by index."""
    values = f1.values
    n = f1.degree
    idx = np.arange(n)
    diagonal = values[tuple([idx] * values.ndim)]
    counts = np.bincount(diagonal)[diagonal]
    return [int(x) for x in np.lexsort((idx, counts))]


def constraint_order(f1: Coloring) -> List[int]:
    """Base order for pairs and triples colorings.

    Starts from the rarest point, then repeatedly takes the point that
    closes the most tuples of non-modal color with the points already
    taken. Ties follow rarity.
    """
    rarity = rarity_order(f1)
    if f1.values.ndim == 1:
        return rarity
    n = f1.degree
    rank = np.empty(n, dtype=np.int64)
    rank[rarity] = np.arange(n)
    informative = (f1.values != np.bincount(f1.values.ravel()).argmax()).astype(np.int8)
    score = np.zeros(n, dtype=np.int64)
    taken = np.zeros(n, dtype=bool)
    order: List[int] = []
    for _ in range(n):
        candidates = np.flatnonzero(~taken)
        pick = int(candidates[np.lexsort((rank[candidates], -score[candidates]))[0]])
        order.append(pick)
        taken[pick] = True
        known = np.asarray(order, dtype=np.int64)
        if informative.ndim == 2:
            score += informative[pick, :] + informative[:, pick]
        else:
            score += informative[pick][known].sum(axis=0) + informative[known][:, pick].sum(axis=0)
            score += informative[pick][:, known].sum(axis=1) + informative[known][:, :, pick].sum(axis=0)
            score += informative[:, pick][:, known].sum(axis=1) + informative[:, known][:, :, pick].sum(axis=1)
    return order


def solve_color_iso(instance: ColorIsoInstance, presorted: bool = False) -> Subcoset:
    """All pi in the coset with f2(pi x) = f1(x), as a subcoset (possibly empty).

    With presorted, the coset group's chain is searched in its own base
    order instead of being rebuilt over `constraint_order(f1)`.
    """
    coset = instance.coset
    if coset.is_empty:
        return coset
    if not histogram_precheck(instance.f1, instance.f2):
        logger.debug("color histograms differ; no color isomorphism")
        return Subcoset(None, trivial_group(coset.degree), reason="search-exhausted")
    base = None if presorted else constraint_order(instance.f1)
    search = CosetSearch(coset, ColoringProperty(instance.f1, instance.f2), base=base)
    return search.run()


def exhaustive_color_iso(instance: ColorIsoInstance) -> List[Permutation]:
    """Every solution by filtering the coset element by element."""
    prop = ColoringProperty(instance.f1, instance.f2)
    return [g for g in instance.coset.elements() if prop.full(g)]


def multiplication_coloring(G: FiniteGroup) -> Coloring:
    """Indicator of {(x, y, xy)}."""
    n = G.order
    values = np.zeros((n, n, n), dtype=np.int8)
    idx = np.arange(n)
    values[idx[:, None], idx[None, :], G.table] = 1
    return Coloring(values)


def gris_solve(G: FiniteGroup, H: FiniteGroup, coset: Subcoset) -> Subcoset:
    """Isomorphisms G -> H (as index bijections) lying in the coset."""
    if G.order != H.order or coset.degree != G.order:
        raise MalformedInput(f"GRIS needs |G| = |H| = coset degree, got {G.order}, {H.order}, {coset.degree}")
    instance = ColorIsoInstance(coset, multiplication_coloring(G), multiplication_coloring(H))
    return solve_color_iso(instance)


# ---------------------------------------------------------------------------
# certification


def symmetric_factors(k: int) -> List[SimpleFactorLabel]:
    if k <= 1:
        return []
    if k <= 4:
        return list(cyclic_labels_for(factorial(k)))
    half = factorial(k) // 2
    if half < CLASSIFICATION_BOUND:
        alt = label_for_order(half)
    elif k == 8:
        alt = SimpleFactorLabel(half, frozenset({"Alt(8)", "PSL(4,2)"}))
    else:
        alt = SimpleFactorLabel(half, frozenset({f"Alt({k})"}))
    return [cyclic_label(2), alt]


def _perm_group_factors(group: PermGroup, what: str) -> List[SimpleFactorLabel]:
    if group.order > Config.limit("cayley_bound"):
        raise ComponentTooLarge(f"{what} has order {group.order} (bound {Config.limit('cayley_bound')})")
    table, _ = perm_group_to_finite_group(group, name=what)
    return composition_factors(table)


def holomorph_factors(F: FiniteGroup, automorphisms: Optional[PermGroup] = None) -> List[SimpleFactorLabel]:
    """Composition factors of Hol(F).

    Rebuilt as a Cayley table when small enough; for abelian F the
    structural Aut profile is used beyond that.
    """
    if F.is_abelian:
        profile = aut_factor_profile(canonical_decomposition(F).decomposition)
        aut_order = 1
        for label in profile:
            aut_order *= label.order
        if F.order * aut_order > Config.limit("cayley_bound"):
            return sorted_labels(list(cyclic_labels_for(F.order)) + profile)
    automorphisms = automorphisms if automorphisms is not None else automorphism_group(F)
    hol = holomorph(F, automorphisms)
    return _perm_group_factors(hol.action, f"Hol({F.name or F.order})")


def component_factors(component: CisComponent) -> List[SimpleFactorLabel]:
    if component.kind == "holomorph":
        labels = holomorph_factors(component.group)
    elif component.kind == "symmetric":
        labels = symmetric_factors(component.degree)
    elif component.kind == "group":
        labels = composition_factors(component.group)
    elif component.kind == "perm":
        labels = _perm_group_factors(component.perm_group, "permutation component")
    else:
        raise MalformedInput(f"unknown component kind {component.kind!r}")
    return labels * component.multiplicity


def certify_cis(components: Iterable[CisComponent]) -> CisCertificate:
    labels: List[SimpleFactorLabel] = []
    for component in components:
        labels.extend(component_factors(component))
    labels = sorted_labels(labels)
    offending = [label for label in labels if not label.in_cis_class]
    return CisCertificate(labels=labels, in_cis=not offending, offending=offending)


def structure_of_tower(levels: Sequence[Tuple[Optional[FiniteGroup], int]]) -> List[CisComponent]:
    """Certification components of a tower given bottom-up as (F, size) pairs.

    Level i is Hol(F) repeated once per point of the levels above it;
    F = None marks a trivial level.
    """
    components = []
    for i, (F, _) in enumerate(levels):
        if F is None:
            continue
        copies = 1
        for _, size in levels[i + 1:]:
            copies *= size
        components.append(CisComponent(kind="holomorph", group=F, multiplicity=copies))
    return components
