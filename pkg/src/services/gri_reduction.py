import logging
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from typing import List, Optional, Tuple

import numpy as np

from src.models.coloring import ColorIsoInstance
from src.models.group import FiniteGroup, Subgroup, SubnormalSeries
from src.models.permutation import Permutation, Subcoset
from src.models.reduction import FactorShape, PipelineResult, RadicalDerivedSeries, TildeGroup
from src.models.wreath import Holomorph
from src.services.abelian_aut import canonical_decomposition
from src.services.color_iso import (
    certify_cis,
    constraint_order,
    multiplication_coloring,
    solve_color_iso,
    structure_of_tower,
)
from src.services.group_core import (
    brute_force_isomorphisms,
    construct_group,
    derived_series,
    first_isomorphism,
    induced_group,
    is_homomorphism,
    quotient_group,
    solvable_radical,
    whole_group,
)
from src.services.perm_core import (
    conjugate_group,
    rebase,
    reduce_generators,
    trivial_group,
    union_of_subcosets,
)
from src.services.wreath_holomorph import (
    embed_component,
    holomorph,
    holomorph_pairs,
    tower_from_groups,
    tower_group,
    wreath_decompose,
)
from src.utils.config import Config
from src.utils.errors import (
    FactorClassViolation,
    InvariantViolation,
    MalformedInput,
    NotMember,
    TopFactorNotIsomorphic,
)

logger = logging.getLogger(__name__)


def radical_derived_series(G: FiniteGroup) -> RadicalDerivedSeries:
    radical = solvable_radical(G)
    chain: List[Subgroup] = list(reversed(derived_series(G, radical).chain))
    if not chain[0].is_trivial:
        raise InvariantViolation(f"derived series of Rad({G.name}) does not reach 1")
    semisimple_top = radical.order != G.order
    if semisimple_top:
        chain.append(whole_group(G))

    factors, lifts, projections = [], [], []
    for i in range(1, len(chain)):
        upper, lower = chain[i], chain[i - 1]
        sub, embedding = induced_group(G, upper)
        position = np.full(G.order, -1, dtype=np.int64)
        position[embedding] = np.arange(len(embedding))
        local_lower = Subgroup(sub, tuple(int(position[x]) for x in lower.elements))
        q = quotient_group(sub, local_lower, name=f"F{i}({G.name})")
        projection = np.full(G.order, -1, dtype=np.int64)
        projection[embedding] = q.projection
        factors.append(q.group)
        lifts.append(embedding[q.representatives])
        projections.append(projection)
    logger.debug(f"radical derived series of {G.name}: factor orders {[F.order for F in factors]}")
    return RadicalDerivedSeries(
        series=SubnormalSeries(G, tuple(chain)),
        factors=tuple(factors),
        lifts=tuple(lifts),
        projections=tuple(projections),
        semisimple_top=semisimple_top,
    )


def _coordinates(S: RadicalDerivedSeries) -> np.ndarray:
    idx = np.arange(S.parent.order, dtype=np.int64)
    orders = np.asarray(S.factor_orders, dtype=np.int64)
    if not len(orders):
        return np.zeros((len(idx), 0), dtype=np.int64)
    return (idx[:, None] // S.strides[None, :]) % orders[None, :]


def hat_group(S: RadicalDerivedSeries) -> Tuple[FiniteGroup, np.ndarray]:
    """G^ on the product index set; ell[x] = l_m(x_m) ... l_1(x_1) in G."""
    G = S.parent
    coords = _coordinates(S)
    ell = np.zeros(G.order, dtype=np.int64)
    for i in range(S.length - 1, -1, -1):
        ell = G.table[ell, S.lifts[i][coords[:, i]]]
    if len(np.unique(ell)) != G.order:
        raise InvariantViolation(f"lifted factorization of {G.name} is not a bijection")
    inverse = np.empty(G.order, dtype=np.int64)
    inverse[ell] = np.arange(G.order)
    table = inverse[G.table[ell[:, None], ell[None, :]]]
    return construct_group(table, name=f"hat({G.name})"), ell


def factorize(S: RadicalDerivedSeries, g: int) -> Tuple[int, ...]:
    """(x_1, ..., x_m) with g = l_m(x_m) ... l_1(x_1)."""
    G = S.parent
    coords = [0] * S.length
    current = g
    for i in range(S.length - 1, -1, -1):
        x = int(S.projections[i][current])
        coords[i] = x
        current = G.mul(G.inv(int(S.lifts[i][x])), current)
    if current != 0:
        raise InvariantViolation(f"element {g} of {G.name} did not factor through the series")
    return tuple(coords)


def tilde_group(S: RadicalDerivedSeries, top_anchor: Optional[FiniteGroup] = None) -> TildeGroup:
    """Relabel G^ factor by factor onto canonical forms.

    Abelian factors go to their canonical decomposition. A semisimple top
    is kept as is, or mapped onto `top_anchor` by a brute-force
    isomorphism when one is given.
    """
    G = S.parent
    hat, ell = hat_group(S)
    shapes, factor_groups, maps = [], [], []
    for i, F in enumerate(S.factors):
        if S.semisimple_top and i == S.length - 1:
            if top_anchor is None:
                target, relabel = F, np.arange(F.order)
            else:
                psi = first_isomorphism(F, top_anchor)
                if psi is None:
                    raise TopFactorNotIsomorphic(f"top factor of {G.name} is not isomorphic to the anchor")
                target, relabel = top_anchor, psi.as_array()
            shapes.append(FactorShape(top=target, top_order=F.order))
        else:
            form = canonical_decomposition(F)
            target, relabel = form.group, form.to_canonical
            shapes.append(FactorShape(decomposition=form.decomposition))
        factor_groups.append(target)
        maps.append(relabel)

    coords = _coordinates(S)
    tilde_of_hat = np.zeros(G.order, dtype=np.int64)
    for i, relabel in enumerate(maps):
        tilde_of_hat += relabel[coords[:, i]] * S.strides[i]
    table = np.empty_like(hat.table, dtype=np.int64)
    table[tilde_of_hat[:, None], tilde_of_hat[None, :]] = tilde_of_hat[hat.table]
    tilde = construct_group(table, name=f"tilde({G.name})")

    hat_of_source = np.empty(G.order, dtype=np.int64)
    hat_of_source[ell] = np.arange(G.order)
    iso = tilde_of_hat[hat_of_source]
    if not is_homomorphism(G, tilde, iso):
        raise InvariantViolation(f"{G.name} -> tilde({G.name}) is not an isomorphism")
    return TildeGroup(G, S, tuple(shapes), tuple(factor_groups), tilde, iso)


def check_prefix_derived(T: TildeGroup) -> bool:
    """The radical derived series of G~ is the chain of coordinate prefixes."""
    series = radical_derived_series(T.group)
    prefixes = T.prefix_orders
    if len(series.chain) != len(prefixes):
        return False
    return all(sub.elements == tuple(range(size)) for sub, size in zip(series.chain, prefixes))


def holomorph_levels(T: TildeGroup) -> List[Holomorph]:
    return [holomorph(F) for F in T.factor_groups]


def isomorphisms_in_tower(Gt: TildeGroup, Ht: TildeGroup) -> bool:
    """Every isomorphism G~ -> H~ decomposes in Hol(F~_1) wr ... wr Hol(F~_m)."""
    if Gt.shapes != Ht.shapes:
        raise MalformedInput("tilde groups have different factor shapes")
    tower = tower_from_groups([h.action for h in holomorph_levels(Gt)])
    for psi in brute_force_isomorphisms(Gt.group, Ht.group):
        try:
            wreath_decompose(tower, psi)
        except NotMember as e:
            logger.info(f"isomorphism {psi} left the tower: {e}")
            return False
    return True


def _same_shape(SG: RadicalDerivedSeries, SH: RadicalDerivedSeries) -> bool:
    return (
        SG.factor_orders == SH.factor_orders
        and SG.semisimple_top == SH.semisimple_top
        and [F.is_abelian for F in SG.factors] == [F.is_abelian for F in SH.factors]
    )


class ReductionPipeline:
    """Iso(G, H) through color isomorphism over a tower of holomorphs.

    One triples-coloring instance is emitted per element of Hol of the
    semisimple top factor (a single instance for solvable inputs); the
    instances are solved on a thread pool and their subcosets merged.
    """

    def __init__(self, max_workers: Optional[int] = None):
        self.max_workers = max_workers or Config.RUN["parallel"]

    @staticmethod
    def _empty(n: int, reason: str, **extra) -> PipelineResult:
        logger.info(f"no isomorphism: {reason}")
        return PipelineResult(Subcoset(None, trivial_group(n), reason=reason), reason=reason, **extra)

    def run(self, G: FiniteGroup, H: FiniteGroup) -> PipelineResult:
        n = G.order
        if G.order != H.order:
            return self._empty(max(n, 1), "order")
        SG, SH = radical_derived_series(G), radical_derived_series(H)
        if not _same_shape(SG, SH):
            return self._empty(n, "series-shape")
        Gt = tilde_group(SG)
        try:
            Ht = tilde_group(SH, top_anchor=Gt.factor_groups[-1] if SG.semisimple_top else None)
        except TopFactorNotIsomorphic:
            return self._empty(n, "top-factor")
        shapes = [s.label for s in Gt.shapes]
        if Gt.shapes != Ht.shapes:
            return self._empty(n, "series-shape", factor_shapes=shapes)

        hols = holomorph_levels(Gt)
        lower = hols[:-1] if SG.semisimple_top else hols
        groups = [h.action for h in lower]
        structure = [(h.base, h.base.order) for h in lower]
        if SG.semisimple_top:
            top_size = Gt.factor_groups[-1].order
            groups.append(trivial_group(top_size))
            structure.append((None, top_size))
        tower = tower_from_groups(groups, [s.label for s in Gt.shapes])
        certificate = certify_cis(structure_of_tower(structure))
        if not certificate.in_cis:
            raise FactorClassViolation(
                f"coset group has factors outside the class: {[l.display() for l in certificate.offending]}"
            )

        f1, f2 = multiplication_coloring(Gt.group), multiplication_coloring(Ht.group)
        delta = rebase(tower_group(tower), constraint_order(f1), strip_redundant=True)
        if SG.semisimple_top:
            top = hols[-1]
            level = len(hols) - 1
            sigmas = [embed_component(tower, level, (), top.element(f, phi)) for f, phi in holomorph_pairs(top)]
        else:
            sigmas = [Permutation.identity(n)]
        instances = [ColorIsoInstance(Subcoset(sigma, delta), f1, f2) for sigma in sigmas]
        logger.info(f"{G.name} vs {H.name}: {len(instances)} instance(s) over a coset group of order {delta.order}")

        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            parts = list(executor.map(partial(solve_color_iso, presorted=True), instances))
        merged = union_of_subcosets(parts, n)
        if merged.is_empty:
            return self._empty(n, "search-exhausted", instances=len(instances),
                               certificate=certificate, factor_shapes=shapes)

        alpha = Permutation(Gt.iso_from_source.tolist())
        beta = Permutation(Ht.iso_from_source.tolist())
        rep = beta.inverse() * merged.representative * alpha
        iso = Subcoset(rep, reduce_generators(conjugate_group(merged.group, alpha)))
        logger.info(f"|Iso({G.name}, {H.name})| = {iso.order}")
        return PipelineResult(iso, None, len(instances), certificate, shapes)


def reduce_group_isomorphism(G: FiniteGroup, H: FiniteGroup, max_workers: Optional[int] = None) -> PipelineResult:
    return ReductionPipeline(max_workers).run(G, H)
