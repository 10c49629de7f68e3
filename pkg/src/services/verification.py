"""Verification suites, one per acceptance criterion.

Each suite takes a seed plus size knobs (defaults are the full sweeps)
and returns a SuiteResult; failures are collected, not raised, so one
report lists every broken case.
"""
import logging
from itertools import product
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.models.abelian import AbelianDecomposition
from src.models.bilinear import BilinearMap
from src.models.coloring import Coloring, ColorIsoInstance
from src.models.corpus import CorpusEntry
from src.models.permutation import Permutation, Subcoset
from src.models.report import SuiteResult
from src.models.wreath import WreathElement
from src.services.abelian_aut import (
    all_hr_matrices,
    aut_group,
    aut_order_formula,
    canonical_decomposition,
    check_aut_factors,
    coordinates,
    hr_matrix_count,
    is_automorphism,
    random_hr_matrix,
)
from src.services.bilinear_isometry import (
    brute_force_isometries,
    build_bilinear,
    build_gf,
    isometries_via_gris,
    random_bilinear_map,
    varphi_hom_check,
)
from src.services.color_iso import exhaustive_color_iso, solve_color_iso
from src.services.corpus import abelian_corpus, corpus_pairs, group_corpus
from src.services.graph_gadget import (
    brute_force_graph_isos,
    check_gadget_signature,
    ci_to_gis,
    gadget_vertex_types,
    gis_to_ci,
    random_graph,
    relabel,
)
from src.services.gri_reduction import (
    check_prefix_derived,
    holomorph_levels,
    isomorphisms_in_tower,
    radical_derived_series,
    reduce_group_isomorphism,
    tilde_group,
)
from src.services.group_core import brute_force_isomorphisms, is_homomorphism, relabel_group
from src.services.perm_core import random_permutation, random_subgroup
from src.services.wreath_holomorph import (
    random_wreath_element,
    tower_from_groups,
    tower_group,
    wreath_decompose,
    wreath_to_permutation,
)
from src.utils.errors import ColorGroupError, InvariantViolation, MalformedInput

logger = logging.getLogger(__name__)


def _entries(entries: Optional[Sequence[CorpusEntry]]) -> Tuple[CorpusEntry, ...]:
    return tuple(entries) if entries is not None else group_corpus()


def suite_pipeline(seed: int, entries: Optional[Sequence[CorpusEntry]] = None, samples: int = 50) -> SuiteResult:
    """Reduction output order equals the brute-force isomorphism count on every ordered pair."""
    result = SuiteResult("pipeline", seed)
    rng = np.random.default_rng(seed)
    for first, second in corpus_pairs(_entries(entries)):
        G, H = first.group, second.group
        expected = len(brute_force_isomorphisms(G, H))
        run = reduce_group_isomorphism(G, H)
        result.check(run.iso_order == expected, f"{first.name} vs {second.name}: {run.iso_order} != {expected}")
        if G.order != H.order:
            result.check(run.reason == "order", f"{first.name} vs {second.name}: rejected as {run.reason}")
        if run.iso.is_empty:
            continue
        for _ in range(min(samples, run.iso_order)):
            psi = run.iso.random_element(rng)
            result.check(is_homomorphism(G, H, psi.images), f"{first.name} vs {second.name}: {psi} is no isomorphism")
    return result


def suite_cis(seed: int, entries: Optional[Sequence[CorpusEntry]] = None) -> SuiteResult:
    """Every emitted coset group certifies; a non-solvable input exercises the semisimple top."""
    result = SuiteResult("cis", seed)
    semisimple_seen = False
    for entry in _entries(entries):
        try:
            run = reduce_group_isomorphism(entry.group, entry.group)
        except InvariantViolation as e:
            result.check(False, f"{entry.name}: {e}")
            continue
        certified = run.certificate is not None and run.certificate.in_cis
        result.check(certified, f"{entry.name}: coset group not certified")
        if "semisimple-top" in entry.tags:
            semisimple_seen = True
            result.check(
                bool(run.factor_shapes) and run.factor_shapes[-1].startswith("top("),
                f"{entry.name}: semisimple top factor was not split off",
            )
    if any("semisimple-top" in e.tags for e in _entries(entries)):
        result.check(semisimple_seen, "no semisimple-top group was exercised")
    return result


def suite_abel_aut(seed: int, max_order: int = 128, brute_force_limit: int = 5000) -> SuiteResult:
    """Aut of every abelian group has cyclic/PSL factors and the expected order."""
    result = SuiteResult("abel-aut", seed)
    for entry in abelian_corpus(max_order):
        A = entry.group
        try:
            check_aut_factors(A)
            result.check(True, "")
        except InvariantViolation as e:
            result.check(False, f"{entry.name}: {e}")
        formula = aut_order_formula(canonical_decomposition(A).decomposition)
        result.check(aut_group(A).order == formula, f"{entry.name}: Aut order differs from the formula")
        if formula > brute_force_limit:
            result.skipped += 1
            continue
        count = len(brute_force_isomorphisms(A, A))
        result.check(count == formula, f"{entry.name}: brute force finds {count} automorphisms, expected {formula}")
    return result


def hr_exponent_shapes(primes=(2, 3), max_rank: int = 3, max_exponent: int = 3,
                       max_order: int = 64) -> Iterator[Tuple[int, Tuple[int, ...]]]:
    for p in primes:
        for d in range(1, max_rank + 1):
            for exps in product(range(1, max_exponent + 1), repeat=d):
                if list(exps) == sorted(exps) and p ** sum(exps) <= max_order:
                    yield p, exps


def _is_bijective(p: int, exps: Sequence[int], M) -> bool:
    decomp = AbelianDecomposition(tuple((p, e) for e in exps))
    coords = coordinates(decomp)
    moduli = np.asarray(decomp.moduli, dtype=np.int64)
    images = (coords @ np.asarray(M.entries, dtype=np.int64).T) % moduli
    return len(np.unique(images, axis=0)) == decomp.order


def suite_hillar_rhea(seed: int, triples: int = 100, closure_limit: int = 64,
                      exhaustive_limit: int = 4096, samples: int = 500) -> SuiteResult:
    """Matrix action is a homomorphism, R(A) is closed, invertible mod p means bijective."""
    result = SuiteResult("hillar-rhea", seed)
    rng = np.random.default_rng(seed)
    for p, exps in hr_exponent_shapes():
        tag = f"p={p}, e={exps}"
        moduli = [p**e for e in exps]
        for _ in range(triples):
            M, N = random_hr_matrix(p, exps, rng), random_hr_matrix(p, exps, rng)
            a = [int(rng.integers(0, m)) for m in moduli]
            result.check((M @ N).apply(a) == M.apply(N.apply(a)), f"{tag}: action of {M} @ {N} on {a}")

        count = hr_matrix_count(p, exps)
        if count <= closure_limit:
            pairs = product(all_hr_matrices(p, exps), repeat=2)
        else:
            pairs = ((random_hr_matrix(p, exps, rng), random_hr_matrix(p, exps, rng)) for _ in range(samples))
            result.skipped += 1
        for M, N in pairs:
            try:
                M @ N
                result.check(True, "")
            except ColorGroupError as e:
                result.check(False, f"{tag}: product left R(A): {e}")

        if count <= exhaustive_limit:
            matrices = all_hr_matrices(p, exps)
        else:
            matrices = (random_hr_matrix(p, exps, rng) for _ in range(samples))
            result.skipped += 1
        for M in matrices:
            result.check(is_automorphism(M) == _is_bijective(p, exps, M), f"{tag}: {M} invertibility mismatch")
    return result


def suite_wreath(seed: int, entries: Optional[Sequence[CorpusEntry]] = None, round_trips: int = 200) -> SuiteResult:
    """Isomorphisms of tilde groups live in the holomorph tower; evaluate/decompose round trip."""
    result = SuiteResult("wreath", seed)
    rng = np.random.default_rng(seed)
    for entry in _entries(entries):
        G = entry.group
        images = np.concatenate([[0], 1 + rng.permutation(G.order - 1)])
        H = relabel_group(G, images, name=f"{entry.name}'")
        SG, SH = radical_derived_series(G), radical_derived_series(H)
        Gt = tilde_group(SG)
        Ht = tilde_group(SH, top_anchor=Gt.factor_groups[-1] if SG.semisimple_top else None)
        try:
            result.check(isomorphisms_in_tower(Gt, Ht), f"{entry.name}: an isomorphism left the tower")
        except ColorGroupError as e:
            result.check(False, f"{entry.name}: {e}")

        tower = tower_from_groups([h.action for h in holomorph_levels(Gt)])
        try:
            tower_group(tower)
            result.check(True, "")
        except InvariantViolation as e:
            result.check(False, f"{entry.name}: {e}")
        identity = wreath_decompose(tower, Permutation.identity(tower.domain_size))
        result.check(identity.components == WreathElement.identity(tower).components,
                     f"{entry.name}: identity did not decompose to identity components")
        for _ in range(round_trips):
            w = random_wreath_element(tower, rng)
            back = wreath_decompose(tower, wreath_to_permutation(w))
            result.check(back.components == w.components, f"{entry.name}: wreath round trip changed components")
    return result


def suite_prefix_derived(seed: int, entries: Optional[Sequence[CorpusEntry]] = None) -> SuiteResult:
    result = SuiteResult("prefix-derived", seed)
    for entry in _entries(entries):
        T = tilde_group(radical_derived_series(entry.group))
        result.check(check_prefix_derived(T), f"{entry.name}: series of G~ is not the prefix chain")
    return result


_A_CHOICES = ([(2, 1)], [(3, 1)], [(2, 2)], [(2, 1), (2, 1)])
_B_CHOICES = (
    [(2, 1)], [(3, 1)], [(2, 2)], [(2, 1), (2, 1)], [(5, 1)], [(2, 1), (3, 1)], [(7, 1)],
    [(2, 3)], [(2, 1), (2, 2)], [(2, 1), (2, 1), (2, 1)], [(3, 2)], [(3, 1), (3, 1)],
)


def named_bilinear_maps() -> List[Tuple[str, BilinearMap, int]]:
    """(name, map, isometry group order) for the hand-checked examples."""
    z2sq = AbelianDecomposition.from_pairs([(2, 1), (2, 1)])
    z2 = AbelianDecomposition.from_pairs([(2, 1)])
    z5 = AbelianDecomposition.from_pairs([(5, 1)])
    zero = build_bilinear(z2, z2sq, np.zeros((4, 4), dtype=np.int64))
    x = np.arange(5)
    mult = build_bilinear(z5, z5, np.outer(x, x) % 5)
    c = coordinates(z2sq)
    dot = build_bilinear(z2, z2sq, (c @ c.T) % 2)
    return [("zero Z2^2 -> Z2", zero, 6), ("Z5 multiplication", mult, 2), ("Z2^2 dot product", dot, 2)]


def random_bilinear_corpus(seed: int, count: int) -> Iterator[BilinearMap]:
    rng = np.random.default_rng(seed)
    for _ in range(count):
        A = AbelianDecomposition.from_pairs(_A_CHOICES[int(rng.integers(len(_A_CHOICES)))])
        B = AbelianDecomposition.from_pairs(_B_CHOICES[int(rng.integers(len(_B_CHOICES)))])
        yield random_bilinear_map(A, B, rng)


def suite_isometry(seed: int, maps: int = 200) -> SuiteResult:
    """Isometries through G_f and GRIS equal the brute-force isometry group."""
    result = SuiteResult("isometry", seed)
    cases = [(name, f) for name, f, _ in named_bilinear_maps()]
    cases += [(f"random #{i}", f) for i, f in enumerate(random_bilinear_corpus(seed, maps))]
    for name, f in cases:
        brute = brute_force_isometries(f)
        via = isometries_via_gris(f)
        result.check(brute.order == via.order, f"{name}: orders {via.order} (GRIS) vs {brute.order} (brute)")
        result.check(all(g in brute for g in via.generators), f"{name}: a GRIS isometry is not an isometry")
        result.check(all(g in via for g in brute.generators), f"{name}: GRIS missed an isometry")
    for name, f, expected in named_bilinear_maps():
        result.check(brute_force_isometries(f).order == expected, f"{name}: expected {expected} isometries")
    return result


def suite_aut_hom(seed: int, maps: int = 200, max_order: int = 64, aut_limit: int = 20000) -> SuiteResult:
    """phi_phi is additive exactly when the induced beta^-1 is an isometry."""
    result = SuiteResult("aut-hom", seed)
    maps_list = [f for _, f, _ in named_bilinear_maps()] + list(random_bilinear_corpus(seed, maps))
    for f in maps_list:
        if f.size_a * f.size_b > max_order:
            continue
        gf = build_gf(f)
        automorphisms = brute_force_isomorphisms(gf.group, gf.group, limit=aut_limit + 1)
        if len(automorphisms) > aut_limit:
            result.skipped += 1
            continue
        a_points = set(gf.a_points)
        for phi in automorphisms:
            if {phi.images[a] for a in a_points} != a_points:
                continue
            try:
                check = varphi_hom_check(gf, phi)
                result.check(check.homomorphism == check.criterion, f"{gf.group.name}: {phi}")
            except InvariantViolation as e:
                result.check(False, f"{gf.group.name}: {e}")
    return result


def _random_coset(n: int, rng: np.random.Generator) -> Subcoset:
    return Subcoset(random_permutation(n, rng), random_subgroup(n, rng))


def suite_gadget(seed: int, instances: int = 100, max_points: int = 8, max_colors: int = 4,
                 max_vertices: int = 6) -> SuiteResult:
    """Both graph reductions preserve solution counts; gadget cliques are the only big cliques."""
    result = SuiteResult("gadget", seed)
    rng = np.random.default_rng(seed)
    for i in range(instances):
        n = int(rng.integers(1, max_points + 1))
        colors = int(rng.integers(1, max_colors + 1))
        coset = _random_coset(n, rng)
        f1 = rng.integers(0, colors, size=n)
        if rng.random() < 0.5:
            pi = coset.random_element(rng).as_array()
            f2 = np.empty_like(f1)
            f2[pi] = f1
        else:
            f2 = rng.integers(0, colors, size=n)
        instance = ColorIsoInstance(coset, Coloring(f1), Coloring(f2))
        X1, X2, extended = ci_to_gis(instance)
        for gadget in (X1, X2):
            try:
                result.check(check_gadget_signature(gadget), "")
            except InvariantViolation as e:
                result.check(False, f"instance {i}: {e}")
        solved = solve_color_iso(instance).order
        types = (gadget_vertex_types(X1), gadget_vertex_types(X2))
        counted = len(brute_force_graph_isos(X1.graph, X2.graph, extended, types=types))
        result.check(solved == counted, f"CI->GIS instance {i}: {solved} color isos vs {counted} graph isos")

    for i in range(instances):
        n = int(rng.integers(1, max_vertices + 1))
        X = random_graph(n, float(rng.random()), rng)
        Y = relabel(X, random_permutation(n, rng)) if rng.random() < 0.5 else random_graph(n, 0.5, rng)
        coset = _random_coset(n, rng)
        counted = len(brute_force_graph_isos(X, Y, coset))
        solved = solve_color_iso(gis_to_ci(X, Y, coset)).order
        result.check(solved == counted, f"GIS->CI instance {i}: {solved} color isos vs {counted} graph isos")
    return result


def suite_solver_oracle(seed: int, instances: int = 100, max_points: int = 7, limit: int = 10_000) -> SuiteResult:
    """The backtracking solver agrees element for element with exhaustive filtering."""
    result = SuiteResult("solver-oracle", seed)
    rng = np.random.default_rng(seed)
    for i in range(instances):
        n = int(rng.integers(1, max_points + 1))
        coset = _random_coset(n, rng)
        if coset.order > limit:
            result.skipped += 1
            continue
        rank = int(rng.integers(1, 4))
        colors = int(rng.integers(1, 4))
        f1 = rng.integers(0, colors, size=(n,) * rank)
        if rng.random() < 0.6:
            pi = coset.random_element(rng).as_array()
            f2 = np.empty_like(f1)
            f2[np.ix_(*[pi] * rank)] = f1
        else:
            f2 = rng.integers(0, colors, size=(n,) * rank)
        instance = ColorIsoInstance(coset, Coloring(f1), Coloring(f2))
        solved = solve_color_iso(instance)
        expected = set(exhaustive_color_iso(instance))
        result.check(set(solved.elements()) == expected,
                     f"instance {i} ({Coloring(f1).kind}, n={n}): {solved.order} vs {len(expected)} solutions")
    return result


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "pipeline": suite_pipeline,
    "cis": suite_cis,
    "abel-aut": suite_abel_aut,
    "hillar-rhea": suite_hillar_rhea,
    "wreath": suite_wreath,
    "prefix-derived": suite_prefix_derived,
    "isometry": suite_isometry,
    "aut-hom": suite_aut_hom,
    "gadget": suite_gadget,
    "solver-oracle": suite_solver_oracle,
}


def run_suite(name: str, seed: int, **options) -> SuiteResult:
    if name not in SUITES:
        raise MalformedInput(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    logger.info(f"running suite {name} with seed {seed}")
    result = SUITES[name](seed, **options)
    logger.info(f"suite {name}: {result.checks} checks, {len(result.failures)} failures, {result.skipped} skipped")
    return result
