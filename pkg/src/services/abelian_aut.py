import logging
from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Dict, Iterator, List, Sequence

import numpy as np
from sympy import Matrix, factorint, primitive_root

from src.models.abelian import AbelianDecomposition, HRMatrix
from src.models.group import FiniteGroup, SimpleFactorLabel, sorted_labels
from src.models.permutation import Permutation, PermGroup
from src.services.group_core import (
    closure,
    composition_factors,
    construct_group,
    element_orders,
    is_homomorphism,
)
from src.services.perm_core import build_chain, perm_group_to_finite_group
from src.services.simple_groups import cyclic_label, cyclic_labels_for, psl_label
from src.utils.config import Config
from src.utils.errors import FactorClassViolation, InvariantViolation, MalformedInput, NotAbelian

logger = logging.getLogger(__name__)


def strides(moduli: Sequence[int]) -> np.ndarray:
    """Mixed-radix place values, first coordinate least significant."""
    out = np.ones(len(moduli), dtype=np.int64)
    for i in range(1, len(moduli)):
        out[i] = out[i - 1] * moduli[i - 1]
    return out


def coordinates(decomp: AbelianDecomposition) -> np.ndarray:
    moduli = np.asarray(decomp.moduli, dtype=np.int64)
    idx = np.arange(decomp.order, dtype=np.int64)
    if not len(moduli):
        return np.zeros((len(idx), 0), dtype=np.int64)
    return (idx[:, None] // strides(moduli)[None, :]) % moduli[None, :]


def index_of(decomp: AbelianDecomposition, coords: np.ndarray) -> np.ndarray:
    moduli = np.asarray(decomp.moduli, dtype=np.int64)
    if not len(moduli):
        return np.zeros(np.asarray(coords).shape[0], dtype=np.int64)
    return (np.asarray(coords) % moduli) @ strides(moduli)


def abelian_group(decomp: AbelianDecomposition, name: str = "") -> FiniteGroup:
    coords = coordinates(decomp)
    moduli = np.asarray(decomp.moduli, dtype=np.int64)
    if not len(moduli):
        return construct_group(np.zeros((1, 1), dtype=np.int64), name=name or "Z1")
    sums = (coords[:, None, :] + coords[None, :, :]) % moduli
    return construct_group(sums @ strides(moduli), name=name or decomp.label)


@dataclass(frozen=True)
class CanonicalForm:
    """A ~ C(A); `to_canonical[a]` is the C(A) index of a."""

    decomposition: AbelianDecomposition
    group: FiniteGroup
    to_canonical: np.ndarray
    from_canonical: np.ndarray


def canonical_decomposition(A: FiniteGroup) -> CanonicalForm:
    """Split A into cyclic prime-power factors and fix an isomorphism to C(A).

    Per prime, the basis is grown greedily: take an element of largest
    order modulo the span so far, then correct it by a span element so its
    own order equals that quotient order.
    """
    if not A.is_abelian:
        raise NotAbelian(f"{A.name or 'group'} is not abelian")
    orders = element_orders(A)
    basis = []  # (prime, exponent, element)
    for p, _ in sorted(factorint(A.order).items()):
        p = int(p)
        sylow = [x for x in range(A.order) if _is_power_of(int(orders[x]), p)]
        span = closure(A, [])
        while span.order < len(sylow):
            best, best_q = -1, 0
            for x in sylow:
                if x in span:
                    continue
                q = _quotient_order(A, x, span.members, p)
                if q > best_q:
                    best, best_q = x, q
            lifted = next(
                A.mul(best, A.inv(h)) for h in span.elements if orders[A.mul(best, A.inv(h))] == best_q
            )
            basis.append((p, _log(best_q, p), lifted))
            span = closure(A, set(span.elements) | {lifted})
    basis.sort(key=lambda item: (item[0], item[1]))
    decomp = AbelianDecomposition(tuple((p, e) for p, e, _ in basis))
    C = abelian_group(decomp)

    coords = coordinates(decomp)
    elements = np.zeros(A.order, dtype=np.int64)
    for i, (p, e, y) in enumerate(basis):
        powers = np.array([A.power(y, c) for c in range(p**e)], dtype=np.int64)
        elements = A.table[elements, powers[coords[:, i]]]
    if len(np.unique(elements)) != A.order or not is_homomorphism(C, A, elements):
        raise InvariantViolation(f"decomposition {decomp.label} of {A.name or 'group'} is not an isomorphism")
    to_canonical = np.empty(A.order, dtype=np.int64)
    to_canonical[elements] = np.arange(A.order)
    logger.debug(f"{A.name or 'abelian group'} of order {A.order} decomposes as {decomp.label}")
    return CanonicalForm(decomp, C, to_canonical, elements)


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _log(n: int, p: int) -> int:
    k = 0
    while n > 1:
        n //= p
        k += 1
    return k


def _quotient_order(A: FiniteGroup, x: int, span, p: int) -> int:
    q, y = 1, x
    while y not in span:
        y = A.power(y, p)
        q *= p
    return q


def is_automorphism(M: HRMatrix) -> bool:
    """An HR matrix is invertible iff it is invertible modulo p."""
    det = Matrix([[v % M.p for v in row] for row in M.entries]).det()
    return int(det) % M.p != 0


def block_structure(decomp: AbelianDecomposition) -> List[int]:
    """Block dimensions d_k of a p-group: the lengths of the runs of equal exponent."""
    if len(decomp.primes) > 1:
        raise MalformedInput(f"{decomp.label} is not a p-group")
    if not decomp.factors:
        return []
    return [d for _, d in decomp.blocks(decomp.primes[0])]


def _unit_generators(p: int, e: int) -> List[int]:
    if p == 2:
        if e == 1:
            return []
        if e == 2:
            return [3]
        return [2**e - 1, 5]
    return [int(primitive_root(p**e))]


def aut_generators(decomp: AbelianDecomposition) -> Dict[int, List[HRMatrix]]:
    """Diagonal unit matrices and elementary transvections, per prime."""
    result: Dict[int, List[HRMatrix]] = {}
    for p in decomp.primes:
        exps = decomp.exponents(p)
        n = len(exps)
        gens = []
        for i, e in enumerate(exps):
            for unit in _unit_generators(p, e):
                entries = np.eye(n, dtype=np.int64)
                entries[i, i] = unit
                gens.append(HRMatrix.build(p, exps, entries.tolist()))
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                entries = np.eye(n, dtype=np.int64)
                entries[i, j] = p ** max(exps[i] - exps[j], 0)
                gens.append(HRMatrix.build(p, exps, entries.tolist()))
        result[p] = gens
    return result


def matrix_permutation(decomp: AbelianDecomposition, M: HRMatrix) -> Permutation:
    """The automorphism M of the p-part, extended by the identity, on C(A) indices."""
    coords = coordinates(decomp)
    positions = decomp.positions(M.p)
    entries = np.asarray(M.entries, dtype=np.int64)
    moduli = np.asarray(decomp.moduli, dtype=np.int64)[positions]
    image = coords.copy()
    image[:, positions] = (coords[:, positions] @ entries.T) % moduli
    return Permutation(index_of(decomp, image).tolist())


def aut_group_of_decomposition(decomp: AbelianDecomposition) -> PermGroup:
    gens = [
        matrix_permutation(decomp, M)
        for mats in aut_generators(decomp).values()
        for M in mats
    ]
    group = build_chain(gens, degree=decomp.order)
    expected = aut_order_formula(decomp)
    if group.order != expected:
        raise InvariantViolation(f"Aut({decomp.label}) generated with order {group.order}, expected {expected}")
    return group


def aut_group(A: FiniteGroup) -> PermGroup:
    """Aut(A) acting on the indices of C(A)."""
    return aut_group_of_decomposition(canonical_decomposition(A).decomposition)


def aut_order_formula(decomp: AbelianDecomposition) -> int:
    total = 1
    for p in decomp.primes:
        exps = decomp.exponents(p)
        n = len(exps)
        # 1-based first and last positions holding the same exponent
        d = [max(l + 1 for l in range(n) if exps[l] == exps[k]) for k in range(n)]
        c = [min(l + 1 for l in range(n) if exps[l] == exps[k]) for k in range(n)]
        for k in range(n):
            total *= p ** d[k] - p**k
        for j in range(n):
            total *= (p ** exps[j]) ** (n - d[j])
        for i in range(n):
            total *= (p ** (exps[i] - 1)) ** (n - c[i] + 1)
    return total


def _gl_order(d: int, p: int) -> int:
    result = 1
    for k in range(d):
        result *= p**d - p**k
    return result


def _gl_factors(d: int, p: int) -> List[SimpleFactorLabel]:
    labels = list(cyclic_labels_for(p - 1))
    if d == 1:
        return labels
    labels.extend(cyclic_labels_for(gcd(d, p - 1)))
    if (d, p) == (2, 2):
        labels.extend([cyclic_label(2), cyclic_label(3)])
    elif (d, p) == (2, 3):
        labels.extend([cyclic_label(2), cyclic_label(2), cyclic_label(3)])
    else:
        labels.append(psl_label(d, p))
    return labels


def aut_factor_profile(decomp: AbelianDecomposition) -> List[SimpleFactorLabel]:
    """Composition factors of Aut from the block structure alone.

    Reduction mod p maps Aut of the p-part onto a block-triangular group
    whose diagonal blocks are GL(d, p), one per distinct exponent of
    multiplicity d; the kernel and the unipotent part are p-groups.
    """
    labels: List[SimpleFactorLabel] = []
    for p in decomp.primes:
        part = AbelianDecomposition(tuple((p, e) for e in decomp.exponents(p)))
        levi = 1
        for _, d in decomp.blocks(p):
            levi *= _gl_order(d, p)
            labels.extend(_gl_factors(d, p))
        rest = aut_order_formula(part) // levi
        labels.extend(cyclic_labels_for(rest))
    return sorted_labels(labels)


def check_aut_factors(A: FiniteGroup) -> List[SimpleFactorLabel]:
    """Composition factors of Aut(A); all must be cyclic or PSL.

    Small Aut groups are rebuilt as Cayley tables and decomposed directly,
    and the result is cross-checked against the structural profile.
    """
    decomp = canonical_decomposition(A).decomposition
    profile = aut_factor_profile(decomp)
    if aut_order_formula(decomp) <= Config.limit("cayley_bound"):
        group, _ = perm_group_to_finite_group(aut_group_of_decomposition(decomp), name=f"Aut({decomp.label})")
        direct = composition_factors(group)
        if direct != profile:
            raise InvariantViolation(
                f"Aut({decomp.label}) factors disagree: direct {[l.display() for l in direct]}, "
                f"structural {[l.display() for l in profile]}"
            )
    bad = [label for label in profile if not label.in_cis_class]
    if bad:
        raise FactorClassViolation(f"Aut({decomp.label}) has factors outside the class: {[l.display() for l in bad]}")
    return profile


def _entry_choices(p: int, exponents: Sequence[int], i: int, j: int) -> range:
    step = p ** max(exponents[i] - exponents[j], 0)
    return range(0, p ** exponents[i], step)


def hr_matrix_count(p: int, exponents: Sequence[int]) -> int:
    n = len(exponents)
    total = 1
    for i in range(n):
        for j in range(n):
            total *= len(_entry_choices(p, exponents, i, j))
    return total


def all_hr_matrices(p: int, exponents: Sequence[int]) -> Iterator[HRMatrix]:
    """Every matrix of R(A) for the p-group with the given ascending exponents."""
    n = len(exponents)
    choices = [_entry_choices(p, exponents, i, j) for i in range(n) for j in range(n)]
    for flat in product(*choices):
        yield HRMatrix(p, tuple(exponents), tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n)))


def random_hr_matrix(p: int, exponents: Sequence[int], rng: np.random.Generator) -> HRMatrix:
    n = len(exponents)
    entries = [
        [int(rng.choice(_entry_choices(p, exponents, i, j))) for j in range(n)]
        for i in range(n)
    ]
    return HRMatrix.build(p, exponents, entries)
