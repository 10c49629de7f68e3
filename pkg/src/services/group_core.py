import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

import numpy as np

from src.models.group import DerivedSeries, FiniteGroup, SimpleFactorLabel, Subgroup, sorted_labels
from src.models.permutation import Permutation
from src.services.simple_groups import cyclic_labels_for, label_for_order
from src.utils.config import Config
from src.utils.errors import InvariantViolation, MalformedInput, NotAGroup, NotNormal

logger = logging.getLogger(__name__)

# cap on the size of one (chunk, n, n) associativity slab
_ASSOC_SLAB = 4_000_000


def construct_group(table, name: str = "") -> FiniteGroup:
    """Validate a Cayley table and wrap it as a FiniteGroup.

    Checks that 0 is the identity, that every row and column is a
    permutation and that the operation is associative (exhaustively for
    small orders, on seeded random triples otherwise).
    """
    try:
        arr = np.asarray(table)
    except (TypeError, ValueError) as e:
        raise MalformedInput(f"table is not a rectangular integer array: {e}")
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise MalformedInput(f"table must be a non-empty square matrix, got shape {arr.shape}")
    if arr.dtype.kind not in "iu":
        if arr.dtype.kind == "f" and np.all(np.mod(arr, 1) == 0):
            arr = arr.astype(np.int64)
        else:
            raise MalformedInput("table entries must be integers")
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise MalformedInput(f"table entries must lie in [0, {n})")
    arr = arr.astype(np.int64)

    idx = np.arange(n)
    if not (np.array_equal(arr[0], idx) and np.array_equal(arr[:, 0], idx)):
        raise NotAGroup(f"{name or 'table'}: element 0 is not a two-sided identity")
    if not np.all(np.sort(arr, axis=1) == idx):
        raise NotAGroup(f"{name or 'table'}: some row is not a permutation")
    if not np.all(np.sort(arr, axis=0) == idx[:, None]):
        raise NotAGroup(f"{name or 'table'}: some column is not a permutation")

    _check_associative(arr, name)
    inverse = np.argmax(arr == 0, axis=1)
    return FiniteGroup(arr, inverse, name=name)


def _check_associative(arr: np.ndarray, name: str) -> None:
    n = arr.shape[0]
    if n <= Config.limit("assoc_exhaustive_limit"):
        chunk = max(1, _ASSOC_SLAB // (n * n))
        for start in range(0, n, chunk):
            rows = arr[start:start + chunk]
            left = arr[rows]                      # (ab)c
            right = np.take(rows, arr, axis=1)    # a(bc)
            if not np.array_equal(left, right):
                bad = np.argwhere(left != right)[0]
                a, b, c = int(bad[0]) + start, int(bad[1]), int(bad[2])
                raise NotAGroup(f"{name or 'table'}: ({a}*{b})*{c} != {a}*({b}*{c})")
        return
    rng = np.random.default_rng(Config.RUN["seed"])
    remaining = Config.limit("assoc_samples")
    while remaining > 0:
        batch = min(remaining, 100_000)
        a, b, c = rng.integers(0, n, size=(3, batch))
        left = arr[arr[a, b], c]
        right = arr[a, arr[b, c]]
        if not np.array_equal(left, right):
            i = int(np.flatnonzero(left != right)[0])
            raise NotAGroup(f"{name or 'table'}: ({a[i]}*{b[i]})*{c[i]} != {a[i]}*({b[i]}*{c[i]})")
        remaining -= batch
    logger.debug(f"associativity of {name or 'table'} (n={n}) checked on sampled triples")


def cyclic_group(n: int, name: Optional[str] = None) -> FiniteGroup:
    idx = np.arange(n)
    return construct_group((idx[:, None] + idx[None, :]) % n, name=name or f"Z{n}")


def element_orders(G: FiniteGroup) -> np.ndarray:
    n = G.order
    idx = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    power = idx.copy()
    k = 1
    while True:
        hit = (power == 0) & (orders == 0)
        orders[hit] = k
        if orders.all():
            return orders
        power = G.table[power, idx]
        k += 1


def closure(G: FiniteGroup, seeds: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing the seeds (closure under products)."""
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    seeds = list(seeds)
    if seeds:
        mask[np.asarray(seeds, dtype=np.int64)] = True
    count = int(mask.sum())
    while True:
        current = np.flatnonzero(mask)
        mask[G.table[np.ix_(current, current)].ravel()] = True
        new_count = int(mask.sum())
        if new_count == count:
            return Subgroup(G, tuple(int(x) for x in current))
        count = new_count


def subgroup_generated(G: FiniteGroup, generators: Iterable[int]) -> Subgroup:
    return closure(G, generators)


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (0,))


def center(G: FiniteGroup) -> Subgroup:
    central = np.flatnonzero((G.table == G.table.T).all(axis=1))
    return Subgroup(G, tuple(int(x) for x in central))


def conjugation_matrix(G: FiniteGroup) -> np.ndarray:
    """M[g, x] = g x g^-1."""
    return G.table[G.table, G.inverse[:, None]]


def conjugacy_classes(G: FiniteGroup) -> List[tuple]:
    conj = conjugation_matrix(G)
    seen = np.zeros(G.order, dtype=bool)
    classes = []
    for x in range(G.order):
        if seen[x]:
            continue
        members = np.unique(conj[:, x])
        seen[members] = True
        classes.append(tuple(int(m) for m in members))
    return classes


def is_normal(G: FiniteGroup, S: Subgroup) -> bool:
    elements = S.as_array()
    mask = np.zeros(G.order, dtype=bool)
    mask[elements] = True
    conjugates = G.table[G.table[:, elements], G.inverse[:, None]]
    return bool(mask[conjugates].all())


def normal_closure(G: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    conj = conjugation_matrix(G)
    seeds = set()
    for x in elements:
        seeds.update(int(c) for c in np.unique(conj[:, x]))
    return closure(G, seeds)


def commutator_subgroup(G: FiniteGroup, S: Optional[Subgroup] = None) -> Subgroup:
    elements = (S or whole_group(G)).as_array()
    T, inv = G.table, G.inverse
    ab = T[np.ix_(elements, elements)]
    comm = T[T[ab, inv[elements][:, None]], inv[elements][None, :]]
    return closure(G, np.unique(comm).tolist())


def derived_series(G: FiniteGroup, S: Optional[Subgroup] = None) -> DerivedSeries:
    current = S or whole_group(G)
    chain = [current]
    while True:
        nxt = commutator_subgroup(G, current)
        if nxt.order == current.order:
            return DerivedSeries(G, tuple(chain), solvable=current.is_trivial)
        chain.append(nxt)
        current = nxt


def is_solvable(G: FiniteGroup, S: Optional[Subgroup] = None) -> bool:
    return derived_series(G, S).solvable


def join(G: FiniteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    return closure(G, set(A.elements) | set(B.elements))


def normal_subgroups(G: FiniteGroup) -> List[Subgroup]:
    """All normal subgroups: joins of normal closures of conjugacy classes."""
    found = {}
    for cls in conjugacy_classes(G):
        N = normal_closure(G, [cls[0]])
        found[N.elements] = N
    found[(0,)] = trivial_subgroup(G)
    changed = True
    while changed:
        changed = False
        current = list(found.values())
        for i, A in enumerate(current):
            for B in current[i + 1:]:
                if A <= B or B <= A:
                    continue
                J = join(G, A, B)
                if J.elements not in found:
                    found[J.elements] = J
                    changed = True
    return sorted(found.values(), key=lambda N: (N.order, N.elements))


def maximal_normal_subgroups(G: FiniteGroup) -> List[Subgroup]:
    proper = [N for N in normal_subgroups(G) if N.order < G.order]
    return [N for N in proper if not any(N.members < M.members for M in proper)]


def is_simple(G: FiniteGroup) -> bool:
    if G.order == 1:
        return False
    for cls in conjugacy_classes(G)[1:]:
        if normal_closure(G, [cls[0]]).order != G.order:
            return False
    return True


def solvable_radical(G: FiniteGroup) -> Subgroup:
    """Largest solvable normal subgroup."""
    if is_solvable(G):
        return whole_group(G)
    solvable = [N for N in normal_subgroups(G) if is_solvable(G, N)]
    radical = max(solvable, key=lambda N: N.order)
    if not all(N <= radical for N in solvable):
        raise InvariantViolation(f"solvable normal subgroups of {G.name} have no common upper bound")
    return radical


@dataclass(frozen=True)
class Quotient:
    group: FiniteGroup
    projection: np.ndarray
    representatives: np.ndarray


def quotient_group(G: FiniteGroup, N: Subgroup, name: str = "") -> Quotient:
    """G/N with coset i represented by its smallest element; coset 0 is N."""
    if not is_normal(G, N):
        raise NotNormal(f"subgroup of order {N.order} is not normal in {G.name or 'G'}")
    keys = G.table[:, N.as_array()].min(axis=1)
    reps = np.unique(keys)
    lookup = np.full(G.order, -1, dtype=np.int64)
    lookup[reps] = np.arange(len(reps))
    projection = lookup[keys]
    table = projection[G.table[np.ix_(reps, reps)]]
    Q = construct_group(table, name=name or f"{G.name}/N{N.order}")
    return Quotient(Q, projection, reps)


def induced_group(G: FiniteGroup, S: Subgroup, name: str = ""):
    """The subgroup S as a standalone group; returns (group, embedding)."""
    embedding = S.as_array()
    position = np.full(G.order, -1, dtype=np.int64)
    position[embedding] = np.arange(len(embedding))
    table = position[G.table[np.ix_(embedding, embedding)]]
    if (table < 0).any():
        raise MalformedInput("element set is not closed under the group operation")
    return construct_group(table, name=name or f"{G.name}[{S.order}]"), embedding


def composition_factors(G: FiniteGroup, rng: Optional[np.random.Generator] = None) -> List[SimpleFactorLabel]:
    """Composition factors as a sorted multiset.

    Without rng, solvable groups are answered from the order's
    factorization. With rng, the maximal normal subgroup used at each
    refinement step is drawn at random instead of taking the first.
    """
    if rng is None and is_solvable(G):
        return list(cyclic_labels_for(G.order))
    return sorted_labels(_refine(G, rng))


def _refine(G: FiniteGroup, rng: Optional[np.random.Generator]) -> List[SimpleFactorLabel]:
    labels = []
    current = G
    while current.order > 1:
        if is_simple(current):
            labels.append(classify_simple(current, verify=False))
            break
        maximal = maximal_normal_subgroups(current)
        pick = 0 if rng is None else int(rng.integers(len(maximal)))
        N = maximal[pick]
        labels.append(classify_simple(quotient_group(current, N).group, verify=False))
        current, _ = induced_group(current, N)
    return labels


def classify_simple(S: FiniteGroup, verify: bool = True) -> SimpleFactorLabel:
    if verify and not is_simple(S):
        raise MalformedInput(f"{S.name or 'group'} of order {S.order} is not simple")
    return label_for_order(S.order)


def is_homomorphism(G: FiniteGroup, H: FiniteGroup, phi: Sequence[int]) -> bool:
    phi = np.asarray(phi, dtype=np.int64)
    return bool(np.array_equal(phi[G.table], H.table[phi[:, None], phi[None, :]]))


def generating_sequence(G: FiniteGroup, orders: Optional[np.ndarray] = None) -> List[int]:
    """Greedy generators, each of maximal order outside the span so far."""
    orders = element_orders(G) if orders is None else orders
    gens: List[int] = []
    span = trivial_subgroup(G)
    while span.order < G.order:
        outside = np.setdiff1d(np.arange(G.order), span.as_array())
        pick = int(outside[np.argmax(orders[outside])])
        gens.append(pick)
        span = closure(G, set(span.elements) | {pick})
    return gens


def brute_force_isomorphisms(G: FiniteGroup, H: FiniteGroup, limit: Optional[int] = None) -> List[Permutation]:
    """Every isomorphism G -> H (up to `limit`), as index bijections."""
    if G.order != H.order:
        return []
    orders_g, orders_h = element_orders(G), element_orders(H)
    if not np.array_equal(np.sort(orders_g), np.sort(orders_h)):
        return []
    gens = generating_sequence(G, orders_g)
    candidates = [[int(h) for h in np.flatnonzero(orders_h == orders_g[g])] for g in gens]
    rows_g, rows_h = G.rows, H.rows
    n = G.order
    found: List[Permutation] = []

    def extend(images: List[int]) -> Optional[List[int]]:
        phi = [-1] * n
        used = [False] * n
        phi[0], used[0] = 0, True
        queue = [0]
        pairs = list(zip(gens, images))
        for x in queue:
            hx = phi[x]
            for g, h in pairs:
                y = rows_g[x][g]
                z = rows_h[hx][h]
                if phi[y] < 0:
                    if used[z]:
                        return None
                    phi[y], used[z] = z, True
                    queue.append(y)
                elif phi[y] != z:
                    return None
        return phi

    def search(images: List[int]) -> bool:
        depth = len(images)
        if depth == len(gens):
            phi = extend(images)
            found.append(Permutation(phi))
            return limit is not None and len(found) >= limit
        for h in candidates[depth]:
            if extend(images + [h]) is None:
                continue
            if search(images + [h]):
                return True
        return False

    search([])
    return found


def first_isomorphism(G: FiniteGroup, H: FiniteGroup) -> Optional[Permutation]:
    isos = brute_force_isomorphisms(G, H, limit=1)
    return isos[0] if isos else None


# ---------------------------------------------------------------------------
# builders


def direct_product(G: FiniteGroup, H: FiniteGroup, name: Optional[str] = None) -> FiniteGroup:
    """G x H with (g, h) at index g + |G| * h."""
    n = G.order
    idx = np.arange(G.order * H.order)
    g, h = idx % n, idx // n
    table = G.table[g[:, None], g[None, :]] + n * H.table[h[:, None], h[None, :]]
    return construct_group(table, name=name or f"{G.name}x{H.name}")


def semidirect_cyclic(N: FiniteGroup, alpha: Sequence[int], k: int, name: str = "") -> FiniteGroup:
    """N x| Z_k where the generator of Z_k acts by the automorphism alpha.

    (n1, j1)(n2, j2) = (n1 * alpha^j1(n2), j1 + j2 mod k), stored at n + |N| * j.
    """
    alpha = np.asarray(alpha, dtype=np.int64)
    if not is_homomorphism(N, N, alpha) or len(np.unique(alpha)) != N.order:
        raise MalformedInput("alpha is not an automorphism")
    powers = [np.arange(N.order)]
    for _ in range(1, k + 1):
        powers.append(alpha[powers[-1]])
    if not np.array_equal(powers[k], powers[0]):
        raise MalformedInput(f"alpha^{k} is not the identity")
    powers = np.stack(powers[:k])
    size = N.order
    idx = np.arange(size * k)
    n_part, j_part = idx % size, idx // size
    twisted = powers[j_part[:, None], n_part[None, :]]
    table = N.table[n_part[:, None], twisted] + size * ((j_part[:, None] + j_part[None, :]) % k)
    return construct_group(table, name=name)


def metacyclic(m: int, n: int, r: int, s: int, name: str = "") -> FiniteGroup:
    """<x, y | x^m, y^n = x^s, y x y^-1 = x^r> with x^a y^b at index a + m * b."""
    idx = np.arange(m * n)
    a, b = idx % m, idx // m
    r_pow = np.array([pow(r, int(e), m) for e in range(n)], dtype=np.int64)
    c, d = a[None, :], b[None, :]
    bb = b[:, None]
    wrap = (bb + d) >= n
    exponent = (a[:, None] + c * r_pow[bb] + s * wrap) % m
    table = exponent + m * ((bb + d) % n)
    return construct_group(table, name=name or f"Meta({m},{n},{r},{s})")


def group_from_permutations(generators: Sequence[Permutation], name: str = "") -> FiniteGroup:
    from src.services.perm_core import build_chain, perm_group_to_finite_group

    group = build_chain(generators, degree=generators[0].degree if generators else 1)
    G, _ = perm_group_to_finite_group(group, name=name)
    return G


def symmetric_group(n: int) -> FiniteGroup:
    gens = [Permutation.from_cycles(n, (0, 1))] if n > 1 else []
    if n > 2:
        gens.append(Permutation.from_cycles(n, tuple(range(n))))
    if not gens:
        return cyclic_group(1, name=f"Sym({n})")
    return group_from_permutations(gens, name=f"Sym({n})")


def alternating_group(n: int) -> FiniteGroup:
    gens = [Permutation.from_cycles(n, (0, 1, i)) for i in range(2, n)]
    if not gens:
        return cyclic_group(1, name=f"Alt({n})")
    return group_from_permutations(gens, name=f"Alt({n})")


def matrix_group(p: int, generators: Sequence[Sequence[Sequence[int]]], name: str = "") -> FiniteGroup:
    """Group generated by invertible matrices over F_p, identity matrix first."""
    mats = [np.asarray(g, dtype=np.int64) % p for g in generators]
    d = mats[0].shape[0]
    identity = np.eye(d, dtype=np.int64)
    elements = [identity]
    index = {identity.tobytes(): 0}
    for current in elements:
        for g in mats:
            prod = (current @ g) % p
            key = prod.tobytes()
            if key not in index:
                index[key] = len(elements)
                elements.append(prod)
    stack = np.stack(elements)
    table = np.empty((len(elements), len(elements)), dtype=np.int64)
    for i, x in enumerate(elements):
        prods = np.einsum("ij,njk->nik", x, stack) % p
        table[i] = [index[prod.tobytes()] for prod in prods]
    return construct_group(table, name=name)


def relabel_group(G: FiniteGroup, images: Sequence[int], name: str = "") -> FiniteGroup:
    """The same group with element x renamed images[x]; 0 must stay fixed."""
    pi = np.asarray(images, dtype=np.int64)
    if len(pi) != G.order or pi[0] != 0 or len(np.unique(pi)) != G.order:
        raise MalformedInput("relabelling must be a bijection fixing the identity")
    table = np.empty_like(G.table, dtype=np.int64)
    table[pi[:, None], pi[None, :]] = pi[G.table]
    return construct_group(table, name=name or G.name)
