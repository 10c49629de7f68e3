import logging
from collections import Counter
from typing import List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np

from src.models.coloring import Coloring, ColorIsoInstance
from src.models.graph import GadgetGraph, Graph
from src.models.permutation import Permutation, Subcoset
from src.services.perm_core import build_chain, symmetric_group_gens, trivial_group
from src.utils.errors import InvariantViolation, MalformedInput

logger = logging.getLogger(__name__)

DIAGONAL, NON_EDGE, EDGE, CROSS, BLANK = 0, 1, 2, 3, 4


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    upper = np.triu(rng.random((n, n)) < p, k=1)
    return Graph(upper | upper.T)


def relabel(X: Graph, perm: Permutation) -> Graph:
    """The graph with edges {perm(u), perm(v)}."""
    images = perm.as_array()
    adj = np.zeros_like(X.adjacency)
    adj[np.ix_(images, images)] = X.adjacency
    return Graph(adj)


def is_graph_isomorphism(X: Graph, Y: Graph, perm: Permutation) -> bool:
    images = perm.as_array()
    return bool(np.array_equal(Y.adjacency[np.ix_(images, images)], X.adjacency))


# ---------------------------------------------------------------------------
# graphs -> pairs colorings


def _half_coloring(X: Graph, n: int, own_half: int) -> np.ndarray:
    values = np.full((2 * n, 2 * n), CROSS, dtype=np.int8)
    for half in (0, 1):
        block = slice(half * n, (half + 1) * n)
        if half == own_half:
            values[block, block] = np.where(X.adjacency, EDGE, NON_EDGE)
        else:
            values[block, block] = BLANK
    np.fill_diagonal(values, DIAGONAL)
    return values


def _swap_halves(n: int) -> Permutation:
    return Permutation(list(range(n, 2 * n)) + list(range(n)))


def gis_to_ci(X: Graph, Y: Graph, coset: Subcoset) -> ColorIsoInstance:
    """Graph isomorphism in a coset as color isomorphism of ordered pairs.

    Points are the disjoint union V(X) + V(Y). f1 colors pairs inside the
    X half by adjacency, f2 does the same inside the Y half; the unused
    half is blank and cross pairs get their own color. sigma * gamma
    extends to swap o (sigma*gamma (+) sigma*gamma).
    """
    n = X.n
    if Y.n != n or coset.degree != n:
        raise MalformedInput(f"gis_to_ci needs equal sizes, got {X.n}, {Y.n} and a coset of degree {coset.degree}")
    f1 = Coloring(_half_coloring(X, n, own_half=0))
    f2 = Coloring(_half_coloring(Y, n, own_half=1))
    group = build_chain([g.direct_sum(g) for g in coset.group.generators], degree=2 * n)
    if coset.is_empty:
        return ColorIsoInstance(Subcoset(None, trivial_group(2 * n), reason=coset.reason), f1, f2)
    sigma = coset.representative
    rep = _swap_halves(n) * sigma.direct_sum(sigma)
    return ColorIsoInstance(Subcoset(rep, group), f1, f2)


def graph_isos_from_ci(solutions: Subcoset, n: int) -> Subcoset:
    """Read a gis_to_ci solution subcoset back as bijections V(X) -> V(Y)."""
    if solutions.is_empty:
        return Subcoset(None, trivial_group(n), reason=solutions.reason)
    rep = Permutation([solutions.representative.images[x] - n for x in range(n)])
    gens = [Permutation(g.images[:n]) for g in solutions.group.generators]
    return Subcoset(rep, build_chain(gens, degree=n))


# ---------------------------------------------------------------------------
# points colorings -> gadget graphs


def _layout(colors: List[int], n: int) -> Tuple[List[Tuple], dict, dict]:
    provenance: List[Tuple] = [("point", x) for x in range(n)]
    hubs, cliques = {}, {}
    for c in colors:
        hubs[c] = len(provenance)
        provenance.append(("hub", c))
        start = len(provenance)
        provenance.extend(("clique", c, j) for j in range(c + 2))
        cliques[c] = tuple(range(start, len(provenance)))
    return provenance, hubs, cliques


def gadget_graph(values: np.ndarray, colors: List[int]) -> GadgetGraph:
    """Points plus, per color c, a hub joined to the points of color c and to a K_{c+2}."""
    n = len(values)
    provenance, hubs, cliques = _layout(colors, n)
    adj = np.zeros((len(provenance), len(provenance)), dtype=bool)
    for c in colors:
        hub, clique = hubs[c], np.asarray(cliques[c])
        members = np.flatnonzero(values == c)
        adj[hub, members] = adj[members, hub] = True
        adj[hub, clique] = adj[clique, hub] = True
        adj[np.ix_(clique, clique)] = True
        adj[clique, clique] = False
    return GadgetGraph(Graph(adj), tuple(provenance), n, hubs, cliques)


def ci_to_gis(instance: ColorIsoInstance, absorb_gadget_symmetry: bool = False
              ) -> Tuple[GadgetGraph, GadgetGraph, Subcoset]:
    """Gadget graphs whose isomorphisms in the extended coset are the color isomorphisms.

    Colors are shifted by one so every clique has at least three vertices.
    The coset acts as given on the points and as the identity on gadget
    vertices; with absorb_gadget_symmetry the clique vertices of each
    gadget may be permuted freely as well.
    """
    if instance.f1.kind != "points":
        raise MalformedInput(f"ci_to_gis takes a points coloring, got {instance.f1.kind}")
    v1 = instance.f1.values.astype(np.int64) + 1
    v2 = instance.f2.values.astype(np.int64) + 1
    colors = sorted({int(c) for c in v1} | {int(c) for c in v2})
    X1, X2 = gadget_graph(v1, colors), gadget_graph(v2, colors)
    total, extra = X1.n, X1.n - X1.points
    pad = Permutation.identity(extra)

    coset = instance.coset
    gens = [g.direct_sum(pad) for g in coset.group.generators]
    if absorb_gadget_symmetry:
        for clique in X1.cliques.values():
            gens.extend(symmetric_group_gens(total, clique))
    group = build_chain(gens, degree=total)
    if coset.is_empty:
        extended = Subcoset(None, group, reason=coset.reason)
    else:
        extended = Subcoset(coset.representative.direct_sum(pad), group)
    logger.debug(f"gadget graphs on {total} vertices for {len(colors)} colors")
    return X1, X2, extended


def maximal_cliques(X: Graph, min_size: int = 3) -> List[Set[int]]:
    return [set(c) for c in nx.find_cliques(X.to_networkx()) if len(c) >= min_size]


def check_gadget_signature(gadget: GadgetGraph) -> bool:
    """The maximal cliques of size >= 3 are exactly the sets K_c + hub c."""
    found = sorted(sorted(c) for c in maximal_cliques(gadget.graph))
    expected = sorted(sorted(gadget.cliques[c] + (gadget.hubs[c],)) for c in gadget.hubs)
    if found != expected:
        raise InvariantViolation(f"gadget graph has stray cliques: {found} vs {expected}")
    return True


# ---------------------------------------------------------------------------
# oracle


def gadget_vertex_types(gadget: GadgetGraph) -> List[Tuple]:
    """Vertex classes a gadget isomorphism keeps apart: the points, the hub of each color, the clique of each color."""
    return [("point",) if p[0] == "point" else tuple(p[:2]) for p in gadget.provenance]


def brute_force_graph_isos(X: Graph, Y: Graph, coset: Optional[Subcoset] = None,
                           limit: Optional[int] = None,
                           types: Optional[Tuple[Sequence, Sequence]] = None) -> List[Permutation]:
    """All adjacency-preserving bijections V(X) -> V(Y), optionally only those in the coset.

    `types` labels the vertices of X and Y; a bijection must send each vertex
    to one with the same label.
    """
    if X.n != Y.n:
        return []
    n = X.n
    tx, ty = (list(types[0]), list(types[1])) if types is not None else ([None] * n, [None] * n)
    if len(tx) != n or len(ty) != n:
        raise MalformedInput(f"vertex types must label all {n} vertices")
    if coset is not None:
        if coset.degree != X.n:
            raise MalformedInput(f"coset of degree {coset.degree} for graphs on {X.n} vertices")
        found = []
        for g in coset.elements():
            if any(ty[g(v)] != tx[v] for v in range(n)):
                continue
            if is_graph_isomorphism(X, Y, g):
                found.append(g)
                if limit is not None and len(found) >= limit:
                    break
        return found

    ax, ay = X.adjacency, Y.adjacency
    dx, dy = X.degrees, Y.degrees
    if Counter(zip(dx.tolist(), tx)) != Counter(zip(dy.tolist(), ty)):
        return []
    candidates = [[w for w in range(n) if dy[w] == dx[v] and ty[w] == tx[v]] for v in range(n)]
    order = sorted(range(n), key=lambda v: (len(candidates[v]), -int(dx[v]), v))
    images = [-1] * n
    used = [False] * n
    found: List[Permutation] = []

    def extend(depth: int) -> bool:
        if depth == n:
            found.append(Permutation(images))
            return limit is not None and len(found) >= limit
        v = order[depth]
        for w in candidates[v]:
            if used[w]:
                continue
            if any(ax[v, u] != ay[w, images[u]] for u in order[:depth]):
                continue
            images[v], used[w] = w, True
            stop = extend(depth + 1)
            images[v], used[w] = -1, False
            if stop:
                return True
        return False

    extend(0)
    logger.debug(f"{len(found)} graph isomorphism(s) on {n} vertices")
    return found
