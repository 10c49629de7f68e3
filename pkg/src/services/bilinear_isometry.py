import logging
from typing import List, Optional

import numpy as np

from src.models.abelian import AbelianDecomposition
from src.models.bilinear import BilinearMap, CorrectionCheck, GfGroup
from src.models.permutation import Permutation, PermGroup, Subcoset
from src.services.abelian_aut import abelian_group, aut_group_of_decomposition, coordinates, index_of
from src.services.color_iso import gris_solve
from src.services.group_core import (
    brute_force_isomorphisms,
    commutator_subgroup,
    construct_group,
    is_homomorphism,
)
from src.services.perm_core import build_chain, pointwise_stabilizer
from src.utils.errors import DoesNotFixA, InvariantViolation, MalformedInput, NotBilinear, NotIsometry

logger = logging.getLogger(__name__)


def build_bilinear(A: AbelianDecomposition, B: AbelianDecomposition, table) -> BilinearMap:
    """Validate f(x, y) = table[x][y] (C(A) indices) for additivity in both arguments."""
    F = np.array(table, dtype=np.int64)
    nb, na = B.order, A.order
    if F.shape != (nb, nb):
        raise MalformedInput(f"bilinear table must be {nb}x{nb}, got {F.shape}")
    if F.size and (F.min() < 0 or F.max() >= na):
        raise MalformedInput(f"bilinear table entries must lie in [0, {na})")
    TA, TB = abelian_group(A).table, abelian_group(B).table

    left = F[TB[:, :, None], np.arange(nb)[None, None, :]]        # f(x1 + x2, y)
    right = TA[F[:, None, :], F[None, :, :]]                       # f(x1, y) + f(x2, y)
    if not np.array_equal(left, right):
        x1, x2, y = (int(v) for v in np.argwhere(left != right)[0])
        raise NotBilinear(f"f({x1}+{x2}, {y}) != f({x1},{y}) + f({x2},{y})", witness=(x1, x2, y))
    left = F[np.arange(nb)[:, None, None], TB[None, :, :]]         # f(x, y1 + y2)
    right = TA[F[:, :, None], F[:, None, :]]                       # f(x, y1) + f(x, y2)
    if not np.array_equal(left, right):
        x, y1, y2 = (int(v) for v in np.argwhere(left != right)[0])
        raise NotBilinear(f"f({x}, {y1}+{y2}) != f({x},{y1}) + f({x},{y2})", witness=(x, y1, y2))
    if F[0].any() or F[:, 0].any():
        raise InvariantViolation("additive table is nonzero on a zero argument")
    F.setflags(write=False)
    return BilinearMap(A, B, F)


def random_bilinear_map(A: AbelianDecomposition, B: AbelianDecomposition, rng: np.random.Generator) -> BilinearMap:
    """Random structure constants c_ij = f(e_i, e_j), each killed by gcd(|e_i|, |e_j|)."""
    if A.order == 1 or B.order == 1:
        return build_bilinear(A, B, np.zeros((B.order, B.order), dtype=np.int64))
    coords_a = coordinates(A)
    moduli_a = np.asarray(A.moduli, dtype=np.int64)
    moduli_b = B.moduli
    k = len(moduli_b)
    constants = np.zeros((k, k, len(moduli_a)), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            g = int(np.gcd(moduli_b[i], moduli_b[j]))
            torsion = np.flatnonzero(((coords_a * g) % moduli_a == 0).all(axis=1))
            constants[i, j] = coords_a[int(rng.choice(torsion))]
    xb = coordinates(B)
    values = np.einsum("xi,yj,ijc->xyc", xb, xb, constants)
    table = index_of(A, values.reshape(-1, len(moduli_a))).reshape(B.order, B.order)
    return build_bilinear(A, B, table)


def is_isometry(f: BilinearMap, beta: Permutation) -> bool:
    b = beta.as_array()
    return bool(np.array_equal(f.table[b[:, None], b[None, :]], f.table))


def brute_force_isometries(f: BilinearMap) -> PermGroup:
    """Every automorphism of B preserving f, by filtering Aut(B)."""
    aut = aut_group_of_decomposition(f.B)
    kept = [beta for beta in aut.elements() if is_isometry(f, beta)]
    group = build_chain(kept, degree=f.size_b)
    if group.order != len(kept):
        raise InvariantViolation(f"{len(kept)} isometries do not form a group (span has order {group.order})")
    return group


def build_gf(f: BilinearMap) -> GfGroup:
    """(b1, a1)(b2, a2) = (b1 + b2, a1 + a2 + f(b1, b2))."""
    nb, na = f.size_b, f.size_a
    TA, TB = abelian_group(f.A).table, abelian_group(f.B).table
    idx = np.arange(nb * na)
    b, a = idx % nb, idx // nb
    b_part = TB[b[:, None], b[None, :]]
    a_part = TA[TA[a[:, None], a[None, :]], f.table[b[:, None], b[None, :]]]
    group = construct_group(b_part + nb * a_part, name=f"G_f({f.B.label}->{f.A.label})")
    gf = GfGroup(f, group)

    a_points = np.asarray(gf.a_points)
    if not np.array_equal(group.table[np.ix_(a_points, idx)], group.table[np.ix_(idx, a_points)].T):
        raise InvariantViolation("the copy of A is not central in G_f")
    if not set(commutator_subgroup(group).elements) <= set(gf.a_points):
        raise InvariantViolation("[G_f, G_f] is not contained in A")
    return gf


def isometry_to_aut(gf: GfGroup, beta: Permutation) -> Permutation:
    """(b, a) -> (beta b, a)."""
    if not is_isometry(gf.f, beta):
        raise NotIsometry(f"{beta} is not an isometry")
    nb = gf.f.size_b
    idx = np.arange(gf.group.order)
    images = beta.as_array()[idx % nb] + nb * (idx // nb)
    if not is_homomorphism(gf.group, gf.group, images):
        raise InvariantViolation(f"isometry {beta} did not induce an automorphism of G_f")
    return Permutation(images.tolist())


def varphi_hom_check(gf: GfGroup, phi: Permutation) -> CorrectionCheck:
    """Compare additivity of phi_phi(b) = l(b) l_phi(b)^-1 with the isometry criterion.

    With beta the map phi induces on B = G_f/A and alpha = phi restricted
    to A, phi_phi is additive exactly when f(x, y) = alpha(f(beta^-1 x,
    beta^-1 y)); for phi fixing A pointwise this says beta^-1 is an
    isometry.
    """
    G = gf.group
    f = gf.f
    nb, na = f.size_b, f.size_a
    images = phi.as_array()
    if sorted(images[gf.a_points].tolist()) != gf.a_points:
        raise DoesNotFixA("automorphism does not map A onto itself")
    if not is_homomorphism(G, G, images):
        raise MalformedInput("phi is not an automorphism of G_f")

    beta = images[:nb] % nb
    beta_inv = np.empty(nb, dtype=np.int64)
    beta_inv[beta] = np.arange(nb)
    alpha = images[gf.a_points] // nb

    ell_phi = images[beta_inv]                               # phi(l(beta^-1 b))
    correction = G.table[np.arange(nb), G.inverse[ell_phi]]  # l(b) l_phi(b)^-1, lies in A
    if (correction % nb).any():
        raise InvariantViolation("phi_phi left the copy of A")
    correction = correction // nb
    TA, TB = abelian_group(f.A).table, abelian_group(f.B).table
    homomorphism = bool(np.array_equal(correction[TB], TA[correction[:, None], correction[None, :]]))

    twisted = alpha[f.table[beta_inv[:, None], beta_inv[None, :]]]
    criterion = bool(np.array_equal(twisted, f.table))
    if homomorphism != criterion:
        raise InvariantViolation(f"phi_phi additivity ({homomorphism}) disagrees with the criterion ({criterion})")
    fixes_pointwise = bool(np.array_equal(alpha, np.arange(na)))
    inverse_isometry = is_isometry(f, Permutation(beta_inv.tolist()))
    if fixes_pointwise and inverse_isometry != homomorphism:
        raise InvariantViolation("pointwise A-fixing automorphism breaks the isometry equivalence")
    return CorrectionCheck(homomorphism, criterion, fixes_pointwise, inverse_isometry)


def automorphisms_fixing_a(gf: GfGroup, limit: Optional[int] = None) -> List[Permutation]:
    a_points = gf.a_points
    return [
        phi for phi in brute_force_isomorphisms(gf.group, gf.group, limit=limit)
        if sorted(phi.images[a] for a in a_points) == a_points
    ]


def product_action_group(gf: GfGroup) -> PermGroup:
    """Sym(B) x Sym(A) acting on B x_c A coordinatewise."""
    nb, na = gf.f.size_b, gf.f.size_a
    idx = np.arange(nb * na)
    b, a = idx % nb, idx // nb
    gens = []
    for size, moves_b in ((nb, True), (na, False)):
        local = []
        if size > 1:
            local.append(np.roll(np.arange(size), -1))
        if size > 2:
            swap = np.arange(size)
            swap[[0, 1]] = [1, 0]
            local.append(swap)
        for perm in local:
            images = perm[b] + nb * a if moves_b else b + nb * perm[a]
            gens.append(Permutation(images.tolist()))
    return build_chain(gens, degree=nb * na)


def _restrict_to_b(gf: GfGroup, group: PermGroup) -> PermGroup:
    nb = gf.f.size_b
    gens = [Permutation([g.images[b] % nb for b in range(nb)]) for g in group.generators]
    return build_chain(gens, degree=nb)


def _gris_automorphisms(gf: GfGroup) -> PermGroup:
    identity = Permutation.identity(gf.group.order)
    result = gris_solve(gf.group, gf.group, Subcoset(identity, product_action_group(gf)))
    if result.is_empty or result.representative not in result.group:
        raise InvariantViolation("GRIS of G_f with itself did not return a group")
    return result.group


def isometries_via_gris(f: BilinearMap) -> PermGroup:
    """Isometries as the B-restriction of the A-fixing automorphisms found by GRIS."""
    gf = build_gf(f)
    automorphisms = _gris_automorphisms(gf)
    fixing = pointwise_stabilizer(automorphisms, gf.a_points)
    group = _restrict_to_b(gf, fixing)
    logger.debug(f"isometries of {f.B.label}->{f.A.label} via GRIS: order {group.order}")
    return group


def similitudes_via_gris(f: BilinearMap) -> PermGroup:
    """B-restriction of every automorphism in Sym(B) x Sym(A): isometries up to Aut(A)."""
    gf = build_gf(f)
    return _restrict_to_b(gf, _gris_automorphisms(gf))
