from functools import reduce

import numpy as np
import pytest

from src.models.permutation import Permutation, Subcoset
from src.services.perm_core import (
    build_chain,
    conjugate_group,
    coset_of,
    membership,
    perm_group_to_finite_group,
    pointwise_stabilizer,
    random_subgroup,
    rebase,
    reduce_generators,
    subcoset_intersect_filter,
    symmetric_perm_group,
    trivial_group,
    union_of_subcosets,
)
from src.utils.errors import MalformedInput, NotASubcoset


def cycle(n, *cycles):
    return Permutation.from_cycles(n, *cycles)


def test_permutation_composition_is_right_to_left():
    p = cycle(3, (0, 1))
    q = cycle(3, (1, 2))
    assert (p * q)(1) == p(q(1)) == 0
    assert (p * q).order == 3
    assert (p * p.inverse()).is_identity


def test_permutation_rejects_non_bijection():
    with pytest.raises(MalformedInput):
        Permutation.checked([0, 0, 1])


def test_build_chain_orders():
    assert build_chain([], degree=3).order == 1
    assert build_chain([cycle(3, (0, 1)), cycle(3, (0, 1, 2))]).order == 6
    assert symmetric_perm_group(4).order == 24
    assert symmetric_perm_group(1).order == 1
    with pytest.raises(MalformedInput):
        build_chain([])


def test_membership_factors_multiply_back():
    S4 = symmetric_perm_group(4)
    g = cycle(4, (0, 2), (1, 3))
    result = membership(S4, g)
    assert result.member
    assert reduce(lambda a, b: a * b, result.factors) == g


def test_membership_rejects_outside_and_wrong_degree():
    A = build_chain([cycle(4, (0, 1, 2))])
    assert not membership(A, cycle(4, (0, 1))).member
    assert cycle(4, (0, 2, 1)) in A
    with pytest.raises(MalformedInput):
        membership(A, cycle(3, (0, 1)))


def test_pointwise_stabilizer():
    S4 = symmetric_perm_group(4)
    stab = pointwise_stabilizer(S4, [0, 1])
    assert stab.order == 2
    assert cycle(4, (2, 3)) in stab
    assert pointwise_stabilizer(S4, [0, 1, 2]).order == 1


def test_rebase_keeps_group():
    S4 = symmetric_perm_group(4)
    chain = rebase(S4, [3, 2])
    assert chain.order == 24
    assert list(chain.base[:2]) == [3, 2]


def test_reduce_generators_drops_redundant():
    gens = [cycle(3, (0, 1)), cycle(3, (1, 2)), cycle(3, (0, 2)), cycle(3, (0, 1, 2))]
    reduced = reduce_generators(build_chain(gens))
    assert reduced.order == 6
    assert len(reduced.generators) == 2


def test_conjugate_group():
    H = build_chain([cycle(4, (0, 1))])
    alpha = cycle(4, (1, 2))
    conj = conjugate_group(H, alpha)
    assert cycle(4, (0, 2)) in conj
    assert conj.order == 2


def test_union_of_subcosets():
    n = 3
    rotations = build_chain([cycle(n, (0, 1, 2))])
    flip = cycle(n, (0, 1))
    union = union_of_subcosets([coset_of(rotations), Subcoset(flip, rotations)], degree=n)
    assert union.order == 6

    empty = Subcoset(None, trivial_group(n), reason="color-histogram")
    assert union_of_subcosets([empty], degree=n).reason == "color-histogram"
    assert union_of_subcosets([empty, coset_of(rotations)], degree=n).order == 3


def test_filter_always_true_and_always_false():
    coset = coset_of(symmetric_perm_group(4))
    assert subcoset_intersect_filter(coset, lambda g: True).order == 24
    assert subcoset_intersect_filter(coset, lambda g: False).is_empty


def test_filter_stabilizer_of_a_point():
    coset = Subcoset(cycle(4, (0, 1)), symmetric_perm_group(4))
    result = subcoset_intersect_filter(coset, lambda g: g(0) == 3)
    assert result.order == 6
    assert all(g(0) == 3 for g in result.elements())


def test_filter_rejects_non_coset():
    coset = coset_of(symmetric_perm_group(3))
    # identity plus the three transpositions
    with pytest.raises(NotASubcoset):
        subcoset_intersect_filter(coset, lambda g: g.order <= 2)


def test_cayley_table_of_perm_group():
    G, elements = perm_group_to_finite_group(symmetric_perm_group(3))
    assert G.order == 6
    assert elements[0].is_identity
    assert not G.is_abelian


def test_random_subgroup_is_closed(rng):
    group = random_subgroup(5, rng)
    elements = list(group.elements())
    assert len(elements) == group.order
    picks = rng.choice(len(elements), size=(10, 2))
    for i, j in picks:
        assert elements[i] * elements[j] in group


def test_subcoset_random_element_is_member(rng):
    coset = Subcoset(cycle(4, (0, 3)), build_chain([cycle(4, (1, 2))]))
    for _ in range(5):
        assert coset.random_element(rng) in coset
    assert np.array_equal(coset.representative.as_array(), [3, 1, 2, 0])
