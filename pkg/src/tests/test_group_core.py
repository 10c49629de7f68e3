import numpy as np
import pytest

from src.services.group_core import (
    alternating_group,
    brute_force_isomorphisms,
    center,
    classify_simple,
    commutator_subgroup,
    composition_factors,
    construct_group,
    cyclic_group,
    derived_series,
    direct_product,
    element_orders,
    induced_group,
    is_homomorphism,
    is_normal,
    is_simple,
    normal_subgroups,
    quotient_group,
    relabel_group,
    solvable_radical,
    subgroup_generated,
    whole_group,
)
from src.services.simple_groups import label_for_order
from src.utils.errors import MalformedInput, NotAGroup, NotNormal, OrderOutOfRange


def test_trivial_table():
    G = construct_group([[0]])
    assert G.order == 1
    assert G.inv(0) == 0


def test_cyclic_inverse(z4):
    assert z4.order == 4
    assert z4.inv(2) == 2
    assert z4.inv(1) == 3


def test_non_associative_table_is_rejected():
    # a Latin square with identity 0 that is not a group
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAGroup):
        construct_group(table)


@pytest.mark.parametrize("table", [
    [[0, 1], [1, 1]],
    [[1, 0], [0, 1]],
    [[0, 1, 2]],
])
def test_malformed_tables(table):
    with pytest.raises(MalformedInput):
        construct_group(table)


def test_element_orders(z4, q8):
    assert element_orders(z4).tolist() == [1, 4, 2, 4]
    assert sorted(element_orders(q8).tolist()) == [1, 2, 4, 4, 4, 4, 4, 4]


def test_commutator_subgroup(z4, s3, q8):
    assert commutator_subgroup(z4).is_trivial
    assert commutator_subgroup(s3).order == 3
    assert commutator_subgroup(q8).order == 2
    assert commutator_subgroup(q8).members == center(q8).members


def test_derived_series(klein, s4):
    series = derived_series(klein)
    assert series.orders == [4, 1]
    assert series.solvable
    assert derived_series(s4).orders == [24, 12, 4, 1]
    A5 = alternating_group(5)
    series = derived_series(A5)
    assert series.orders == [60]
    assert not series.solvable


def test_solvable_radical():
    A5 = alternating_group(5)
    assert solvable_radical(A5).is_trivial
    G = direct_product(cyclic_group(6), A5)
    assert solvable_radical(G).order == 6
    assert solvable_radical(cyclic_group(6)).order == 6


def test_quotients(z4, s4, s3):
    assert quotient_group(z4, whole_group(z4)).group.order == 1
    half = subgroup_generated(z4, [2])
    assert quotient_group(z4, half).group.order == 2

    V4 = next(N for N in normal_subgroups(s4) if N.order == 4)
    Q = quotient_group(s4, V4).group
    assert Q.order == 6
    assert not Q.is_abelian
    assert len(brute_force_isomorphisms(Q, s3)) == 6


def test_quotient_by_non_normal_subgroup(s3):
    reflection = next(x for x in range(1, 6) if s3.mul(x, x) == 0)
    S = subgroup_generated(s3, [reflection])
    assert not is_normal(s3, S)
    with pytest.raises(NotNormal):
        quotient_group(s3, S)


def test_composition_factors(s4):
    names = lambda labels: [label.display() for label in labels]
    assert names(composition_factors(cyclic_group(6))) == ["Cyclic(2)", "Cyclic(3)"]
    assert names(composition_factors(s4)) == ["Cyclic(2)", "Cyclic(2)", "Cyclic(2)", "Cyclic(3)"]
    labels = composition_factors(direct_product(cyclic_group(2), alternating_group(5)))
    assert [label.order for label in labels] == [2, 60]
    assert "Alt(5)" in labels[1].names and "PSL(2,5)" in labels[1].names


def test_random_refinement_agrees(s4, rng):
    assert composition_factors(s4, rng=rng) == composition_factors(s4)


def test_classify_simple():
    assert classify_simple(cyclic_group(7)).names == frozenset({"Cyclic(7)"})
    assert label_for_order(60).names == frozenset({"Alt(5)", "PSL(2,4)", "PSL(2,5)"})
    assert label_for_order(168).names == frozenset({"PSL(2,7)", "PSL(3,2)"})
    assert is_simple(alternating_group(5))
    with pytest.raises(MalformedInput):
        classify_simple(cyclic_group(4))
    with pytest.raises(OrderOutOfRange):
        label_for_order(30)


def test_brute_force_isomorphisms(z4, klein, s3):
    assert brute_force_isomorphisms(z4, klein) == []
    assert len(brute_force_isomorphisms(s3, s3)) == 6
    Z2 = cyclic_group(2)
    Z2cubed = direct_product(direct_product(Z2, Z2), Z2)
    assert len(brute_force_isomorphisms(Z2cubed, Z2cubed)) == 168


def test_relabelled_copy_is_isomorphic(q8, rng):
    images = np.concatenate([[0], 1 + rng.permutation(7)])
    H = relabel_group(q8, images)
    isos = brute_force_isomorphisms(q8, H)
    assert len(isos) == 24
    assert all(is_homomorphism(q8, H, psi.images) for psi in isos)
    with pytest.raises(MalformedInput):
        relabel_group(q8, [1, 0, 2, 3, 4, 5, 6, 7])


def test_induced_group(s4):
    V4 = next(N for N in normal_subgroups(s4) if N.order == 4)
    sub, embedding = induced_group(s4, V4)
    assert sub.order == 4
    assert sub.is_abelian
    assert embedding[0] == 0


def test_center(q8, s3):
    assert center(q8).order == 2
    assert center(s3).is_trivial
