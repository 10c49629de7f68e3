import pytest

from src.models.permutation import Permutation
from src.models.wreath import WreathElement
from src.services.group_core import cyclic_group
from src.services.perm_core import build_chain, symmetric_perm_group
from src.services.wreath_holomorph import (
    automorphism_group,
    holomorph,
    holomorph_pair_product,
    holomorph_pairs,
    random_wreath_element,
    tower_from_groups,
    tower_group,
    tower_order_formula,
    wreath_compose,
    wreath_decompose,
    wreath_evaluate,
    wreath_to_permutation,
)
from src.utils.config import Config
from src.utils.errors import DomainTooLarge, MalformedInput, NotMember

SWAP = Permutation([1, 0])


@pytest.fixture
def s2_wr_s2():
    return tower_from_groups([symmetric_perm_group(2), symmetric_perm_group(2)])


def test_automorphism_groups(z4, klein, s3, q8):
    assert automorphism_group(z4).order == 2
    assert automorphism_group(klein).order == 6
    assert automorphism_group(s3).order == 6
    assert automorphism_group(q8).order == 24


def test_automorphisms_fix_identity_and_respect_products(q8):
    for phi in automorphism_group(q8).generators:
        assert phi(0) == 0
        for a in range(8):
            for b in range(8):
                assert phi(q8.mul(a, b)) == q8.mul(phi(a), phi(b))


@pytest.mark.parametrize("n, expected", [(2, 2), (3, 6), (4, 8)])
def test_holomorph_order_of_cyclic(n, expected):
    assert holomorph(cyclic_group(n)).order == expected


def test_holomorph_of_klein_and_s3(klein, s3):
    assert holomorph(klein).order == 24
    assert holomorph(s3).order == 36


def test_holomorph_pairs_act_consistently(s3):
    hol = holomorph(s3)
    pairs = list(holomorph_pairs(hol))
    assert len(pairs) == hol.order
    first, second = pairs[7], pairs[20]
    g, phi = holomorph_pair_product(s3, first, second)
    assert hol.element(g, phi) == hol.element(*first) * hol.element(*second)
    assert all(hol.element(*pair) in hol.action for pair in pairs[:12])


def test_tower_orders(s2_wr_s2):
    assert tower_group(s2_wr_s2).order == 8
    z3 = build_chain([Permutation.from_cycles(3, (0, 1, 2))])
    tower = tower_from_groups([z3, symmetric_perm_group(2)])
    assert tower_order_formula(tower) == 18
    assert tower_group(tower).order == 18


def test_wreath_evaluate(s2_wr_s2):
    element = WreathElement.with_components(s2_wr_s2, {(1, ()): SWAP, (0, (1,)): SWAP})
    assert wreath_evaluate(element, (0, 0)) == (0, 1)
    assert wreath_evaluate(element, (1, 1)) == (0, 0)
    with pytest.raises(MalformedInput):
        wreath_evaluate(element, (0,))


def test_wreath_permutation_lies_in_tower_group(s2_wr_s2):
    element = WreathElement.with_components(s2_wr_s2, {(1, ()): SWAP, (0, (1,)): SWAP})
    perm = wreath_to_permutation(element)
    assert perm in tower_group(s2_wr_s2)
    # (x0, x1) is stored at x0 + 2 x1
    assert perm(0) == 2
    assert perm(3) == 0


def test_decompose_recovers_components(rng):
    z3 = build_chain([Permutation.from_cycles(3, (0, 1, 2))])
    tower = tower_from_groups([symmetric_perm_group(2), z3, symmetric_perm_group(2)])
    for _ in range(5):
        element = random_wreath_element(tower, rng)
        recovered = wreath_decompose(tower, wreath_to_permutation(element))
        assert recovered.components == element.components


def test_wreath_elements_are_dense(s2_wr_s2):
    with pytest.raises(MalformedInput):
        WreathElement(s2_wr_s2, {(1, ()): SWAP, (0, (1,)): SWAP})
    with pytest.raises(MalformedInput):
        WreathElement.with_components(s2_wr_s2, {(0, ()): SWAP})
    with pytest.raises(MalformedInput):
        WreathElement.with_components(s2_wr_s2, {(1, ()): Permutation([1, 2, 0])})
    keys = {(0, (0,)), (0, (1,)), (1, ())}
    assert set(WreathElement.identity(s2_wr_s2).components) == keys
    assert set(WreathElement.with_components(s2_wr_s2, {(1, ()): SWAP}).components) == keys


def test_random_and_composed_elements_are_dense(rng, s2_wr_s2):
    keys = set(s2_wr_s2.component_keys())
    a = random_wreath_element(s2_wr_s2, rng)
    b = random_wreath_element(s2_wr_s2, rng)
    assert set(a.components) == keys
    assert set(wreath_compose(a, b).components) == keys


def test_decompose_identity(s2_wr_s2):
    element = wreath_decompose(s2_wr_s2, Permutation.identity(4))
    assert element.components == WreathElement.identity(s2_wr_s2).components
    assert all(perm.is_identity for perm in element.components.values())


def test_decompose_rejects_non_member(s2_wr_s2):
    with pytest.raises(NotMember):
        wreath_decompose(s2_wr_s2, Permutation.from_cycles(4, (0, 3)))


def test_decompose_rejects_component_outside_level_group():
    z3 = build_chain([Permutation.from_cycles(3, (0, 1, 2))])
    tower = tower_from_groups([z3, symmetric_perm_group(1)])
    with pytest.raises(NotMember):
        wreath_decompose(tower, Permutation.from_cycles(3, (0, 1)))


def test_compose_matches_permutation_product(rng, s2_wr_s2):
    for _ in range(5):
        a = random_wreath_element(s2_wr_s2, rng)
        b = random_wreath_element(s2_wr_s2, rng)
        composed = wreath_to_permutation(wreath_compose(a, b))
        assert composed == wreath_to_permutation(a) * wreath_to_permutation(b)


def test_domain_bound(monkeypatch, s2_wr_s2):
    monkeypatch.setitem(Config.LIMITS, "domain_bound", 3)
    with pytest.raises(DomainTooLarge):
        tower_group(s2_wr_s2)
