import numpy as np
import pytest

from src.models.coloring import CisComponent, Coloring, ColorIsoInstance
from src.models.permutation import Permutation, Subcoset
from src.services.abelian_aut import abelian_group
from src.services.color_iso import (
    certify_cis,
    exhaustive_color_iso,
    gris_solve,
    histogram_precheck,
    multiplication_coloring,
    rarity_order,
    solve_color_iso,
    structure_of_tower,
    symmetric_factors,
)
from src.services.group_core import brute_force_isomorphisms, cyclic_group
from src.services.perm_core import build_chain, coset_of, random_permutation, random_subgroup, symmetric_perm_group
from src.tests.conftest import decomposition
from src.utils.errors import ComponentTooLarge, MalformedInput


def sym_coset(n):
    return coset_of(symmetric_perm_group(n))


def test_swapped_colors_give_one_transposition():
    instance = ColorIsoInstance(sym_coset(3), Coloring(np.array([0, 1, 2])), Coloring(np.array([1, 0, 2])))
    result = solve_color_iso(instance)
    assert result.order == 1
    assert result.representative == Permutation.from_cycles(3, (0, 1))


def test_coloring_keeps_its_own_copy():
    raw = np.array([0, 1, 1, 2])
    f = Coloring(raw)
    assert raw.flags.writeable
    raw[0] = 5
    assert f.values.tolist() == [0, 1, 1, 2]
    with pytest.raises(ValueError):
        f.values[0] = 3


def test_constant_coloring_keeps_whole_coset():
    f = Coloring(np.zeros(4, dtype=np.int64))
    coset = Subcoset(Permutation.from_cycles(4, (0, 1)), symmetric_perm_group(4))
    assert solve_color_iso(ColorIsoInstance(coset, f, f)).order == 24


def test_histogram_mismatch_is_empty():
    f1 = Coloring(np.array([0, 0, 1]))
    f2 = Coloring(np.array([0, 1, 1]))
    assert not histogram_precheck(f1, f2)
    result = solve_color_iso(ColorIsoInstance(sym_coset(3), f1, f2))
    assert result.is_empty
    assert result.reason == "search-exhausted"


def test_instance_validation():
    with pytest.raises(MalformedInput):
        ColorIsoInstance(sym_coset(3), Coloring(np.zeros(3, dtype=np.int64)), Coloring(np.zeros((3, 3), dtype=np.int64)))
    with pytest.raises(MalformedInput):
        ColorIsoInstance(sym_coset(4), Coloring(np.zeros(3, dtype=np.int64)), Coloring(np.zeros(3, dtype=np.int64)))
    with pytest.raises(MalformedInput):
        Coloring(np.zeros((3, 2), dtype=np.int64))


def test_rarity_order_puts_rare_colors_first():
    assert rarity_order(Coloring(np.array([0, 0, 1, 0, 2, 2]))) == [2, 4, 5, 0, 1, 3]


def test_color_automorphisms_form_a_group():
    f = Coloring(np.array([0, 0, 1, 1, 1]))
    result = solve_color_iso(ColorIsoInstance(sym_coset(5), f, f))
    assert result.order == 12
    assert result.representative.inverse() in result.group


@pytest.mark.parametrize("kind", [1, 2, 3])
def test_solver_matches_exhaustive_filter(rng, kind):
    n = 5
    for _ in range(4):
        shape = (n,) * kind
        f1 = Coloring(rng.integers(0, 2, size=shape))
        sigma = random_permutation(n, rng).as_array()
        # f2(sigma x) = f1(x)
        values = np.empty(shape, dtype=np.int64)
        values[np.ix_(*[sigma] * kind)] = f1.values
        f2 = Coloring(values)
        coset = Subcoset(random_permutation(n, rng), random_subgroup(n, rng))
        instance = ColorIsoInstance(coset, f1, f2)
        result = solve_color_iso(instance)
        expected = exhaustive_color_iso(instance)
        assert result.order == len(expected)
        assert all(g in result for g in expected)


def test_gris_on_small_groups(z4, klein, s3):
    assert gris_solve(z4, z4, sym_coset(4)).order == 2
    assert gris_solve(z4, klein, sym_coset(4)).is_empty
    assert gris_solve(s3, s3, sym_coset(6)).order == 6
    identity_only = coset_of(build_chain([], degree=4))
    result = gris_solve(z4, z4, identity_only)
    assert result.order == 1 and result.representative.is_identity


def test_gris_results_are_isomorphisms(q8):
    result = gris_solve(q8, q8, sym_coset(8))
    assert result.order == len(brute_force_isomorphisms(q8, q8))
    for g in result.elements():
        assert all(g(q8.mul(a, b)) == q8.mul(g(a), g(b)) for a in range(8) for b in range(8))


def test_gris_rejects_mismatched_orders(z4):
    with pytest.raises(MalformedInput):
        gris_solve(z4, cyclic_group(3), sym_coset(4))


def test_multiplication_coloring(z4):
    values = multiplication_coloring(z4).values
    assert values.sum() == 16
    assert values[1, 2, 3] == 1 and values[1, 2, 0] == 0


def test_symmetric_factors():
    assert [label.order for label in symmetric_factors(3)] == [2, 3]
    assert [label.order for label in symmetric_factors(5)] == [2, 60]
    assert symmetric_factors(1) == []


def test_certify_tower_of_holomorphs():
    structure = structure_of_tower([(cyclic_group(3), 3), (cyclic_group(2), 2)])
    certificate = certify_cis(structure)
    assert certificate.in_cis
    assert [label.order for label in certificate.labels] == [2, 2, 2, 3, 3]


def test_certify_symmetric_levels():
    assert certify_cis([CisComponent(kind="symmetric", degree=5)]).in_cis
    certificate = certify_cis([CisComponent(kind="symmetric", degree=7)])
    assert not certificate.in_cis
    assert certificate.offending[0].names == frozenset({"Alt(7)"})


@pytest.mark.slow
def test_certify_power_of_hol_z2_cubed():
    Z2cubed = abelian_group(decomposition((2, 1), (2, 1), (2, 1)))
    certificate = certify_cis([CisComponent(kind="holomorph", group=Z2cubed, multiplicity=2)])
    assert certificate.in_cis
    assert sum(1 for label in certificate.labels if "PSL(3,2)" in label.names) == 2


def test_certify_rejects_large_permutation_component():
    with pytest.raises(ComponentTooLarge):
        certify_cis([CisComponent(kind="perm", perm_group=symmetric_perm_group(7))])
