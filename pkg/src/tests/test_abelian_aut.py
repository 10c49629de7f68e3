import numpy as np
import pytest

from src.models.abelian import AbelianDecomposition, HRMatrix
from src.services.abelian_aut import (
    abelian_group,
    all_hr_matrices,
    aut_factor_profile,
    aut_group,
    aut_order_formula,
    block_structure,
    canonical_decomposition,
    check_aut_factors,
    coordinates,
    hr_matrix_count,
    is_automorphism,
    matrix_permutation,
)
from src.services.group_core import brute_force_isomorphisms, cyclic_group, direct_product, is_homomorphism
from src.tests.conftest import decomposition
from src.utils.errors import MalformedInput, NotAbelian


def test_canonical_decomposition_of_z12():
    form = canonical_decomposition(cyclic_group(12))
    assert form.decomposition.factors == ((2, 2), (3, 1))
    assert form.decomposition.label == "Z4xZ3"
    assert is_homomorphism(cyclic_group(12), form.group, form.to_canonical)
    assert np.array_equal(form.to_canonical[form.from_canonical], np.arange(12))


def test_canonical_decomposition_of_products():
    G = direct_product(cyclic_group(6), cyclic_group(4))
    assert canonical_decomposition(G).decomposition.factors == ((2, 1), (2, 2), (3, 1))
    assert canonical_decomposition(cyclic_group(1)).decomposition.factors == ()


def test_trivial_group_has_empty_decomposition():
    empty = AbelianDecomposition(())
    assert coordinates(empty).shape == (1, 0)
    z1 = abelian_group(empty)
    assert z1.order == 1 and z1.name == "Z1"
    form = canonical_decomposition(cyclic_group(1))
    assert form.decomposition == empty
    assert form.to_canonical.tolist() == [0]
    assert aut_order_formula(empty) == 1
    assert aut_group(z1).order == 1
    assert check_aut_factors(z1) == []


def test_canonical_decomposition_rejects_nonabelian(s3):
    with pytest.raises(NotAbelian):
        canonical_decomposition(s3)


def test_decomposition_validation():
    with pytest.raises(MalformedInput):
        AbelianDecomposition.from_pairs([(4, 1)])
    assert decomposition((3, 1), (2, 2)).factors == ((2, 2), (3, 1))


def test_hr_matrix_apply():
    M = HRMatrix.build(2, (1, 2), [[1, 1], [2, 1]])
    assert M.apply((1, 0)) == (1, 2)
    assert M.apply((0, 1)) == (1, 1)
    assert is_automorphism(M)


def test_hr_matrix_divisibility():
    with pytest.raises(MalformedInput):
        HRMatrix.build(2, (1, 2), [[1, 1], [1, 1]])
    with pytest.raises(MalformedInput):
        HRMatrix.build(2, (2, 1), [[1, 0], [0, 1]])


def test_singular_hr_matrix():
    M = HRMatrix.build(2, (1, 2), [[1, 0], [0, 2]])
    assert not is_automorphism(M)


def test_hr_matrix_product_matches_composition():
    M = HRMatrix.build(2, (1, 2), [[1, 1], [2, 1]])
    N = HRMatrix.build(2, (1, 2), [[1, 0], [2, 3]])
    for x in [(0, 1), (1, 3), (1, 0)]:
        assert (M @ N).apply(x) == M.apply(N.apply(x))


@pytest.mark.parametrize("pairs, expected", [
    ([], 1),
    ([(2, 2)], 2),
    ([(2, 1), (2, 2)], 8),
    ([(2, 1), (2, 1), (2, 1)], 168),
    ([(2, 2), (3, 1)], 4),
])
def test_aut_order_formula(pairs, expected):
    assert aut_order_formula(decomposition(*pairs)) == expected


@pytest.mark.parametrize("p, exponents", [(2, (1, 2)), (3, (1, 1)), (2, (1, 1, 2))])
def test_formula_counts_invertible_matrices(p, exponents):
    invertible = sum(1 for M in all_hr_matrices(p, exponents) if is_automorphism(M))
    assert invertible == aut_order_formula(decomposition(*[(p, e) for e in exponents]))


def test_hr_matrix_count():
    assert hr_matrix_count(2, (1, 2)) == 2 * 2 * 2 * 4


def test_formula_matches_brute_force():
    G = abelian_group(decomposition((2, 1), (2, 2)))
    assert len(brute_force_isomorphisms(G, G)) == 8


def test_aut_group_order(klein):
    assert aut_group(klein).order == 6
    assert aut_group(cyclic_group(8)).order == 4


def test_matrix_permutation_fixes_other_primes():
    decomp = decomposition((2, 1), (3, 1))
    M = HRMatrix.build(3, (1,), [[2]])
    perm = matrix_permutation(decomp, M)
    # index = a + 2 b for (a, b) in Z2 x Z3
    assert perm(1) == 1
    assert perm(2) == 4


def test_block_structure():
    decomp = decomposition((2, 1), (2, 1), (2, 2), (2, 2), (2, 2))
    assert block_structure(decomp) == [2, 3]
    with pytest.raises(MalformedInput):
        block_structure(decomposition((2, 1), (3, 1)))


def test_aut_factor_profiles():
    names = lambda decomp: [label.display() for label in aut_factor_profile(decomp)]
    assert names(decomposition((2, 1), (2, 1))) == ["Cyclic(2)", "Cyclic(3)"]
    assert names(decomposition((2, 1), (2, 1), (2, 1))) == ["PSL(2,7)/PSL(3,2)"]
    profile = aut_factor_profile(decomposition(*[(2, 1)] * 4))
    assert [label.order for label in profile] == [20160]
    assert profile[0].in_cis_class


def test_check_aut_factors(klein):
    labels = check_aut_factors(klein)
    assert [label.order for label in labels] == [2, 3]
    Z2cubed = abelian_group(decomposition((2, 1), (2, 1), (2, 1)))
    assert [label.order for label in check_aut_factors(Z2cubed)] == [168]
