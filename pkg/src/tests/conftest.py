import numpy as np
import pytest

from src.services.abelian_aut import abelian_group
from src.models.abelian import AbelianDecomposition
from src.services.corpus import dihedral
from src.services.group_core import cyclic_group, metacyclic, symmetric_group


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def z4():
    return cyclic_group(4)


@pytest.fixture
def klein():
    return abelian_group(AbelianDecomposition.from_pairs([(2, 1), (2, 1)]), name="Z2xZ2")


@pytest.fixture
def s3():
    return dihedral(6)


@pytest.fixture
def q8():
    return metacyclic(4, 2, 3, 2, name="Q8")


@pytest.fixture
def s4():
    return symmetric_group(4)


def decomposition(*pairs):
    return AbelianDecomposition.from_pairs(pairs)
