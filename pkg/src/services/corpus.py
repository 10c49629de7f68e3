import logging
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from sympy import factorint
from sympy.utilities.iterables import partitions

from src.models.abelian import AbelianDecomposition
from src.models.corpus import CorpusEntry
from src.models.group import FiniteGroup
from src.services.abelian_aut import abelian_group
from src.services.group_core import (
    alternating_group,
    cyclic_group,
    direct_product,
    is_solvable,
    matrix_group,
    metacyclic,
    semidirect_cyclic,
    symmetric_group,
)
from src.utils.errors import MalformedInput

logger = logging.getLogger(__name__)


def _abelian(*moduli_pairs: Tuple[int, int], name: str) -> FiniteGroup:
    return abelian_group(AbelianDecomposition.from_pairs(moduli_pairs), name=name)


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order n (n even)."""
    return metacyclic(n // 2, 2, n // 2 - 1, 0, name=f"D{n}")


def _z4z2_extension(twist: Callable[[int, int], Tuple[int, int]], name: str) -> FiniteGroup:
    """(Z4 x Z2) x| Z2, with a^i b^j at index i + 4 j and the Z2 acting by twist."""
    N = direct_product(cyclic_group(4), cyclic_group(2))
    alpha = []
    for idx in range(8):
        i, j = twist(idx % 4, idx // 4)
        alpha.append(i % 4 + 4 * (j % 2))
    return semidirect_cyclic(N, alpha, 2, name=name)


def _small_group_builders() -> Dict[str, Callable[[], FiniteGroup]]:
    return {
        "Z1": lambda: cyclic_group(1),
        "Z2": lambda: cyclic_group(2),
        "Z3": lambda: cyclic_group(3),
        "Z4": lambda: cyclic_group(4),
        "Z2xZ2": lambda: _abelian((2, 1), (2, 1), name="Z2xZ2"),
        "Z5": lambda: cyclic_group(5),
        "Z6": lambda: cyclic_group(6),
        "S3": lambda: dihedral(6),
        "Z7": lambda: cyclic_group(7),
        "Z8": lambda: cyclic_group(8),
        "Z2xZ4": lambda: _abelian((2, 1), (2, 2), name="Z2xZ4"),
        "Z2xZ2xZ2": lambda: _abelian((2, 1), (2, 1), (2, 1), name="Z2xZ2xZ2"),
        "D8": lambda: dihedral(8),
        "Q8": lambda: metacyclic(4, 2, 3, 2, name="Q8"),
        "Z9": lambda: cyclic_group(9),
        "Z3xZ3": lambda: _abelian((3, 1), (3, 1), name="Z3xZ3"),
        "Z10": lambda: cyclic_group(10),
        "D10": lambda: dihedral(10),
        "Z11": lambda: cyclic_group(11),
        "Z12": lambda: cyclic_group(12),
        "Z2xZ6": lambda: _abelian((2, 1), (2, 1), (3, 1), name="Z2xZ6"),
        "Dic12": lambda: metacyclic(3, 4, 2, 0, name="Dic12"),
        "A4": lambda: alternating_group(4),
        "D12": lambda: dihedral(12),
        "Z13": lambda: cyclic_group(13),
        "Z14": lambda: cyclic_group(14),
        "D14": lambda: dihedral(14),
        "Z15": lambda: cyclic_group(15),
        "Z16": lambda: cyclic_group(16),
        "Z4xZ4": lambda: _abelian((2, 2), (2, 2), name="Z4xZ4"),
        "Z2xZ8": lambda: _abelian((2, 1), (2, 3), name="Z2xZ8"),
        "Z2xZ2xZ4": lambda: _abelian((2, 1), (2, 1), (2, 2), name="Z2xZ2xZ4"),
        "Z2^4": lambda: _abelian((2, 1), (2, 1), (2, 1), (2, 1), name="Z2^4"),
        "Z2xD8": lambda: direct_product(cyclic_group(2), dihedral(8), name="Z2xD8"),
        "Z2xQ8": lambda: direct_product(cyclic_group(2), metacyclic(4, 2, 3, 2, name="Q8"), name="Z2xQ8"),
        "D16": lambda: dihedral(16),
        "Q16": lambda: metacyclic(8, 2, 7, 4, name="Q16"),
        "SD16": lambda: metacyclic(8, 2, 3, 0, name="SD16"),
        "M16": lambda: metacyclic(8, 2, 5, 0, name="M16"),
        "Z4:Z4": lambda: metacyclic(4, 4, 3, 0, name="Z4:Z4"),
        # c a c = a b, c b c = b
        "(Z4xZ2):Z2": lambda: _z4z2_extension(lambda i, j: (i, i + j), name="(Z4xZ2):Z2"),
        # c a c = a, c b c = a^2 b: the central product Z4 o D8
        "Pauli": lambda: _z4z2_extension(lambda i, j: (i + 2 * j, j), name="Pauli"),
    }


def _extra_builders() -> Dict[str, Callable[[], FiniteGroup]]:
    return {
        "S4": lambda: symmetric_group(4),
        "SL(2,3)": lambda: matrix_group(3, [[[1, 1], [0, 1]], [[1, 0], [1, 1]]], name="SL(2,3)"),
        "Z2xA5": lambda: direct_product(cyclic_group(2), alternating_group(5), name="Z2xA5"),
    }


SMALL_GROUP_NAMES: Tuple[str, ...] = tuple(_small_group_builders())
EXTRA_GROUP_NAMES: Tuple[str, ...] = tuple(_extra_builders())


def corpus_tags(G: FiniteGroup) -> frozenset:
    tags = {f"order-{G.order}"}
    if G.is_abelian:
        tags.add("abelian")
    if is_solvable(G):
        tags.add("solvable")
    else:
        tags.add("semisimple-top")
    return frozenset(tags)


def _entry(name: str, builder: Callable[[], FiniteGroup], extra_tags: Tuple[str, ...] = ()) -> CorpusEntry:
    G = builder()
    if G.name != name:
        G = FiniteGroup(G.table, G.inverse, name=name)
    return CorpusEntry(name, G, corpus_tags(G) | frozenset(extra_tags))


@lru_cache(maxsize=None)
def group_corpus(include_extras: bool = True) -> Tuple[CorpusEntry, ...]:
    """One group per isomorphism class of order <= 16, then S4, SL(2,3) and Z2xA5."""
    entries = [_entry(name, build, ("small",)) for name, build in _small_group_builders().items()]
    if include_extras:
        entries.extend(_entry(name, build, ("extra",)) for name, build in _extra_builders().items())
    logger.info(f"group corpus: {len(entries)} entries")
    return tuple(entries)


def corpus_entry(name: str) -> CorpusEntry:
    for entry in group_corpus():
        if entry.name == name:
            return entry
    for entry in abelian_corpus():
        if entry.name == name:
            return entry
    raise MalformedInput(f"no corpus group named {name!r}")


def abelian_decompositions(order: int) -> Iterator[AbelianDecomposition]:
    """Every abelian group of the given order, one partition of each exponent per prime."""
    per_prime: List[List[List[Tuple[int, int]]]] = []
    for p, k in sorted(factorint(order).items()):
        options = []
        for part in partitions(int(k)):
            options.append([(int(p), int(e)) for e, mult in sorted(part.items()) for _ in range(mult)])
        per_prime.append(options)

    def combine(i: int, acc: List[Tuple[int, int]]) -> Iterator[AbelianDecomposition]:
        if i == len(per_prime):
            yield AbelianDecomposition.from_pairs(acc)
            return
        for option in per_prime[i]:
            yield from combine(i + 1, acc + option)

    yield from combine(0, [])


@lru_cache(maxsize=None)
def abelian_corpus(max_order: int = 128) -> Tuple[CorpusEntry, ...]:
    entries = []
    for n in range(1, max_order + 1):
        for decomp in abelian_decompositions(n):
            name = decomp.label if decomp.factors else "Z1"
            G = abelian_group(decomp, name=name)
            entries.append(CorpusEntry(name, G, frozenset({"abelian", "solvable", f"order-{n}"})))
    logger.info(f"abelian corpus up to order {max_order}: {len(entries)} entries")
    return tuple(entries)


def corpus_pairs(entries: Optional[Tuple[CorpusEntry, ...]] = None,
                 same_order_only: bool = False) -> Iterator[Tuple[CorpusEntry, CorpusEntry]]:
    """Every ordered pair of entries, or only those of equal order."""
    entries = entries if entries is not None else group_corpus()
    for first in entries:
        for second in entries:
            if not same_order_only or first.order == second.order:
                yield first, second
