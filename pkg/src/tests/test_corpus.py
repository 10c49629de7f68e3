from collections import Counter

import numpy as np
import pytest

from src.crud.corpus import export_corpus, load_corpus
from src.services.corpus import (
    abelian_corpus,
    abelian_decompositions,
    corpus_entry,
    corpus_pairs,
    group_corpus,
)
from src.services.group_core import element_orders, first_isomorphism
from src.utils.errors import MalformedInput

# groups of order 1..16 up to isomorphism
SMALL_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2,
                11: 1, 12: 5, 13: 1, 14: 2, 15: 1, 16: 14}


def test_small_group_counts():
    entries = group_corpus(include_extras=False)
    assert len(entries) == 42
    assert Counter(e.order for e in entries) == Counter(SMALL_COUNTS)


def test_extras():
    entries = group_corpus()
    assert [e.name for e in entries[-3:]] == ["S4", "SL(2,3)", "Z2xA5"]
    assert [e.order for e in entries[-3:]] == [24, 24, 120]
    assert "semisimple-top" in corpus_entry("Z2xA5").tags
    assert "solvable" in corpus_entry("SL(2,3)").tags
    assert "abelian" in corpus_entry("Z2xZ2xZ4").tags


def test_names_are_unique():
    names = [e.name for e in group_corpus()]
    assert len(names) == len(set(names))


def test_unknown_name():
    with pytest.raises(MalformedInput):
        corpus_entry("Z1000")


@pytest.mark.slow
def test_equal_order_entries_are_not_isomorphic():
    entries = group_corpus(include_extras=False)
    for i, first in enumerate(entries):
        for second in entries[i + 1:]:
            if first.order != second.order:
                continue
            same_profile = np.array_equal(np.sort(element_orders(first.group)), np.sort(element_orders(second.group)))
            if same_profile:
                assert first_isomorphism(first.group, second.group) is None, (first.name, second.name)


@pytest.mark.parametrize("order, count", [(1, 1), (8, 3), (16, 5), (72, 6), (30, 1)])
def test_abelian_decompositions(order, count):
    decomps = list(abelian_decompositions(order))
    assert len(decomps) == count
    assert all(d.order == order for d in decomps)


def test_abelian_corpus():
    entries = abelian_corpus(8)
    assert len(entries) == 11
    assert entries[0].name == "Z1"
    assert all(e.group.is_abelian for e in entries)


def test_abelian_corpus_of_order_one():
    entries = abelian_corpus(1)
    assert [e.name for e in entries] == ["Z1"]
    assert entries[0].group.order == 1
    assert entries[0].group.table.tolist() == [[0]]


def test_corpus_pairs():
    entries = group_corpus(include_extras=False)[:8]
    assert len(list(corpus_pairs(entries))) == 8 * 8
    pairs = list(corpus_pairs(entries, same_order_only=True))
    assert all(a.order == b.order for a, b in pairs)
    # orders 1, 2, 3, 5 once each, two groups of order 4 and two of order 6
    assert len(pairs) == 4 + 4 + 4


def test_export_and_load(tmp_path):
    entries = group_corpus(include_extras=False)[:6]
    paths = export_corpus(entries, tmp_path)
    assert len(paths) == 6
    loaded = load_corpus(tmp_path)
    assert sorted(e.name for e in loaded) == sorted(e.name for e in entries)
    by_name = {e.name: e for e in loaded}
    for e in entries:
        assert np.array_equal(by_name[e.name].group.table, e.group.table)
