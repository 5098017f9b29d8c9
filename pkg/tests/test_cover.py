import random

import pytest
from hypothesis import given, strategies as st

from bplarge.cover import (
    CosetTable,
    IncompleteTable,
    NotGoodPresentation,
    col,
    cover,
    cyclic_table,
    expected_counts,
    lift,
    reidemeister_schreier,
    relators_lift_correctly,
    schreier_transversal,
    subgroup_to_json,
    verify_subgroup,
    zk_coset_table,
)
from bplarge.goodpres import GoodPresentation, make_good
from bplarge.lowindex import abelianization
from bplarge.nielsen import Automorphism
from bplarge.presentation import parse
from bplarge.word import Word, exponent_vector, format_word
from oracles import random_bp_presentation

BS = parse("generators: t x y\nrelator: t x t^-1 x^-2")


def test_worked_example_k2():
    g = make_good(BS)
    assert g.t_name == "t"
    s = cover(g, 2)
    assert s.generator_labels == ("tau", "y_1_0", "y_1_1", "y_2_0", "y_2_1")
    assert [format_word(r, s.generator_labels) for r in s.relators] == [
        "y_1_1 y_1_0^-2",
        "tau y_1_0 tau^-1 y_1_1^-2",
    ]
    names = BS.generator_names
    assert format_word(s.inclusion["tau"], names) == "t^2"
    assert format_word(s.inclusion["y_1_0"], names) == "x"
    assert format_word(s.inclusion["y_1_1"], names) == "t x t^-1"
    assert s.deficiency == 3
    assert verify_subgroup(s, g, 2) and relators_lift_correctly(s, g.base)


def test_k1_is_whole_group():
    g = make_good(BS)
    s = cover(g, 1)
    assert s.rank == 3 and len(s.relators) == 1
    assert s.transversal == (Word(),)


def test_table_closes_only_for_good():
    bad = GoodPresentation(parse("generators: t x y\nrelator: t x"), 0, Automorphism.identity(3), (), ())
    assert zk_coset_table(bad, 1).size == 1
    with pytest.raises(NotGoodPresentation):
        zk_coset_table(bad, 2)


def test_cyclic_table_shape():
    t = cyclic_table(3, 1, 4)
    assert t.is_complete() and t.is_consistent() and t.is_transitive()
    assert [t.act(c, 2) for c in range(4)] == [1, 2, 3, 0]
    assert [t.act(c, -2) for c in range(4)] == [3, 0, 1, 2]
    assert all(t.act(c, 1) == c for c in range(4))
    assert schreier_transversal(t, [1, 0, 2]) == [Word.gen(1, j) for j in range(4)]


def test_col_layout():
    assert [col(c) for c in (1, -1, 2, -2)] == [0, 1, 2, 3]


def test_incomplete_table_rejected():
    with pytest.raises(IncompleteTable):
        reidemeister_schreier(BS, CosetTable(3))


@given(st.integers(0, 2**32), st.sampled_from([1, 2, 3, 5]))
def test_cover_bookkeeping(seed, k):
    p = random_bp_presentation(random.Random(seed), max_rank=5, max_len=10)
    g = make_good(p)
    s = cover(g, k)
    n, m = p.rank, len(p.relators)
    assert (s.rank, len(s.relators)) == expected_counts(n, m, k)
    assert s.deficiency == (n - 1 - m) * k + 1 >= k + 1
    assert verify_subgroup(s, g, k)
    assert relators_lift_correctly(s, g.base)
    table = zk_coset_table(g, k)
    for w in s.inclusion.values():
        assert table.trace(0, w) == 0
        assert exponent_vector(w, n)[g.t_index] % k == 0


def test_free_cover_abelianization_is_nielsen_schreier_rank():
    g = make_good(parse("generators: a b c"))
    for k in (1, 2, 4):
        s = cover(g, k)
        assert abelianization(s) == (2 * k + 1, [])


def test_lift_round_trip_on_generators():
    g = make_good(BS)
    s = cover(g, 3)
    for i, lab in enumerate(s.generator_labels):
        assert lift(s, Word.gen(i)) == s.inclusion[lab]


def test_json_shape():
    s = cover(make_good(BS), 2)
    d = subgroup_to_json(s, BS.generator_names)
    assert d["index"] == 2 and d["generators"][0] == "tau"
    assert d["inclusion"]["tau"] == "t^2"


def test_general_table_from_permutations():
    # index-2 subgroup of <a, b> given by a -> (0 1), b -> id
    p = parse("generators: a b")
    t = CosetTable.from_permutations([[1, 0], [0, 1]])
    s = reidemeister_schreier(p, t)
    assert s.rank == 3 and s.relators == ()
    assert set(s.generator_labels) == {"y_0_1", "y_1_0", "y_1_1"}
