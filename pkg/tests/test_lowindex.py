import pytest
from hypothesis import given, strategies as st

from bplarge.lowindex import (
    abelianization,
    conjugates,
    hall_counts,
    low_index_subgroups,
    refute_largeness_at_index,
    renumber,
    smith_normal_form,
    subgroup_counts,
)
from bplarge.presentation import parse
from oracles import determinantal_divisors_snf, transitive_subgroup_counts

F2 = parse("generators: a b")
KLEIN = parse("generators: a b\nrelator: a^2\nrelator: b^2\nrelator: a b a b")
Z2 = parse("generators: a b\nrelator: a b a^-1 b^-1")
S3 = parse("generators: a b\nrelator: a^2\nrelator: b^2\nrelator: a b a b a b")


def test_hall_recursion_values():
    assert hall_counts(2, 5) == [1, 3, 13, 71, 461]
    assert hall_counts(3, 4) == [1, 7, 97, 2143]
    assert hall_counts(1, 4) == [1, 1, 1, 1]


@pytest.mark.parametrize("rank,N", [(1, 4), (2, 4), (3, 3)])
def test_free_counts_match_oracles(rank, N):
    p = parse("generators: " + " ".join("abc"[:rank]))
    counts = subgroup_counts(p, N)
    assert [counts[i] for i in range(1, N + 1)] == hall_counts(rank, N)
    assert [counts[i] for i in range(1, N + 1)] == transitive_subgroup_counts(rank, N)


@pytest.mark.parametrize("p", [KLEIN, Z2, S3], ids=["klein", "z2", "s3"])
def test_finite_quotient_counts_match_brute_force(p):
    counts = subgroup_counts(p, 4)
    assert [counts[i] for i in range(1, 5)] == transitive_subgroup_counts(2, 4, p.relators)


def test_s3_classes():
    # index 1, 2, 3 (one class of three conjugates) and 6 (trivial subgroup)
    sizes = [t.size for t in low_index_subgroups(S3, 6)]
    assert sizes == [1, 2, 3, 6]


def test_tables_are_valid_and_canonical():
    tables = low_index_subgroups(F2, 4)
    assert len(tables) == 37
    keys = set()
    for t in tables:
        assert t.is_complete() and t.is_consistent() and t.is_transitive()
        conj = conjugates(t)
        assert t.key() == min(conj)
        assert keys.isdisjoint(conj)
        keys |= conj
    assert tables == sorted(tables, key=lambda t: (t.size, t.key()))


def test_relators_close():
    for t in low_index_subgroups(KLEIN, 4):
        assert t.closes(KLEIN.relators)


def test_renumber_identity():
    for t in low_index_subgroups(F2, 3):
        assert renumber(t, 0) == t


def test_bad_bound():
    with pytest.raises(ValueError):
        low_index_subgroups(F2, 0)


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=1, max_size=3))
def test_snf_matches_determinantal_divisors(M):
    assert smith_normal_form(M).diagonal == determinantal_divisors_snf(M)


def test_snf_examples():
    assert smith_normal_form([[2, 4], [6, 8]]).diagonal == (2, 4)
    assert smith_normal_form([[2, 0], [0, 3]]).diagonal == (1, 6)
    assert smith_normal_form([[0, 0]]).rank == 0


def test_abelianization():
    assert abelianization(KLEIN) == (0, [2, 2])
    assert abelianization(Z2) == (2, [])
    assert abelianization(F2) == (2, [])


def test_refuter_verdicts():
    r = refute_largeness_at_index(KLEIN, 4)
    assert r.verdict == "Refuted" and r.refuted and not r.witnesses()
    z = refute_largeness_at_index(Z2, 2)
    assert z.verdict == "Inconclusive"
    assert all(w.free_rank == 2 for w in z.witnesses())
    d = z.to_json()
    assert d["kind"] == "refutation" and d["N"] == 2
    assert d["rank_at_least_2"] and len(d["classes"]) == len(z.records)


def test_parallel_matches_sequential():
    assert low_index_subgroups(F2, 3, jobs=2) == low_index_subgroups(F2, 3)
