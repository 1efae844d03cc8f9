import pytest
from hypothesis import given, strategies as st

from cnlat.core import popcount
from cnlat.matroid import (IndependenceFamily, MatroidAxiomError, check_independence_axioms, check_rank_axioms,
                           downward_closure, matroid_from_bases, matroid_from_family, parse_family,
                           uniform_matroid)


def family(labels, sets):
    return IndependenceFamily(tuple(labels), frozenset(sets))


def test_free_matroid_rank_is_size():
    M = uniform_matroid("abc", 3)
    assert all(M.rank(m) == popcount(m) for m in range(8))


def test_u12():
    M = matroid_from_family(family("ab", {0, 1, 2}))
    assert M.rank() == 1 and M.bases == [1, 2]


def test_axiom_failures_carry_witnesses():
    with pytest.raises(MatroidAxiomError) as e:
        matroid_from_family(family("ab", {1}))
    assert e.value.axiom == "I1"
    with pytest.raises(MatroidAxiomError) as e:
        matroid_from_family(family("ab", {0, 3}))
    assert e.value.axiom == "I2"
    # {a,b} and {c}: c cannot be augmented from {a,b}
    with pytest.raises(MatroidAxiomError) as e:
        matroid_from_family(family("abc", downward_closure([0b011, 0b100])))
    assert e.value.axiom == "I3"


@given(st.integers(1, 5).flatmap(lambda m: st.tuples(st.just(m), st.integers(0, m))))
def test_uniform_rank_and_flats(mr):
    m, r = mr
    M = uniform_matroid([str(i) for i in range(m)], r)
    for X in range(1 << m):
        assert M.rank(X) == min(popcount(X), r)
    assert check_rank_axioms(M.rank_table, m) is None
    assert all(popcount(F) < r or F == (1 << m) - 1 for F in M.flats)


bases_families = st.integers(2, 5).flatmap(
    lambda m: st.tuples(st.just(m), st.lists(st.integers(0, (1 << m) - 1), min_size=1, max_size=6)))


@given(bases_families)
def test_rank_table_matches_brute_force(data):
    m, sets = data
    fam = family([str(i) for i in range(m)], downward_closure(sets))
    M = matroid_from_family(fam) if check_independence_axioms(fam) is None else None
    if M is None:
        return
    for X in range(1 << m):
        assert M.rank(X) == max(popcount(I) for I in fam.members if I & X == I)
    assert check_rank_axioms(M.rank_table, m) is None


def test_rank_axiom_failures():
    assert check_rank_axioms([1, 1], 1)[0] == "normalization"
    assert check_rank_axioms([0, 2], 1)[0] == "unit-increase"
    # two loops whose union has rank one
    assert check_rank_axioms([0, 0, 0, 1], 2) == ("submodularity", (1, 2))


def test_bases_and_parse():
    M = matroid_from_bases("abcd", [0b0011, 0b0101, 0b0110])
    assert M.rank() == 2
    labels, masks, key = parse_family(M.to_json("bases"))
    assert key == "bases" and sorted(masks) == sorted(M.bases)
    labels, masks, key = parse_family(M.to_json())
    assert key == "independents" and set(masks) == set(M.family.members)
