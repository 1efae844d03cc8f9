from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from cnlat.core import parse_mask, popcount
from cnlat.fixtures import (FIX_E_NEW_ELEMENT, boolean_lattice, fix_a, fix_b, fix_c,
                            fix_d, fix_e, partition_lattice)
from cnlat.lattice import LatticeInputError, build_lattice, is_geometric_lattice
from cnlat.matroid import matroid_from_family
from cnlat.nbb import (AtomView, independence_family_atoms, independence_family_fast,
                       independence_family_oracle, induce_geometric, is_bounded_below,
                       is_geometric_by_independents, is_nbb, new_elements)


def atom_index(view, n, *items):
    return view.atoms.index(parse_mask(list(items), n))


def fix_a_view():
    view = AtomView(fix_a())
    one, two, one_s, two_s = (atom_index(view, 2, x) for x in ("1", "2", "1*", "2*"))
    return view, one, two, one_s, two_s


def test_bounded_below_examples():
    view, one, two, one_s, two_s = fix_a_view()
    D = (1 << two) | (1 << two_s)
    assert is_bounded_below(view, D, [one, two, two_s, one_s])
    assert not is_bounded_below(view, 1 << one, [one, two, two_s, one_s])
    full = (1 << view.t) - 1
    for order in permutations(range(view.t)):
        assert not is_bounded_below(view, full, order)


def test_nbb_examples():
    view, one, two, one_s, two_s = fix_a_view()
    B = (1 << two) | (1 << two_s)
    assert is_nbb(view, B, [two, two_s, one, one_s])
    assert not is_nbb(view, B, [one, two, two_s, one_s])
    assert all(is_nbb(view, 0, o) for o in permutations(range(view.t)))


def test_fix_a_family_is_u34():
    fam = independence_family_atoms(fix_a(), method="oracle")
    assert fam.members == frozenset(m for m in range(16) if popcount(m) <= 3)


@pytest.mark.parametrize("L", [fix_a(), fix_b(), fix_c(), fix_d(), fix_e(), boolean_lattice(3),
                               partition_lattice(4)], ids=["A", "B", "C", "D", "E", "B3", "Pi4"])
def test_fast_equals_oracle_on_fixtures(L):
    view = AtomView(L)
    assert independence_family_fast(view) == independence_family_oracle(view)


def test_pairs_are_always_independent():
    for L in (fix_a(), fix_d(), fix_e()):
        fam = independence_family_atoms(L)
        t = len(L.atoms)
        assert all(sum(1 << i for i in c) in fam for k in range(3) for c in combinations(range(t), k))


def test_fix_d_family_is_the_fano_plane():
    L = fix_d()
    fam = independence_family_atoms(L)
    M = matroid_from_family(fam)
    assert M.rank() == 3 and len(M.bases) == 28
    lines = [X for X in M.flats if M.rank(X) == 2]
    assert len(lines) == 7 and all(popcount(X) == 3 for X in lines)


def test_fix_e_pair_is_independent_of_rank_two():
    L = fix_e()
    view = AtomView(L)
    pair = (1 << L.labels.index("124/3")) | (1 << L.labels.index("13/24"))
    view_pair = sum(1 << view.atoms.index(1 << b) for b in range(7) if pair >> b & 1)
    assert view_pair in independence_family_fast(view)
    assert view.rank[view_pair] == 2


def test_induce_geometric_fix_d_adds_one_flat():
    D = fix_d()
    P = induce_geometric(D)
    added = new_elements(D, P)
    assert len(added) == 1
    x = added[0]
    assert sorted(P.fmt(y) for y in P.lower_covers[x]) == sorted(FIX_E_NEW_ELEMENT)
    assert P.upper_covers[x] == (P.top,)
    assert is_geometric_lattice(P) and not is_geometric_lattice(D)
    assert set(P.elements) == set(fix_e().elements)


@pytest.mark.parametrize("L", [boolean_lattice(3), boolean_lattice(4), partition_lattice(4), fix_e()],
                         ids=["B3", "B4", "Pi4", "E"])
def test_induce_geometric_is_identity_on_geometric_lattices(L):
    assert set(induce_geometric(L).elements) == set(L.elements)


def test_induce_geometric_fix_a_is_u34_flats():
    P = induce_geometric(fix_a())
    sizes = sorted(popcount(x) for x in P.elements)
    assert sizes == [0, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 4]
    from cnlat.core import is_admissible_mask, full_mask
    assert {x for x in P.elements if is_admissible_mask(x, 2)} | {full_mask(2)} == set(fix_a().elements)


def test_geometric_by_independents():
    assert is_geometric_by_independents(fix_e())
    d = is_geometric_by_independents(fix_d())
    assert not d
    view = AtomView(fix_d())
    (I,) = d.witness
    assert popcount(I) == 2
    assert {view.labels[b] for b in range(view.t) if I >> b & 1} <= set(FIX_E_NEW_ELEMENT)
    assert is_geometric_by_independents(fix_b()) and is_geometric_by_independents(fix_c())


def test_non_atomistic_rejected():
    L = build_lattice([0, 1, 3, 7], labels="abc")
    with pytest.raises(LatticeInputError):
        AtomView(L)


def random_atomistic(sets):
    """Intersection-closed family on 6 points, made atomistic by taking the
    atoms to be singletons present and keeping elements that are unions of
    atoms below them."""
    top = 63
    fam = set(sets) | {0, top} | {1 << i for i in range(6)}
    changed = True
    while changed:
        changed = False
        for a, b in combinations(list(fam), 2):
            if a & b not in fam:
                fam.add(a & b)
                changed = True
    return build_lattice(sorted(fam), labels=[str(i) for i in range(6)])


@settings(max_examples=25)
@given(st.lists(st.integers(0, 63), max_size=6))
def test_fast_equals_oracle_random(sets):
    L = random_atomistic(sets)
    if not (L.is_graded and L.is_atomistic):
        return
    view = AtomView(L)
    fast = independence_family_fast(view)
    assert fast == independence_family_oracle(view)
    assert matroid_from_family(fast).rank() == L.rank
