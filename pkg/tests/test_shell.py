from itertools import permutations

import pytest

from cnlat.core import parse_mask, star_mask
from cnlat.fixtures import boolean_lattice, fix_a, fix_b, fix_c, fix_d, fix_e, partition_lattice
from cnlat.lattice import ChainComplex, build_lattice, order_complex
from cnlat.nbb import AtomView, independence_family_fast
from cnlat.shell import (ShellingError, admissible_atom_ordering, corollary_5_9_check, find_shelling,
                         is_recursive_atom_ordering, is_shelling, perfect_matchings, shelling_from_ordering,
                         theorem_6_1_check, theorem_6_2_check)
from cnlat.workbench import Symmetry, enumerate_cn


def A(n, *items):
    return parse_mask(list(items), n)


def test_fix_b_complex_shells_in_either_order():
    K = order_complex(fix_b())
    assert is_shelling(K, [0, 1]) and is_shelling(K, [1, 0])


def test_single_facet_is_a_shelling():
    assert is_shelling([frozenset({1, 2, 3})])


def test_disjoint_edges_are_not_shellable():
    facets = [frozenset({1, 2}), frozenset({3, 4})]
    d = is_shelling(facets)
    assert not d and d.witness[0] == 1
    assert find_shelling(ChainComplex((1, 2, 3, 4), tuple(facets))) is None


def test_non_pure_complex_rejected():
    with pytest.raises(ShellingError):
        is_shelling([frozenset({1, 2}), frozenset({3})])


def test_bad_order_of_a_shellable_complex():
    # path a-b-c-d: starting with the two end edges leaves them disjoint
    facets = [frozenset("ab"), frozenset("cd"), frozenset("bc")]
    assert not is_shelling(facets)
    assert is_shelling(facets, [0, 2, 1])


def test_recursive_atom_ordering_examples():
    assert is_recursive_atom_ordering(fix_b(), (A(2, "1", "2*"), A(2, "1*", "2")))
    assert is_recursive_atom_ordering(fix_a(), (A(2, "1"), A(2, "2"), A(2, "1*"), A(2, "2*")))
    B3 = boolean_lattice(3)
    assert all(is_recursive_atom_ordering(B3, o) for o in permutations(B3.atoms))


def test_star_adjacent_order_of_fix_a_fails_condition_two():
    d = is_recursive_atom_ordering(fix_a(), (A(2, "1"), A(2, "1*"), A(2, "2"), A(2, "2*")))
    assert not d and d.axiom == "2"


def test_ordering_must_list_atoms():
    with pytest.raises(ValueError):
        is_recursive_atom_ordering(fix_a(), (A(2, "1"),))


def test_recursive_ordering_invariant_under_symmetry():
    L = fix_a()
    sym = Symmetry(2)
    for order in permutations(L.atoms):
        verdict = bool(is_recursive_atom_ordering(L, order))
        for t in sym.maps:
            image = build_lattice([t[m] for m in L.elements], 2)
            assert bool(is_recursive_atom_ordering(image, [t[a] for a in order])) == verdict


def _assert_admissible_ordering(L, order):
    assert sorted(order) == sorted(L.atoms)
    d = L.rank
    view = AtomView(L, order)
    fam = independence_family_fast(view)
    prefix = (1 << (d - 1)) - 1
    assert prefix in fam
    u = 0
    for a in order[:d - 1]:
        u |= a
    from cnlat.core import is_admissible_mask
    assert is_admissible_mask(u, L.n)
    if d >= 3 or any(star_mask(a, L.n) not in L.atoms for a in L.atoms):
        assert all(star_mask(a, L.n) != b for a, b in zip(order, order[1:]))


def test_admissible_atom_ordering_examples():
    assert admissible_atom_ordering(fix_a()) == (A(2, "1"), A(2, "2"), A(2, "1*"), A(2, "2*"))
    assert sorted(admissible_atom_ordering(fix_b())) == sorted(fix_b().atoms)
    order = admissible_atom_ordering(fix_c())
    assert all(star_mask(a, 2) != b for a, b in zip(order, order[1:]))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_admissible_orderings_on_enumerated_lattices(n):
    for L in enumerate_cn(n):
        order = admissible_atom_ordering(L)
        _assert_admissible_ordering(L, order)
        assert is_recursive_atom_ordering(L, order)


def test_recursive_ordering_induces_shelling():
    for L in [fix_a(), fix_b(), fix_c(), fix_e(), boolean_lattice(3)] + list(enumerate_cn(2)):
        order = tuple(sorted(L.atoms)) if L.n is None else admissible_atom_ordering(L)
        if not is_recursive_atom_ordering(L, order):
            continue
        chains = shelling_from_ordering(L, order)
        assert sorted(map(sorted, chains)) == sorted(map(sorted, order_complex(L).facets))
        assert is_shelling(chains)
        proper = [c - {L.bottom, L.top} for c in chains]
        assert is_shelling(proper)


def test_perfect_matchings_count():
    assert len(list(perfect_matchings(range(4)))) == 3
    assert len(list(perfect_matchings(range(8)))) == 105


def test_theorem_6_1_examples():
    assert theorem_6_1_check(fix_a())
    assert theorem_6_1_check(fix_b())
    assert not theorem_6_1_check(boolean_lattice(4))
    assert not theorem_6_1_check(fix_d())   # seven atoms


def test_theorem_6_2_examples():
    assert theorem_6_2_check(fix_a())
    assert theorem_6_2_check(fix_b())


def test_theorem_6_2_boolean_counterexample():
    # every atom order of a geometric lattice is recursive, so the ordering
    # condition holds for B_4 under any pairing even though B_4 is not C_n
    ok, pairing = theorem_6_2_check(boolean_lattice(4), return_pairing=True)
    assert ok and pairing is not None
    assert not theorem_6_1_check(boolean_lattice(4))


def test_corollary_examples():
    L = fix_a()
    view = AtomView(L)
    one, two = view.atoms.index(A(2, "1")), view.atoms.index(A(2, "2"))
    assert corollary_5_9_check(L, (1 << one) | (1 << two), one)
    assert corollary_5_9_check(L, 1 << one, one)
    assert corollary_5_9_check(fix_e())
    assert corollary_5_9_check(partition_lattice(4))


def test_corollary_fails_on_fix_a_triple():
    L = fix_a()
    view = AtomView(L)
    one, two, one_s = (view.atoms.index(A(2, x)) for x in ("1", "2", "1*"))
    I = (1 << one) | (1 << two) | (1 << one_s)
    assert view.rank[I] == 3
    d = corollary_5_9_check(L, I, one)
    assert not d and d.axiom == "atoms"
