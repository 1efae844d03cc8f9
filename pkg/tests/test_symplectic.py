import pytest
from hypothesis import given, settings, strategies as st

from cnlat.core import admissible_masks, admissible_orders, full_mask, parse_mask, popcount
from cnlat.fixtures import fix_a, fix_b, fix_c, full_cn_lattice
from cnlat.matroid import downward_closure, uniform_matroid
from cnlat.symplectic import (BasisFamily, FullLatticeError, GroundView, SymplecticInputError, admissible_independents,
                              chow_check, ground_independents, ground_independents_oracle, is_loop_free,
                              is_ranked_symplectic, is_simple, is_symplectic, j_family, lattice_to_symplectic,
                              nonadmissible_extension, parse_basis_family, parse_independence_family,
                              remark_4_11_check, simple_symplectic_rank, symplectic_rank, symplectic_to_lattice)
from cnlat.workbench import enumerate_cn


def B(n, *sets):
    return BasisFamily(n, tuple(parse_mask(list(s), n) for s in sets))


def gale_max_oracle(bases, n):
    """Every admissible order has a basis that dominates all others."""
    for w in admissible_orders(n):
        pos = w.positions()
        key = lambda m: sorted(pos[b] for b in range(2 * n) if m >> b & 1)
        if not any(all(all(x >= y for x, y in zip(key(a), key(c))) for c in bases) for a in bases):
            return False
    return True


def test_is_symplectic_examples():
    assert is_symplectic(B(2, ["1", "2"], ["1*", "2*"]))
    assert not is_symplectic(BasisFamily(2, (parse_mask(["1", "2"], 2), parse_mask(["1", "1*"], 2))))
    assert not is_symplectic(BasisFamily(2, (parse_mask(["1"], 2), parse_mask(["1", "2"], 2))))


@settings(max_examples=40)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n))).flatmap(
    lambda nk: st.tuples(st.just(nk[0]), st.sets(st.sampled_from(
        [m for m in admissible_masks(nk[0]) if popcount(m) == nk[1]]), min_size=1))))
def test_is_symplectic_matches_gale_oracle(data):
    n, bases = data
    assert bool(is_symplectic(BasisFamily(n, tuple(bases)))) == gale_max_oracle(sorted(bases), n)


def test_loop_free_examples():
    assert is_loop_free(B(2, ["1", "2"], ["1*", "2*"]))
    assert not is_loop_free(B(2, ["1", "2"], ["1*", "2"]))
    from cnlat.core import transversal_masks
    assert is_loop_free(BasisFamily(3, tuple(transversal_masks(3))))


def test_chow_examples():
    assert chow_check(B(2, ["1", "2"], ["1*", "2*"]).independents())
    small = j_family(2, [m for m in admissible_masks(2) if popcount(m) <= 2])
    assert chow_check(small)
    # {1,2} and {1*}: {1*} can reach neither {1*,2} nor {1*,1}
    fam = j_family(2, downward_closure([parse_mask(["1", "2"], 2), parse_mask(["1*"], 2)]))
    d = chow_check(fam)
    assert not d and d.axiom is not None
    with pytest.raises(SymplecticInputError):
        chow_check(j_family(2, [0, 1, 2, 3, parse_mask(["1*", "2"], 2)]))
    with pytest.raises(SymplecticInputError):
        chow_check(j_family(2, [0, 1, 4, 5]))


def test_ground_independents_fix_a():
    fam = ground_independents(fix_a())
    J = full_mask(2)
    assert J not in fam
    expected = set(admissible_masks(2))
    for a in range(4):
        pair = (1 << a) | (1 << ((a + 2) % 4))
        expected.add(pair)
        for b in range(4):
            if not pair >> b & 1:
                expected.add(pair | 1 << b)
    assert fam.members == expected


def test_ground_independents_fix_b():
    adm = admissible_independents(fix_b())
    expected = {0, 1, 2, 4, 8, parse_mask(["1", "2"], 2), parse_mask(["1*", "2*"], 2)}
    assert adm.members == expected
    assert parse_mask(["1", "2*"], 2) not in ground_independents(fix_b())


def test_admissible_independents_fix_a_and_c():
    assert admissible_independents(fix_a()).members == set(admissible_masks(2))
    c = admissible_independents(fix_c()).members
    assert c == {m for m in admissible_masks(2)}


def test_literal_disjointness_reading_differs_on_fix_b():
    lit = ground_independents(fix_b(), reading="literal")
    assert lit != ground_independents(fix_b())


def cn_corpus():
    out = [fix_a(), fix_b(), fix_c()]
    for n in (1, 2, 3):
        out.extend(enumerate_cn(n))
    return out


@pytest.mark.parametrize("L", cn_corpus(), ids=lambda L: repr(L)[:60])
def test_fast_oracle_and_closed_form_agree(L):
    fast = ground_independents(L)
    if L.n <= 2 or len(L.atoms) <= 4:
        assert fast == ground_independents_oracle(L)
    ext = nonadmissible_extension(admissible_independents(L), L.rank, GroundView(L).atom_of)
    assert ext == fast


def test_nonadmissible_extension_rank_one_adds_nothing():
    fam = j_family(2, [0, 1, 2, 4, 8])
    atom_of = [0, 1, 2, 3]
    assert nonadmissible_extension(fam, 1, atom_of).members == fam.members


def test_lattice_to_symplectic_examples():
    assert lattice_to_symplectic(fix_b()) == B(2, ["1", "2"], ["1*", "2*"])
    from cnlat.core import transversal_masks
    assert lattice_to_symplectic(fix_c()) == BasisFamily(2, tuple(transversal_masks(2)))
    with pytest.raises(FullLatticeError):
        lattice_to_symplectic(fix_a())


def test_symplectic_rank_examples():
    rc = symplectic_rank(admissible_independents(fix_c()), 2)
    assert rc[parse_mask(["1", "1*"], 2)] == 2 and rc[1] == 1 and rc[full_mask(2)] == 2
    assert rc[0] == 0
    rb = symplectic_rank(admissible_independents(fix_b()), 2)
    assert rb[parse_mask(["1", "2*"], 2)] == 1
    assert rb[parse_mask(["1", "2"], 2)] == 2
    with pytest.raises(SymplecticInputError):
        symplectic_rank(admissible_independents(fix_c()), 1)


def test_unamended_rank_gives_singletons_rank_two():
    r = symplectic_rank(admissible_independents(fix_c()), 2, amended=False)
    assert r[1] == 2
    assert not is_ranked_symplectic(admissible_independents(fix_c()), 2, amended=False)


def test_ranked_symplectic_examples():
    assert is_ranked_symplectic(admissible_independents(fix_b()), 2)
    assert is_ranked_symplectic(admissible_independents(fix_c()), 2)
    fam = B(3, ["1", "2", "3"], ["1*", "2*", "3*"]).independents()
    d = is_ranked_symplectic(fam, 3)
    assert not d and d.axiom == "submodularity"


def test_symplectic_to_lattice_round_trips():
    assert symplectic_to_lattice(admissible_independents(fix_b()), 2) == fix_b()
    assert symplectic_to_lattice(admissible_independents(fix_c()), 2) == fix_c()
    one = symplectic_to_lattice(B(1, ["1"], ["1*"]).independents())
    assert set(one.elements) == {0, full_mask(1)}


def test_full_lattice_has_same_matroid_as_its_truncation():
    L = full_cn_lattice(2)
    assert admissible_independents(L).maximal() == admissible_independents(fix_c()).maximal()


def test_simple_rank_agrees_on_simple_families():
    fam = admissible_independents(fix_c())
    assert is_simple(fam)
    assert simple_symplectic_rank(fam, 2) == symplectic_rank(fam, 2)


def test_remark_4_11_examples():
    labels = ["1", "2", "1*", "2*"]
    d, bases = remark_4_11_check(uniform_matroid(labels, 2), 2)
    assert d
    from cnlat.core import transversal_masks
    assert set(bases.bases) == set(transversal_masks(2))
    from cnlat.workbench import remark_4_10_corpus
    corpus = remark_4_10_corpus(3)
    assert len(corpus) == 27
    for M in corpus:
        d, bases = remark_4_11_check(M, 3)
        assert not d and bases is None


def test_parsers():
    fam = parse_basis_family({"n": 2, "bases": [["1", "2"], ["1*", "2*"]]})
    assert fam.rank == 2
    with pytest.raises(SymplecticInputError):
        parse_basis_family({"n": 2, "bases": [["1", "2"], ["2", "1"]]})
    ind = parse_independence_family({"n": 2, "independents": [["1", "2"]]})
    assert ind.members == {0, 1, 2, 3}
