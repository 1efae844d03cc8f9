"""Exhaustive small-n enumeration up to signed-permutation symmetry, the
test corpora, and the property suite that runs every invariant over them."""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Iterable, Iterator

from .core import admissible_masks, bits, element_names, full_mask, is_admissible_mask, popcount, star_mask, transversal_masks
from .lattice import SetLattice, build_lattice, is_cn_lattice, is_full_cn_lattice, is_geometric_lattice, order_complex
from .matroid import IndependenceFamily, Matroid, check_independence_axioms, downward_closure, uniform_matroid
from .nbb import AtomView, independence_family_fast, independence_family_oracle, induce_geometric
from .shell import (admissible_atom_ordering, find_shelling, is_recursive_atom_ordering, is_shelling,
                    perfect_matchings, shelling_from_ordering, theorem_6_1_check, theorem_6_2_check)
from .symplectic import (BasisFamily, GroundView, admissible_independents, chow_check,
                         ground_independents, ground_independents_oracle, is_symplectic,
                         lattice_to_symplectic, nonadmissible_extension, symplectic_to_lattice)


# -- hyperoctahedral symmetry ---------------------------------------------------

@dataclass(frozen=True)
class SignedPermutation:
    """i ↦ perm[i] (0-based), starred when flip[i]; commutes with star."""
    perm: tuple[int, ...]
    flip: tuple[bool, ...]

    @property
    def n(self) -> int:
        return len(self.perm)

    def bit_map(self) -> list[int]:
        n = self.n
        out = [0] * (2 * n)
        for i, (p, f) in enumerate(zip(self.perm, self.flip)):
            out[i] = p + n if f else p
            out[i + n] = p if f else p + n
        return out

    def apply(self, mask: int) -> int:
        table = self.bit_map()
        return sum(1 << table[b] for b in bits(mask))


def signed_permutations(n: int) -> Iterator[SignedPermutation]:
    for perm in permutations(range(n)):
        for flip in product((False, True), repeat=n):
            yield SignedPermutation(perm, flip)


class Symmetry:
    """Tabulated action of the 2^n n! signed permutations on masks of J."""

    def __init__(self, n: int):
        self.n = n
        self.maps = []
        for g in signed_permutations(n):
            table = g.bit_map()
            self.maps.append([sum(1 << table[b] for b in bits(m)) for m in range(1 << (2 * n))])

    def canonical(self, masks: Iterable[int]) -> tuple[int, ...]:
        masks = list(masks)
        return min(tuple(sorted(t[m] for m in masks)) for t in self.maps)

    def orbit(self, masks: Iterable[int]) -> set[tuple[int, ...]]:
        masks = list(masks)
        return {tuple(sorted(t[m] for m in masks)) for t in self.maps}


# -- enumeration of C_n lattices -----------------------------------------------

@dataclass
class Enumeration:
    lattices: list[SetLattice] = field(default_factory=list)
    truncated: bool = False

    def __iter__(self):
        return iter(self.lattices)

    def __len__(self):
        return len(self.lattices)


def _cover_union_ok(A: int, chosen: list[int], top: int, n: int) -> bool:
    """Cover axiom at A, given every set larger than A is already decided."""
    above = [B for B in chosen if B != A and B & A == A]
    if not above:
        return True     # covered by J: exempt
    covers = [B for B in above if not any(C != B and C & B == C for C in above)]
    union = 0
    for B in covers:
        union |= B
    return union == top & ~star_mask(A, n)


def iter_cn(n: int, budget: float | None = None) -> Iterator[SetLattice | None]:
    """Depth-first search over admissible sets by decreasing size.  Including
    a set forces its intersections with chosen sets; the cover axiom is
    checked as soon as a set is included, since all its supersets are decided.
    Yields canonical representatives; a final None marks truncation."""
    top = full_mask(n)
    candidates = sorted((m for m in admissible_masks(n) if m), key=lambda m: (-popcount(m), m))
    sym = Symmetry(n)
    seen = set()
    deadline = None if budget is None else time.monotonic() + budget
    out_of_time = False

    def dfs(idx, chosen, required):
        nonlocal out_of_time
        if deadline is not None and time.monotonic() > deadline:
            out_of_time = True
            return
        if idx == len(candidates):
            family = [0] + chosen + [top]
            key = sym.canonical(family)
            if key in seen:
                return
            L = build_lattice(key, n)
            if is_cn_lattice(L):
                seen.add(key)
                yield L
            return
        A = candidates[idx]
        forced = {A & B for B in chosen} - {0}
        if _cover_union_ok(A, chosen, top, n):
            yield from dfs(idx + 1, chosen + [A], required | forced)
        if A not in required:
            yield from dfs(idx + 1, chosen, required)

    yield from dfs(0, [], frozenset())
    if out_of_time:
        yield None


def enumerate_cn(n: int, budget: float | None = None) -> Enumeration:
    if n not in (1, 2, 3):
        raise ValueError("enumeration supports n in {1, 2, 3}")
    result = Enumeration()
    for L in iter_cn(n, budget):
        if L is None:
            result.truncated = True
        else:
            result.lattices.append(L)
    return result


def enumerate_symplectic(n: int, k: int) -> list[BasisFamily]:
    """Symplectic matroids of rank k on J up to symmetry: nonempty families
    of admissible k-sets passing the Gale-maximum test."""
    if not (1 <= n <= 3 and 0 <= k <= n):
        raise ValueError("need n <= 3 and k <= n")
    pool = [m for m in admissible_masks(n) if popcount(m) == k]
    sym = Symmetry(n)
    seen, out = set(), []
    for size in range(1, len(pool) + 1):
        for fam in combinations(pool, size):
            key = sym.canonical(fam)
            if key in seen:
                continue
            seen.add(key)
            B = BasisFamily(n, key)
            if is_symplectic(B):
                out.append(B)
    return out


# -- corpora ---------------------------------------------------------------------

def admissible_family_lattices(n: int) -> list[SetLattice]:
    """Bounded atomistic graded lattices given by intersection-closed
    families of admissible sets plus ∅ and J, up to symmetry."""
    top = full_mask(n)
    pool = [m for m in admissible_masks(n) if m]
    sym = Symmetry(n)
    seen, out = set(), []
    for size in range(len(pool) + 1):
        for fam in combinations(pool, size):
            family = set(fam) | {0, top}
            if any(a & b not in family for a, b in combinations(family, 2)):
                continue
            key = sym.canonical(family)
            if key in seen:
                continue
            seen.add(key)
            L = build_lattice(key, n)
            if L.is_lattice and L.is_graded and L.is_atomistic:
                out.append(L)
    return out


def atom_relabel(L: SetLattice, pairing) -> SetLattice:
    """Re-encode L on J_k, k = #pairs, each element becoming the set of atoms
    below it; pair (p, q) sends p to j and q to j*."""
    k = len(pairing)
    target = {}
    for j, (p, q) in enumerate(pairing):
        target[p] = j
        target[q] = j + k
    atoms = L.atoms
    masks = []
    for x in L.elements:
        masks.append(sum(1 << target[i] for i, a in enumerate(atoms) if a & x == a))
    return build_lattice(masks, k)


def is_cn_up_to_relabeling(L: SetLattice, *, as_given: bool = False) -> bool:
    """L satisfies the C_n axioms after re-encoding on its atoms under some
    star pairing (or, with ``as_given``, already on its own ground set)."""
    if as_given and L.n is not None and is_cn_lattice(L):
        return True
    t = len(L.atoms)
    if t % 2 or t == 0:
        return False
    return any(is_cn_lattice(atom_relabel(L, p)) for p in perfect_matchings(range(t)))


def transversal_basis_matroids(n: int = 3) -> list[Matroid]:
    """Every ordinary matroid on J whose bases are a family of transversals."""
    trans = sorted(transversal_masks(n))
    labels = tuple(element_names(n))
    out = []
    for size in range(1, len(trans) + 1):
        for fam in combinations(trans, size):
            members = frozenset(downward_closure(fam))
            family = IndependenceFamily(labels, members)
            if check_independence_axioms(family) is None:
                out.append(Matroid(family))
    return out


def remark_4_10_corpus(n: int = 3) -> list[Matroid]:
    """Rank-n matroids on J with every basis admissible, drawn from the lift
    matroids of all spikes, the uniform matroid and the transversal-basis
    families."""
    from .biasedgraph import all_spikes, lift_matroid
    labels = tuple(element_names(n))
    pool = [lift_matroid(G) for G in all_spikes(n)]
    pool.append(uniform_matroid(labels, n))
    pool.extend(transversal_basis_matroids(n))
    seen, out = set(), []
    for M in pool:
        if M.rank() != n or not all(is_admissible_mask(b, n) for b in M.bases):
            continue
        if M.family.members in seen:
            continue
        seen.add(M.family.members)
        out.append(M)
    return out


# -- property suite --------------------------------------------------------------

@dataclass
class SuiteEntry:
    invariant: str
    item: str
    passed: bool
    witness: object = None

    def to_json(self) -> dict:
        return {"invariant": self.invariant, "item": self.item, "pass": self.passed,
                "witness": self.witness}


def _diag_witness(d, L=None):
    if d:
        return None
    return {"axiom": d.axiom, "message": d.message, "witness": list(d.witness)}


def lattice_invariants(name: str, L: SetLattice, expect_cn: bool = False) -> list[SuiteEntry]:
    """Every per-lattice invariant that applies to L.  With ``expect_cn`` the
    C_n axioms themselves are an invariant of the item."""
    out = []

    def add(inv, ok, witness=None):
        out.append(SuiteEntry(inv, name, bool(ok), None if ok else witness))

    if expect_cn:
        d = is_cn_lattice(L)
        add("cn-axioms", d, _diag_witness(d))
    bag = L.is_lattice and L.is_graded and L.is_atomistic
    if not bag:
        add("bounded-atomistic-graded", False, "input is not a bounded atomistic graded lattice")
        return out
    view = AtomView(L)
    fast, oracle = independence_family_fast(view), independence_family_oracle(view)
    add("nbb-fast-equals-oracle", fast == oracle,
        sorted(fast.members ^ oracle.members))
    P = induce_geometric(L)
    add("induced-lattice-geometric", is_geometric_lattice(P), _diag_witness(is_geometric_lattice(P)))
    cn = is_cn_up_to_relabeling(L)
    t1, t2 = theorem_6_1_check(L), theorem_6_2_check(L)
    add("independent-characterization", t1 == cn, {"check": t1, "cn": cn})
    add("ordering-characterization", t2 == cn, {"check": t2, "cn": cn})
    if L.n is None or not is_cn_lattice(L):
        return out

    g_fast = ground_independents(L, "fast")
    g_oracle = ground_independents_oracle(L)
    add("ground-fast-equals-oracle", g_fast == g_oracle, sorted(g_fast.members ^ g_oracle.members))
    ext = nonadmissible_extension(admissible_independents(L), L.rank, GroundView(L).atom_of)
    add("closed-form-nonadmissible", ext == g_fast, sorted(ext.members ^ g_fast.members))
    if not is_full_cn_lattice(L):
        B = lattice_to_symplectic(L)
        ds = is_symplectic(B)
        add("correspondence-symplectic", ds, _diag_witness(ds))
        dc = chow_check(B.independents())
        add("correspondence-chow", dc, _diag_witness(dc))
        back = symplectic_to_lattice(B.independents(), L.rank)
        add("correspondence-round-trip", back.elements == L.elements,
            [L.fmt(m) for m in set(back.elements) ^ set(L.elements)])
    order = admissible_atom_ordering(L)
    dr = is_recursive_atom_ordering(L, order)
    add("admissible-ordering-recursive", dr, _diag_witness(dr))
    if L.rank <= 3:
        K = order_complex(L)
        add("order-complex-shellable", find_shelling(K) is not None, "no shelling found")
        ds = is_shelling(shelling_from_ordering(L, order)) if dr else dr
        add("induced-chain-order-shelling", ds, _diag_witness(ds))
    return out


def _run_item(args):
    return lattice_invariants(*args)


CORPORA = ("fixtures", "broken", "cn1", "cn2", "cn3", "families1", "families2")


def corpus(selector: str) -> list[tuple[str, SetLattice, bool]]:
    """Named corpora as (name, lattice, expected to be C_n) triples."""
    from .fixtures import fix_b, fixtures
    if selector == "fixtures":
        return [(k, f.lattice, f.lattice.n is not None) for k, f in fixtures().items()]
    if selector == "broken":
        B = fix_b()
        return [("FIX-B minus " + B.fmt(a), build_lattice([m for m in B.elements if m != a], B.n), True)
                for a in B.atoms]
    if selector.startswith("cn"):
        n = int(selector[2:])
        return [(f"C{n}#{i}", L, True) for i, L in enumerate(enumerate_cn(n, budget=60 if n == 3 else None))]
    if selector.startswith("families"):
        n = int(selector[len("families"):])
        return [(f"F{n}#{i}", L, False) for i, L in enumerate(admissible_family_lattices(n))]
    raise ValueError(f"unknown corpus {selector!r}; known: {', '.join(CORPORA)}")


def run_property_suite(selector: str = "fixtures", threads: int = 1,
                       items: list[tuple[str, SetLattice, bool]] | None = None) -> dict:
    items = corpus(selector) if items is None else items
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_run_item, items))
    else:
        chunks = [_run_item(it) for it in items]
    entries = [e for chunk in chunks for e in chunk]
    return {"corpus": selector, "items": len(items),
            "passed": all(e.passed for e in entries),
            "failures": sum(not e.passed for e in entries),
            "results": [e.to_json() for e in entries]}
