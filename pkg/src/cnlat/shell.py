"""Shellability of order complexes and recursive atom orderings."""
from __future__ import annotations

from itertools import combinations, permutations
from typing import Sequence

from .core import is_admissible_mask, popcount, star_mask
from .lattice import ChainComplex, Diagnostic, LatticeError, SetLattice, build_lattice, interval
from .nbb import AtomView, independence_family_fast


class ShellingError(ValueError):
    pass


def _fail(axiom, message, *witness):
    return Diagnostic(False, axiom, tuple(witness), message)


# -- shellings -----------------------------------------------------------------

def _faces(facet: frozenset) -> set[frozenset]:
    items = sorted(facet)
    return {frozenset(c) for k in range(len(items) + 1) for c in combinations(items, k)}


def _maximal(faces) -> list[frozenset]:
    faces = list(faces)
    return [f for f in faces if not any(f < g for g in faces)]


def is_shelling(K: ChainComplex | Sequence[frozenset], order: Sequence[int] | None = None) -> Diagnostic:
    """Each facet meets the union of the earlier ones in a pure complex of
    codimension one.  ``order`` indexes into the complex's facets; without it
    the facets are taken as listed."""
    facets = list(K.facets if isinstance(K, ChainComplex) else K)
    if order is not None:
        facets = [facets[i] for i in order]
    if len({len(f) for f in facets}) > 1:
        raise ShellingError("shellings are defined for pure complexes only")
    seen: set[frozenset] = set()
    for j, F in enumerate(facets):
        faces = _faces(F)
        if j:
            common = faces & seen
            bad = [g for g in _maximal(common) if len(g) != len(F) - 1]
            if bad:
                return _fail("shelling", "intersection with earlier facets is not pure of "
                                         "codimension one", j, tuple(sorted(bad[0])))
        seen |= faces
    return Diagnostic(True)


def find_shelling(K: ChainComplex) -> list[int] | None:
    """Backtracking search for a shelling order of the facets."""
    facets = list(K.facets)
    face_sets = [_faces(f) for f in facets]
    t = len(facets)

    def ok(seen, j):
        common = face_sets[j] & seen
        return all(len(g) == len(facets[j]) - 1 for g in _maximal(common))

    def search(prefix, seen):
        if len(prefix) == t:
            return list(prefix)
        for j in range(t):
            if j in prefix:
                continue
            if prefix and not ok(seen, j):
                continue
            prefix.append(j)
            found = search(prefix, seen | face_sets[j])
            if found:
                return found
            prefix.pop()
        return None

    return search([], set())


# -- recursive atom orderings ---------------------------------------------------

class RecursiveAtomOrderings:
    """Checker for recursive atom orderings of the upper intervals [x, top]
    of a graded lattice, with memoized existence search."""

    def __init__(self, L: SetLattice):
        if not L.is_graded:
            raise LatticeError("recursive atom orderings need a graded poset")
        self.L = L
        self.rank = L.rank_of
        self.top = L.top
        self._memo: dict[tuple[int, frozenset], tuple | None] = {}

    def height(self, x: int) -> int:
        return self.rank[self.top] - self.rank[x]

    def atoms(self, x: int) -> tuple[int, ...]:
        return self.L.upper_covers[x]

    def check(self, x: int, order: Sequence[int]):
        """Return (diagnostic, {atom: ordering used for its interval})."""
        L = self.L
        atoms = self.atoms(x)
        if sorted(order) != sorted(atoms):
            raise ValueError("ordering must list each atom of the interval exactly once")
        if self.height(x) <= 1:
            return Diagnostic(True), {}
        pos = {a: i for i, a in enumerate(order)}
        for j, aj in enumerate(order):
            covers_j = L.upper_covers[aj]
            for i in range(j):
                ai = order[i]
                for B in L.elements:
                    if B & (ai | aj) != ai | aj or B in (ai, aj):
                        continue
                    if not any(C & B == C and any(pos.get(ak, j) < j for ak in L.lower_covers[C])
                               for C in covers_j):
                        return _fail("2", "no earlier atom shares a cover of A_j below B",
                                     ai, aj, B), {}
        witnesses = {}
        for j, aj in enumerate(order):
            earlier = set(order[:j])
            required = frozenset(C for C in L.upper_covers[aj]
                                 if any(a in earlier for a in L.lower_covers[C]))
            found = self.exists(aj, required)
            if found is None:
                return _fail("1", "interval above the atom has no recursive atom ordering "
                                  "starting with the required atoms", aj, tuple(sorted(required))), {}
            witnesses[aj] = found
        return Diagnostic(True), witnesses

    def exists(self, x: int, required: frozenset = frozenset()):
        key = (x, required)
        if key in self._memo:
            return self._memo[key]
        atoms = self.atoms(x)
        result = None
        if self.height(x) <= 1:
            result = tuple(atoms)
        else:
            rest = [a for a in atoms if a not in required]
            for head in permutations(sorted(required)):
                for tail in permutations(rest):
                    order = head + tail
                    if self.check(x, order)[0]:
                        result = order
                        break
                if result is not None:
                    break
        self._memo[key] = result
        return result

    def chain_order(self, x: int, order: Sequence[int]) -> list[tuple[int, ...]]:
        """Maximal chains of [x, top] listed lexicographically by the given
        ordering and the witness orderings of the upper intervals."""
        if x == self.top:
            return [(x,)]
        d, witnesses = self.check(x, order)
        if not d:
            raise ValueError(f"not a recursive atom ordering: {d.message}")
        out = []
        for a in order:
            sub = witnesses.get(a, self.atoms(a))
            out.extend((x,) + c for c in self.chain_order(a, sub))
        return out


def is_recursive_atom_ordering(L: SetLattice, order: Sequence[int]) -> Diagnostic:
    return RecursiveAtomOrderings(L).check(L.bottom, tuple(order))[0]


def shelling_from_ordering(L: SetLattice, order: Sequence[int]) -> list[frozenset]:
    return [frozenset(c) for c in RecursiveAtomOrderings(L).chain_order(L.bottom, tuple(order))]


# -- admissible atom orderings ------------------------------------------------

def _atoms_admissible(L: SetLattice, atoms) -> bool:
    u = 0
    for a in atoms:
        u |= a
    return is_admissible_mask(u, L.n)


def _star_separated(L: SetLattice, seq) -> bool:
    return all(star_mask(a, L.n) != b for a, b in zip(seq, seq[1:]))


def admissible_atom_ordering(L: SetLattice) -> tuple[int, ...]:
    """Atom order whose first rank-1 atoms are an admissible independent set
    and in which no atom directly follows its star."""
    if L.n is None:
        raise ValueError("admissible atom orderings need a lattice on J")
    d = L.rank
    atoms = sorted(L.atoms)
    view = AtomView(L, atoms)
    fam = independence_family_fast(view)
    for prefix_idx in combinations(range(len(atoms)), max(d - 1, 0)):
        mask = sum(1 << i for i in prefix_idx)
        prefix = [atoms[i] for i in prefix_idx]
        if mask not in fam or not _atoms_admissible(L, prefix):
            continue
        rest = [a for a in atoms if a not in prefix]
        order = _extend_star_separated(L, prefix, rest)
        if order is not None:
            return tuple(order)
    if d <= 2:
        # every atom is covered by the top, so any order is recursive; a
        # star-separated one need not exist (two atoms that are stars)
        return tuple(atoms)
    raise AssertionError("no admissible independent set of size rank-1 extends to a "
                         "star-separated ordering; the input is not a C_n lattice")


def _extend_star_separated(L, prefix, rest):
    if not rest:
        return list(prefix)
    for i, a in enumerate(rest):
        if prefix and star_mask(prefix[-1], L.n) == a:
            continue
        found = _extend_star_separated(L, prefix + [a], rest[:i] + rest[i + 1:])
        if found is not None:
            return found
    return None


# -- characterization checks ------------------------------------------------

def perfect_matchings(items):
    items = list(items)
    if not items:
        yield []
        return
    first = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1:]
        for m in perfect_matchings(rest):
            yield [(first, items[i])] + m


class _PairedAtoms:
    """Atom-level independents with a chosen star pairing of the atoms."""

    def __init__(self, view: AtomView, fam, pairing):
        self.view = view
        self.fam = fam
        self.partner = {}
        for a, b in pairing:
            self.partner[a] = b
            self.partner[b] = a

    def admissible(self, I: int) -> bool:
        return not any(I >> self.partner[a] & 1 for a in range(self.view.t) if I >> a & 1)


def _atom_data(L: SetLattice):
    view = AtomView(L)
    return view, independence_family_fast(view)


def theorem_6_1_check(L: SetLattice, *, return_pairing: bool = False):
    """Is there a star pairing of the atoms under which the geometric
    independents of size below the rank are exactly the admissible ones?"""
    view, fam = _atom_data(L)
    if view.t % 2:
        return (False, None) if return_pairing else False
    d = L.rank
    geometric = {I for I in fam.members if popcount(I) == view.rank[I] and popcount(I) < d}
    for pairing in perfect_matchings(range(view.t)):
        pa = _PairedAtoms(view, fam, pairing)
        admissible = {I for I in fam.members if popcount(I) < d and pa.admissible(I)}
        if admissible == geometric:
            return (True, pairing) if return_pairing else True
    return (False, None) if return_pairing else False


def theorem_6_2_check(L: SetLattice, *, return_pairing: bool = False):
    """Is there a star pairing under which every star-separated extension of
    every admissible independent set of size d-1 (d the largest admissible
    independent size) is a recursive atom ordering?"""
    view, fam = _atom_data(L)
    if view.t % 2:
        return (False, None) if return_pairing else False
    rao = RecursiveAtomOrderings(L)
    verdicts: dict[tuple, bool] = {}

    def is_rao(order):
        if order not in verdicts:
            verdicts[order] = bool(rao.check(L.bottom, tuple(view.atoms[i] for i in order))[0])
        return verdicts[order]

    for pairing in perfect_matchings(range(view.t)):
        pa = _PairedAtoms(view, fam, pairing)
        adm = [I for I in fam.members if pa.admissible(I)]
        d = max(popcount(I) for I in adm)
        good = True
        for I in adm:
            if popcount(I) != d - 1 or not good:
                continue
            head_items = [a for a in range(view.t) if I >> a & 1]
            tail_items = [a for a in range(view.t) if not I >> a & 1]
            for head in permutations(head_items):
                for tail in permutations(tail_items):
                    seq = head + tail
                    if any(pa.partner[x] == y for x, y in zip(seq, seq[1:])):
                        continue
                    if not is_rao(seq):
                        good = False
                        break
                if not good:
                    break
        if good:
            return (True, pairing) if return_pairing else True
    return (False, None) if return_pairing else False


def upper_interval(L: SetLattice, x: int) -> SetLattice:
    """[x, top] as a lattice of its own on the same ground labels."""
    names = {m: L.fmt(m) for m in interval(L, x)}
    return build_lattice(interval(L, x), L.n, labels=None if L.n else L.labels,
                         ground_mask=L.ground_mask, names=names)


def corollary_5_9_check(L: SetLattice, I: int | None = None, atom: int | None = None) -> Diagnostic:
    """Joining a geometric independent set with one of its atoms gives a
    geometric independent set of the interval above that atom.  Checks one
    (I, atom) pair when given (atom-index mask and atom index), else all."""
    view, fam = _atom_data(L)
    geometric = [I] if I is not None else [J for J in fam.members if popcount(J) == view.rank[J]]
    if I is not None and (I not in fam or popcount(I) != view.rank[I]):
        return _fail("input", "not a geometric independent set", I)
    cache = {}
    for I in geometric:
        members = [a for a in range(view.t) if I >> a & 1]
        for i in (members if atom is None else [atom]):
            ai = view.atoms[i]
            if ai not in cache:
                sub = upper_interval(L, ai)
                try:
                    sview = AtomView(sub)
                except Exception as e:
                    return _fail("interval", f"interval above atom is not atomistic graded: {e}", ai)
                cache[ai] = (sview, independence_family_fast(sview))
            sview, sfam = cache[ai]
            images = {view.join[(1 << i) | (1 << j)] for j in members if j != i}
            if any(x not in sview.atoms for x in images):
                return _fail("atoms", "a join with a_i is not an atom of the interval", I, ai)
            S = sum(1 << sview.atoms.index(x) for x in images)
            if len(images) != len(members) - 1 or S not in sfam or popcount(S) != sview.rank[S]:
                return _fail("geometric", "image is not a geometric independent set", I, ai)
    return Diagnostic(True)
