"""NBB (no bounded below) independence on the atoms of a finite bounded,
atomistic, graded lattice, and the geometric lattice it induces."""
from __future__ import annotations

from functools import cached_property
from itertools import permutations
from typing import Sequence

from .core import bits, popcount
from .lattice import Diagnostic, LatticeInputError, SetLattice, build_lattice, closure
from .matroid import IndependenceFamily, Matroid, matroid_from_family


class AtomView:
    """Atom-indexed view of a lattice: atom subsets are bitmasks over
    ``range(len(atoms))`` and their joins are tabulated."""

    def __init__(self, L: SetLattice, atoms: Sequence[int] | None = None):
        for d in (L.lattice_diagnostic, L.graded_diagnostic, L.atomistic_diagnostic):
            if not d:
                raise LatticeInputError(f"need a bounded atomistic graded lattice: {d.message}")
        self.L = L
        self.atoms = tuple(L.atoms if atoms is None else atoms)
        self.t = len(self.atoms)
        self.labels = tuple(L.fmt(a) for a in self.atoms)

    def union(self, s: int) -> int:
        u = 0
        for b in bits(s):
            u |= self.atoms[b]
        return u

    @cached_property
    def join(self) -> list[int]:
        L = self.L
        return [closure(L, self.union(s)) if s else L.bottom for s in range(1 << self.t)]

    def below(self, x: int) -> int:
        """Atom mask of the atoms below lattice element x."""
        return sum(1 << i for i, a in enumerate(self.atoms) if a & x == a)

    @cached_property
    def below_join(self) -> list[int]:
        return [self.below(x) for x in self.join]

    @cached_property
    def rank(self) -> list[int]:
        r = self.L.rank_of
        return [r[x] for x in self.join]


def is_bounded_below(view: AtomView, D: int, order: Sequence[int]) -> bool:
    """D (nonempty atom mask) has an atom strictly before all of D under
    ``order`` that lies below the join of D."""
    if D == 0:
        raise ValueError("bounded-below is defined for nonempty sets")
    pos = {a: i for i, a in enumerate(order)}
    first = min(pos[b] for b in bits(D))
    earlier = sum(1 << a for a in order[:first])
    return bool(view.below_join[D] & earlier)


def is_nbb(view: AtomView, B: int, order: Sequence[int]) -> bool:
    sub = B
    while sub:
        if is_bounded_below(view, sub, order):
            return False
        sub = (sub - 1) & B
    return True


def _nbb_sets_for_order(view: AtomView, order: Sequence[int]) -> list[int]:
    t = view.t
    pos = [0] * t
    for i, a in enumerate(order):
        pos[a] = i
    earlier = [0] * t
    acc = 0
    for a in order:
        earlier[a] = acc
        acc |= 1 << a
    below_join = view.below_join
    contains_bb = [False] * (1 << t)
    out = [0]
    for D in range(1, 1 << t):
        members = bits(D)
        first = min(members, key=pos.__getitem__)
        hit = bool(below_join[D] & earlier[first])
        if not hit:
            hit = any(contains_bb[D & ~(1 << b)] for b in members)
        contains_bb[D] = hit
        if not hit:
            out.append(D)
    return out


def independence_family_oracle(view: AtomView) -> IndependenceFamily:
    """Atom sets that are NBB for at least one of the t! linear orders."""
    members = set()
    for order in permutations(range(view.t)):
        members.update(_nbb_sets_for_order(view, order))
    return IndependenceFamily(view.labels, frozenset(members))


def _nbb_with_leading_order(view: AtomView, B: int, order: Sequence[int]) -> bool:
    # only atoms of B can precede anything in B
    below_join = view.below_join
    earlier = 0
    prefix = {}
    for a in order:
        prefix[a] = earlier
        earlier |= 1 << a
    sub = B
    while sub:
        first = min(bits(sub), key=order.index)
        if below_join[sub] & prefix[first]:
            return False
        sub = (sub - 1) & B
    return True


def independence_family_fast(view: AtomView) -> IndependenceFamily:
    """Same family, searching only orders that list the candidate first."""
    members = {0}
    for B in sorted(range(1, 1 << view.t), key=lambda m: (popcount(m), m)):
        if any(B & ~(1 << b) not in members for b in bits(B)):
            continue
        if any(_nbb_with_leading_order(view, B, p) for p in permutations(bits(B))):
            members.add(B)
    return IndependenceFamily(view.labels, frozenset(members))


def independence_family_atoms(L: SetLattice, method: str = "fast") -> IndependenceFamily:
    view = AtomView(L)
    if method == "oracle":
        return independence_family_oracle(view)
    if method == "fast":
        return independence_family_fast(view)
    raise ValueError(f"unknown method {method!r}")


def atom_matroid(L: SetLattice, method: str = "fast") -> Matroid:
    return matroid_from_family(independence_family_atoms(L, method))


def embed(L: SetLattice, view: AtomView | None = None) -> dict[int, int]:
    """Each element of L as the set of atoms below it."""
    view = view or AtomView(L)
    return {x: view.below(x) for x in L.elements}


def induce_geometric(L: SetLattice) -> SetLattice:
    """Lattice of flats of the NBB matroid of L, on the atoms of L.

    Flats that are images of elements of L keep those elements' names;
    new flats are named X1, X2, ... in element order.
    """
    view = AtomView(L)
    M = matroid_from_family(independence_family_fast(view))
    images = {v: x for x, v in embed(L, view).items()}
    names = {}
    extra = 0
    for f in sorted(M.flats, key=lambda m: (popcount(m), m)):
        if f in images:
            names[f] = L.fmt(images[f])
        else:
            extra += 1
            names[f] = f"X{extra}"
    return build_lattice(M.flats, labels=view.labels, names=names)


def new_elements(L: SetLattice, P: SetLattice) -> list[int]:
    """Elements of the induced lattice P that do not come from L."""
    images = set(embed(L).values())
    return [f for f in P.elements if f not in images]


def is_geometric_by_independents(L: SetLattice, family: IndependenceFamily | None = None) -> Diagnostic:
    """Every independent atom set has size equal to the rank of its join."""
    view = AtomView(L)
    family = family or independence_family_fast(view)
    for I in family:
        if popcount(I) != view.rank[I]:
            return Diagnostic(False, "geometric", (I,),
                              f"independent set {family.fmt(I)} has size {popcount(I)} "
                              f"but rank {view.rank[I]}")
    return Diagnostic(True)
