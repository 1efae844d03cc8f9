"""Symplectic matroids on J and their correspondence with C_n lattices.

Families over J are IndependenceFamily objects whose labels are the 2n
element names of J in bit order, so ``n == len(labels) // 2``.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations

from .core import (
    admissible_orders,
    bits,
    element_names,
    full_mask,
    is_admissible_mask,
    parse_mask,
    popcount,
    star_mask,
    transversal_masks,
)
from .lattice import (
    Diagnostic,
    LatticeInputError,
    SetLattice,
    build_lattice,
    closure,
    is_cn_lattice,
    is_full_cn_lattice,
)
from .matroid import (
    IndependenceFamily,
    Matroid,
    check_independence_axioms,
    check_rank_axioms,
    downward_closure,
)

log = logging.getLogger(__name__)


class SymplecticInputError(ValueError):
    pass


class FullLatticeError(SymplecticInputError):
    """The full C_n lattice has no maximal admissible independent sets of
    full rank and shares its symplectic matroid with a smaller lattice, so
    the correspondence is defined without it."""


def _fail(axiom, message, *witness):
    return Diagnostic(False, axiom, tuple(witness), message)


def j_family(n: int, masks) -> IndependenceFamily:
    return IndependenceFamily(tuple(element_names(n)), frozenset(masks))


def family_n(fam: IndependenceFamily) -> int:
    return len(fam.labels) // 2


@dataclass(frozen=True)
class BasisFamily:
    n: int
    bases: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bases", tuple(sorted(set(self.bases), key=lambda m: (popcount(m), m))))

    @property
    def rank(self) -> int:
        return popcount(self.bases[0]) if self.bases else 0

    def independents(self) -> IndependenceFamily:
        return j_family(self.n, downward_closure(self.bases))

    def to_json(self) -> dict:
        names = element_names(self.n)
        return {"n": self.n, "bases": [[names[b] for b in bits(m)] for m in self.bases]}

    def __str__(self):
        names = element_names(self.n)
        return "{" + ", ".join("{" + ",".join(names[b] for b in bits(m)) + "}" for m in self.bases) + "}"


def parse_basis_family(data: dict | str) -> BasisFamily:
    if isinstance(data, str):
        data = json.loads(data)
    n = int(data["n"])
    masks = [parse_mask(b, n) for b in data["bases"]]
    if len(set(masks)) != len(masks):
        raise SymplecticInputError("duplicate basis")
    return BasisFamily(n, tuple(masks))


def parse_independence_family(data: dict | str) -> IndependenceFamily:
    if isinstance(data, str):
        data = json.loads(data)
    n = int(data["n"])
    masks = {parse_mask(s, n) for s in data["independents"]}
    closed = downward_closure(masks)
    if closed != masks:
        log.warning("independence family was not closed under subsets; added %d sets",
                    len(closed - masks))
    return j_family(n, closed)


# -- symplectic matroid axioms -------------------------------------------------

def gale_maxima(bases, positions) -> list[int]:
    keyed = [(m, sorted(positions[b] for b in bits(m))) for m in bases]
    maxima = []
    for m, key in keyed:
        dominated = False
        for m2, key2 in keyed:
            if m2 != m and all(x <= y for x, y in zip(key, key2)):
                dominated = True
                break
        if not dominated:
            maxima.append(m)
            if len(maxima) > 1:
                break
    return maxima


def is_symplectic(B: BasisFamily) -> Diagnostic:
    """Equinumerous admissible bases with a unique Gale-maximal basis under
    every admissible order."""
    if not B.bases:
        return _fail("nonempty", "no bases")
    k = popcount(B.bases[0])
    for m in B.bases:
        if popcount(m) != k:
            return _fail("equinumerous", "bases of different sizes", m)
        if not is_admissible_mask(m, B.n):
            return _fail("admissible", "basis is not admissible", m)
    for order in admissible_orders(B.n):
        maxima = gale_maxima(B.bases, order.positions())
        if len(maxima) != 1:
            return _fail("gale", f"no unique Gale maximum under {order}", str(order), *maxima)
    return Diagnostic(True)


def is_loop_free(B: BasisFamily) -> bool:
    union = 0
    for m in B.bases:
        union |= m
    return union == full_mask(B.n)


def chow_check(fam: IndependenceFamily) -> Diagnostic:
    """Chow's independent-set axioms for symplectic matroids."""
    n = family_n(fam)
    members = fam.members
    for m in members:
        if not is_admissible_mask(m, n):
            raise SymplecticInputError(f"non-admissible member {fam.fmt(m)}")
    if downward_closure(members) != set(members):
        raise SymplecticInputError("family is not closed under subsets")
    for T in transversal_masks(n):
        restricted = IndependenceFamily(fam.labels, frozenset(m & T for m in members))
        problem = check_independence_axioms(restricted)
        if problem is not None:
            return _fail("1", f"restriction to transversal {fam.fmt(T)} is not a matroid: "
                              f"{problem[1]}", T, *problem[2])
    ordered = sorted(members, key=popcount)
    for I in ordered:
        I_star = star_mask(I, n)
        for Ip in ordered:
            if popcount(Ip) >= popcount(I):
                break
            if any(Ip | 1 << x in members for x in bits(I & ~Ip)):
                continue
            outside = full_mask(n) & ~(I | Ip)
            ok = False
            for x in bits(outside):
                xs = star_mask(1 << x, n)
                if Ip | 1 << x in members and (Ip | xs) & ~I_star in members:
                    ok = True
                    break
            if not ok:
                return _fail("2", "augmentation fails", I, Ip)
    return Diagnostic(True)


# -- ground-set NBB independence ---------------------------------------------

class GroundView:
    """Closures in a C_n lattice of arbitrary subsets of J, plus the atom
    containing each element."""

    def __init__(self, L: SetLattice, *, require_cn: bool = True):
        if L.n is None:
            raise LatticeInputError("need a lattice on J")
        if require_cn:
            d = is_cn_lattice(L)
            if not d:
                raise LatticeInputError(f"not a C_n lattice: axiom {d.axiom}: {d.message}")
        self.L = L
        self.n = L.n
        self.size = 2 * L.n
        self.atoms = L.atoms
        self.atom_of = [next(i for i, a in enumerate(self.atoms) if a >> b & 1)
                        for b in range(self.size)]

    @cached_property
    def cl(self) -> list[int]:
        return [closure(self.L, m) for m in range(1 << self.size)]

    def atom_count(self, X: int) -> int:
        return len({self.atom_of[b] for b in bits(X)})

    def distinct_atoms(self, X: int) -> bool:
        return self.atom_count(X) == popcount(X)

    def disjoint(self, D: int, reading: str) -> bool:
        if reading == "distinct":
            return self.distinct_atoms(D)
        if reading == "literal":
            return self.atom_count(D) == len(self.atoms)
        raise ValueError(f"unknown disjointness reading {reading!r}")


def _ground_nbb_under(view: GroundView, order, reading: str) -> list[int]:
    size = view.size
    earlier = [0] * size
    pos = [0] * size
    acc = 0
    for i, a in enumerate(order):
        pos[a] = i
        earlier[a] = acc
        acc |= 1 << a
    cl = view.cl
    contains = [False] * (1 << size)
    out = [0]
    for D in range(1, 1 << size):
        members = bits(D)
        hit = False
        if view.disjoint(D, reading):
            first = min(members, key=pos.__getitem__)
            hit = bool(cl[D] & earlier[first])
        if not hit:
            hit = any(contains[D & ~(1 << b)] for b in members)
        contains[D] = hit
        if not hit:
            out.append(D)
    return out


def ground_independents_oracle(L: SetLattice, reading: str = "distinct") -> IndependenceFamily:
    view = GroundView(L)
    members = set()
    for order in permutations(range(view.size)):
        members.update(_ground_nbb_under(view, order, reading))
    if reading == "distinct":
        members = {m for m in members if view.distinct_atoms(m)}
    return j_family(view.n, members)


def _ground_nbb_leading(view: GroundView, X: int, order, reading: str) -> bool:
    prefix = {}
    acc = 0
    for a in order:
        prefix[a] = acc
        acc |= 1 << a
    cl = view.cl
    sub = X
    while sub:
        if view.disjoint(sub, reading):
            first = min(bits(sub), key=order.index)
            if cl[sub] & prefix[first]:
                return False
        sub = (sub - 1) & X
    return True


def ground_independents(L: SetLattice, method: str = "fast", reading: str = "distinct") -> IndependenceFamily:
    """Subsets of J that are NBB for some linear order on J.

    ``reading="distinct"`` treats a set as disjoint in L when its elements
    lie in pairwise distinct atoms and declares every other set dependent;
    ``reading="literal"`` requires a bounded-below set to meet every atom.
    """
    if method == "oracle":
        return ground_independents_oracle(L, reading)
    view = GroundView(L)
    members = {0}
    for X in sorted(range(1, 1 << view.size), key=lambda m: (popcount(m), m)):
        if reading == "distinct" and not view.distinct_atoms(X):
            continue
        if any(X & ~(1 << b) not in members for b in bits(X)):
            continue
        if any(_ground_nbb_leading(view, X, p, reading) for p in permutations(bits(X))):
            members.add(X)
    return j_family(view.n, members)


def admissible_part(fam: IndependenceFamily) -> IndependenceFamily:
    n = family_n(fam)
    return IndependenceFamily(fam.labels, frozenset(m for m in fam.members if is_admissible_mask(m, n)))


def admissible_independents(L: SetLattice, method: str = "fast") -> IndependenceFamily:
    return admissible_part(ground_independents(L, method))


def lattice_to_symplectic(L: SetLattice) -> BasisFamily:
    if is_full_cn_lattice(L):
        raise FullLatticeError(
            "the full C_n lattice (every admissible set plus J) is excluded from the "
            "correspondence: its symplectic matroid equals that of the lattice of "
            "admissible sets of size <= n-1")
    fam = admissible_independents(L)
    return BasisFamily(L.n, tuple(fam.maximal()))


def nonadmissible_extension(I_ad: IndependenceFamily, rank_L: int, atom_of) -> IndependenceFamily:
    """Admissible independents together with every I ∪ {a*} (a ∈ I) whose
    atom count exceeds |I| without exceeding the lattice rank."""
    n = family_n(I_ad)
    out = set(I_ad.members)
    for I in I_ad.members:
        for a in bits(I):
            X = I | star_mask(1 << a, n)
            atoms = len({atom_of[b] for b in bits(X)})
            if popcount(I) < atoms <= rank_L:
                out.add(X)
    return IndependenceFamily(I_ad.labels, frozenset(out))


# -- rank-function criterion ---------------------------------------------------

def symplectic_rank(fam: IndependenceFamily, d: int | None = None, *, amended: bool = True) -> list[int]:
    """Rank of every subset of J (indexed by mask) from a symplectic
    independence family.

    A set I ⊆ A scores |I| + 1 when some a ∈ I has {a*, b} independent for
    all other b ∈ I; with ``amended`` the bonus also needs a* ∈ A.
    """
    n = family_n(fam)
    members = fam.members
    if d is None:
        d = max(popcount(m) for m in members)
    if d < max(popcount(m) for m in members):
        raise SymplecticInputError("d is smaller than the largest independent set")
    bonus = {}
    for I in members:
        starts = []
        for a in bits(I):
            a_star = star_mask(1 << a, n)
            if all(a_star | 1 << b in members for b in bits(I) if b != a):
                starts.append(a_star)
        bonus[I] = starts
    full = 1 << (2 * n)
    rank = [0] * full
    for A in range(full):
        best = 0
        for I in members:
            if I & A != I:
                continue
            v = popcount(I)
            starts = bonus[I]
            if starts and (not amended or any(s & A for s in starts)):
                v += 1
            best = max(best, v)
        rank[A] = min(d, best)
    return rank


def simple_symplectic_rank(fam: IndependenceFamily, d: int | None = None) -> list[int]:
    n = family_n(fam)
    members = fam.members
    d = max(popcount(m) for m in members) if d is None else d
    rank = []
    for A in range(1 << (2 * n)):
        best = max(popcount(I) for I in members if I & A == I)
        rank.append(best if is_admissible_mask(A, n) else min(best + 1, d))
    return rank


def is_simple(fam: IndependenceFamily) -> bool:
    """Every admissible set of size <= 2 is independent."""
    n = family_n(fam)
    from .core import admissible_masks
    return all(m in fam.members for m in admissible_masks(n) if popcount(m) <= 2)


def is_ranked_symplectic(fam: IndependenceFamily, d: int | None = None, *, amended: bool = True) -> Diagnostic:
    n = family_n(fam)
    rank = symplectic_rank(fam, d, amended=amended)
    problem = check_rank_axioms(rank, 2 * n)
    if problem is not None:
        axiom, witness = problem
        return _fail(axiom, f"rank function violates {axiom}", *witness)
    for b in range(2 * n):
        if rank[1 << b] != 1:
            return _fail("loop-free", "singleton does not have rank 1", 1 << b)
    return Diagnostic(True)


def flats_of_rank(rank, size: int) -> list[int]:
    out = []
    for A in range(1 << size):
        if all(rank[A | 1 << b] > rank[A] for b in range(size) if not A >> b & 1):
            out.append(A)
    return out


def symplectic_to_lattice(fam: IndependenceFamily, d: int | None = None) -> SetLattice:
    """Admissible flats of the ordinary matroid with the symplectic rank
    function, plus J."""
    d_ok = is_ranked_symplectic(fam, d)
    if not d_ok:
        raise SymplecticInputError(f"not a ranked symplectic matroid: {d_ok.message}")
    n = family_n(fam)
    rank = symplectic_rank(fam, d)
    flats = [A for A in flats_of_rank(rank, 2 * n) if is_admissible_mask(A, n)]
    return build_lattice(flats + [full_mask(n)], n)


def remark_4_11_check(M: Matroid, n: int):
    """Does an ordinary matroid on J have exactly the symplectic rank function
    of its own admissible independents?  Returns (diagnostic, BasisFamily or
    None)."""
    if len(M.labels) != 2 * n:
        raise SymplecticInputError("matroid ground set is not J")
    adm = admissible_part(M.family)
    d = M.rank()
    rank = symplectic_rank(adm, d)
    for A in range(1 << (2 * n)):
        if rank[A] != M.rank(A):
            return _fail("rank", "rank functions differ", A, M.rank(A), rank[A]), None
    bases = [m for m in adm.members if popcount(m) == d]
    return Diagnostic(True), BasisFamily(n, tuple(bases))
