"""Finite inclusion-ordered set lattices and their axiom checkers."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .core import (
    element_names,
    full_mask,
    is_admissible_mask,
    parse_mask,
    popcount,
    star_mask,
)


class LatticeInputError(ValueError):
    """Malformed lattice input (bad element, duplicate, missing member)."""


class LatticeError(ValueError):
    """A lattice operation that is undefined on this family."""


@dataclass(frozen=True)
class Diagnostic:
    ok: bool
    axiom: str | None = None
    witness: tuple = ()
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self, fmt=None) -> dict:
        fmt = fmt or str
        return {
            "ok": self.ok,
            "axiom": self.axiom,
            "witness": [fmt(w) if isinstance(w, int) else w for w in self.witness],
            "message": self.message,
        }


PASS = Diagnostic(True)


def _fail(axiom, message, *witness) -> Diagnostic:
    return Diagnostic(False, axiom, tuple(witness), message)


@dataclass(frozen=True, eq=False)
class SetLattice:
    """A finite family of subsets of a labelled ground set, ordered by inclusion.

    With ``n`` set, the ground is J = [n] + [n]* (or the star-closed part
    ``ground_mask`` of it) and star/admissibility make sense.  Without ``n``
    the ground is an arbitrary list of labels, e.g. the atoms of an abstract
    lattice.  ``names`` optionally maps element masks to display strings.
    """
    labels: tuple[str, ...]
    elements: tuple[int, ...]
    n: int | None = None
    ground_mask: int = -1
    names: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.ground_mask == -1:
            object.__setattr__(self, "ground_mask", (1 << len(self.labels)) - 1)
        ordered = tuple(sorted(self.elements, key=lambda m: (popcount(m), m)))
        object.__setattr__(self, "elements", ordered)

    # -- basic structure ---------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def __contains__(self, mask: int) -> bool:
        return mask in self.index

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        if not isinstance(other, SetLattice):
            return NotImplemented
        return (self.labels, self.n, self.ground_mask, self.elements) == (
            other.labels, other.n, other.ground_mask, other.elements)

    def __hash__(self):
        return hash((self.labels, self.n, self.ground_mask, self.elements))

    @cached_property
    def index(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.elements)}

    @cached_property
    def bottom(self) -> int | None:
        common = self.ground_mask
        for m in self.elements:
            common &= m
        return common if common in self.index else None

    @cached_property
    def top(self) -> int | None:
        union = 0
        for m in self.elements:
            union |= m
        return union if union in self.index else None

    @cached_property
    def upper_covers(self) -> dict[int, tuple[int, ...]]:
        els = self.elements
        ups = {m: [] for m in els}
        for i, a in enumerate(els):
            above = [b for b in els[i + 1:] if a & b == a and a != b]
            for b in above:
                if not any(c & b == c and c != b and c & a == a for c in above):
                    ups[a].append(b)
        return {m: tuple(v) for m, v in ups.items()}

    @cached_property
    def lower_covers(self) -> dict[int, tuple[int, ...]]:
        downs = {m: [] for m in self.elements}
        for a, ups in self.upper_covers.items():
            for b in ups:
                downs[b].append(a)
        return {m: tuple(v) for m, v in downs.items()}

    @cached_property
    def atoms(self) -> tuple[int, ...]:
        if self.bottom is None:
            return ()
        return self.upper_covers[self.bottom]

    @cached_property
    def _layering(self) -> dict[int, int]:
        # longest-path height above the bottom
        height = {}
        for m in self.elements:
            downs = self.lower_covers[m]
            height[m] = 1 + max(height[d] for d in downs) if downs else 0
        return height

    @cached_property
    def graded_diagnostic(self) -> Diagnostic:
        if self.bottom is None or self.top is None:
            return _fail("bounded", "no unique minimum or maximum")
        h = self._layering
        for a, ups in self.upper_covers.items():
            for b in ups:
                if h[b] != h[a] + 1:
                    return _fail("graded", "cover relation skips a rank", a, b)
        return PASS

    @property
    def is_graded(self) -> bool:
        return self.graded_diagnostic.ok

    @cached_property
    def rank_of(self) -> dict[int, int]:
        if not self.is_graded:
            raise LatticeError("rank is only defined on graded lattices")
        return dict(self._layering)

    @property
    def rank(self) -> int:
        return self.rank_of[self.top]

    @cached_property
    def lattice_diagnostic(self) -> Diagnostic:
        if self.bottom is None:
            return _fail("bounded", "no unique minimum")
        if self.top is None:
            return _fail("bounded", "no unique maximum")
        for a, b in combinations(self.elements, 2):
            if len(self._minimal_upper_bounds(a | b)) != 1:
                return _fail("join", "no unique least upper bound", a, b)
            if len(self._maximal_lower_bounds(a & b)) != 1:
                return _fail("meet", "no unique greatest lower bound", a, b)
        return PASS

    @property
    def is_lattice(self) -> bool:
        return self.lattice_diagnostic.ok

    @cached_property
    def atomistic_diagnostic(self) -> Diagnostic:
        if not self.is_lattice:
            return self.lattice_diagnostic
        for x in self.elements:
            below = [a for a in self.atoms if a & x == a]
            if join_all(self, below) != x:
                return _fail("atomistic", "element is not the join of its atoms", x)
        return PASS

    @property
    def is_atomistic(self) -> bool:
        return self.atomistic_diagnostic.ok

    def _minimal_upper_bounds(self, mask: int) -> list[int]:
        ups = [c for c in self.elements if c & mask == mask]
        return [c for c in ups if not any(d != c and d & c == d for d in ups)]

    def _maximal_lower_bounds(self, mask: int) -> list[int]:
        lows = [c for c in self.elements if c & mask == c]
        return [c for c in lows if not any(d != c and d & c == c for d in lows)]

    # -- display / serialization ------------------------------------------

    def fmt(self, mask: int) -> str:
        if mask in self.names:
            return self.names[mask]
        if self.n is not None and mask == full_mask(self.n):
            return "J"
        return "{" + ",".join(self.labels[b] for b in range(len(self.labels)) if mask >> b & 1) + "}"

    def members(self, mask: int) -> list[str]:
        return [self.labels[b] for b in range(len(self.labels)) if mask >> b & 1]

    def to_json(self) -> dict:
        out = {}
        if self.n is not None:
            out["n"] = self.n
        else:
            out["ground"] = list(self.labels)
        out["elements"] = [self.members(m) for m in self.elements]
        if self.names:
            out["names"] = {json.dumps(self.members(m)): nm for m, nm in self.names.items()}
        return out

    def __repr__(self):
        return f"SetLattice([{', '.join(self.fmt(m) for m in self.elements)}])"

    def relabel(self, names: dict) -> "SetLattice":
        return SetLattice(self.labels, self.elements, self.n, self.ground_mask, dict(names))


# -- construction ----------------------------------------------------------

def build_lattice(family: Iterable[int], n: int | None = None, *,
                  labels: Sequence[str] | None = None, ground_mask: int | None = None,
                  names: dict | None = None) -> SetLattice:
    """Build a SetLattice from masks.  Structure problems are reported through
    the lattice's diagnostics; only malformed input raises."""
    family = list(family)
    if not family:
        raise LatticeInputError("empty family")
    if n is not None:
        labels = tuple(element_names(n))
        width_mask = full_mask(n)
    elif labels is not None:
        labels = tuple(labels)
        width_mask = (1 << len(labels)) - 1
    else:
        raise LatticeInputError("need either n or ground labels")
    if ground_mask is None:
        ground_mask = width_mask
    seen = set()
    for m in family:
        if m < 0 or m & ~ground_mask:
            raise LatticeInputError(f"element {m:#x} is outside the ground set")
        if m in seen:
            raise LatticeInputError(f"duplicate element {m:#x}")
        seen.add(m)
    return SetLattice(labels, tuple(family), n, ground_mask, dict(names or {}))


def parse_lattice(data: dict | str) -> SetLattice:
    """Read the lattice JSON form {"n": .., "elements": [[..], "J", ..]}.

    Abstract lattices use {"ground": [labels], "elements": [[labels..]..]}
    with an optional "names" map from JSON-encoded member lists to names.
    """
    if isinstance(data, str):
        data = json.loads(data)
    if "n" in data:
        n = int(data["n"])
        labels = None
        conv = lambda item: parse_mask(item, n)
    else:
        n = None
        labels = list(data["ground"])
        pos = {lab: i for i, lab in enumerate(labels)}

        def conv(item):
            if item == "J":
                return (1 << len(labels)) - 1
            try:
                return sum(1 << pos[str(x)] for x in item)
            except KeyError as e:
                raise LatticeInputError(f"unknown ground label {e}") from None
    masks = []
    seen = {}
    for item in data["elements"]:
        try:
            m = conv(item)
        except ValueError as e:
            raise LatticeInputError(str(e)) from None
        if m in seen:
            raise LatticeInputError(f"duplicate element {item!r} (same as {seen[m]!r})")
        seen[m] = item
        masks.append(m)
    names = {}
    for key, nm in (data.get("names") or {}).items():
        names[conv(json.loads(key))] = nm
    return build_lattice(masks, n, labels=labels, names=names)


# -- meet / join -------------------------------------------------------------

def meet(L: SetLattice, a: int, b: int) -> int:
    if a not in L or b not in L:
        raise LatticeError("meet arguments must be lattice elements")
    lows = L._maximal_lower_bounds(a & b)
    if len(lows) != 1:
        raise LatticeError(f"meet of {L.fmt(a)} and {L.fmt(b)} is undefined")
    return lows[0]


def join(L: SetLattice, a: int, b: int) -> int:
    if a not in L or b not in L:
        raise LatticeError("join arguments must be lattice elements")
    return closure(L, a | b)


def closure(L: SetLattice, mask: int) -> int:
    """The unique least element of L containing ``mask``."""
    ups = L._minimal_upper_bounds(mask)
    if len(ups) != 1:
        raise LatticeError(f"no unique least element above {L.fmt(mask)}")
    return ups[0]


def join_all(L: SetLattice, items: Iterable[int]) -> int:
    union = 0
    any_item = False
    for m in items:
        union |= m
        any_item = True
    if not any_item:
        return L.bottom
    return closure(L, union)


def atoms_below(L: SetLattice, x: int) -> tuple[int, ...]:
    return tuple(a for a in L.atoms if a & x == a)


# -- axiom checkers ----------------------------------------------------------

def _intersection_closed(L: SetLattice) -> Diagnostic:
    for a, b in combinations(L.elements, 2):
        if a & b not in L:
            return _fail("intersection", "family is not closed under intersection", a, b)
    return PASS


def is_geometric_lattice(L: SetLattice) -> Diagnostic:
    """Lattice-of-flats axioms: empty set and ground present, intersection
    closed, and the covers of every non-top element meet pairwise in it and
    cover the whole ground set."""
    ground = L.ground_mask
    if 0 not in L or ground not in L:
        return _fail("1", "empty set and full ground set must both be present")
    d = _intersection_closed(L)
    if not d:
        return Diagnostic(False, "2", d.witness, d.message)
    for a in L.elements:
        if a == ground:
            continue
        covers = L.upper_covers[a]
        for b, c in combinations(covers, 2):
            if b & c != a:
                return _fail("3", "two covers intersect above the element", a, b, c)
        union = 0
        for b in covers:
            union |= b
        if union != ground:
            return _fail("3", "covers do not union to the ground set", a, ground & ~union)
    return PASS


def is_geometric_poset(L: SetLattice) -> Diagnostic:
    """Finite atomistic graded submodular lattice (the order-theoretic form)."""
    for d in (L.lattice_diagnostic, L.graded_diagnostic, L.atomistic_diagnostic):
        if not d:
            return d
    r = L.rank_of
    for a, b in combinations(L.elements, 2):
        if r[a] + r[b] < r[meet(L, a, b)] + r[join(L, a, b)]:
            return _fail("submodular", "rank is not submodular", a, b)
    return PASS


def is_cn_lattice(L: SetLattice, *, waive_intersections: bool = True) -> Diagnostic:
    """C_n lattice axioms on the star-closed ground ``L.ground_mask`` ⊆ J.

    The cover condition is waived for elements covered by the top.  With
    ``waive_intersections=False`` only the union clause is waived for them.
    """
    if L.n is None:
        return _fail("ground", "C_n lattices need a signed ground set")
    n, top = L.n, L.ground_mask
    if star_mask(top, n) != top:
        return _fail("ground", "ground set is not star closed", top)
    if 0 not in L or top not in L:
        return _fail("1", "empty set and J must both be present")
    for a in L.elements:
        if a != top and not is_admissible_mask(a, n):
            return _fail("2", "non-admissible element other than J", a)
    d = _intersection_closed(L)
    if not d:
        return Diagnostic(False, "3", d.witness, d.message)
    for a in L.elements:
        if a == top:
            continue
        covers = L.upper_covers[a]
        exempt = top in covers
        if not exempt or not waive_intersections:
            for b, c in combinations(covers, 2):
                if b & c != a:
                    return _fail("4", "two covers intersect above the element", a, b, c)
        if exempt:
            continue
        union = 0
        for b in covers:
            union |= b
        want = top & ~star_mask(a, n)
        if union != want:
            return _fail("4", "covers do not union to J minus the star of the element",
                         a, union, want)
    return PASS


def axiom4_readings_disagree(L: SetLattice) -> bool:
    """True when the two readings of the cover-axiom exemption differ on L."""
    return bool(is_cn_lattice(L)) != bool(is_cn_lattice(L, waive_intersections=False))


def is_full_cn_lattice(L: SetLattice) -> bool:
    """All admissible subsets of J plus J itself."""
    if L.n is None:
        return False
    n = L.n
    return len(L) == 3 ** n + 1 and all(
        is_admissible_mask(m, n) or m == full_mask(n) for m in L.elements)


# -- intervals and chains ------------------------------------------------------

def interval(L: SetLattice, a: int, b: int | None = None) -> tuple[int, ...]:
    b = L.top if b is None else b
    return tuple(x for x in L.elements if x & a == a and x & b == x)


def interval_restrict(L: SetLattice, a: int) -> SetLattice:
    """[a, top] with ``a`` removed from every element, the top becoming
    J' = ground minus (a ∪ a*)."""
    if L.n is None:
        raise LatticeInputError("interval restriction needs a signed ground set")
    if a not in L:
        raise LatticeInputError(f"{L.fmt(a)} is not an element of the lattice")
    top = L.ground_mask
    if a == top:
        raise LatticeInputError("cannot restrict to the top element")
    new_ground = top & ~(a | star_mask(a, L.n))
    if new_ground == 0:
        raise LatticeError(
            f"interval above {L.fmt(a)} collapses: a and a* cover the whole ground set")
    family = []
    for x in interval(L, a):
        family.append(new_ground if x == top else x & ~a)
    return build_lattice(family, L.n, ground_mask=new_ground)


@dataclass(frozen=True)
class ChainComplex:
    vertices: tuple[int, ...]
    facets: tuple[frozenset, ...]

    @property
    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1


def maximal_chains(L: SetLattice, start: int | None = None) -> list[tuple[int, ...]]:
    """Maximal chains from ``start`` (default bottom) to the top via covers."""
    start = L.bottom if start is None else start
    top = L.top
    out = []

    def walk(x, path):
        if x == top:
            out.append(tuple(path))
            return
        for y in L.upper_covers[x]:
            path.append(y)
            walk(y, path)
            path.pop()

    walk(start, [start])
    return out


def order_complex(L: SetLattice, proper: bool = False) -> ChainComplex:
    chains = maximal_chains(L)
    if proper:
        chains = [c[1:-1] for c in chains]
    verts = sorted({v for c in chains for v in c}, key=lambda m: (popcount(m), m))
    return ChainComplex(tuple(verts), tuple(frozenset(c) for c in chains))
