"""Named fixture lattices used by tests, the suite and the CLI."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import admissible_masks, full_mask, parse_mask
from .lattice import SetLattice, build_lattice


@dataclass(frozen=True)
class Fixture:
    name: str
    lattice: SetLattice
    note: str


def _j_lattice(n, families):
    return build_lattice([parse_mask(f, n) for f in families], n)


def full_cn_lattice(n: int) -> SetLattice:
    """All admissible subsets of J plus J."""
    return build_lattice(admissible_masks(n) + [full_mask(n)], n)


def fix_a() -> SetLattice:
    return full_cn_lattice(2)


def fix_b() -> SetLattice:
    return _j_lattice(2, [[], ["1", "2*"], ["1*", "2"], "J"])


def fix_c() -> SetLattice:
    return _j_lattice(2, [[], ["1"], ["2"], ["1*"], ["2*"], "J"])


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def partition_name(part) -> str:
    blocks = sorted(sorted(b) for b in part)
    return "/".join("".join(str(x) for x in b) for b in blocks)


def _refines(p, q) -> bool:
    return all(any(set(b) <= set(c) for c in q) for b in p)


def dual_partition_lattice(m: int = 4) -> SetLattice:
    """Partitions of [m] ordered by reverse refinement, realized on the
    two-block partitions (its atoms): each partition is the set of
    two-block partitions it refines."""
    parts = list(set_partitions(range(1, m + 1)))
    atoms = sorted((p for p in parts if len(p) == 2), key=partition_name)
    labels = [partition_name(a) for a in atoms]
    masks, names = [], {}
    for p in parts:
        mask = sum(1 << i for i, q in enumerate(atoms) if _refines(p, q))
        masks.append(mask)
        names[mask] = partition_name(p)
    return build_lattice(masks, labels=labels, names=names)


def partition_lattice(m: int = 4) -> SetLattice:
    """Partitions of [m] under refinement (a geometric lattice), realized on
    its atoms: each partition is the set of single-merge partitions below it."""
    parts = list(set_partitions(range(1, m + 1)))
    atoms = sorted((p for p in parts if len(p) == m - 1), key=partition_name)
    labels = [partition_name(a) for a in atoms]
    masks, names = [], {}
    for p in parts:
        mask = sum(1 << i for i, q in enumerate(atoms) if _refines(q, p))
        masks.append(mask)
        names[mask] = partition_name(p)
    return build_lattice(masks, labels=labels, names=names)


def fix_d() -> SetLattice:
    return dual_partition_lattice(4)


# The flat added by the induced geometric lattice of FIX-D: the three
# two-by-two partitions, which pairwise join to the top in FIX-D.
FIX_E_NEW_ELEMENT = ("12/34", "13/24", "14/23")


def fix_e() -> SetLattice:
    d = fix_d()
    x = sum(1 << d.labels.index(lab) for lab in FIX_E_NEW_ELEMENT)
    names = dict(d.names)
    names[x] = "X"
    return build_lattice(list(d.elements) + [x], labels=d.labels, names=names)


def boolean_lattice(m: int) -> SetLattice:
    labels = [str(i) for i in range(1, m + 1)]
    masks = [sum(1 << i for i in c) for k in range(m + 1) for c in combinations(range(m), k)]
    return build_lattice(masks, labels=labels)


def chain_lattice() -> SetLattice:
    return _j_lattice(1, [[], ["1"], "J"])


def fixtures() -> dict[str, Fixture]:
    return {
        "FIX-A": Fixture("FIX-A", fix_a(), "full C_2 lattice: every admissible subset plus J"),
        "FIX-B": Fixture("FIX-B", fix_b(), "C_2 lattice of the two-edge spike"),
        "FIX-C": Fixture("FIX-C", fix_c(), "admissible sets of size <= 1 plus J"),
        "FIX-D": Fixture("FIX-D", fix_d(), "dual of the partition lattice of [4]"),
        "FIX-E": Fixture("FIX-E", fix_e(), "FIX-D with its one missing flat added"),
    }


def get_fixture(name: str) -> SetLattice:
    table = fixtures()
    key = name.upper()
    if not key.startswith("FIX-"):
        key = "FIX-" + key
    if key not in table:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(table)}")
    return table[key].lattice
