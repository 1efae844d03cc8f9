"""Ordinary matroids given by an explicit independence family over a small
ground set (at most ~12 elements; everything is tabulated over all subsets)."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .core import bits, popcount


class MatroidAxiomError(ValueError):
    def __init__(self, axiom: str, message: str, witness: tuple = ()):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


@dataclass(frozen=True, eq=False)
class IndependenceFamily:
    labels: tuple[str, ...]
    members: frozenset

    @property
    def size(self) -> int:
        return len(self.labels)

    def __contains__(self, mask: int) -> bool:
        return mask in self.members

    def __iter__(self):
        return iter(sorted(self.members, key=lambda m: (popcount(m), m)))

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        if not isinstance(other, IndependenceFamily):
            return NotImplemented
        return self.labels == other.labels and self.members == other.members

    def __hash__(self):
        return hash((self.labels, self.members))

    def maximal(self) -> list[int]:
        return [m for m in self if not any(
            o != m and o & m == m for o in self.members)]

    def fmt(self, mask: int) -> str:
        return "{" + ",".join(self.labels[b] for b in bits(mask)) + "}"

    def to_json(self) -> dict:
        return {"ground": list(self.labels),
                "independents": [[self.labels[b] for b in bits(m)] for m in self]}


def downward_closure(masks: Iterable[int]) -> set[int]:
    out = set()
    stack = list(masks)
    while stack:
        m = stack.pop()
        if m in out:
            continue
        out.add(m)
        for b in bits(m):
            stack.append(m & ~(1 << b))
    return out


def check_independence_axioms(family: IndependenceFamily):
    """Return None if the family is a matroid, else (axiom, message, witness)."""
    members = family.members
    if 0 not in members:
        return ("I1", "the empty set is not independent", ())
    for m in members:
        for b in bits(m):
            if m & ~(1 << b) not in members:
                return ("I2", "family is not closed under taking subsets", (m, m & ~(1 << b)))
    by_size = sorted(members, key=popcount)
    for big in by_size:
        for small in by_size:
            if popcount(small) >= popcount(big):
                break
            if not any(small | (1 << x) in members for x in bits(big & ~small)):
                return ("I3", "exchange fails", (big, small))
    return None


class Matroid:
    def __init__(self, family: IndependenceFamily):
        self.family = family
        self.labels = family.labels
        self.size = family.size

    @cached_property
    def rank_table(self) -> list[int]:
        members = self.family.members
        table = [0] * (1 << self.size)
        for mask in range(1, 1 << self.size):
            if mask in members:
                table[mask] = popcount(mask)
            else:
                table[mask] = max(table[mask & ~(1 << b)] for b in bits(mask))
        return table

    def rank(self, mask: int | None = None) -> int:
        if mask is None:
            mask = (1 << self.size) - 1
        return self.rank_table[mask]

    def is_independent(self, mask: int) -> bool:
        return mask in self.family.members

    def closure(self, mask: int) -> int:
        r = self.rank_table[mask]
        out = mask
        for b in range(self.size):
            if not mask >> b & 1 and self.rank_table[mask | 1 << b] == r:
                out |= 1 << b
        return out

    def is_flat(self, mask: int) -> bool:
        return self.closure(mask) == mask

    @cached_property
    def flats(self) -> list[int]:
        return [m for m in range(1 << self.size) if self.is_flat(m)]

    @cached_property
    def bases(self) -> list[int]:
        r = self.rank()
        return [m for m in self.family if popcount(m) == r]

    def to_json(self, key: str = "independents") -> dict:
        if key == "bases":
            return {"ground": list(self.labels),
                    "bases": [[self.labels[b] for b in bits(m)] for m in self.bases]}
        return self.family.to_json()


def matroid_from_family(family: IndependenceFamily) -> Matroid:
    problem = check_independence_axioms(family)
    if problem is not None:
        raise MatroidAxiomError(*problem)
    return Matroid(family)


def matroid_from_bases(labels: Sequence[str], bases: Iterable[int]) -> Matroid:
    fam = IndependenceFamily(tuple(labels), frozenset(downward_closure(bases)))
    return matroid_from_family(fam)


def uniform_matroid(labels: Sequence[str], r: int) -> Matroid:
    m = len(labels)
    members = frozenset(
        sum(1 << b for b in c) for k in range(r + 1) for c in combinations(range(m), k))
    return Matroid(IndependenceFamily(tuple(labels), members))


def check_rank_axioms(rank: Sequence[int], size: int):
    """Matroid rank axioms over all 2^size subsets.  Returns None or
    (axiom, witness)."""
    if rank[0] != 0:
        return ("normalization", (0,))
    full = 1 << size
    for s in range(full):
        for b in range(size):
            if not s >> b & 1:
                t = s | 1 << b
                if not rank[s] <= rank[t] <= rank[s] + 1:
                    return ("unit-increase", (s, t))
    for x in range(full):
        for y in range(x + 1, full):
            if rank[x] + rank[y] < rank[x & y] + rank[x | y]:
                return ("submodularity", (x, y))
    return None


def parse_family(data: dict | str) -> tuple[tuple[str, ...], list[int], str]:
    if isinstance(data, str):
        data = json.loads(data)
    labels = tuple(str(x) for x in data["ground"])
    pos = {lab: i for i, lab in enumerate(labels)}
    key = "bases" if "bases" in data else "independents"
    return labels, [sum(1 << pos[str(x)] for x in s) for s in data[key]], key


def submodularity_witness(rank: Sequence[int], size: int):
    """First pair (X, Y) with r(X) + r(Y) < r(X∩Y) + r(X∪Y), or None."""
    full = 1 << size
    for x in range(full):
        for y in range(x + 1, full):
            if rank[x] + rank[y] < rank[x & y] + rank[x | y]:
                return (x, y)
    return None
