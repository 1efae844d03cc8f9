"""Spikes with no tip: the doubled n-cycle with a family of balanced
transversal cycles, and the lift matroid it defines.

Edge position i (1..n) joins cycle vertices i-1 and i (mod n); its two
parallel copies are the ground elements i and i* of J.  The simple cycles
of this multigraph are exactly the digons {i, i*} and the 2^n transversals.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from .core import bits, element_names, full_mask, is_admissible_mask, parse_mask, popcount, transversal_masks
from .lattice import Diagnostic, SetLattice
from .matroid import IndependenceFamily, Matroid, matroid_from_family
from .symplectic import BasisFamily, remark_4_11_check, symplectic_to_lattice, admissible_part


class SpikeError(ValueError):
    pass


@dataclass(frozen=True)
class SpikeGraph:
    n: int
    balanced: tuple[int, ...]

    def __post_init__(self):
        if self.n < 2:
            raise SpikeError("the doubled cycle needs at least two vertices")
        object.__setattr__(self, "balanced", tuple(sorted(set(self.balanced))))
        full = full_mask(self.n)
        for T in self.balanced:
            if popcount(T) != self.n or not is_admissible_mask(T, self.n) or T & ~full:
                raise SpikeError("balanced cycles must be transversals (no pair of double edges)")

    def cycles(self) -> list[int]:
        digons = [(1 << i) | (1 << (i + self.n)) for i in range(self.n)]
        return digons + list(transversal_masks(self.n))

    def to_json(self) -> dict:
        names = element_names(self.n)
        return {"n": self.n, "balanced": [[names[b] for b in bits(m)] for m in self.balanced]}


def parse_spike(data: dict | str) -> SpikeGraph:
    if isinstance(data, str):
        data = json.loads(data)
    n = int(data["n"])
    return SpikeGraph(n, tuple(parse_mask(t, n) for t in data.get("balanced", [])))


def theta_pairs(n: int) -> list[tuple[int, int, int]]:
    """(C1, C2, third cycle) for every pair of transversals whose union is a
    theta graph.  Two transversals share every vertex, so their
    intersection is a path exactly when they differ in one position; the
    third cycle is then that position's digon."""
    out = []
    trans = sorted(transversal_masks(n))
    for t1, t2 in combinations(trans, 2):
        diff = t1 ^ t2
        if popcount(diff) == 2:
            out.append((t1, t2, diff))
    return out


def theta_check(G: SpikeGraph) -> Diagnostic:
    balanced = set(G.balanced)
    for t1, t2, third in theta_pairs(G.n):
        if t1 in balanced and t2 in balanced and third not in balanced:
            return Diagnostic(False, "theta", (t1, t2, third),
                              "two balanced cycles meet in a path but the third cycle is unbalanced")
    return Diagnostic(True)


def lift_independents(G: SpikeGraph) -> IndependenceFamily:
    """Edge sets holding no balanced cycle and at most one cycle."""
    d = theta_check(G)
    if not d:
        raise SpikeError(d.message)
    cycles = G.cycles()
    balanced = set(G.balanced)
    members = set()
    for X in range(1 << (2 * G.n)):
        inside = [c for c in cycles if c & X == c]
        if len(inside) <= 1 and not any(c in balanced for c in inside):
            members.add(X)
    return IndependenceFamily(tuple(element_names(G.n)), frozenset(members))


def lift_matroid(G: SpikeGraph) -> Matroid:
    return matroid_from_family(lift_independents(G))


def spike_to_symplectic(G: SpikeGraph) -> tuple[SetLattice, BasisFamily]:
    M = lift_matroid(G)
    d, bases = remark_4_11_check(M, G.n)
    if not d:
        raise SpikeError(
            "lift matroid rank differs from the symplectic rank of its admissible "
            f"independents: {d.message}")
    lattice = symplectic_to_lattice(admissible_part(M.family), M.rank())
    return lattice, bases


def all_spikes(n: int):
    """Every balanced family on the doubled n-cycle that has the theta property."""
    trans = sorted(transversal_masks(n))
    for k in range(len(trans) + 1):
        for fam in combinations(trans, k):
            G = SpikeGraph(n, fam)
            if theta_check(G):
                yield G
