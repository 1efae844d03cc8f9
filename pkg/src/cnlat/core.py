"""Signed ground set J = [n] + [n]*, the star involution, admissible orders
and the Gale order.

Subsets of J are stored as bitmasks: element i sits at bit i-1 and i* at
bit n+i-1.  Most of the package works on raw masks for speed; ``SignedSet``
is the user-facing wrapper that knows its ``n`` and prints itself.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Iterator, Sequence

MAX_N = 32


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise ValueError(f"half-size n must be in [1, {MAX_N}], got {n}")


def full_mask(n: int) -> int:
    return (1 << (2 * n)) - 1


def low_mask(n: int) -> int:
    return (1 << n) - 1


def star_mask(mask: int, n: int) -> int:
    low = low_mask(n)
    return ((mask & low) << n) | ((mask >> n) & low)


def is_admissible_mask(mask: int, n: int) -> bool:
    return mask & star_mask(mask, n) == 0


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, the empty mask last."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True, order=True)
class Element:
    index: int
    starred: bool = False

    def star(self) -> "Element":
        return Element(self.index, not self.starred)

    def bit(self, n: int) -> int:
        if not 1 <= self.index <= n:
            raise ValueError(f"element {self} out of range for n={n}")
        return self.index - 1 + (n if self.starred else 0)

    @classmethod
    def parse(cls, text: str | int) -> "Element":
        text = str(text).strip()
        starred = text.endswith("*")
        body = text[:-1] if starred else text
        if not body.isdigit() or int(body) < 1:
            raise ValueError(f"bad element {text!r}")
        return cls(int(body), starred)

    @classmethod
    def from_bit(cls, bit: int, n: int) -> "Element":
        if bit < n:
            return cls(bit + 1, False)
        return cls(bit - n + 1, True)

    def __str__(self) -> str:
        return f"{self.index}*" if self.starred else str(self.index)


def element_names(n: int) -> list[str]:
    return [str(Element.from_bit(b, n)) for b in range(2 * n)]


def format_mask(mask: int, n: int) -> str:
    return "{" + ",".join(str(Element.from_bit(b, n)) for b in bits(mask)) + "}"


def parse_mask(items: Iterable[str | int] | str, n: int) -> int:
    """Parse a list of element strings (or the literal "J") into a mask."""
    if isinstance(items, str):
        if items == "J":
            return full_mask(n)
        raise ValueError(f"expected a list of elements or 'J', got {items!r}")
    mask = 0
    for item in items:
        mask |= 1 << Element.parse(item).bit(n)
    return mask


@dataclass(frozen=True)
class SignedSet:
    n: int
    mask: int = 0

    def __post_init__(self):
        _check_n(self.n)
        if self.mask < 0 or self.mask > full_mask(self.n):
            raise ValueError("mask out of range")

    @classmethod
    def of(cls, n: int, items: Iterable[str | int] | str) -> "SignedSet":
        return cls(n, parse_mask(items, n))

    @classmethod
    def full(cls, n: int) -> "SignedSet":
        return cls(n, full_mask(n))

    def elements(self) -> list[Element]:
        return [Element.from_bit(b, self.n) for b in bits(self.mask)]

    def __contains__(self, e: Element | str) -> bool:
        if not isinstance(e, Element):
            e = Element.parse(e)
        return bool(self.mask >> e.bit(self.n) & 1)

    def __len__(self) -> int:
        return popcount(self.mask)

    def __iter__(self):
        return iter(self.elements())

    def _other(self, other: "SignedSet") -> int:
        if other.n != self.n:
            raise ValueError("signed sets over different ground sets")
        return other.mask

    def __or__(self, other):
        return SignedSet(self.n, self.mask | self._other(other))

    def __and__(self, other):
        return SignedSet(self.n, self.mask & self._other(other))

    def __sub__(self, other):
        return SignedSet(self.n, self.mask & ~self._other(other))

    def __le__(self, other):
        m = self._other(other)
        return self.mask & ~m == 0

    def __lt__(self, other):
        return self <= other and self.mask != other.mask

    def to_json(self) -> list[str]:
        return [str(e) for e in self.elements()]

    def __str__(self) -> str:
        return format_mask(self.mask, self.n)


def star(s: SignedSet) -> SignedSet:
    return SignedSet(s.n, star_mask(s.mask, s.n))


def is_admissible(s: SignedSet) -> bool:
    return is_admissible_mask(s.mask, s.n)


def transversal_masks(n: int) -> Iterator[int]:
    for signs in product((False, True), repeat=n):
        mask = 0
        for i, starred in enumerate(signs):
            mask |= 1 << (i + n if starred else i)
        yield mask


def transversals(n: int) -> Iterator[SignedSet]:
    """The 2^n maximal admissible subsets of J."""
    _check_n(n)
    for mask in transversal_masks(n):
        yield SignedSet(n, mask)


def admissible_masks(n: int) -> list[int]:
    """Every admissible subset of J (3^n of them), by increasing size."""
    out = []
    for choice in product((0, 1, 2), repeat=n):
        mask = 0
        for i, c in enumerate(choice):
            if c == 1:
                mask |= 1 << i
            elif c == 2:
                mask |= 1 << (i + n)
        out.append(mask)
    out.sort(key=lambda m: (popcount(m), m))
    return out


@dataclass(frozen=True)
class GroundOrder:
    """A linear order on J, given as a sequence of bit positions."""
    n: int
    sequence: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.sequence) != list(range(2 * self.n)):
            raise ValueError("a ground order must list every element of J exactly once")

    @classmethod
    def parse(cls, n: int, items: Sequence[str]) -> "GroundOrder":
        return cls(n, tuple(Element.parse(x).bit(n) for x in items))

    def positions(self) -> list[int]:
        pos = [0] * (2 * self.n)
        for i, b in enumerate(self.sequence):
            pos[b] = i
        return pos

    def is_admissible(self) -> bool:
        pos = self.positions()
        n = self.n
        for a in range(2 * n):
            for b in range(2 * n):
                if pos[a] <= pos[b]:
                    sa, sb = (a + n) % (2 * n), (b + n) % (2 * n)
                    if not pos[sb] <= pos[sa]:
                        return False
        return True

    def __str__(self) -> str:
        return "<".join(str(Element.from_bit(b, self.n)) for b in self.sequence)


# An admissible order is just a GroundOrder that passes is_admissible().
AdmissibleOrder = GroundOrder


def admissible_orders(n: int) -> Iterator[GroundOrder]:
    """All 2^n * n! admissible orders on J.

    Each is a signed permutation: the first half lists one element from every
    pair {i, i*}, and the second half is the star of the first half reversed.
    """
    _check_n(n)
    for perm in permutations(range(n)):
        for signs in product((False, True), repeat=n):
            first = [p + n if s else p for p, s in zip(perm, signs)]
            second = [(b + n) % (2 * n) for b in reversed(first)]
            yield GroundOrder(n, tuple(first + second))


def gale_leq_masks(a: int, b: int, positions: Sequence[int]) -> bool:
    pa = sorted(positions[x] for x in bits(a))
    pb = sorted(positions[x] for x in bits(b))
    if len(pa) != len(pb):
        raise ValueError("Gale order compares sets of equal size only")
    return all(x <= y for x, y in zip(pa, pb))


def gale_leq(a: SignedSet, b: SignedSet, order: GroundOrder) -> bool:
    if a.n != b.n or a.n != order.n:
        raise ValueError("mismatched ground sets")
    return gale_leq_masks(a.mask, b.mask, order.positions())


def signed_set_json(mask: int, n: int) -> str:
    return json.dumps(SignedSet(n, mask).to_json())
