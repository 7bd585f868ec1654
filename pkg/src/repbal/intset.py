"""Bounded integer sets backed by arbitrary-size bit masks.

Every set in this package is a finite window [0, bound) of a conceptually
infinite set of nonnegative integers.  The bound is an exclusive knowledge
horizon: queries at or past it raise ``OutOfWindowError`` instead of silently
answering "absent", and the one operation that can push elements past the
horizon (``shift``) reports how many it dropped.  Values are immutable and
every operation is a pure function, so they are safe to share freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

__all__ = [
    "BoundedSet",
    "OutOfWindowError",
    "ProgressionSpec",
    "digit_sum_2",
    "progression_set",
]


class OutOfWindowError(ValueError):
    """A membership or truncation query touched [bound, infinity)."""


def digit_sum_2(n: int) -> int:
    """Count of 1 digits in the binary representation of n; 0 for n = 0."""
    if n < 0:
        raise ValueError(f"binary digit sum is defined for n >= 0, got {n}")
    return n.bit_count()


@dataclass(frozen=True)
class ProgressionSpec:
    """The arithmetic progression {r + m*k : k >= 0} of excluded values."""

    r: int
    m: int

    def __post_init__(self) -> None:
        if self.r < 0:
            raise ValueError(f"progression offset must be >= 0, got r={self.r}")
        if self.m < 2:
            raise ValueError(f"progression modulus must be >= 2, got m={self.m}")


@dataclass(frozen=True)
class BoundedSet:
    """Immutable set of integers in [0, bound); bit i of mask is set iff i is a member.

    Binary set operations require both operands to share one bound, so that a
    result never quietly pretends to know more than its inputs.  Membership
    queries (``chi`` and ``in``) are total on [0, bound) and refuse anything
    outside it.
    """

    bound: int
    mask: int = 0

    def __post_init__(self) -> None:
        if self.bound < 0:
            raise ValueError(f"bound must be >= 0, got {self.bound}")
        if self.mask < 0 or self.mask >> self.bound != 0:
            raise ValueError("mask holds elements at or beyond the bound")

    @classmethod
    def from_elements(cls, elements: Iterable[int], bound: int) -> BoundedSet:
        mask = 0
        for e in elements:
            if not 0 <= e < bound:
                raise ValueError(f"element {e} outside [0, {bound})")
            mask |= 1 << e
        return cls(bound, mask)

    @classmethod
    def empty(cls, bound: int) -> BoundedSet:
        return cls(bound, 0)

    @classmethod
    def full(cls, bound: int) -> BoundedSet:
        return cls(bound, (1 << bound) - 1)

    def chi(self, t: int) -> int:
        """Characteristic function: 1 iff t is a member, 0 otherwise."""
        if not 0 <= t < self.bound:
            raise OutOfWindowError(f"chi({t}) outside the window [0, {self.bound})")
        return (self.mask >> t) & 1

    def __contains__(self, t: int) -> bool:
        return self.chi(t) == 1

    def __iter__(self) -> Iterator[int]:
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def elements(self) -> list[int]:
        return list(self)

    def min_element(self) -> int:
        if not self.mask:
            raise ValueError("empty set has no minimum")
        return (self.mask & -self.mask).bit_length() - 1

    def max_element(self) -> int:
        if not self.mask:
            raise ValueError("empty set has no maximum")
        return self.mask.bit_length() - 1

    def _check_same_bound(self, other: BoundedSet) -> None:
        if self.bound != other.bound:
            raise ValueError(f"bound mismatch: {self.bound} != {other.bound}")

    def __or__(self, other: BoundedSet) -> BoundedSet:
        self._check_same_bound(other)
        return BoundedSet(self.bound, self.mask | other.mask)

    def __and__(self, other: BoundedSet) -> BoundedSet:
        self._check_same_bound(other)
        return BoundedSet(self.bound, self.mask & other.mask)

    def __sub__(self, other: BoundedSet) -> BoundedSet:
        self._check_same_bound(other)
        return BoundedSet(self.bound, self.mask & ~other.mask)

    def complement(self) -> BoundedSet:
        return BoundedSet(self.bound, self.mask ^ ((1 << self.bound) - 1))

    def isdisjoint(self, other: BoundedSet) -> bool:
        self._check_same_bound(other)
        return self.mask & other.mask == 0

    def truncate(self, x: int) -> BoundedSet:
        """Subset of elements <= x (inclusive); the knowledge window is kept."""
        if not 0 <= x < self.bound:
            raise OutOfWindowError(f"truncate({x}) outside the window [0, {self.bound})")
        return BoundedSet(self.bound, self.mask & ((1 << (x + 1)) - 1))

    def shift(self, a: int) -> tuple[BoundedSet, int]:
        """Translate every element by a >= 0 within the same window.

        Elements pushed to or past the bound are dropped; the second return
        value reports how many, so callers can insist on losslessness.
        """
        if a < 0:
            raise ValueError(f"shift distance must be >= 0, got {a}")
        moved = self.mask << a
        kept = moved & ((1 << self.bound) - 1)
        return BoundedSet(self.bound, kept), (moved >> self.bound).bit_count()

    def widen(self, new_bound: int) -> BoundedSet:
        """Extend the knowledge window; the element content is unchanged."""
        if new_bound < self.bound:
            raise ValueError(f"widen cannot shrink the bound ({self.bound} -> {new_bound})")
        return BoundedSet(new_bound, self.mask)

    def to_text(self) -> str:
        """Two-line fixture format: ``bound=<N>`` then comma-separated sorted elements."""
        return f"bound={self.bound}\n" + ",".join(str(e) for e in self) + "\n"

    @classmethod
    def from_text(cls, text: str) -> BoundedSet:
        lines = text.splitlines()
        if len(lines) != 2 or not lines[0].startswith("bound="):
            raise ValueError("expected two lines: 'bound=<N>' then the elements")
        bound = int(lines[0][len("bound="):])
        body = lines[1].strip()
        if not body:
            return cls(bound, 0)
        elems = [int(tok) for tok in body.split(",")]
        if any(elems[i] >= elems[i + 1] for i in range(len(elems) - 1)):
            raise ValueError("elements must be strictly increasing")
        return cls.from_elements(elems, bound)

    def __repr__(self) -> str:
        elems = self.elements()
        shown = ",".join(map(str, elems[:12])) + (",..." if len(elems) > 12 else "")
        return f"BoundedSet(bound={self.bound}, {{{shown}}})"


def progression_set(spec: ProgressionSpec, bound: int) -> BoundedSet:
    """Materialize {r + m*k : k >= 0} inside [0, bound)."""
    mask = 0
    for v in range(spec.r, bound, spec.m):
        mask |= 1 << v
    return BoundedSet(bound, mask)
