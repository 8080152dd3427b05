"""Finite subsets of the positive integers, plus infinite-set descriptors.

Naturals start at 1 throughout.  A :class:`FiniteSet` is stored as a strictly
increasing tuple; the lexicographic order used everywhere is the one induced
by symmetric differences: ``s`` precedes ``t`` when ``min(s ^ t)`` lies in
``s``.  Infinite sets never materialize; they are closed descriptors
(:class:`SetGenerator`) supporting decidable membership, iteration, and
tail restriction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from itertools import islice
from typing import Iterable, Iterator, Union

from .errors import InvalidArgumentError


class FiniteSet:
    """Immutable finite set of positive integers."""

    __slots__ = ("elements", "_hash")

    def __init__(self, elements: Iterable[int] = ()):
        elems = tuple(sorted(elements))
        for x in elems:
            if not isinstance(x, int) or isinstance(x, bool) or x < 1:
                raise InvalidArgumentError(f"elements must be integers >= 1, got {x!r}")
        for a, b in zip(elems, elems[1:]):
            if a == b:
                raise InvalidArgumentError(f"duplicate element {a}")
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "_hash", hash(elems))

    def __setattr__(self, name, value):
        raise AttributeError("FiniteSet is immutable")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.elements

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteSet) and self.elements == other.elements

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return "{" + ",".join(str(x) for x in self.elements) + "}"

    @property
    def min(self) -> int:
        if not self.elements:
            raise InvalidArgumentError("empty set has no minimum")
        return self.elements[0]

    @property
    def max(self) -> int:
        if not self.elements:
            raise InvalidArgumentError("empty set has no maximum")
        return self.elements[-1]

    def is_empty(self) -> bool:
        return not self.elements

    def all_below(self, other: "FiniteSet") -> bool:
        """True when every element here precedes every element of ``other``."""
        if self.is_empty() or other.is_empty():
            raise InvalidArgumentError("block order needs nonempty sets")
        return self.max < other.min

    def is_subset(self, other: "FiniteSet") -> bool:
        return set(self.elements) <= set(other.elements)

    def is_initial_segment_of(self, other: "FiniteSet") -> bool:
        n = len(self.elements)
        return self.elements == other.elements[:n]

    def concat(self, other: "FiniteSet") -> "FiniteSet":
        """Ordered union ``self`` followed by ``other``; requires self < other."""
        if not self.all_below(other):
            raise InvalidArgumentError(f"{self} does not lie entirely below {other}")
        return FiniteSet(self.elements + other.elements)

    def prefix(self, n: int) -> "FiniteSet":
        return FiniteSet(self.elements[:n])

    def suffix_after(self, n: int) -> "FiniteSet":
        """Elements strictly above ``n``."""
        return FiniteSet(x for x in self.elements if x > n)


def lex_cmp(s: FiniteSet, t: FiniteSet) -> int:
    """Three-way lexicographic comparison via least symmetric difference.

    Walk both sorted tuples; at the first disagreement, the set owning the
    smaller element comes first.  If one tuple is a proper prefix of the
    other, the longer set owns the least leftover element and comes first.
    """
    a, b = s.elements, t.elements
    for x, y in zip(a, b):
        if x != y:
            return -1 if x < y else 1
    if len(a) == len(b):
        return 0
    return -1 if len(a) > len(b) else 1


lex_key = cmp_to_key(lex_cmp)


@dataclass(frozen=True)
class SetRelation:
    """Outcome of :func:`compare_sets`: block order, lex order, end-extension."""

    less: bool
    lex: int  # -1, 0, or 1
    initial_segment: bool


def compare_sets(s: FiniteSet, t: FiniteSet) -> SetRelation:
    if s.is_empty() or t.is_empty():
        raise InvalidArgumentError("compare_sets needs nonempty sets")
    return SetRelation(
        less=s.max < t.min,
        lex=lex_cmp(s, t),
        initial_segment=s.is_initial_segment_of(t),
    )


# ---------------------------------------------------------------------------
# Infinite-set descriptors


class SetGenerator:
    """Closed descriptor of an infinite subset of the naturals."""

    def __iter__(self) -> Iterator[int]:
        raise NotImplementedError

    def contains(self, x: int) -> bool:
        raise NotImplementedError

    def after(self, n: int) -> "SetGenerator":
        """The descriptor of this set with everything <= n dropped."""
        raise NotImplementedError

    def first(self, k: int) -> tuple[int, ...]:
        return tuple(islice(iter(self), k))


@dataclass(frozen=True)
class CofiniteAfter(SetGenerator):
    """All naturals strictly above ``n``; ``CofiniteAfter(0)`` is the whole line."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise InvalidArgumentError("cofinite-after bound must be >= 0")

    def __iter__(self) -> Iterator[int]:
        x = self.n + 1
        while True:
            yield x
            x += 1

    def contains(self, x: int) -> bool:
        return x > self.n

    def after(self, n: int) -> SetGenerator:
        return CofiniteAfter(max(self.n, n))


@dataclass(frozen=True)
class Arithmetic(SetGenerator):
    """start, start+step, start+2*step, ..."""

    start: int
    step: int

    def __post_init__(self):
        if self.start < 1 or self.step < 1:
            raise InvalidArgumentError("arithmetic progression needs start >= 1, step >= 1")

    def __iter__(self) -> Iterator[int]:
        x = self.start
        while True:
            yield x
            x += self.step

    def contains(self, x: int) -> bool:
        return x >= self.start and (x - self.start) % self.step == 0

    def after(self, n: int) -> SetGenerator:
        if n < self.start:
            return self
        skipped = (n - self.start) // self.step + 1
        return Arithmetic(self.start + skipped * self.step, self.step)


@dataclass(frozen=True)
class PrefixThen(SetGenerator):
    """A finite explicit prefix followed by an infinite tail descriptor."""

    prefix: FiniteSet
    tail: SetGenerator

    def __post_init__(self):
        if self.prefix.is_empty():
            raise InvalidArgumentError("prefix must be nonempty; use the tail directly")
        if next(iter(self.tail)) <= self.prefix.max:
            raise InvalidArgumentError("prefix elements must all precede the tail")

    def __iter__(self) -> Iterator[int]:
        yield from self.prefix
        yield from self.tail

    def contains(self, x: int) -> bool:
        return x in self.prefix or self.tail.contains(x)

    def after(self, n: int) -> SetGenerator:
        surviving = self.prefix.suffix_after(n)
        if surviving.is_empty():
            return self.tail.after(n)
        return PrefixThen(surviving, self.tail)  # tail already lies above the prefix


def naturals() -> SetGenerator:
    return CofiniteAfter(0)


def evens() -> SetGenerator:
    return Arithmetic(2, 2)


def odds() -> SetGenerator:
    return Arithmetic(1, 2)


def probe_equal(g1: SetGenerator, g2: SetGenerator, samples: int = 32) -> bool:
    """Equality of descriptors up to a finite probe of their enumerations."""
    return g1.first(samples) == g2.first(samples)


def probe_subset(g1: SetGenerator, g2: SetGenerator, samples: int = 32) -> bool:
    """Whether the first ``samples`` elements of ``g1`` all belong to ``g2``."""
    return all(g2.contains(x) for x in g1.first(samples))


IntoSet = Union[FiniteSet, SetGenerator]
