"""Blocks: tuples of barrier members stacked strictly one above another.

A block over the family (B1, ..., Bk) is (s1, ..., sk) with si from Bi and
max(si) < min(s(i+1)).  Concatenating the parts is a bijection onto the
concatenation-sum barrier; the inverse peels fronts greedily, which is exact
because no barrier contains two comparable initial segments of the same set.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key, lru_cache
from typing import Iterable, Optional, Union

from .barriers import (
    BarrierDescriptor,
    Sum,
    _front_along_finite,
    enumerate_up_to,
)
from .errors import InvalidArgumentError, NotInSumError
from .sets import FiniteSet, SetGenerator, lex_cmp, probe_equal


class Block:
    """Immutable stacked tuple of finite sets."""

    __slots__ = ("parts", "_hash")

    def __init__(self, parts: Iterable[FiniteSet]):
        ps = tuple(parts)
        if not ps:
            raise InvalidArgumentError("a block needs at least one part")
        for p in ps:
            if not isinstance(p, FiniteSet) or p.is_empty():
                raise InvalidArgumentError("block parts must be nonempty finite sets")
        for a, b in zip(ps, ps[1:]):
            if not a.all_below(b):
                raise InvalidArgumentError(f"parts out of order: {a} !< {b}")
        object.__setattr__(self, "parts", ps)
        object.__setattr__(self, "_hash", hash(ps))

    def __setattr__(self, name, value):
        raise AttributeError("Block is immutable")

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Block) and self.parts == other.parts

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return "(" + ", ".join(repr(p) for p in self.parts) + ")"

    def union(self) -> FiniteSet:
        out: tuple[int, ...] = ()
        for p in self.parts:
            out = out + p.elements
        return FiniteSet(out)

    @property
    def min(self) -> int:
        return self.parts[0].min

    @property
    def max(self) -> int:
        return self.parts[-1].max


@dataclass(frozen=True)
class BlockFamily:
    """The barrier tuple blocks are drawn from."""

    parts: tuple[BarrierDescriptor, ...]

    def __post_init__(self):
        if not self.parts:
            raise InvalidArgumentError("a block family needs at least one barrier")
        g0 = self.parts[0].ground()
        for p in self.parts[1:]:
            if not probe_equal(g0, p.ground()):
                raise InvalidArgumentError("family parts must share a ground set")

    def __len__(self) -> int:
        return len(self.parts)

    def concat_sum(self) -> Sum:
        return Sum(self.parts)


def _block_cmp(x: Block, y: Block) -> int:
    """Total order refining the directed order: first-part maxima, then lex."""
    a, b = x.parts[0].max, y.parts[0].max
    if a != b:
        return -1 if a < b else 1
    return lex_cmp(x.union(), y.union())


block_sort_key = cmp_to_key(_block_cmp)


def enumerate_blocks(
    fam: BlockFamily, n: int, within: Optional[FiniteSet] = None
) -> tuple[Block, ...]:
    """All blocks with elements <= n (and inside ``within`` if given)."""
    return _enumerate_blocks_cached(fam, n, within)


@lru_cache(maxsize=512)
def _enumerate_blocks_cached(
    fam: BlockFamily, n: int, within: Optional[FiniteSet]
) -> tuple[Block, ...]:
    inside = (lambda s: True) if within is None else (
        lambda s: all(x in within for x in s)
    )
    out = _assemble(fam.parts, n, 0, inside)
    return tuple(sorted(out, key=block_sort_key))


def _assemble(parts, n, lo, inside) -> list[Block]:
    # memoized on (part index, lower bound): heads sharing a max share tails
    memo: dict[tuple[int, int], list[Block]] = {}

    def go(i: int, bound: int) -> list[Block]:
        key = (i, bound)
        if key in memo:
            return memo[key]
        heads = [s for s in enumerate_up_to(parts[i], n) if s.min > bound and inside(s)]
        if i == len(parts) - 1:
            out = [Block((s,)) for s in heads]
        else:
            out = []
            for h in heads:
                for rest in go(i + 1, h.max):
                    out.append(Block((h,) + rest.parts))
        memo[key] = out
        return out

    return go(0, lo)


def to_concat(block: Block) -> FiniteSet:
    """Flatten a block into the concatenation of its parts."""
    return block.union()


def from_concat(fam: BlockFamily, s: FiniteSet) -> Block:
    """Invert :func:`to_concat` by peeling the front of each part in turn.

    Raises :class:`NotInSumError` with the recovered prefix and the leftover
    when the set is not a concatenation over the family.
    """
    consumed: list[FiniteSet] = []
    rest = s
    for b in fam.parts:
        if rest.is_empty():
            raise NotInSumError(
                tuple(consumed), rest, f"{s} ran out before part {len(consumed) + 1}"
            )
        piece = _front_along_finite(b, rest)
        if piece is None:
            raise NotInSumError(
                tuple(consumed), rest, f"no initial segment of {rest} in part {len(consumed) + 1}"
            )
        consumed.append(piece)
        rest = rest.suffix_after(piece.max)
    if not rest.is_empty():
        raise NotInSumError(tuple(consumed), rest, f"leftover {rest} after final part")
    return Block(consumed)


def block_compare(x: Block, y: Block) -> str:
    """Directed-order comparison: less / greater / equal / incomparable.

    Blocks with the same underlying union are identified; otherwise the
    order holds only when one block ends before the other begins.
    """
    if len(x) != len(y):
        raise InvalidArgumentError("blocks must have the same length to compare")
    if x.union() == y.union():
        return "equal"
    if x.parts[0].max < y.parts[0].min:
        return "less"
    if y.parts[0].max < x.parts[0].min:
        return "greater"
    return "incomparable"
