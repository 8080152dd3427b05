"""Oscillation of block-combination values and stabilized subsequences.

A block family and a norm spec induce, for each block S = (s1, ..., sk), the
function a -> ||a1*X(s1) + ... + ak*X(sk)|| on coefficient tuples, where each
X(si) is the normalized indicator of si.  The oscillation gap over a finite
universe is the largest disagreement between two such functions on a rational
grid; stabilization searches look for subsets of the universe where the gap
drops under a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Optional, Sequence, Union

from .blocks import Block, BlockFamily, enumerate_blocks
from .errors import InsufficientBlocksError, InvalidArgumentError
from .normspace import (
    NormSpec,
    SupFamily,
    SupNorm,
    Vector,
    nonneg_grid,
    norm_eval,
    norm_eval_multiset,
)
from .sets import FiniteSet, SetGenerator

Rational = Union[Fraction, int]


@dataclass(frozen=True)
class ToleranceSchedule:
    """Strictly decreasing positive tolerances, evaluable at any stage."""

    ratio: Fraction = Fraction(1, 2)
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "ratio", Fraction(self.ratio))
        object.__setattr__(self, "scale", Fraction(self.scale))
        if not (0 < self.ratio < 1):
            raise InvalidArgumentError("ratio must lie strictly between 0 and 1")
        if self.scale <= 0:
            raise InvalidArgumentError("scale must be positive")

    def at(self, i: int) -> Fraction:
        if i < 1:
            raise InvalidArgumentError("stages are numbered from 1")
        return self.scale * self.ratio**i


def _is_index_invariant(spec: NormSpec) -> bool:
    if isinstance(spec, SupNorm):
        return True
    return isinstance(spec, SupFamily) and spec.index_invariant


@lru_cache(maxsize=4096)
def _unit_denominator(spec: NormSpec, size: int) -> Fraction:
    """Norm of the all-ones vector on any ``size`` consecutive coordinates."""
    return norm_eval_multiset(spec, [(Fraction(1), size)])


@lru_cache(maxsize=16384)
def _indicator_norm(spec: NormSpec, s: FiniteSet) -> Fraction:
    return norm_eval(spec, Vector.indicator(s))


def psi_eval(spec: NormSpec, block: Block, coeffs: Sequence[Rational]) -> Fraction:
    """Value of the block combination at the given coefficients."""
    if len(coeffs) != len(block):
        raise InvalidArgumentError(
            f"expected {len(block)} coefficients, got {len(coeffs)}"
        )
    cs = [Fraction(c) for c in coeffs]
    if _is_index_invariant(spec):
        items = []
        for c, part in zip(cs, block):
            d = _unit_denominator(spec, len(part))
            if d == 0:
                raise InvalidArgumentError("degenerate part under this spec")
            items.append((abs(c) / d, len(part)))
        return norm_eval_multiset(spec, items)
    entries: dict[int, Fraction] = {}
    for c, part in zip(cs, block):
        d = _indicator_norm(spec, part)
        if d == 0:
            raise InvalidArgumentError("degenerate part under this spec")
        for i in part:
            entries[i] = c / d
    return norm_eval(spec, Vector(entries))


def _coefficient_tuples(spec: NormSpec, k: int, grid_q: int) -> list[tuple[Fraction, ...]]:
    """Nonnegative grid, plus signed corners when index filters are present.

    The in-scope norms only see absolute entries, so nonnegative tuples carry
    the search; filtered specs get the sign corners probed anyway since their
    invariance is asserted rather than derived.
    """
    pts = nonneg_grid(k, grid_q)
    if not _is_index_invariant(spec):
        corners = [tuple(Fraction(x) for x in p)
                   for p in product((-1, 0, 1), repeat=k)]
        seen = set(pts)
        pts = pts + [c for c in corners if c not in seen]
    return pts


def _value_table(
    spec: NormSpec, blocks: Sequence[Block], tuples: Sequence[tuple[Fraction, ...]]
) -> list[list[Fraction]]:
    return [[psi_eval(spec, b, a) for a in tuples] for b in blocks]


def _spread(table: list[list[Fraction]], rows: Sequence[int], col_count: int,
            stop_at: Optional[Fraction] = None) -> Fraction:
    """Max over columns of (row max - row min); early exit once past stop_at."""
    worst = Fraction(0)
    for j in range(col_count):
        hi = lo = table[rows[0]][j]
        for r in rows[1:]:
            v = table[r][j]
            if v > hi:
                hi = v
            elif v < lo:
                lo = v
        if hi - lo > worst:
            worst = hi - lo
            if stop_at is not None and worst >= stop_at:
                return worst
    return worst


@dataclass(frozen=True)
class OscillationReport:
    gap: Fraction
    witness_pair: Optional[tuple[Block, Block]]
    witness_coeffs: Optional[tuple[Fraction, ...]]
    universe: FiniteSet
    grid_q: int
    block_count: int

    @property
    def vacuous(self) -> bool:
        return self.block_count < 2


def _gap_report(
    spec: NormSpec,
    blocks: Sequence[Block],
    tuples: Sequence[tuple[Fraction, ...]],
    table: list[list[Fraction]],
    universe: FiniteSet,
    grid_q: int,
) -> OscillationReport:
    if len(blocks) < 2:
        return OscillationReport(Fraction(0), None, None, universe, grid_q, len(blocks))
    gap = Fraction(0)
    wit = None
    for j, a in enumerate(tuples):
        hi_r = lo_r = 0
        for r in range(1, len(blocks)):
            v = table[r][j]
            if v > table[hi_r][j]:
                hi_r = r
            elif v < table[lo_r][j]:
                lo_r = r
        d = table[hi_r][j] - table[lo_r][j]
        if d > gap:
            gap = d
            wit = (blocks[hi_r], blocks[lo_r], a)
    if wit is None:
        return OscillationReport(Fraction(0), None, None, universe, grid_q, len(blocks))
    s, t, a = wit
    # Re-derive from scratch before reporting.
    assert abs(psi_eval(spec, s, a) - psi_eval(spec, t, a)) == gap
    return OscillationReport(gap, (s, t), a, universe, grid_q, len(blocks))


def oscillation_gap(
    spec: NormSpec, fam: BlockFamily, universe: FiniteSet, grid_q: int = 8
) -> OscillationReport:
    """Largest pairwise disagreement among block values inside the universe."""
    if universe.is_empty():
        raise InvalidArgumentError("universe must be nonempty")
    blocks = enumerate_blocks(fam, universe.max, within=universe)
    if len(blocks) < 2:
        raise InsufficientBlocksError(
            f"only {len(blocks)} block(s) fit inside {universe}"
        )
    tuples = _coefficient_tuples(spec, len(fam), grid_q)
    table = _value_table(spec, blocks, tuples)
    return _gap_report(spec, blocks, tuples, table, universe, grid_q)


@dataclass(frozen=True)
class StableSubsequenceResult:
    found: bool
    subset: Optional[FiniteSet]
    report: Optional[OscillationReport]
    best_subset: Optional[FiniteSet]
    best_gap: Optional[Fraction]
    epsilon: Fraction
    target: int
    strategy: str


def find_stable_subsequence(
    spec: NormSpec,
    fam: BlockFamily,
    epsilon: Rational,
    universe: FiniteSet,
    target: int,
    strategy: str = "exhaustive",
    grid_q: int = 8,
) -> StableSubsequenceResult:
    """Search for a subset whose internal block oscillation stays under epsilon.

    Exhaustive strategy scans subset sizes from the whole universe down to
    the target, each size in lexicographic order, and returns the first hit;
    so the answer is the lexicographically least among the largest stable
    subsets.  Greedy grows a subset left to right, keeping any element that
    does not break stability.  A miss is a value carrying the best subset
    seen, never an exception.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise InvalidArgumentError("epsilon must be positive")
    if not 1 <= target <= len(universe):
        raise InvalidArgumentError("target must be between 1 and the universe size")
    if strategy not in ("exhaustive", "greedy"):
        raise InvalidArgumentError(f"unknown strategy {strategy!r}")

    blocks = enumerate_blocks(fam, universe.max, within=universe)
    tuples = _coefficient_tuples(spec, len(fam), grid_q)
    table = _value_table(spec, blocks, tuples)
    unions = [frozenset(b.union().elements) for b in blocks]
    cols = len(tuples)

    def rows_inside(m: frozenset) -> list[int]:
        return [r for r, u in enumerate(unions) if u <= m]

    def finish(subset: FiniteSet, rows: list[int]) -> StableSubsequenceResult:
        rep = _gap_report(spec, [blocks[r] for r in rows], tuples,
                          [table[r] for r in rows], subset, grid_q)
        assert rep.gap < epsilon
        return StableSubsequenceResult(True, subset, rep, subset, rep.gap,
                                       epsilon, target, strategy)

    if strategy == "greedy":
        chosen: list[int] = []
        for x in universe:
            rows = rows_inside(frozenset(chosen + [x]))
            if len(rows) < 2 or _spread(table, rows, cols, stop_at=epsilon) < epsilon:
                chosen.append(x)
        subset = FiniteSet(chosen)
        rows = rows_inside(frozenset(chosen))
        if len(chosen) >= target:
            return finish(subset, rows)
        gap = _spread(table, rows, cols) if len(rows) >= 2 else Fraction(0)
        return StableSubsequenceResult(False, None, None, subset, gap,
                                       epsilon, target, strategy)

    best_subset: Optional[FiniteSet] = None
    best_gap: Optional[Fraction] = None
    elems = universe.elements
    for size in range(len(elems), target - 1, -1):
        for pick in combinations(elems, size):
            m = frozenset(pick)
            rows = rows_inside(m)
            if len(rows) < 2:
                gap = Fraction(0)
            else:
                # full spread, not early-exited: misses report their true gap
                gap = _spread(table, rows, cols)
            if gap < epsilon:
                return finish(FiniteSet(pick), rows)
            if best_gap is None or gap < best_gap:
                best_gap = gap
                best_subset = FiniteSet(pick)
    return StableSubsequenceResult(False, None, None, best_subset, best_gap,
                                   epsilon, target, strategy)


@dataclass(frozen=True)
class StageResult:
    index: int
    epsilon: Fraction
    threshold: Optional[int]  # least n with the tail past n stable, if any
    passed: bool
    witness_pair: Optional[tuple[Block, Block]]
    witness_coeffs: Optional[tuple[Fraction, ...]]
    witness_gap: Optional[Fraction]


@dataclass(frozen=True)
class AsymptoticReport:
    stages: tuple[StageResult, ...]
    all_passed: bool
    horizon: int


def asymptotic_stability_check(
    spec: NormSpec,
    fam: BlockFamily,
    schedule: ToleranceSchedule,
    horizon: int,
    universe: Union[FiniteSet, SetGenerator, None] = None,
    max_stages: int = 12,
    grid_q: int = 8,
) -> AsymptoticReport:
    """Stage-by-stage tail stabilization within a finite horizon.

    Stage i succeeds at the least threshold n such that every pair of blocks
    living strictly above n disagrees by less than the stage tolerance.  When
    the block supply runs out first, the stage fails and records the worst
    pair at the last assessable threshold.
    """
    if horizon < 1:
        raise InvalidArgumentError("horizon must be >= 1")
    if isinstance(universe, SetGenerator):
        uni = FiniteSet(x for x in range(1, horizon + 1) if universe.contains(x))
    elif universe is None:
        uni = FiniteSet(range(1, horizon + 1))
    else:
        uni = universe
    blocks = enumerate_blocks(fam, horizon, within=uni)
    if len(blocks) < 2:
        raise InsufficientBlocksError("horizon hosts fewer than two blocks")
    tuples = _coefficient_tuples(spec, len(fam), grid_q)
    table = _value_table(spec, blocks, tuples)
    mins = [b.min for b in blocks]
    cols = len(tuples)

    stages = []
    for i in range(1, max_stages + 1):
        eps = schedule.at(i)
        result: Optional[StageResult] = None
        last_rows: list[int] = []
        for n in range(0, horizon + 1):
            rows = [r for r, mn in enumerate(mins) if mn > n]
            if len(rows) < 2:
                break
            last_rows = rows
            if _spread(table, rows, cols, stop_at=eps) < eps:
                result = StageResult(i, eps, n, True, None, None, None)
                break
        if result is None:
            sub = _gap_report(spec, [blocks[r] for r in last_rows], tuples,
                              [table[r] for r in last_rows], uni, grid_q)
            result = StageResult(i, eps, None, False, sub.witness_pair,
                                 sub.witness_coeffs, sub.gap)
        stages.append(result)
    return AsymptoticReport(tuple(stages), all(s.passed for s in stages), horizon)
