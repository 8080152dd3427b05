"""Limit norms along barrier sequences, and the worked two-model comparison.

A barrier sequence (finite prefix, then one barrier repeated forever) induces
a norm on coefficient tuples: place the coefficients on far-apart blocks and
evaluate.  For the sup-family norms in scope the value is exactly constant
once the blocks are disjoint, so the limit is computed, not estimated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

from .barriers import FRONT_FUEL_DEFAULT, BarrierDescriptor, Cube, front
from .blocks import Block, BlockFamily
from .closedform import model_value_8, model_value_228
from .errors import InvalidArgumentError, NotStabilizedError
from .normspace import NormSpec, nonneg_grid, section6_spec
from .oscillation import psi_eval
from .sets import FiniteSet

Rational = Union[Fraction, int]


@dataclass(frozen=True)
class BarrierSequenceDescriptor:
    """Finite prefix of barriers followed by one barrier repeated forever."""

    prefix: tuple[BarrierDescriptor, ...]
    tail: BarrierDescriptor

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        for p in self.prefix:
            if not isinstance(p, BarrierDescriptor):
                raise InvalidArgumentError("prefix entries must be barrier descriptors")
        if not isinstance(self.tail, BarrierDescriptor):
            raise InvalidArgumentError("tail must be a barrier descriptor")
        # Shared-ground validation happens in BlockFamily.
        self.family(len(self.prefix) + 1)

    def barrier_at(self, i: int) -> BarrierDescriptor:
        if i < 0:
            raise InvalidArgumentError("index must be >= 0")
        return self.prefix[i] if i < len(self.prefix) else self.tail

    def family(self, k: int) -> BlockFamily:
        if k < 1:
            raise InvalidArgumentError("family length must be >= 1")
        return BlockFamily(tuple(self.barrier_at(i) for i in range(k)))


def eights_sequence() -> BarrierSequenceDescriptor:
    return BarrierSequenceDescriptor((), Cube(8))


def two_two_eights_sequence() -> BarrierSequenceDescriptor:
    return BarrierSequenceDescriptor((Cube(2), Cube(2)), Cube(8))


def _build_block(seq: BarrierSequenceDescriptor, k: int, above: int,
                 fuel: int) -> Block:
    parts = []
    last = above
    for i in range(k):
        b = seq.barrier_at(i)
        s = front(b, b.ground().after(last), fuel)
        parts.append(s)
        last = s.max
    return Block(tuple(parts))


@lru_cache(maxsize=1024)
def _probe_blocks(seq: BarrierSequenceDescriptor, k: int, tail_offset: int,
                  probe_count: int, fuel: int) -> tuple[Block, ...]:
    blocks = []
    last = tail_offset - 1
    for _ in range(probe_count):
        blk = _build_block(seq, k, last, fuel)
        blocks.append(blk)
        last = blk.max
    return tuple(blocks)


def default_tail_offset(seq: BarrierSequenceDescriptor, k: int,
                        fuel: int = FRONT_FUEL_DEFAULT) -> int:
    """Span of a block started at the front of the ground set, plus 8."""
    return _build_block(seq, k, 0, fuel).max + 8


@dataclass(frozen=True)
class ModelValue:
    value: Fraction
    stabilized: bool
    probes: tuple[tuple[Block, Fraction], ...]
    tail_offset: int


def model_eval(
    spec: NormSpec,
    seq: BarrierSequenceDescriptor,
    coeffs: Sequence[Rational],
    tail_offset: Optional[int] = None,
    probe_count: int = 3,
    tolerance: Rational = 0,
    fuel: int = FRONT_FUEL_DEFAULT,
) -> ModelValue:
    """Evaluate the limit norm at coeffs by probing far-apart blocks.

    Probes are pairwise disjoint with increasing minima, the first one
    starting at tail_offset.  All probes agreeing within tolerance (exactly,
    by default) marks the value stabilized; otherwise the mean is reported
    and the caller decides what to trust.
    """
    k = len(coeffs)
    if k < 1:
        raise InvalidArgumentError("need at least one coefficient")
    if probe_count < 1:
        raise InvalidArgumentError("probe_count must be >= 1")
    tolerance = Fraction(tolerance)
    if tolerance < 0:
        raise InvalidArgumentError("tolerance must be >= 0")
    cs = tuple(Fraction(c) for c in coeffs)
    if tail_offset is None:
        tail_offset = default_tail_offset(seq, k, fuel)
    blocks = _probe_blocks(seq, k, tail_offset, probe_count, fuel)
    vals = [psi_eval(spec, b, cs) for b in blocks]
    stabilized = max(vals) - min(vals) <= tolerance
    value = vals[0] if stabilized else sum(vals) / len(vals)
    return ModelValue(value, stabilized, tuple(zip(blocks, vals)), tail_offset)


def _stable_value(spec, seq, coeffs, probe_count=3) -> Fraction:
    mv = model_eval(spec, seq, coeffs, probe_count=probe_count)
    if not mv.stabilized:
        raise NotStabilizedError(
            f"model value at {coeffs} did not stabilize: "
            + ", ".join(str(v) for _, v in mv.probes)
        )
    return mv.value


@dataclass(frozen=True)
class ConsistencyViolation:
    k: int
    coeffs: tuple[Fraction, ...]
    padded_value: Fraction
    base_value: Fraction


@dataclass(frozen=True)
class ConsistencyReport:
    checked: int
    violations: tuple[ConsistencyViolation, ...]

    @property
    def holds(self) -> bool:
        return not self.violations


def consistency_check(
    spec: NormSpec, seq: BarrierSequenceDescriptor, k_max: int, grid_q: int = 4
) -> ConsistencyReport:
    """Appending a zero coefficient never changes the model value."""
    if k_max < 1:
        raise InvalidArgumentError("k_max must be >= 1")
    checked = 0
    bad = []
    for k in range(1, k_max):
        for a in nonneg_grid(k, grid_q):
            base = _stable_value(spec, seq, a)
            padded = _stable_value(spec, seq, a + (Fraction(0),))
            checked += 1
            if padded != base:
                bad.append(ConsistencyViolation(k, a, padded, base))
    return ConsistencyReport(checked, tuple(bad))


@dataclass(frozen=True)
class SpreadingWitness:
    placement: FiniteSet
    coeffs: tuple[Fraction, ...]
    identity_value: Fraction
    placed_value: Fraction


@dataclass(frozen=True)
class SpreadingReport:
    holds: bool
    witness: Optional[SpreadingWitness]
    checked: int


def spreading_check(
    spec: NormSpec,
    seq: BarrierSequenceDescriptor,
    k: int,
    placements: Sequence[FiniteSet],
    grid_q: int = 4,
) -> SpreadingReport:
    """Compare coefficients at slots 1..k against relocated slots.

    The recorded witness is the worst violation over the whole scan (largest
    discrepancy, earliest placement and tuple on ties), so the headline
    counterexample does not depend on grid ordering.
    """
    if k < 1:
        raise InvalidArgumentError("k must be >= 1")
    grid = nonneg_grid(k, grid_q)
    identity = {a: _stable_value(spec, seq, a) for a in grid}
    checked = 0
    worst: Optional[SpreadingWitness] = None
    worst_size = Fraction(0)
    for s in placements:
        if len(s) != k:
            raise InvalidArgumentError(f"placement {s} is not a {k}-set")
        slots = s.elements
        for a in grid:
            padded = [Fraction(0)] * s.max
            for pos, c in zip(slots, a):
                padded[pos - 1] = c
            val = _stable_value(spec, seq, padded)
            checked += 1
            if val != identity[a]:
                size = abs(identity[a] - val)
                if size > worst_size:
                    worst_size = size
                    worst = SpreadingWitness(s, a, identity[a], val)
    return SpreadingReport(worst is None, worst, checked)


def equivalence_constants(
    spec: NormSpec,
    seq1: BarrierSequenceDescriptor,
    seq2: BarrierSequenceDescriptor,
    k_max: int,
    grid_q: int = 4,
) -> tuple[Fraction, Fraction]:
    """Empirical (min, max) of value(seq2)/value(seq1) over nonzero grid tuples."""
    if k_max < 1:
        raise InvalidArgumentError("k_max must be >= 1")
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    for k in range(1, k_max + 1):
        for a in nonneg_grid(k, grid_q):
            if all(c == 0 for c in a):
                continue
            v1 = _stable_value(spec, seq1, a)
            v2 = _stable_value(spec, seq2, a)
            if v1 == 0:
                raise NotStabilizedError(
                    f"first model vanishes at nonzero tuple {a}"
                )
            r = v2 / v1
            lo = r if lo is None or r < lo else lo
            hi = r if hi is None or r > hi else hi
    assert lo is not None and hi is not None
    return lo, hi


@dataclass(frozen=True)
class Section6Check:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class Section6Report:
    checks: tuple[Section6Check, ...]
    all_passed: bool
    grid_q: int
    k_max: int


def verify_section6(
    spec: Optional[NormSpec] = None,
    k_max: int = 4,
    grid_q: int = 4,
) -> Section6Report:
    """Aggregate check of the worked two-model example.

    Runs, exactly: the eights-model closed form, the pair-pair-eights closed
    form, the two named values 3/2 and 1, the sandwich with constants (1, 2),
    and the spreading pass/fail pair.
    """
    if spec is None:
        spec = section6_spec()
    seq8 = eights_sequence()
    seq228 = two_two_eights_sequence()
    checks: list[Section6Check] = []

    def add(name: str, passed: bool, detail: str) -> None:
        checks.append(Section6Check(name, passed, detail))

    bad8 = 0
    first8 = ""
    for k in range(1, k_max + 1):
        for a in nonneg_grid(k, grid_q):
            got = _stable_value(spec, seq8, a)
            want = model_value_8(a)
            if got != want:
                bad8 += 1
                if not first8:
                    first8 = f"a={a}: {got} != {want}"
    add("eights-model-closed-form", bad8 == 0,
        first8 or f"max of coefficients on all grid tuples, k <= {k_max}")

    bad228 = 0
    first228 = ""
    for k in range(1, k_max + 1):
        for a in nonneg_grid(k, grid_q):
            got = _stable_value(spec, seq228, a)
            want = model_value_228(a)
            if got != want:
                bad228 += 1
                if not first228:
                    first228 = f"a={a}: {got} != {want}"
    add("two-two-eights-closed-form", bad228 == 0,
        first228 or f"piecewise formula on all grid tuples, k <= {k_max}")

    v11 = _stable_value(spec, seq228, (1, 1))
    v0011 = _stable_value(spec, seq228, (0, 0, 1, 1))
    add("named-values", v11 == Fraction(3, 2) and v0011 == Fraction(1),
        f"value(1,1)={v11}, value(0,0,1,1)={v0011}")

    try:
        lo, hi = equivalence_constants(spec, seq8, seq228,
                                       min(k_max, 3), grid_q)
        ratio2 = (_stable_value(spec, seq228, (1, 1, 1))
                  / _stable_value(spec, seq8, (1, 1, 1)))
        sandwich_ok = Fraction(1) <= lo and hi <= Fraction(2) and ratio2 == 2
        add("sandwich-equivalence", sandwich_ok,
            f"ratio range [{lo}, {hi}], ratio at (1,1,1) = {ratio2}")
    except NotStabilizedError as exc:
        add("sandwich-equivalence", False, str(exc))

    placement = FiniteSet((3, 4))
    rep8 = spreading_check(spec, seq8, 2, [placement], grid_q=2)
    rep228 = spreading_check(spec, seq228, 2, [placement], grid_q=2)
    dichotomy = rep8.holds and not rep228.holds
    if rep228.witness is not None:
        w = rep228.witness
        coeffs = "(" + ", ".join(str(c) for c in w.coeffs) + ")"
        detail = (f"eights model spreads; relocated model breaks at "
                  f"positions {w.placement} with a={coeffs}: "
                  f"{w.identity_value} vs {w.placed_value}")
    else:
        detail = "relocated model unexpectedly spread"
    add("spreading-dichotomy", dichotomy, detail)

    return Section6Report(tuple(checks), all(c.passed for c in checks),
                          grid_q, k_max)
