"""Exact finitely-supported vectors and sup-family norms.

Everything here is rational arithmetic; floats never appear.  The central
norm shape is a supremum family: the largest absolute entry is always a
candidate, and each extra term contributes ``weight * (sum of the m largest
absolute entries)``, optionally restricted by an index filter.  The worked
two-weight space ((m+1)/2m on m-sets and (n+1)/2n on n-sets, with (m, n) =
(2, 8) as the concrete instance) is expressed this way.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from .errors import DegenerateBlockError, InvalidArgumentError
from .sets import FiniteSet

Rational = Union[Fraction, int]


class Vector:
    """Finitely supported rational vector over positive integer indices."""

    __slots__ = ("entries", "_hash")

    def __init__(self, entries: Mapping[int, Rational] = ()):
        clean: dict[int, Fraction] = {}
        for i, c in dict(entries).items():
            if not isinstance(i, int) or i < 1:
                raise InvalidArgumentError(f"index must be a positive integer, got {i!r}")
            f = Fraction(c)
            if f != 0:
                clean[i] = f
        object.__setattr__(self, "entries", clean)
        object.__setattr__(self, "_hash", hash(tuple(sorted(clean.items()))))

    def __setattr__(self, name, value):
        raise AttributeError("Vector is immutable")

    @staticmethod
    def basis(i: int) -> "Vector":
        return Vector({i: Fraction(1)})

    @staticmethod
    def from_coeffs(coeffs: Sequence[Rational], start: int = 1) -> "Vector":
        return Vector({start + i: Fraction(c) for i, c in enumerate(coeffs)})

    @staticmethod
    def indicator(s: FiniteSet) -> "Vector":
        return Vector({i: Fraction(1) for i in s})

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.entries))

    def __eq__(self, other) -> bool:
        return isinstance(other, Vector) and self.entries == other.entries

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other: "Vector") -> "Vector":
        out = dict(self.entries)
        for i, c in other.entries.items():
            out[i] = out.get(i, Fraction(0)) + c
        return Vector(out)

    def scale(self, f: Rational) -> "Vector":
        f = Fraction(f)
        return Vector({i: c * f for i, c in self.entries.items()})

    def __repr__(self) -> str:
        inner = ", ".join(f"{i}: {c}" for i, c in sorted(self.entries.items()))
        return f"Vector({{{inner}}})"

    def abs_items_desc(self) -> list[tuple[Fraction, int]]:
        """(|entry|, index) pairs, largest magnitudes first; index breaks ties."""
        return sorted(((abs(c), i) for i, c in self.entries.items()),
                      key=lambda t: (-t[0], t[1]))


# ---------------------------------------------------------------------------
# Norm specifications

# Index filters attached to sup-family terms.  "subset" mode keeps only
# entries whose index satisfies the predicate; "touch" mode requires the
# index set to meet the predicate at least once, the rest being free (an
# unused qualifying index contributes zero, so sums may effectively shrink).
_FILTERS: dict[str, tuple[str, Callable[[int], bool]]] = {
    "even-indices": ("subset", lambda i: i % 2 == 0),
    "odd-indices": ("subset", lambda i: i % 2 == 1),
    "touches-even": ("touch", lambda i: i % 2 == 0),
}


@dataclass(frozen=True)
class SupTerm:
    weight: Fraction
    size: int
    filter: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "weight", Fraction(self.weight))
        if self.weight <= 0:
            raise InvalidArgumentError("term weight must be positive")
        if self.size < 1:
            raise InvalidArgumentError("term cardinality must be >= 1")
        if self.filter is not None and self.filter not in _FILTERS:
            raise InvalidArgumentError(f"unknown index filter {self.filter!r}")


class NormSpec:
    """Marker base for norm specifications."""


@dataclass(frozen=True)
class SupFamily(NormSpec):
    """Max of the implicit singleton term and each weighted top-m sum."""

    terms: tuple[SupTerm, ...]

    @property
    def index_invariant(self) -> bool:
        return all(t.filter is None for t in self.terms)


@dataclass(frozen=True)
class SupNorm(NormSpec):
    """Plain supremum of absolute entries."""


@dataclass(frozen=True)
class LpNorm(NormSpec):
    """Integer-exponent p-sum norm; exact only for p = 1 or lucky roots."""

    p: int

    def __post_init__(self):
        if self.p < 1:
            raise InvalidArgumentError("p must be >= 1")


def mn_norm_spec(m: int, n: int) -> SupFamily:
    """Two-weight family: (m+1)/2m on m-sets together with (n+1)/2n on n-sets."""
    if not 1 < m < n:
        raise InvalidArgumentError("need 1 < m < n")
    return SupFamily((
        SupTerm(Fraction(m + 1, 2 * m), m),
        SupTerm(Fraction(n + 1, 2 * n), n),
    ))


def section6_spec() -> SupFamily:
    """The concrete worked instance: weight 3/4 on pairs, 9/16 on 8-sets."""
    return mn_norm_spec(2, 8)


def even_pair_fixture() -> SupFamily:
    """Standard fixture with nonzero oscillation across index parity.

    Pairs of even indices are boosted by 3/4; pairs merely touching an even
    index by 5/8.  Unit vectors keep norm one, but blocks on two evens
    evaluate to 3/2, blocks mixing parities to 5/4 and blocks on two odds
    to 1 at coefficients (1, 1), so relocation invariance fails and every
    mixed-parity index set oscillates by at least 1/4.
    """
    return SupFamily((
        SupTerm(Fraction(3, 4), 2, "even-indices"),
        SupTerm(Fraction(5, 8), 2, "touches-even"),
    ))


# ---------------------------------------------------------------------------
# Evaluation


def norm_eval(spec: NormSpec, v: Vector) -> Fraction:
    """Exact norm of ``v`` under ``spec`` (approximate only for p > 1 roots)."""
    return norm_eval_detailed(spec, v)[0]


def norm_eval_detailed(spec: NormSpec, v: Vector) -> tuple[Fraction, bool]:
    """(value, exact); the flag is False only for inexact p-th roots."""
    if isinstance(spec, SupNorm):
        items = v.abs_items_desc()
        return (items[0][0] if items else Fraction(0)), True
    if isinstance(spec, SupFamily):
        return _sup_family_eval(spec, v), True
    if isinstance(spec, LpNorm):
        return _lp_eval(spec, v)
    raise InvalidArgumentError(f"unknown norm spec {spec!r}")


def _sup_family_eval(spec: SupFamily, v: Vector) -> Fraction:
    items = v.abs_items_desc()
    if not items:
        return Fraction(0)
    best = items[0][0]  # implicit singleton term
    for term in spec.terms:
        best = max(best, _term_value(term, items))
    return best


def _top_sum(values: Sequence[Fraction], m: int) -> Fraction:
    return sum(values[:m], Fraction(0))


def _term_value(term: SupTerm, items: list[tuple[Fraction, int]]) -> Fraction:
    m = term.size
    if term.filter is None:
        return term.weight * _top_sum([val for val, _ in items], m)
    mode, pred = _FILTERS[term.filter]
    if mode == "subset":
        eligible = [val for val, i in items if pred(i)]
        return term.weight * _top_sum(eligible, m)
    # touch mode: at least one qualifying index, the rest unconstrained.
    # Padding with a qualifying index outside the support is always allowed,
    # so the top (m-1) entries alone give one candidate.
    vals = [val for val, _ in items]
    best = _top_sum(vals, m - 1)
    for pos, (val, i) in enumerate(items):
        if pred(i):
            others = vals[:pos] + vals[pos + 1:]
            best = max(best, val + _top_sum(others, m - 1))
    return term.weight * best


def norm_eval_multiset(spec: NormSpec, items: Iterable[tuple[Fraction, int]]) -> Fraction:
    """Norm of a vector given as (magnitude, multiplicity) pairs.

    Only valid for index-invariant specs, where placement is irrelevant;
    block evaluations use this to avoid materializing wide vectors.
    """
    pairs = sorted(((Fraction(val), cnt) for val, cnt in items if val != 0),
                   key=lambda t: -t[0])
    if not pairs:
        return Fraction(0)
    if isinstance(spec, SupNorm):
        return pairs[0][0]
    if not (isinstance(spec, SupFamily) and spec.index_invariant):
        raise InvalidArgumentError("multiset evaluation needs an index-invariant spec")
    best = pairs[0][0]
    for term in spec.terms:
        need = term.size
        acc = Fraction(0)
        for val, cnt in pairs:
            take = min(cnt, need)
            acc += val * take
            need -= take
            if need == 0:
                break
        best = max(best, term.weight * acc)
    return best


def _nth_root_int(n: int, p: int) -> tuple[int, bool]:
    """Floor p-th root of a nonnegative integer, and whether it is exact."""
    if n < 0:
        raise InvalidArgumentError("negative radicand")
    if n in (0, 1) or p == 1:
        return n, True
    r = int(round(n ** (1.0 / p)))
    while r**p > n:
        r -= 1
    while (r + 1) ** p <= n:
        r += 1
    return r, r**p == n


_LP_PRECISION = Fraction(1, 2**48)


def _lp_eval(spec: LpNorm, v: Vector) -> tuple[Fraction, bool]:
    p = spec.p
    if p == 1:
        return sum((abs(c) for c in v.entries.values()), Fraction(0)), True
    s = sum((abs(c) ** p for c in v.entries.values()), Fraction(0))
    if s == 0:
        return Fraction(0), True
    rn, okn = _nth_root_int(s.numerator, p)
    rd, okd = _nth_root_int(s.denominator, p)
    if okn and okd:
        return Fraction(rn, rd), True
    lo, hi = Fraction(0), s + 1
    while hi - lo > _LP_PRECISION:
        mid = (lo + hi) / 2
        if mid**p <= s:
            lo = mid
        else:
            hi = mid
    return lo, False


# ---------------------------------------------------------------------------
# Block vectors and evaluator adapters


def block_vector(spec: NormSpec, s: FiniteSet) -> Vector:
    """The indicator of ``s`` scaled to norm one."""
    if s.is_empty():
        raise InvalidArgumentError("block vector needs a nonempty set")
    v = Vector.indicator(s)
    d = norm_eval(spec, v)
    if d == 0:
        raise DegenerateBlockError(f"indicator of {s} has zero norm")
    return v.scale(Fraction(1) / d)


Evaluator = Callable[[tuple[Fraction, ...]], Fraction]


def spec_evaluator(spec: NormSpec, k: int) -> Evaluator:
    """Restrict a norm spec to coefficient tuples on coordinates 1..k."""

    def rho(a: tuple[Fraction, ...]) -> Fraction:
        if len(a) != k:
            raise InvalidArgumentError(f"expected {k} coefficients, got {len(a)}")
        return norm_eval(spec, Vector.from_coeffs(a))

    return rho


def signed_grid(k: int, q: int) -> list[tuple[Fraction, ...]]:
    """All tuples with coordinates j/q for -q <= j <= q."""
    axis = [Fraction(j, q) for j in range(-q, q + 1)]
    return [tuple(p) for p in product(axis, repeat=k)]


def nonneg_grid(k: int, q: int) -> list[tuple[Fraction, ...]]:
    axis = [Fraction(j, q) for j in range(0, q + 1)]
    return [tuple(p) for p in product(axis, repeat=k)]


def dk_distance(rho1: Evaluator, rho2: Evaluator, k: int, grid_q: int = 8) -> Fraction:
    """Grid lower bound for the sup distance over [-1, 1]^k.

    The grid {j/q} already contains every sign pattern of 0 and 1, so no
    extra corner set is needed.
    """
    best = Fraction(0)
    for a in signed_grid(k, grid_q):
        d = abs(rho1(a) - rho2(a))
        if d > best:
            best = d
    return best


# ---------------------------------------------------------------------------
# Seminorm samples and axiom checks


@dataclass(frozen=True)
class SeminormSample:
    """Values of an evaluator on the signed grid; a finite stand-in."""

    k: int
    grid_q: int
    values: tuple[tuple[tuple[Fraction, ...], Fraction], ...]

    @staticmethod
    def sample(rho: Evaluator, k: int, grid_q: int) -> "SeminormSample":
        vals = tuple((a, rho(a)) for a in signed_grid(k, grid_q))
        return SeminormSample(k, grid_q, vals)

    @property
    def norm_like(self) -> bool:
        """Positive away from zero on the sampled grid."""
        zero = (Fraction(0),) * self.k
        return all(v > 0 for a, v in self.values if a != zero)


@dataclass(frozen=True)
class AxiomCheck:
    nonnegative: bool
    normalized: bool
    homogeneous: bool
    triangle: bool
    positive: bool
    witnesses: tuple[tuple[str, tuple], ...]

    @property
    def all_pass(self) -> bool:
        return (self.nonnegative and self.normalized and self.homogeneous
                and self.triangle and self.positive)


_SCALARS = (Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(2), Fraction(-3, 2))


def check_seminorm_axioms(rho: Evaluator, k: int, grid_q: int = 4) -> AxiomCheck:
    """Grid checks of the norm axioms; failures carry the first witness."""
    pts = signed_grid(k, grid_q)
    zero = (Fraction(0),) * k
    wit: list[tuple[str, tuple]] = []

    nonneg = True
    for a in pts:
        if rho(a) < 0:
            nonneg = False
            wit.append(("nonnegative", a))
            break

    normalized = True
    for i in range(k):
        e = tuple(Fraction(1) if j == i else Fraction(0) for j in range(k))
        if rho(e) != 1:
            normalized = False
            wit.append(("normalized", e))
            break

    homogeneous = True
    for a in pts:
        base = rho(a)
        for lam in _SCALARS:
            scaled = tuple(lam * x for x in a)
            if rho(scaled) != abs(lam) * base:
                homogeneous = False
                wit.append(("homogeneous", (lam, a)))
                break
        if not homogeneous:
            break

    triangle = True
    for a in pts:
        ra = rho(a)
        for b in pts:
            s = tuple(x + y for x, y in zip(a, b))
            if rho(s) > ra + rho(b):
                triangle = False
                wit.append(("triangle", (a, b)))
                break
        if not triangle:
            break

    positive = True
    for a in pts:
        if a != zero and rho(a) == 0:
            positive = False
            wit.append(("positive", a))
            break

    return AxiomCheck(nonneg, normalized, homogeneous, triangle, positive, tuple(wit))


# ---------------------------------------------------------------------------
# The collapsing-norm demonstration


def shrinking_pair_norm(n: int) -> Evaluator:
    """On pairs: max of |a1 - a2| and |a2|/n.  A genuine norm for each n."""
    if n < 1:
        raise InvalidArgumentError("n must be >= 1")

    def rho(a: tuple[Fraction, ...]) -> Fraction:
        if len(a) != 2:
            raise InvalidArgumentError("this evaluator lives on pairs")
        return max(abs(a[0] - a[1]), abs(a[1]) / n)

    return rho


def difference_seminorm(a: tuple[Fraction, ...]) -> Fraction:
    """Pointwise limit of the shrinking pair norms; vanishes on the diagonal."""
    if len(a) != 2:
        raise InvalidArgumentError("this evaluator lives on pairs")
    return abs(a[0] - a[1])


@dataclass(frozen=True)
class DegenerateLimitReport:
    distances: tuple[tuple[int, Fraction], ...]  # (n, d2(norm_n, limit))
    value_at_ones: tuple[tuple[int, Fraction], ...]  # (n, norm_n(1, 1))
    limit_at_ones: Fraction
    limit_at_e1: Fraction
    limit_axioms: AxiomCheck

    @property
    def collapses_exactly_at_positivity(self) -> bool:
        c = self.limit_axioms
        return (c.nonnegative and c.normalized and c.homogeneous and c.triangle
                and not c.positive)


def degenerate_limit_demo(n_max: int = 64, grid_q: int = 8) -> DegenerateLimitReport:
    """Tabulate how a sequence of norms drains into a seminorm.

    Each member keeps full norm axioms, the grid distance to the limit is
    exactly 1/n (attained at (1, 1)), yet the limit vanishes on the diagonal.
    """
    ones = (Fraction(1), Fraction(1))
    dist = []
    at_ones = []
    for n in range(1, n_max + 1):
        rho = shrinking_pair_norm(n)
        dist.append((n, dk_distance(rho, difference_seminorm, 2, grid_q)))
        at_ones.append((n, rho(ones)))
    return DegenerateLimitReport(
        distances=tuple(dist),
        value_at_ones=tuple(at_ones),
        limit_at_ones=difference_seminorm(ones),
        limit_at_e1=difference_seminorm((Fraction(1), Fraction(0))),
        limit_axioms=check_seminorm_axioms(difference_seminorm, 2, grid_q=4),
    )


# ---------------------------------------------------------------------------
# Basis constant


def basis_constant(
    spec: NormSpec,
    horizon: int = 6,
    grid_q: int = 2,
    samples: int = 200,
    seed: int = 7,
) -> Fraction:
    """Largest observed prefix-to-whole norm ratio; a lower bound by grid.

    Monotone norms (every sup-family) give exactly 1: dropping entries can
    only shrink each term.  The search still runs, so a non-monotone spec
    would surface a larger ratio.
    """
    best = Fraction(0)
    for n in range(2, min(horizon, 4) + 1):
        for a in nonneg_grid(n, grid_q):
            best = _prefix_ratio_max(spec, a, best)
    rng = random.Random(seed)
    for _ in range(samples):
        n = rng.randint(2, max(2, horizon))
        a = tuple(Fraction(rng.randint(-grid_q * 2, grid_q * 2), grid_q * 2) for _ in range(n))
        best = _prefix_ratio_max(spec, a, best)
    return best


def _prefix_ratio_max(spec: NormSpec, a: tuple[Fraction, ...], best: Fraction) -> Fraction:
    den = norm_eval(spec, Vector.from_coeffs(a))
    if den == 0:
        return best
    for m in range(1, len(a)):
        num = norm_eval(spec, Vector.from_coeffs(a[:m]))
        r = num / den
        if r > best:
            best = r
    return best
