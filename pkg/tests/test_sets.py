from functools import cmp_to_key

import pytest
from hypothesis import given
from hypothesis import strategies as st

from blockosc.errors import InvalidArgumentError
from blockosc.sets import (
    Arithmetic,
    CofiniteAfter,
    FiniteSet,
    PrefixThen,
    compare_sets,
    evens,
    lex_cmp,
    naturals,
    odds,
    probe_equal,
)

finite_sets = st.frozensets(st.integers(1, 30), min_size=1, max_size=8).map(FiniteSet)


class TestFiniteSet:
    def test_sorts_input(self):
        assert FiniteSet([3, 1, 2]).elements == (1, 2, 3)

    def test_rejects_duplicates(self):
        with pytest.raises(InvalidArgumentError):
            FiniteSet([3, 1, 2, 3])

    def test_rejects_nonpositive(self):
        with pytest.raises(InvalidArgumentError):
            FiniteSet([0, 1])
        with pytest.raises(InvalidArgumentError):
            FiniteSet([-2])

    def test_rejects_bools(self):
        with pytest.raises(InvalidArgumentError):
            FiniteSet([True])

    def test_min_max_on_empty(self):
        s = FiniteSet()
        assert s.is_empty()
        with pytest.raises(InvalidArgumentError):
            s.min
        with pytest.raises(InvalidArgumentError):
            s.max

    def test_concat_requires_gap(self):
        assert FiniteSet([1, 2]).concat(FiniteSet([3, 5])).elements == (1, 2, 3, 5)
        with pytest.raises(InvalidArgumentError):
            FiniteSet([1, 3]).concat(FiniteSet([3, 5]))

    def test_initial_segment(self):
        assert FiniteSet([1, 2]).is_initial_segment_of(FiniteSet([1, 2, 5]))
        assert not FiniteSet([1, 3]).is_initial_segment_of(FiniteSet([1, 2, 3]))


class TestCompareSets:
    def test_disjoint_ordered(self):
        r = compare_sets(FiniteSet([1, 2]), FiniteSet([3, 5]))
        assert r.less and r.lex < 0 and not r.initial_segment

    def test_symmetric_difference_rule(self):
        # min of the symmetric difference is 2, which lives in the left set
        r = compare_sets(FiniteSet([1, 2]), FiniteSet([1, 3]))
        assert not r.less and r.lex < 0 and not r.initial_segment

    def test_prefix_case(self):
        r = compare_sets(FiniteSet([1, 2]), FiniteSet([1, 2, 5]))
        assert r.initial_segment
        # a strict prefix sorts after its extension
        assert r.lex > 0

    def test_rejects_empty(self):
        with pytest.raises(InvalidArgumentError):
            compare_sets(FiniteSet(), FiniteSet([1]))

    @given(finite_sets, finite_sets)
    def test_lex_total_and_antisymmetric(self, s, t):
        c, d = lex_cmp(s, t), lex_cmp(t, s)
        if s == t:
            assert c == d == 0
        else:
            assert c == -d != 0

    @given(finite_sets, finite_sets, finite_sets)
    def test_lex_transitive(self, a, b, c):
        key = cmp_to_key(lex_cmp)
        x, y, z = sorted([a, b, c], key=key)
        assert lex_cmp(x, z) <= 0

    @given(finite_sets, finite_sets)
    def test_mutual_prefix_is_equality(self, s, t):
        if s.is_initial_segment_of(t) and t.is_initial_segment_of(s):
            assert s == t


class TestGenerators:
    def test_naturals_first(self):
        assert naturals().first(5) == (1, 2, 3, 4, 5)

    def test_evens_odds(self):
        assert evens().first(4) == (2, 4, 6, 8)
        assert odds().first(4) == (1, 3, 5, 7)

    def test_arithmetic_contains_matches_iteration(self):
        g = Arithmetic(start=3, step=4)
        first = set(g.first(50))
        for x in range(1, 100):
            assert g.contains(x) == (x in first or x > max(first))
            if x <= max(first):
                assert g.contains(x) == (x in first)

    def test_prefix_then_orders(self):
        g = PrefixThen(FiniteSet([2, 5]), CofiniteAfter(7))
        assert g.first(5) == (2, 5, 8, 9, 10)
        with pytest.raises(InvalidArgumentError):
            PrefixThen(FiniteSet([9]), CofiniteAfter(7))

    @given(st.integers(0, 40), st.integers(1, 60))
    def test_after_drops_small_elements(self, n, probe):
        g = CofiniteAfter(0).after(n)
        assert all(x > n for x in g.first(5))
        assert g.contains(probe) == (probe > n)

    def test_strictly_increasing_prefixes(self):
        for g in (naturals(), evens(), Arithmetic(5, 3),
                  PrefixThen(FiniteSet([1, 4]), CofiniteAfter(10))):
            xs = g.first(25)
            assert all(a < b for a, b in zip(xs, xs[1:]))

    def test_probe_equal(self):
        assert probe_equal(evens(), Arithmetic(2, 2))
        assert not probe_equal(evens(), odds())
