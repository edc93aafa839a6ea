from fractions import Fraction
from itertools import product
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from oracles import dot
from valtop.errors import BudgetExceeded, PreconditionError
from valtop.graded import (
    achieved_values, growth_by_pieces, growth_table, piece_dim, volume_coefficient,
    weak_noetherian_check,
)
from valtop.valuation import MonomialValuation

V = MonomialValuation
small_weights = st.lists(st.fractions(min_value=Fraction(1, 3), max_value=3, max_denominator=3)
                         .filter(lambda q: q > 0), min_size=1, max_size=3).map(MonomialValuation)


def brute_F(w, l):
    u = min(Fraction(x) for x in w)
    t = l * u
    box = [range(int(t / Fraction(x)) + 1) for x in w]
    return sum(1 for b in product(*box) if dot(w, b) <= t)


class TestPieces:
    def test_examples(self):
        assert piece_dim(V((1, 1)), 2) == 3
        assert piece_dim(V((1, 2)), 2) == 2
        assert piece_dim(V((2, 7)), 0) == 1

    def test_unreachable_value(self):
        assert piece_dim(V((2, 3)), 1) == 0
        assert piece_dim(V((2, 3)), Fraction(5, 2)) == 0

    def test_negative(self):
        with pytest.raises(PreconditionError):
            piece_dim(V((1, 1)), -1)

    def test_achieved_values(self):
        assert achieved_values(V((2, 3)), 7) == [0, 2, 3, 4, 5, 6, 7]
        assert all(piece_dim(V((2, 3)), a) >= 1 for a in achieved_values(V((2, 3)), 20))


class TestGrowth:
    def test_simplex(self):
        table = growth_table(V((1, 1)), 10)
        assert table[3] == 10
        assert all(F == (l + 1) * (l + 2) // 2 for l, F in table.entries)

    def test_weighted(self):
        assert growth_table(V((1, 2)), 4)[4] == 9

    def test_csv(self):
        csv = growth_table(V((1, 2)), 3).to_csv()
        assert csv.splitlines()[:2] == ["l,F", "0,1"]
        assert csv.endswith("\n") and len(csv.splitlines()) == 5

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            growth_table(V((1, 1, 1, 1)), 500)

    @given(small_weights, st.integers(0, 8))
    @settings(max_examples=40, deadline=None)
    def test_two_counting_paths(self, nu, l):
        F = growth_table(nu, l)[l]
        assert F == growth_by_pieces(nu, l) == brute_F(nu.weights, l)

    @given(st.integers(1, 4), st.fractions(min_value=Fraction(1, 3), max_value=5, max_denominator=4)
           .filter(lambda q: q > 0), st.integers(0, 12))
    @settings(max_examples=30, deadline=None)
    def test_equal_weights_binomial(self, d, w, l):
        assert growth_table(V((w,) * d), l)[l] == comb(l + d, d)

    @given(small_weights)
    @settings(max_examples=30, deadline=None)
    def test_monotone(self, nu):
        t = growth_table(nu, 10)
        assert t[0] == 1
        assert all(t[l + 1] >= t[l] + 1 for l in range(10))


class TestWeakNoetherian:
    def test_simplex_coefficient(self):
        rep = weak_noetherian_check(V((1, 1)), 40)
        assert rep.predicted == Fraction(1, 2)
        assert abs(rep.ratios[-1][1] - Fraction(1, 2)) < Fraction(1, 10)

    def test_weighted_coefficient(self):
        rep = weak_noetherian_check(V((1, 2)), 20)
        assert rep.predicted == Fraction(1, 4)
        F20 = dict(rep.ratios)[20]
        assert Fraction(1, 8) <= F20 <= Fraction(1, 2)

    def test_tetrahedron(self):
        nu = V((1, 1, 1))
        assert volume_coefficient(nu) == Fraction(1, 6)
        assert all(F == comb(l + 3, 3) for l, F in growth_table(nu, 15).entries)

    def test_requires_range(self):
        with pytest.raises(PreconditionError):
            weak_noetherian_check(V((1, 1, 1)), 5)

    def test_small_levels_can_violate(self):
        # lattice counts exceed twice the volume term at small l
        rep = weak_noetherian_check(V((1, 1)), 10)
        assert rep.violations == (2, 3) and not rep.holds

    @pytest.mark.parametrize("w", [(1, 1), (1, 2), (2, 3, 7), (1, 1, 1), (Fraction(3, 2), 1, 2)])
    def test_sandwich_beyond_guaranteed_level(self, w):
        nu = V(w)
        rep = weak_noetherian_check(nu, 40)
        assert rep.exact_bounds_hold
        assert all(l < rep.guaranteed_from for l in rep.violations)

    @given(small_weights)
    @settings(max_examples=20, deadline=None)
    def test_exact_bounds(self, nu):
        rep = weak_noetherian_check(nu, max(2 * nu.dim, 12))
        assert rep.exact_bounds_hold
