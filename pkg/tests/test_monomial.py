import random
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import ideals, polynomials
from oracles import all_monomials, brute_order, in_ideal, in_power
from valtop.errors import DimensionMismatch, PreconditionError
from valtop.monomial import (
    INFINITY, MonomialIdeal, Polynomial, ZeroIdealWarning, adic_order, colon,
    ideal_power, ideal_product, intersect, m_adic_order, membership,
    monomial_order, monomials_up_to, normalize,
)


def I2(*gens):
    return MonomialIdeal(2, gens)


class TestNormalize:
    def test_drops_divisible(self):
        assert normalize([(2, 0), (2, 1), (0, 3)]).gens == ((2, 0), (0, 3))

    def test_zero_ideal(self):
        I = normalize([], dim=2)
        assert I.is_zero() and I.gens == ()

    def test_antichain_kept(self):
        assert set(normalize([(1, 1), (3, 0), (0, 3)]).gens) == {(1, 1), (3, 0), (0, 3)}

    def test_mixed_lengths(self):
        with pytest.raises(DimensionMismatch):
            normalize([(1, 0), (1, 0, 0)])

    def test_canonical_order(self):
        assert normalize([(0, 2), (2, 0), (1, 1)]).gens == ((2, 0), (1, 1), (0, 2))

    @given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), min_size=1, max_size=8),
           st.randoms())
    def test_idempotent_and_order_independent(self, gens, rnd):
        I = normalize(gens)
        shuffled = list(gens)
        rnd.shuffle(shuffled)
        assert normalize(shuffled) == I
        assert normalize(I.gens) == I


class TestMembership:
    def test_member(self):
        x, y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
        assert membership(x**3 + x * y**4, I2((2, 0), (0, 3)))

    def test_non_member(self):
        x, y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
        assert not membership(x + y, I2((2, 0), (0, 3)))

    def test_zero(self):
        assert membership(Polynomial.zero(2), I2((5, 5)))
        assert membership(Polynomial.zero(2), MonomialIdeal(2))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            membership(Polynomial.variable(3, 0), I2((1, 0)))

    @given(polynomials(), st.integers(-9, 9).filter(bool), ideals())
    def test_coefficients_irrelevant(self, f, c, I):
        assert membership(f, I) == membership(f * Fraction(c, 7), I)


class TestPower:
    def test_square(self):
        assert ideal_power(I2((2, 0), (0, 3)), 2).gens == ((4, 0), (2, 3), (0, 6))

    def test_m_cubed(self):
        assert ideal_power(MonomialIdeal.maximal(2), 3).gens == ((3, 0), (2, 1), (1, 2), (0, 3))

    def test_three_generators(self):
        # frozen from the pairwise-sum enumeration; (2,3) is covered by (2,2)
        I = I2((2, 0), (1, 1), (0, 3))
        assert ideal_power(I, 2).gens == ((4, 0), (3, 1), (2, 2), (1, 4), (0, 6))
        for dropped in [(2, 3)]:
            assert in_power(dropped, I.gens, 2)

    def test_zero_power(self):
        assert ideal_power(I2((2, 0)), 0).is_unit()

    def test_identity(self):
        I = I2((2, 0), (1, 1), (0, 3))
        assert ideal_power(I, 1) == I

    @given(ideals(max_entry=3, max_gens=3), st.integers(0, 3), st.integers(0, 3))
    @settings(max_examples=40)
    def test_power_additivity(self, I, a, b):
        assert ideal_power(I, a + b) == ideal_product(ideal_power(I, a), ideal_power(I, b))

    @given(ideals(max_entry=3, max_gens=3), st.integers(1, 3))
    @settings(max_examples=30)
    def test_matches_bruteforce(self, I, n):
        P = ideal_power(I, n)
        for a in all_monomials(2, 10):
            assert P.contains_monomial(a) == in_power(a, I.gens, n)


class TestOrder:
    def test_decomposition(self):
        assert adic_order(Polynomial.monomial((4, 3)), I2((2, 0), (0, 3))) == 3
        assert brute_order((4, 3), [(2, 0), (0, 3)]) == 3

    def test_nonmember(self):
        assert adic_order(Polynomial.monomial((1, 1)), I2((2, 0), (0, 3))) == 0

    def test_zero(self):
        assert adic_order(Polynomial.zero(2), MonomialIdeal.maximal(2)) is INFINITY

    def test_zero_ideal_flagged(self):
        with pytest.warns(ZeroIdealWarning):
            assert adic_order(Polynomial.monomial((1, 0)), MonomialIdeal(2)) == 0

    def test_unit_ideal_refused(self):
        with pytest.raises(PreconditionError):
            monomial_order((1, 1), MonomialIdeal.unit(2))

    def test_polynomial_is_min_over_support(self):
        f = Polynomial(2, {(4, 3): 1, (2, 0): -3})
        assert adic_order(f, I2((2, 0), (0, 3))) == 1

    def test_m_adic(self):
        assert m_adic_order(Polynomial(2, {(2, 1): 1, (0, 5): 1})) == 3
        assert m_adic_order(Polynomial.constant(2, 7)) == 0
        assert m_adic_order(Polynomial.zero(2)) is INFINITY

    def test_infinity_ordering(self):
        assert INFINITY > 10**9 and INFINITY > Fraction(7, 3)
        assert not INFINITY < 3 and 3 < INFINITY
        assert INFINITY + 5 is INFINITY and min(INFINITY, 4) == 4

    @given(ideals(max_entry=3, max_gens=3), st.tuples(st.integers(0, 7), st.integers(0, 7)))
    @settings(max_examples=60)
    def test_matches_bruteforce(self, I, alpha):
        assert monomial_order(alpha, I) == brute_order(alpha, I.gens)

    @given(polynomials(max_terms=2), polynomials(max_terms=2), ideals(max_gens=3))
    @settings(max_examples=60)
    def test_superadditive(self, f, g, I):
        lhs = adic_order(f * g, I)
        rhs = adic_order(f, I) + adic_order(g, I)
        assert lhs >= rhs

    @given(polynomials(max_terms=3), ideals(max_entry=3, max_gens=3))
    @settings(max_examples=40)
    def test_membership_iff_order(self, f, I):
        order = adic_order(f, I)
        for n in range(0, 5):
            assert membership(f, ideal_power(I, n)) == (order >= n)


class TestColonIntersect:
    def test_colon_by_x(self):
        I = I2((6, 0), (4, 3), (2, 6), (0, 9))
        assert colon(I, I2((1, 0))).gens == ((5, 0), (3, 3), (1, 6), (0, 9))

    def test_colon_by_unit(self):
        I = I2((6, 0), (4, 3))
        assert colon(I, MonomialIdeal.unit(2)) == I

    def test_colon_untouched_coordinate(self):
        assert colon(I2((2, 0)), I2((0, 1))) == I2((2, 0))

    def test_colon_zero_refused(self):
        with pytest.raises(PreconditionError):
            colon(I2((2, 0)), MonomialIdeal(2))

    def test_intersect_lcm(self):
        assert intersect(I2((1, 0)), I2((0, 1))) == I2((1, 1))

    def test_intersect_frozen(self):
        assert intersect(I2((2, 0), (0, 1)), I2((1, 0), (0, 2))).gens == ((2, 0), (1, 1), (0, 2))

    def test_intersect_idempotent(self):
        I = I2((2, 0), (1, 1), (0, 3))
        assert intersect(I, I) == I

    @given(ideals(d=3, max_entry=3, max_gens=3), ideals(d=3, max_entry=3, max_gens=3))
    @settings(max_examples=40)
    def test_against_bruteforce(self, I, J):
        K = intersect(I, J)
        C = colon(I, J)
        assert intersect(J, I) == K
        for a in all_monomials(3, 8):
            assert K.contains_monomial(a) == (in_ideal(a, I.gens) and in_ideal(a, J.gens))
            in_colon = all(in_ideal(tuple(x + y for x, y in zip(a, g)), I.gens) for g in J.gens)
            assert C.contains_monomial(a) == in_colon
        assert ideal_product(C, J).issubset(I)

    def test_intersection_associative(self):
        rnd = random.Random(4)
        for _ in range(20):
            A, B, C = (MonomialIdeal(2, [(rnd.randint(0, 4), rnd.randint(0, 4)) for _ in range(3)])
                       for _ in range(3))
            assert intersect(intersect(A, B), C) == intersect(A, intersect(B, C))


def test_monomial_enumeration_is_canonical():
    mons = list(monomials_up_to(2, 2))
    assert mons == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


def test_polynomial_invariants():
    f = Polynomial(2, {(1, 0): 1, (0, 1): 0})
    assert dict(f.terms) == {(1, 0): 1}
    assert (f - f).is_zero() and Polynomial.zero(2).terms == {}
    with pytest.raises(PreconditionError):
        Polynomial(2, {(-1, 0): 1})
    with pytest.raises(DimensionMismatch):
        Polynomial(2, {(1, 0, 0): 1})
    with pytest.raises(TypeError):
        Polynomial(2, {(1, 0): 0.5})
    x = Polynomial.variable(2, 0)
    assert ((x + 1) ** 2).format(["x", "y"]) == "1 + 2*x + x^2"
    assert Polynomial(2, {(2, 1): Fraction(-3, 2), (0, 0): 1}).format("xy") == "1 - 3/2*x^2*y"


def test_no_zero_ideal_warning_for_zero_poly():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert adic_order(Polynomial.zero(2), MonomialIdeal(2)) is INFINITY
