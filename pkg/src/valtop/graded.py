"""Graded pieces and the cumulative growth function of a monomial valuation.

For a monomial valuation the piece of degree alpha of the associated graded
algebra has the monomials of value exactly alpha as a basis, so every count
here is a lattice point count.  ``F(l)`` counts monomials of value at most
``l * nu(m)``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, floor, prod
from typing import List, Sequence, Tuple

from .errors import BudgetExceeded, PreconditionError
from .valuation import MonomialValuation

GROWTH_BUDGET = 2_000_000


def piece_dim(nu: MonomialValuation, alpha) -> int:
    """Number of monomials of value exactly alpha."""
    alpha = Fraction(alpha)
    if alpha < 0:
        raise PreconditionError("graded pieces are indexed by non-negative values")
    return _count_exact(nu.weights, alpha)


@lru_cache(maxsize=4096)
def _count_exact(weights: Tuple[Fraction, ...], t: Fraction) -> int:
    if len(weights) == 1:
        q = t / weights[0]
        return 1 if q.denominator == 1 else 0
    w, rest = weights[0], weights[1:]
    return sum(_count_exact(rest, t - w * b) for b in range(floor(t / w) + 1))


@lru_cache(maxsize=4096)
def _count_at_most(weights: Tuple[Fraction, ...], t: Fraction) -> int:
    if t < 0:
        return 0
    if len(weights) == 1:
        return floor(t / weights[0]) + 1
    w, rest = weights[0], weights[1:]
    return sum(_count_at_most(rest, t - w * b) for b in range(floor(t / w) + 1))


def achieved_values(nu: MonomialValuation, bound) -> List[Fraction]:
    """Sorted distinct values <= bound of the value semigroup."""
    bound = Fraction(bound)
    values = {Fraction(0)}
    frontier = [Fraction(0)]
    while frontier:
        nxt = []
        for v in frontier:
            for w in nu.weights:
                s = v + w
                if s <= bound and s not in values:
                    values.add(s)
                    nxt.append(s)
        frontier = nxt
    return sorted(values)


@dataclass(frozen=True)
class GrowthTable:
    entries: Tuple[Tuple[int, int], ...]

    def __getitem__(self, l: int) -> int:
        return self.entries[l][1]

    def __len__(self):
        return len(self.entries)

    def to_csv(self) -> str:
        return "l,F\n" + "".join(f"{l},{F}\n" for l, F in self.entries)


def volume_coefficient(nu: MonomialValuation) -> Fraction:
    """Leading coefficient nu(m)^d / (d! * prod w) of F(l)."""
    d = nu.dim
    return nu.unit_value ** d / (factorial(d) * prod(nu.weights))


def _upper_bound(nu: MonomialValuation, l: int) -> Fraction:
    # unit cubes at counted points lie in the simplex of level l*nu(m) + sum(w)
    shift = sum(nu.weights) / nu.unit_value
    return volume_coefficient(nu) * (l + shift) ** nu.dim


def growth_table(nu: MonomialValuation, l_max: int, budget: int = GROWTH_BUDGET) -> GrowthTable:
    """F(l) for l = 0..l_max."""
    if l_max < 0:
        raise PreconditionError("l_max must be non-negative")
    if _upper_bound(nu, l_max) > budget:
        raise BudgetExceeded(f"growth table to l = {l_max} may count more than {budget} monomials")
    u = nu.unit_value
    return GrowthTable(tuple((l, _count_at_most(nu.weights, l * u)) for l in range(l_max + 1)))


def growth_by_pieces(nu: MonomialValuation, l: int) -> int:
    """F(l) as a sum of graded piece dimensions over achieved values."""
    return sum(piece_dim(nu, a) for a in achieved_values(nu, l * nu.unit_value))


@dataclass(frozen=True)
class WeakNoetherianReport:
    dim: int
    predicted: Fraction
    c_low: Fraction
    c_high: Fraction
    ratios: Tuple[Tuple[int, Fraction], ...]
    violations: Tuple[int, ...]
    # sandwich implied by vol*l^d <= F(l) <= vol*(l + sum(w)/nu(m))^d from here on
    guaranteed_from: int
    exact_bounds_hold: bool

    @property
    def holds(self) -> bool:
        return not self.violations


def weak_noetherian_check(nu: MonomialValuation, l_max: int) -> WeakNoetherianReport:
    """Two-sided check c_low * l^d <= F(l) <= c_high * l^d for d <= l <= l_max.

    The constants are half and twice the volume coefficient.  Violations are
    reported, not raised.
    """
    d = nu.dim
    if l_max < 2 * d:
        raise PreconditionError(f"l_max must be at least 2d = {2 * d}")
    vol = volume_coefficient(nu)
    c_low, c_high = vol / 2, vol * 2
    table = growth_table(nu, l_max)
    ratios, violations = [], []
    exact_ok = True
    for l in range(d, l_max + 1):
        F = table[l]
        ratios.append((l, Fraction(F, l ** d)))
        if not c_low * l ** d <= F <= c_high * l ** d:
            violations.append(l)
        if not vol * l ** d <= F <= _upper_bound(nu, l):
            exact_ok = False
    shift = sum(nu.weights) / nu.unit_value
    start = d
    while (start + shift) ** d > 2 * start ** d:
        start += 1
    return WeakNoetherianReport(d, vol, c_low, c_high, tuple(ratios), tuple(violations),
                                start, exact_ok)
