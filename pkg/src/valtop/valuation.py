"""Monomial valuations, their valuation ideals and comparison constants.

A monomial valuation is given by strictly positive rational weights w and
takes ``nu(f) = min <w, alpha>`` over the support of f.  ``unit_value`` is
``nu(m) = min w``; the ideals ``Q_l`` collect the monomials of value at least
``l * nu(m)``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ._linalg import rank
from .errors import BudgetExceeded, DimensionMismatch, PreconditionError
from .monomial import (
    INFINITY, Exponent, MonomialIdeal, Polynomial, check_exponent, ideal_power,
    monomials_of_degree, monomials_up_to, normalize,
)

MAX_CANDIDATES = 500_000
MAX_WITNESS_LEVEL = 10_000


@dataclass(frozen=True)
class MonomialValuation:
    weights: Tuple[Fraction, ...]

    def __post_init__(self):
        ws = tuple(Fraction(w) for w in self.weights)
        if not ws:
            raise PreconditionError("a valuation needs at least one weight")
        if any(w <= 0 for w in ws):
            raise PreconditionError(f"weights must be strictly positive, got {ws}")
        object.__setattr__(self, "weights", ws)

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def unit_value(self) -> Fraction:
        """nu(m), the least weight."""
        return min(self.weights)

    @property
    def rat_rank(self) -> int:
        # each weight is its own coordinate vector in Q^1
        return rank([[w] for w in self.weights])

    def value(self, alpha: Sequence[int]) -> Fraction:
        return sum((w * a for w, a in zip(self.weights, alpha)), Fraction(0))


def _check_dim(nu: MonomialValuation, obj):
    if nu.dim != obj.dim:
        raise DimensionMismatch(f"valuation on {nu.dim} variables applied to dimension {obj.dim}")


def nu_value(f: Polynomial, nu: MonomialValuation):
    """Least weighted degree over the support of f; INFINITY for f = 0."""
    _check_dim(nu, f)
    if f.is_zero():
        return INFINITY
    return min(nu.value(a) for a in f.terms)


def mon_of(f: Polynomial) -> MonomialIdeal:
    """The smallest monomial ideal containing f, by its minimal support monomials."""
    if f.is_zero():
        raise PreconditionError("the zero polynomial has no monomial generators")
    return normalize(f.terms.keys(), dim=f.dim)


@dataclass(frozen=True)
class NuIdeal:
    threshold: Fraction
    strict: bool
    ideal: MonomialIdeal
    valuation: MonomialValuation = field(repr=False)

    def contains_monomial(self, alpha: Sequence[int]) -> bool:
        v = self.valuation.value(alpha)
        return v > self.threshold if self.strict else v >= self.threshold


def _minimal_candidates(weights: Sequence[Fraction], t: Fraction, strict: bool) -> Iterator[Exponent]:
    """Exponents whose last coordinate is the least one reaching the threshold.

    Every minimal generator of the valuation ideal has this form, since its
    last coordinate cannot be lowered.
    """
    d = len(weights)

    def reaches(v):
        return v > t if strict else v >= t

    def need(rest, w):
        # least b >= 0 with rest + w*b reaching t
        if reaches(rest):
            return 0
        gap = (t - rest) / w
        return floor(gap) + 1 if strict else ceil(gap)

    def rec(prefix, partial):
        j = len(prefix)
        if j == d - 1:
            yield prefix + (need(partial, weights[-1]),)
            return
        if reaches(partial):
            yield prefix + (0,) * (d - j)
            return
        top = need(partial, weights[j])
        for b in range(top + 1):
            yield from rec(prefix + (b,), partial + weights[j] * b)

    yield from rec((), Fraction(0))


def nu_ideal(nu: MonomialValuation, threshold, strict: bool = False) -> NuIdeal:
    """The ideal ``{x^beta : <w, beta> >= threshold}`` (``>`` when strict)."""
    t = Fraction(threshold)
    if t < 0 or (t == 0 and not strict):
        return NuIdeal(t, strict, MonomialIdeal.unit(nu.dim), nu)
    gens = []
    for n, cand in enumerate(_minimal_candidates(nu.weights, t, strict)):
        if n >= MAX_CANDIDATES:
            raise BudgetExceeded(f"valuation ideal of threshold {t} needs more than {MAX_CANDIDATES} candidates")
        gens.append(cand)
    return NuIdeal(t, strict, MonomialIdeal(nu.dim, gens), nu)


def q_ideal(nu: MonomialValuation, l) -> NuIdeal:
    """Q_l: monomials of value at least l * nu(m)."""
    l = Fraction(l)
    if l < 0:
        raise PreconditionError("Q_l needs l >= 0")
    return nu_ideal(nu, l * nu.unit_value)


@dataclass(frozen=True)
class NuIdealCheck:
    holds: bool
    counterexample: Optional[Tuple[Exponent, Exponent]] = None
    degree_bound: int = 0

    def __bool__(self):
        return self.holds


def is_nu_ideal(I: MonomialIdeal, nu: MonomialValuation, degree_bound: int) -> NuIdealCheck:
    """Bounded test that b ∈ I and nu(a) >= nu(b) force a ∈ I.

    Only monomials of degree <= degree_bound are examined.  A counterexample
    (a, b) is the canonically first offending a paired with the first member b
    of no larger value.
    """
    _check_dim(nu, I)
    mons = list(monomials_up_to(nu.dim, degree_bound))
    members = [b for b in mons if I.contains_monomial(b)]
    if not members:
        return NuIdealCheck(True, None, degree_bound)
    low = min(nu.value(b) for b in members)
    for a in mons:
        va = nu.value(a)
        if va >= low and not I.contains_monomial(a):
            b = next(b for b in members if nu.value(b) <= va)
            return NuIdealCheck(False, (a, b), degree_bound)
    return NuIdealCheck(True, None, degree_bound)


@dataclass(frozen=True)
class LinEquivResult:
    """Least r with Q_{rl} ⊆ m^l for all l, and a refutation of every r' < r."""

    r: int
    witnesses: Dict[int, Tuple[int, Exponent]]


def refutation_witness(nu: MonomialValuation, r: int,
                       max_level: int = MAX_WITNESS_LEVEL) -> Optional[Tuple[int, Exponent]]:
    """Least level l, then lexicographically least alpha, with alpha ∈ Q_{rl} but |alpha| < l.

    Returns None if no level up to max_level fails.
    """
    u, top = nu.unit_value, max(nu.weights)
    for l in range(1, max_level + 1):
        t = r * l * u
        # the largest value of degree < l is (l-1)*top; skip hopeless levels
        if (l - 1) * top < t:
            continue
        hits = [a for n in range(l) for a in monomials_of_degree(nu.dim, n) if nu.value(a) >= t]
        return l, min(hits)
    return None


def lin_equiv_constant(nu: MonomialValuation) -> LinEquivResult:
    u, top = nu.unit_value, max(nu.weights)
    r = ceil(top / u)
    witnesses = {}
    for smaller in range(1, r):
        wit = refutation_witness(nu, smaller)
        if wit is None:
            raise BudgetExceeded(f"no refutation of r = {smaller} found below level {MAX_WITNESS_LEVEL}")
        witnesses[smaller] = wit
    return LinEquivResult(r, witnesses)


def sandwich_failures(nu: MonomialValuation, r: int, l_max: int) -> List[int]:
    """Levels l <= l_max where Q_{rl} ⊆ m^l ⊆ Q_l fails, by generator-wise membership."""
    m = MonomialIdeal.maximal(nu.dim)
    bad = []
    for l in range(1, l_max + 1):
        upper = q_ideal(nu, r * l).ideal
        lower = q_ideal(nu, l)
        ml = ideal_power(m, l)
        if upper.min_degree() < l or not all(lower.contains_monomial(g) for g in ml.gens):
            bad.append(l)
    return bad


def izumi_constant(nu: MonomialValuation, nu2: MonomialValuation) -> Fraction:
    """Least k with nu(f) <= k * nu2(f) for every nonzero f: ``max w_i / w2_i``."""
    if nu.dim != nu2.dim:
        raise DimensionMismatch(f"valuations on {nu.dim} and {nu2.dim} variables")
    return max(a / b for a, b in zip(nu.weights, nu2.weights))


def izumi_oracle(nu: MonomialValuation, nu2: MonomialValuation, degree_bound: int) -> Tuple[Fraction, Exponent]:
    """Brute-force max of nu/nu2 over monomials 1 <= |alpha| <= degree_bound, with first argmax."""
    if nu.dim != nu2.dim:
        raise DimensionMismatch(f"valuations on {nu.dim} and {nu2.dim} variables")
    best, arg = None, None
    for alpha in monomials_up_to(nu.dim, degree_bound):
        if not any(alpha):
            continue
        q = nu.value(alpha) / nu2.value(alpha)
        if best is None or q > best:
            best, arg = q, alpha
    return best, arg


def abhyankar_invariants(nu: MonomialValuation) -> Tuple[int, int, int]:
    """(rational rank, residue transcendence degree, dimension)."""
    return nu.rat_rank, nu.dim - nu.rat_rank, nu.dim


def archimedean_multiplier(nu: MonomialValuation, a: Sequence[int], b: Sequence[int]) -> int:
    """An n with n * nu(a) > nu(b), for a monomial a != 1."""
    a = check_exponent(a, nu.dim)
    if not any(a):
        raise PreconditionError("the unit monomial has value 0")
    return ceil(nu.value(b) / nu.value(a)) + 1
