"""Symbolic powers of squarefree monomial ideals and containment searches.

A squarefree monomial ideal is the intersection of its minimal primes, which
are generated by the minimal vertex covers of its generator hypergraph, and
its n-th symbolic power is the intersection of the n-th powers of those
primes.  Every containment below is decided generator-wise.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations
from math import ceil
from typing import List, Optional, Sequence, Tuple

from .errors import BudgetExceeded, PreconditionError
from .monomial import (
    Exponent, MonomialIdeal, check_exponent, colon, ideal_power, intersect,
    monomials_of_degree,
)
from .newton import is_m_primary, rees_constant_estimate, rees_valuations

MAX_VARS = 8
MAX_SYMBOLIC_POWER = 64

Prime = Tuple[int, ...]


@dataclass(frozen=True)
class SquarefreeIdeal:
    base: MonomialIdeal

    def __post_init__(self):
        if self.base.is_zero():
            raise PreconditionError("squarefree ideal must be nonzero")
        if self.base.is_unit():
            raise PreconditionError("squarefree ideal must be proper")
        if any(a > 1 for g in self.base.gens for a in g):
            raise PreconditionError("generators must be squarefree (all exponents <= 1)")

    @property
    def dim(self) -> int:
        return self.base.dim


def _as_squarefree(I) -> SquarefreeIdeal:
    return I if isinstance(I, SquarefreeIdeal) else SquarefreeIdeal(I)


def minimal_primes(I, max_vars: int = MAX_VARS) -> List[Prime]:
    """Minimal vertex covers of the generator supports, sorted by size then lex."""
    I = _as_squarefree(I)
    d = I.dim
    if d > max_vars:
        raise BudgetExceeded(f"vertex cover search supports at most {max_vars} variables")
    edges = [frozenset(j for j, a in enumerate(g) if a) for g in I.base.gens]
    primes: List[Prime] = []
    for size in range(1, d + 1):
        for cover in combinations(range(d), size):
            s = set(cover)
            if all(e & s for e in edges) and not any(set(p) <= s for p in primes):
                primes.append(cover)
    return primes


def prime_power(prime: Sequence[int], n: int, d: int) -> MonomialIdeal:
    """n-th power of the prime generated by the listed variables."""
    gens = []
    for local in monomials_of_degree(len(prime), n):
        alpha = [0] * d
        for j, a in zip(prime, local):
            alpha[j] = a
        gens.append(tuple(alpha))
    return MonomialIdeal(d, gens)


def symbolic_power(I, n: int, max_power: int = MAX_SYMBOLIC_POWER) -> MonomialIdeal:
    I = _as_squarefree(I)
    if not isinstance(n, int) or n < 1:
        raise PreconditionError("symbolic powers need n >= 1")
    if n > max_power:
        raise BudgetExceeded(f"symbolic power {n} exceeds the budget {max_power}")
    return _symbolic_power(I, n)


@lru_cache(maxsize=256)
def _symbolic_power(I: SquarefreeIdeal, n: int) -> MonomialIdeal:
    return reduce(intersect, [prime_power(p, n, I.dim) for p in minimal_primes(I)])


@dataclass(frozen=True)
class UniformContainment:
    """Least a with I^(ac) ⊆ m^c for c <= c_max."""

    a: int
    c_max: int
    min_degrees: Tuple[int, ...]
    # (c, min degree of I^((a-1)c)) refuting a - 1
    refutation: Optional[Tuple[int, int]]


def uniform_m_containment(I, c_max: int, max_power: int = MAX_SYMBOLIC_POWER) -> UniformContainment:
    I = _as_squarefree(I)
    if c_max < 1:
        raise PreconditionError("c_max must be positive")

    def degrees(a):
        return [0 if a == 0 else symbolic_power(I, a * c, max_power).min_degree()
                for c in range(1, c_max + 1)]

    a = 1
    while True:
        if a * c_max > max_power:
            raise BudgetExceeded(f"no a found with a * c_max <= {max_power}")
        degs = degrees(a)
        if all(dg >= c for c, dg in enumerate(degs, start=1)):
            break
        a += 1
    prev = degrees(a - 1)
    c_bad = next(c for c, dg in enumerate(prev, start=1) if dg < c)
    return UniformContainment(a, c_max, tuple(degs), (c_bad, prev[c_bad - 1]))


@dataclass(frozen=True)
class ContainmentRow:
    c: int
    power: int
    holds: bool
    least_h: Optional[int]


@dataclass(frozen=True)
class ElsReport:
    """I^(dc) ⊆ I^c for c <= c_max, with the least working symbolic exponent."""

    dim: int
    rows: Tuple[ContainmentRow, ...]

    @property
    def holds(self) -> bool:
        return all(r.holds for r in self.rows)


def els_containment_check(I, c_max: int = 3, max_power: int = MAX_SYMBOLIC_POWER) -> ElsReport:
    I = _as_squarefree(I)
    d = I.dim
    rows = []
    for c in range(1, c_max + 1):
        target = ideal_power(I.base, c)
        holds = symbolic_power(I, d * c, max_power).issubset(target)
        least = next((h for h in range(1, d * c + 1)
                      if symbolic_power(I, h, max_power).issubset(target)), None)
        rows.append(ContainmentRow(c, d * c, holds, least))
    return ElsReport(d, tuple(rows))


@dataclass(frozen=True)
class ColonCell:
    k: int
    n: int
    exponent: int
    holds: bool


@dataclass(frozen=True)
class ColonBound:
    r: int
    cells: Tuple[ColonCell, ...]
    # first (k, n) refuting r - 1, when r > 1
    refutation: Optional[Tuple[int, int]]
    max_ratio: Fraction
    rees_constant: Fraction
    predictor: Fraction
    predicted_bound: int


def _cells(I: MonomialIdeal, x: Exponent, r: int, k_max: int, n_max: int) -> List[ColonCell]:
    out = []
    for k in range(1, k_max + 1):
        Ik = ideal_power(I, k)
        for n in range(1, n_max + 1):
            quot = colon(Ik, MonomialIdeal(I.dim, [tuple(n * a for a in x)]))
            e = k - r * n
            out.append(ColonCell(k, n, e, quot.issubset(ideal_power(I, max(e, 0)))))
    return out


def colon_bound(I: MonomialIdeal, x_elt: Sequence[int], k_max: int, n_max: int,
                degree_bound: int = 12, max_power: int = MAX_SYMBOLIC_POWER) -> ColonBound:
    """Least r >= 1 with I^k : x^n ⊆ I^(k - rn) on the grid k <= k_max, n <= n_max.

    Powers with non-positive exponent are the unit ideal.  The result is
    reported next to the predictor max_i v_i(x)/v_i(I) + C built from the Rees
    valuations and the scanned Rees constant.
    """
    x = check_exponent(x_elt, I.dim)
    if not any(x):
        raise PreconditionError("x_elt must be a non-unit monomial")
    if not is_m_primary(I):
        raise PreconditionError("colon_bound needs an m-primary ideal")
    if k_max < 1 or n_max < 1:
        raise PreconditionError("grid bounds must be positive")
    if k_max > max_power:
        raise BudgetExceeded(f"k_max = {k_max} exceeds the power budget {max_power}")
    r = 1
    prev_cells = None
    while True:
        cells = _cells(I, x, r, k_max, n_max)
        if all(c.holds for c in cells):
            break
        prev_cells = cells
        r += 1
    refutation = None
    if prev_cells is not None:
        bad = next(c for c in prev_cells if not c.holds)
        refutation = (bad.k, bad.n)
    ratio = max(Fraction(sum(v * a for v, a in zip(normal, x))) / off
                for normal, off in rees_valuations(I))
    C = rees_constant_estimate(I, degree_bound).value
    return ColonBound(r, tuple(cells), refutation, ratio, C, ratio + C, ceil(ratio) + ceil(C))
