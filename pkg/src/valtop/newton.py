"""Newton polyhedra of monomial ideals, Rees valuations and reduced orders.

For an m-primary monomial ideal I the Rees valuations are the monomial
valuations given by the primitive inner normals of the compact facets of
``conv(exponents of I) + R^d_{>=0}``; the reduced order of f is
``min_i <v_i, alpha> / c_i`` over facets ``<v_i, .> >= c_i`` and support
monomials alpha.  Facets are found by exact exhaustive search, which is why
the ambient dimension is capped.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from ._linalg import nullspace, primitive, rank
from .errors import BudgetExceeded, PreconditionError, UnsupportedDimension
from .monomial import (
    INFINITY, Exponent, MonomialIdeal, Polynomial, check_exponent, monomial_order,
    monomials_up_to, unit_vector,
)

MAX_HULL_DIM = 4
MAX_ORACLE_POWER = 64
MAX_SCAN_MONOMIALS = 200_000


@dataclass(frozen=True, order=True)
class Facet:
    """Supporting hyperplane ``<normal, alpha> = offset`` of a Newton polyhedron."""

    normal: Tuple[int, ...]
    offset: Fraction

    def value(self, alpha: Sequence[int]) -> int:
        return sum(v * a for v, a in zip(self.normal, alpha))

    def ratio(self, alpha: Sequence[int]) -> Fraction:
        return Fraction(self.value(alpha)) / self.offset

    def is_compact(self) -> bool:
        return all(v > 0 for v in self.normal)


@dataclass(frozen=True)
class NewtonPolyhedron:
    dim: int
    compact_facets: Tuple[Facet, ...]
    coordinate_facets: Tuple[Facet, ...]
    # facets with a zero normal entry and positive offset; only non-m-primary ideals have them
    unbounded_facets: Tuple[Facet, ...] = field(default=())

    @property
    def facets(self) -> Tuple[Facet, ...]:
        return self.compact_facets + self.unbounded_facets + self.coordinate_facets

    def contains(self, point: Sequence) -> bool:
        return all(f.value(point) >= f.offset for f in self.facets)


def is_m_primary(I: MonomialIdeal) -> bool:
    """Every variable has a pure power among the generators."""
    found = set()
    for g in I.gens:
        support = [j for j, a in enumerate(g) if a]
        if len(support) == 1:
            found.add(support[0])
    return len(found) == I.dim


def newton_polyhedron(I: MonomialIdeal, max_dim: int = MAX_HULL_DIM) -> NewtonPolyhedron:
    """Exact facet description of the Newton polyhedron of a nonzero monomial ideal.

    Every facet hyperplane is spanned by k generator exponents and d - k
    coordinate rays; all such choices are tried, and a candidate is kept when
    its normal is non-negative and its spanning points lie on the minimum.
    """
    if I.is_zero():
        raise PreconditionError("the zero ideal has no Newton polyhedron")
    d = I.dim
    if d > max_dim:
        raise UnsupportedDimension(f"exact hull search supports d <= {max_dim}, got d = {d}")
    points = I.gens
    rays = [unit_vector(d, j) for j in range(d)]
    found = set()
    for k in range(1, d + 1):
        for subset in combinations(points, k):
            base = subset[0]
            diffs = [tuple(p - b for p, b in zip(q, base)) for q in subset[1:]]
            for ray_set in combinations(rays, d - k):
                span = diffs + list(ray_set)
                if span and rank(span) != d - 1:
                    continue
                kernel = nullspace(span, d)
                if len(kernel) != 1:
                    continue
                normal = primitive(kernel[0])
                if all(v <= 0 for v in normal):
                    normal = tuple(-v for v in normal)
                if any(v < 0 for v in normal):
                    continue
                offset = min(sum(v * a for v, a in zip(normal, p)) for p in points)
                if sum(v * a for v, a in zip(normal, base)) != offset:
                    continue
                if offset > 0:
                    found.add(Facet(normal, Fraction(offset)))
    compact = tuple(sorted(f for f in found if f.is_compact()))
    unbounded = tuple(sorted(f for f in found if not f.is_compact()))
    coords = tuple(Facet(unit_vector(d, j), Fraction(0)) for j in range(d))
    return NewtonPolyhedron(d, compact, coords, unbounded)


def _require_m_primary(I: MonomialIdeal):
    if not is_m_primary(I):
        raise PreconditionError(
            "Rees valuations are computed only for m-primary ideals: the valuations "
            "here are archimedean, so every ideal they define is m-primary")


def rees_valuations(I: MonomialIdeal, max_dim: int = MAX_HULL_DIM) -> List[Tuple[Tuple[int, ...], Fraction]]:
    """(weight vector, value on I) for each Rees valuation of an m-primary ideal."""
    _require_m_primary(I)
    return [(f.normal, f.offset) for f in newton_polyhedron(I, max_dim).compact_facets]


def _facets(I: MonomialIdeal, max_dim: int) -> Tuple[Facet, ...]:
    _require_m_primary(I)
    return newton_polyhedron(I, max_dim).compact_facets


def _exponents_of(f) -> List[Exponent]:
    if isinstance(f, Polynomial):
        return list(f.terms)
    return [tuple(f)]


def reduced_order(f, I: MonomialIdeal, max_dim: int = MAX_HULL_DIM):
    """Reduced order of f (a Polynomial or an exponent vector) along I."""
    facets = _facets(I, max_dim)
    exps = _exponents_of(f)
    if not exps:
        return INFINITY
    for a in exps:
        check_exponent(a, I.dim)
    return min(fc.ratio(a) for fc in facets for a in exps)


def minimizing_facets(alpha: Sequence[int], I: MonomialIdeal, max_dim: int = MAX_HULL_DIM) -> List[Facet]:
    """Facets attaining the reduced order of the monomial x^alpha."""
    facets = _facets(I, max_dim)
    best = min(fc.ratio(alpha) for fc in facets)
    return [fc for fc in facets if fc.ratio(alpha) == best]


def reduced_order_limit_oracle(f, I: MonomialIdeal, n_max: int,
                               max_power: int = MAX_ORACLE_POWER) -> List[Fraction]:
    """The sequence I(f^n)/n for n = 1..n_max, f a single monomial."""
    exps = _exponents_of(f)
    if len(exps) != 1:
        raise PreconditionError("the limit oracle takes a single monomial")
    if n_max > max_power:
        raise BudgetExceeded(f"n_max = {n_max} exceeds the power budget {max_power}")
    alpha = check_exponent(exps[0], I.dim)
    return [Fraction(monomial_order(tuple(n * a for a in alpha), I), n)
            for n in range(1, n_max + 1)]


@dataclass(frozen=True)
class ReesConstantEstimate:
    """Largest observed gap between reduced order and order, with its monomial."""

    value: Fraction
    witness: Exponent
    degree_bound: int
    scanned: int


def order_gap(alpha: Sequence[int], I: MonomialIdeal, max_dim: int = MAX_HULL_DIM) -> Fraction:
    return reduced_order(alpha, I, max_dim) - monomial_order(alpha, I)


def _scan(I: MonomialIdeal, degree_bound: int):
    mons = list(monomials_up_to(I.dim, degree_bound))
    if len(mons) > MAX_SCAN_MONOMIALS:
        raise BudgetExceeded(f"{len(mons)} monomials exceed the scan budget")
    return mons


def rees_constant_estimate(I: MonomialIdeal, degree_bound: int,
                           max_dim: int = MAX_HULL_DIM) -> ReesConstantEstimate:
    """Certified lower bound for the least C with reduced order <= order + C.

    Scans every monomial of degree <= degree_bound; ties go to the first
    monomial in canonical order.
    """
    facets = _facets(I, max_dim)
    mons = _scan(I, degree_bound)
    best, witness = None, None
    for a in mons:
        gap = min(fc.ratio(a) for fc in facets) - monomial_order(a, I)
        if best is None or gap > best:
            best, witness = gap, a
    return ReesConstantEstimate(best, witness, degree_bound, len(mons))


def irredundancy_witnesses(I: MonomialIdeal, degree_bound: int,
                           max_dim: int = MAX_HULL_DIM) -> Dict[Facet, Optional[Exponent]]:
    """For each Rees facet, the first monomial on which it alone attains the minimum."""
    facets = _facets(I, max_dim)
    out: Dict[Facet, Optional[Exponent]] = {fc: None for fc in facets}
    for a in _scan(I, degree_bound):
        ratios = [fc.ratio(a) for fc in facets]
        low = min(ratios)
        if ratios.count(low) == 1:
            fc = facets[ratios.index(low)]
            if out[fc] is None:
                out[fc] = a
        if all(v is not None for v in out.values()):
            break
    return out
