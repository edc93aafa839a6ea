"""Exact monomials, polynomials over Q and monomial ideals.

Exponent vectors are plain tuples of non-negative ints.  A polynomial is a
finite map from exponent vectors to nonzero ``Fraction`` coefficients, and a
monomial ideal is stored as its minimal generating antichain in canonical
order (total degree ascending, then lexicographically descending, so that
``x^2`` precedes ``x*y`` precedes ``y^2``).

Nothing in this module uses floating point.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import product
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple
import warnings

from .errors import DimensionMismatch, PreconditionError

Exponent = Tuple[int, ...]


class _Infinity:
    """The order/value of the zero element.  Compares above every number."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinity, ())

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("valtop.INFINITY")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__


INFINITY = _Infinity()


class ZeroIdealWarning(UserWarning):
    """Order of a nonzero element with respect to the zero ideal was requested."""


def sort_key(alpha: Exponent):
    """Canonical graded order: total degree first, then lex with x_1 largest."""
    return (sum(alpha), tuple(-a for a in alpha))


def degree(alpha: Exponent) -> int:
    return sum(alpha)


def divides(alpha: Exponent, beta: Exponent) -> bool:
    """True iff x^alpha divides x^beta."""
    return all(a <= b for a, b in zip(alpha, beta))


def add(alpha: Exponent, beta: Exponent) -> Exponent:
    return tuple(a + b for a, b in zip(alpha, beta))


def lcm(alpha: Exponent, beta: Exponent) -> Exponent:
    return tuple(max(a, b) for a, b in zip(alpha, beta))


def quotient(alpha: Exponent, beta: Exponent) -> Exponent:
    """Exponent of x^alpha : x^beta, i.e. componentwise truncated subtraction."""
    return tuple(max(a - b, 0) for a, b in zip(alpha, beta))


def unit_vector(d: int, j: int, k: int = 1) -> Exponent:
    return tuple(k if i == j else 0 for i in range(d))


def check_exponent(alpha: Sequence[int], d: Optional[int] = None) -> Exponent:
    alpha = tuple(alpha)
    if d is not None and len(alpha) != d:
        raise DimensionMismatch(f"exponent {alpha} has length {len(alpha)}, expected {d}")
    for a in alpha:
        if not isinstance(a, int) or isinstance(a, bool):
            raise TypeError(f"exponent entries must be ints, got {a!r}")
        if a < 0:
            raise PreconditionError(f"negative exponent in {alpha}")
    return alpha


def monomials_up_to(d: int, max_degree: int) -> Iterator[Exponent]:
    """All exponent vectors of total degree <= max_degree, in canonical order."""
    for n in range(max_degree + 1):
        yield from monomials_of_degree(d, n)


def monomials_of_degree(d: int, n: int) -> Iterator[Exponent]:
    """Exponent vectors of total degree exactly n, lexicographically descending."""
    if d == 0:
        if n == 0:
            yield ()
        return
    if d == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in monomials_of_degree(d - 1, n - first):
            yield (first,) + rest


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(c)


class Polynomial:
    """Polynomial in d variables with exact rational coefficients."""

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Optional[Mapping[Sequence[int], object]] = None):
        self.dim = dim
        clean: Dict[Exponent, Fraction] = {}
        for alpha, c in (terms or {}).items():
            alpha = check_exponent(alpha, dim)
            c = _as_fraction(c)
            if c:
                clean[alpha] = clean.get(alpha, 0) + c
                if not clean[alpha]:
                    del clean[alpha]
        self._terms = clean
        self._hash = None

    @classmethod
    def zero(cls, dim: int) -> "Polynomial":
        return cls(dim)

    @classmethod
    def constant(cls, dim: int, c=1) -> "Polynomial":
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def monomial(cls, alpha: Sequence[int], c=1) -> "Polynomial":
        alpha = tuple(alpha)
        return cls(len(alpha), {alpha: c})

    @classmethod
    def variable(cls, dim: int, j: int) -> "Polynomial":
        return cls.monomial(unit_vector(dim, j))

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._terms)

    def support(self) -> Tuple[Exponent, ...]:
        return tuple(sorted(self._terms, key=sort_key))

    def coefficient(self, alpha: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(alpha), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        """True for c * x^alpha with c != 0."""
        return len(self._terms) == 1

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.dim != self.dim:
                raise DimensionMismatch(f"polynomials in {self.dim} and {other.dim} variables")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.dim, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for alpha, c in other._terms.items():
            terms[alpha] = terms.get(alpha, 0) + c
        return Polynomial(self.dim, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.dim, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Exponent, Fraction] = {}
        for a, c in self._terms.items():
            for b, e in other._terms.items():
                key = add(a, b)
                terms[key] = terms.get(key, 0) + c * e
        return Polynomial(self.dim, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PreconditionError("polynomial powers need a non-negative integer exponent")
        result = Polynomial.constant(self.dim)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.dim == other.dim and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.dim, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._terms.items())))
        return self._hash

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        """Render as ``3/2*x^2*y - z + 1`` using the given variable names."""
        if names is None:
            names = [f"x{i + 1}" for i in range(self.dim)]
        if not self._terms:
            return "0"
        parts = []
        for alpha in self.support():
            c = self._terms[alpha]
            mono = format_monomial(alpha, names)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if mono == "1":
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({self.format()!r})"


def format_monomial(alpha: Exponent, names: Sequence[str]) -> str:
    factors = []
    for name, a in zip(names, alpha):
        if a == 1:
            factors.append(name)
        elif a > 1:
            factors.append(f"{name}^{a}")
    return "*".join(factors) if factors else "1"


class MonomialIdeal:
    """Monomial ideal given by its canonical minimal generators.

    The empty generator tuple is the zero ideal; ``(0,...,0)`` alone is the
    unit ideal.
    """

    __slots__ = ("dim", "gens")

    def __init__(self, dim: int, gens: Iterable[Sequence[int]] = ()):
        self.dim = dim
        self.gens: Tuple[Exponent, ...] = _minimalize(check_exponent(g, dim) for g in gens)

    @classmethod
    def unit(cls, dim: int) -> "MonomialIdeal":
        return cls(dim, [(0,) * dim])

    @classmethod
    def maximal(cls, dim: int) -> "MonomialIdeal":
        return cls(dim, [unit_vector(dim, j) for j in range(dim)])

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.dim,)

    def contains_monomial(self, alpha: Sequence[int]) -> bool:
        return any(divides(g, alpha) for g in self.gens)

    def __contains__(self, item):
        if isinstance(item, Polynomial):
            return membership(item, self)
        return self.contains_monomial(tuple(item))

    def issubset(self, other: "MonomialIdeal") -> bool:
        """Generator-wise containment ``self ⊆ other``."""
        _same_dim(self, other)
        return all(other.contains_monomial(g) for g in self.gens)

    def min_degree(self):
        """Least total degree of a generator; INFINITY for the zero ideal."""
        return min((sum(g) for g in self.gens), default=INFINITY)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_product(self, other)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        _same_dim(self, other)
        return MonomialIdeal(self.dim, self.gens + other.gens)

    def __and__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return intersect(self, other)

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.dim == other.dim and self.gens == other.gens

    def __hash__(self):
        return hash((self.dim, self.gens))

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        if names is None:
            names = [f"x{i + 1}" for i in range(self.dim)]
        if not self.gens:
            return "(0)"
        return "(" + ", ".join(format_monomial(g, names) for g in self.gens) + ")"

    def __repr__(self):
        return f"MonomialIdeal({self.dim}, {list(self.gens)})"


def _same_dim(*objs):
    dims = {o.dim for o in objs}
    if len(dims) > 1:
        raise DimensionMismatch(f"mixed ambient dimensions {sorted(dims)}")


def _minimalize(gens: Iterable[Exponent]) -> Tuple[Exponent, ...]:
    # sorted by degree, so any divisor of g is seen before g
    kept = []
    for g in sorted(set(gens), key=sort_key):
        if not any(divides(k, g) for k in kept):
            kept.append(g)
    return tuple(kept)


def normalize(gens: Iterable[Sequence[int]], dim: Optional[int] = None) -> MonomialIdeal:
    """Minimal canonical antichain generating the same ideal as ``gens``."""
    gens = [tuple(g) for g in gens]
    lengths = {len(g) for g in gens}
    if dim is not None:
        lengths.add(dim)
    if len(lengths) > 1:
        raise DimensionMismatch(f"generators of mixed lengths {sorted(lengths)}")
    if not lengths:
        raise DimensionMismatch("cannot infer the dimension of an empty generator set")
    return MonomialIdeal(lengths.pop(), gens)


def membership(f: Polynomial, I: MonomialIdeal) -> bool:
    """f ∈ I iff every support monomial of f is a multiple of a generator."""
    _same_dim(f, I)
    return all(I.contains_monomial(a) for a in f.terms)


def ideal_product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_dim(I, J)
    return MonomialIdeal(I.dim, (add(a, b) for a, b in product(I.gens, J.gens)))


def ideal_power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    """I^n; n = 0 gives the unit ideal."""
    if not isinstance(n, int) or n < 0:
        raise PreconditionError(f"ideal power needs a non-negative integer, got {n!r}")
    return _power(I, n)


@lru_cache(maxsize=512)
def _power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    if n == 0:
        return MonomialIdeal.unit(I.dim)
    if n == 1:
        return I
    half = _power(I, n // 2)
    result = ideal_product(half, half)
    if n % 2:
        result = ideal_product(result, I)
    return result


def colon(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """I : J = intersection over generators g of J of (I : x^g)."""
    _same_dim(I, J)
    if J.is_zero():
        raise PreconditionError("colon by the zero ideal is the unit ideal of R; refused")
    result = None
    for g in J.gens:
        part = MonomialIdeal(I.dim, (quotient(a, g) for a in I.gens))
        result = part if result is None else intersect(result, part)
    return result


def intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_dim(I, J)
    return MonomialIdeal(I.dim, (lcm(a, b) for a, b in product(I.gens, J.gens)))


class _OrderTable:
    """Memoized I-adic order of monomials for one fixed ideal."""

    def __init__(self, gens: Tuple[Exponent, ...]):
        self.gens = gens
        self.min_deg = min(sum(g) for g in gens)
        self.memo: Dict[Exponent, int] = {}

    def __call__(self, alpha: Exponent) -> int:
        memo = self.memo
        if alpha in memo:
            return memo[alpha]
        bound = sum(alpha) // self.min_deg
        best = 0
        if bound:
            for g in self.gens:
                if divides(g, alpha):
                    cand = 1 + self(tuple(a - b for a, b in zip(alpha, g)))
                    if cand > best:
                        best = cand
                        if best == bound:
                            break
        memo[alpha] = best
        return best


@lru_cache(maxsize=64)
def _order_table(gens: Tuple[Exponent, ...]) -> _OrderTable:
    return _OrderTable(gens)


def monomial_order(alpha: Sequence[int], I: MonomialIdeal) -> int:
    """Largest n with x^alpha ∈ I^n.  The zero ideal gives 0; the unit ideal is refused."""
    alpha = check_exponent(alpha, I.dim)
    if I.is_zero():
        return 0
    if I.is_unit():
        raise PreconditionError("every element lies in all powers of the unit ideal")
    return _order_table(I.gens)(alpha)


def adic_order(f: Polynomial, I: MonomialIdeal):
    """I-adic order of f: INFINITY for f = 0, else the min over its support."""
    _same_dim(f, I)
    if f.is_zero():
        return INFINITY
    if I.is_zero():
        warnings.warn("adic order with respect to the zero ideal is 0 by convention",
                      ZeroIdealWarning, stacklevel=2)
        return 0
    return min(monomial_order(a, I) for a in f.terms)


def m_adic_order(f: Polynomial):
    """Order with respect to the ideal of the origin: least total degree."""
    if f.is_zero():
        return INFINITY
    return min(sum(a) for a in f.terms)
