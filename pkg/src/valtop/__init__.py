"""Exact valuation-theoretic computations on polynomial rings."""

from .errors import BudgetExceeded, DimensionMismatch, ParseError, PreconditionError, ValtopError
from .monomial import (
    INFINITY, MonomialIdeal, Polynomial, adic_order, colon, ideal_power, ideal_product,
    intersect, m_adic_order, membership, normalize,
)
from .newton import newton_polyhedron, reduced_order, rees_constant_estimate, rees_valuations
from .valuation import MonomialValuation, izumi_constant, lin_equiv_constant, nu_value, q_ideal
from .graded import growth_table, weak_noetherian_check
from .symbolic import minimal_primes, symbolic_power
from .problem import ProblemFile, parse

__version__ = "0.1.0"
