import os
import sys

import pytest
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from valtop.monomial import MonomialIdeal, Polynomial  # noqa: E402


def exponents(d, max_entry=4):
    return st.tuples(*[st.integers(0, max_entry)] * d)


@st.composite
def ideals(draw, d=2, max_entry=4, max_gens=4, m_primary=False):
    gens = draw(st.lists(exponents(d, max_entry), min_size=1, max_size=max_gens))
    gens = [g for g in gens if any(g)] or [tuple([1] + [0] * (d - 1))]
    if m_primary:
        for j in range(d):
            k = draw(st.integers(1, max_entry + 1))
            gens.append(tuple(k if i == j else 0 for i in range(d)))
    return MonomialIdeal(d, gens)


@st.composite
def polynomials(draw, d=2, max_entry=4, max_terms=3):
    terms = draw(st.dictionaries(exponents(d, max_entry),
                                 st.integers(-5, 5).filter(bool),
                                 max_size=max_terms))
    return Polynomial(d, terms)


@pytest.fixture
def xy():
    return Polynomial.variable(2, 0), Polynomial.variable(2, 1)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
