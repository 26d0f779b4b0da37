from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ncqsde.ncpoly import NcPoly, Scalar

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

rationals = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 4))
scalars = st.builds(Scalar, rationals, rationals)
real_scalars = st.builds(Scalar, rationals)


def monomials(modes, max_degree):
    return (st.lists(st.integers(0, 2 * modes - 1), max_size=max_degree)
            .map(lambda idx: tuple(idx.count(k) for k in range(2 * modes))))


def polys(modes=1, max_degree=4, max_terms=4):
    return st.dictionaries(monomials(modes, max_degree), scalars, max_size=max_terms).map(
        lambda terms: NcPoly(terms, modes))


@st.composite
def polys_any_modes(draw, max_modes=3, max_degree=3, max_terms=4):
    m = draw(st.integers(1, max_modes))
    return draw(polys(m, max_degree, max_terms))


@st.composite
def poly_pairs(draw, max_modes=2, max_degree=3, count=2):
    m = draw(st.integers(1, max_modes))
    return tuple(draw(polys(m, max_degree)) for _ in range(count))


@pytest.fixture
def x1():
    from ncqsde.ncpoly import generators
    return generators(1)
