import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ncqsde.calculus import (AxisMap, GradVector, P, Pbar, axis_permutations, curl_test, deriv,
                             deriv_axis, expand_integral_series, gradient, potential_from_gradient,
                             project, quotient_part, zero_integral, zero_integral_axis)
from ncqsde.errors import DegreeOverflow, DimensionMismatch, NotAGradient
from ncqsde.ncpoly import I, NcPoly, VarId, adjoint, generators, herm, is_self_adjoint, p, q

from conftest import poly_pairs, polys, polys_any_modes


def monomial_rule(X: NcPoly, idx: int) -> NcPoly:
    """Direct exponent rule on q-p ordered monomials: an independent oracle for deriv."""
    out = {}
    for mono, c in X.items():
        k = mono[idx]
        if k:
            m2 = list(mono)
            m2[idx] -= 1
            out[tuple(m2)] = c * k
    return NcPoly(out, X.modes)


def all_vars(m):
    return [VarId.from_index(i, m) for i in range(2 * m)]


# -- examples -------------------------------------------------------------------------

def test_deriv_examples():
    assert deriv(q() ** 3, "q") == (q() ** 2).scale(3)
    assert deriv(p() ** 2, "q").is_zero()
    assert deriv(q() ** 2 * p(), "p") == q() ** 2


def test_deriv_axis_examples():
    sig = AxisMap.sigma(1)
    assert deriv_axis(q() * p(), sig, 1) == -p()
    ident = AxisMap.identity(1)
    X = q() ** 2 * p() + p()
    assert [deriv_axis(X, ident, i) for i in range(2)] == [deriv(X, "q"), deriv(X, "p")]
    assert deriv_axis(NcPoly.const(5), sig, 0).is_zero()


def test_zero_integral_examples():
    assert zero_integral(q() * p(), "q") == (q() ** 2 * p()).scale(Fraction(1, 2))
    assert zero_integral(NcPoly.const(1), "p") == p()
    assert zero_integral(q() ** 2 * p() ** 2, "p") == (q() ** 2 * p() ** 3).scale(Fraction(1, 3))


def test_zero_integral_cap():
    X = NcPoly({(2, 1): 1}, 1, degree_cap=3)
    with pytest.raises(DegreeOverflow):
        zero_integral(X, "q")
    assert zero_integral(NcPoly({(1, 1): 1}, 1, degree_cap=3), "q").degree == 3


def test_projection_examples():
    X = q() * p() + p() ** 2 + 3
    assert project(X, P("p")) == p() ** 2 + 3
    assert project(X, P("q", "p")) == X
    assert project(q(), P("p")).is_zero()
    assert quotient_part(q() * p() + p() ** 2, P("p")) == q() * p()
    assert quotient_part(NcPoly.zero(), P("q")).is_zero()
    assert quotient_part(q() ** 2 * p(), P("q")) == q() ** 2 * p()
    assert project(X, Pbar("q")) == project(X, P("p"))


def test_expand_integral_series_examples():
    f = q() ** 2 + p() ** 2
    summands, c = expand_integral_series(f, AxisMap.identity(1))
    assert sum(summands, NcPoly.zero()) == f and c == 0
    summands, c = expand_integral_series(NcPoly.const(7), AxisMap.identity(1))
    assert all(s.is_zero() for s in summands) and c == 7
    summands, c = expand_integral_series(q() * p(), AxisMap.sigma(1))
    assert summands[0] == q() * p() and summands[1].is_zero() and c == 0


def test_curl_examples():
    ident = AxisMap.identity(1)
    assert curl_test(GradVector((p(), q()), ident)).ok
    bad = curl_test(GradVector((p(), -q()), ident))
    assert not bad.ok
    (fail,) = bad.failures
    assert (fail.i, fail.j) == (0, 1) and fail.residual == NcPoly.const(2)
    assert curl_test(GradVector((NcPoly.zero(), NcPoly.zero()), ident)).ok


def test_curl_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        GradVector((q(),), AxisMap.identity(1))


def test_potential_examples():
    sig = AxisMap.sigma(1)  # y_1 targets p
    assert potential_from_gradient(GradVector((p().scale(2), NcPoly.zero()), sig)) == p() ** 2
    assert potential_from_gradient(GradVector((NcPoly.zero(), NcPoly.zero()), sig)).is_zero()
    f = q() ** 2 * p() ** 2
    assert potential_from_gradient(gradient(f, AxisMap.identity(1))) == f
    with pytest.raises(NotAGradient):
        potential_from_gradient(GradVector((p(), -q()), AxisMap.identity(1)))


# -- calculus laws ------------------------------------------------------------------------

@given(polys_any_modes(max_modes=3, max_degree=5), st.data())
def test_deriv_matches_monomial_rule(X, data):
    idx = data.draw(st.integers(0, 2 * X.modes - 1))
    assert deriv(X, VarId.from_index(idx, X.modes)) == monomial_rule(X, idx)


@given(polys_any_modes(max_modes=2, max_degree=5), st.data())
def test_clairaut(X, data):
    vs = all_vars(X.modes)
    u, v = data.draw(st.sampled_from(vs)), data.draw(st.sampled_from(vs))
    assert deriv(deriv(X, u), v) == deriv(deriv(X, v), u)


@given(poly_pairs(max_modes=2, max_degree=3), st.data())
def test_product_rule(XY, data):
    X, Y = XY
    v = data.draw(st.sampled_from(all_vars(X.modes)))
    assert deriv(X * Y, v) == X * deriv(Y, v) + deriv(X, v) * Y


@given(polys_any_modes(max_modes=2, max_degree=4), st.data())
def test_symmetry(X, data):
    v = data.draw(st.sampled_from(all_vars(X.modes)))
    assert adjoint(deriv(X, v)) == deriv(adjoint(X), v)
    # zero integrals live in the quotient by ker d/dv, so compare canonical representatives
    lhs = adjoint(zero_integral(X, v))
    assert quotient_part(lhs, Pbar(v)) == zero_integral(adjoint(X), v)


def test_zero_integral_adjoint_differs_by_kernel_element():
    Z = zero_integral(p(), "q")
    assert Z == q() * p()
    assert adjoint(Z) - zero_integral(adjoint(p()), "q") == NcPoly.const(-I)


@given(polys_any_modes(max_modes=2, max_degree=4), st.data())
def test_pairing_and_uniqueness(X, data):
    v = data.draw(st.sampled_from(all_vars(X.modes)))
    Z = zero_integral(X, v)
    assert deriv(Z, v) == X
    assert project(Z, Pbar(v)).is_zero()
    assert zero_integral(deriv(X, v), v) == quotient_part(X, Pbar(v))


@given(polys_any_modes(max_modes=2, max_degree=4), st.data())
def test_integral_commutativity(X, data):
    vs = all_vars(X.modes)
    u, v = data.draw(st.sampled_from(vs)), data.draw(st.sampled_from(vs))
    assert zero_integral(zero_integral(X, u), v) == zero_integral(zero_integral(X, v), u)


@given(polys_any_modes(max_modes=2, max_degree=4), st.data())
def test_kernel_characterization(X, data):
    v = data.draw(st.sampled_from(all_vars(X.modes)))
    assert deriv(X, v).is_zero() == (project(X, Pbar(v)) == X)
    free = project(X, Pbar(v))
    assert deriv(free, v).is_zero()


@given(polys_any_modes(max_modes=2, max_degree=4), st.data())
def test_self_adjointness_preserved(X, data):
    v = data.draw(st.sampled_from(all_vars(X.modes)))
    assert is_self_adjoint(deriv(herm(X), v))


@given(polys_any_modes(max_modes=2, max_degree=4), st.booleans())
def test_gradient_round_trip(f, use_sigma):
    axis = AxisMap.sigma(f.modes) if use_sigma else AxisMap.identity(f.modes)
    summands, c = expand_integral_series(f, axis)
    assert sum(summands, NcPoly.zero(f.modes)) + c == f
    assert potential_from_gradient(gradient(f, axis)) == f - c


@given(polys(1, 4), st.integers(0, 1), st.integers(1, 3))
def test_perturbed_gradient_fails_curl(f, slot, power):
    axis = AxisMap.identity(1)
    g = list(gradient(f, axis).entries)
    # x_slot^power * x_other is not a component of any gradient with the other entry unchanged
    other = 1 - slot
    bump = generators(1)[slot] ** power * generators(1)[other]
    g[slot] = g[slot] + bump
    assert not curl_test(GradVector(tuple(g), axis)).ok


@pytest.mark.parametrize("seed", range(5))
def test_axis_permutation_independence_single_mode(seed):
    rng = random.Random(seed)
    from ncqsde.sampling import random_poly
    f = random_poly(rng, 1, 5, 6)
    f = f - f.constant_term()
    for _, axis in axis_permutations(AxisMap.sigma(1)):
        assert potential_from_gradient(gradient(f, axis)) == f


@pytest.mark.parametrize("seed", range(3))
def test_axis_permutation_independence_two_modes(seed):
    rng = random.Random(100 + seed)
    from ncqsde.sampling import random_poly
    f = random_poly(rng, 2, 4, 6)
    f = f - f.constant_term()
    perms = list(axis_permutations(AxisMap.identity(2)))
    for _, axis in rng.sample(perms, 6):
        assert potential_from_gradient(gradient(f, axis)) == f


def test_zero_integral_axis_sign():
    sig = AxisMap.sigma(1)
    assert zero_integral_axis(NcPoly.const(1), sig, 1) == -q()
    assert deriv_axis(zero_integral_axis(p(), sig, 1), sig, 1) == p()


def test_matrix_gradvector_columns():
    g = GradVector(((p(), NcPoly.zero()), (q(), NcPoly.const(I))), AxisMap.identity(1))
    assert g.is_matrix and len(g.columns()) == 2
    assert curl_test(g).ok
