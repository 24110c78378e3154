from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkz import catalog
from gkz.errors import DomainError, ShapeError
from gkz.fan import regular_triangulation, sample_point, simplex_data
from gkz.gkzsys import build_system, operators
from gkz.series import (
    Genericity,
    compositions,
    evaluate,
    exponent_vector,
    gamma_series,
    graded_colex,
    lambda_set,
    operator_residual,
    representatives,
    very_generic,
)


def test_enumeration_order():
    assert compositions(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert list(graded_colex(2, 1)) == [(0, 0), (1, 0), (0, 1)]
    assert list(graded_colex(0)) == [()]


def test_representatives_and_lambda_two_simplex(two_simplex):
    spec, tri = two_simplex
    sd = tri.find((1, 2))
    assert representatives(sd) == [(0,), (1,)]
    g = gamma_series(sd, (0,), spec.parameter)
    assert lambda_set(g, 6) == [(0,), (2,), (4,), (6,)]
    assert lambda_set(gamma_series(sd, (1,), spec.parameter), 5) == [(1,), (3,), (5,)]


def test_exponent_vector_frozen(two_simplex):
    spec, tri = two_simplex
    sd = tri.find((1, 2))
    c1, c2 = spec.parameter
    assert exponent_vector(sd, (1,), spec.parameter) == (-c1 + 1, -c2 / 2 - Fraction(3, 2), Fraction(1))


def test_very_generic_verdicts(two_simplex):
    spec, tri = two_simplex
    sd = tri.find((1, 2))
    assert very_generic(sd, spec.parameter).status is Genericity.YES
    v = very_generic(sd, (1, 2))
    assert v.status is Genericity.NO and not v
    m, i = v.witness
    # the witness really produces an integer entry
    x = [a for a in exponent_vector(sd, m, (1, 2))]
    assert x[i].denominator == 1
    # c2 = 1/2: A_sigma^{-1}(c + a(3) m) has second entry (1/2 + 3m)/2, never an integer
    assert very_generic(sd, (Fraction(1, 3), Fraction(1, 2))).status is Genericity.YES
    assert very_generic(sd, (Fraction(1, 3), 1)).status is Genericity.NO
    assert very_generic(sd, (0.3 + 0.1j, 0.2)).status is Genericity.UNKNOWN_BEYOND_DEPTH
    assert very_generic(sd, (0.3 + 0.1j, 1.0)).status is Genericity.NO


@settings(max_examples=40, deadline=None)
@given(st.fractions(Fraction(-3), Fraction(3), max_denominator=12).filter(lambda c: c.denominator > 1))
def test_binomial_closed_form(c):
    # A = (1 1): phi_{sigma={0},0} = (z0 + z1)^(-c) / Gamma(1 - c)
    spec = build_system([[1, 1]], [c])
    sd = simplex_data(spec, [0])
    z = np.array([1.0 + 0.2j, 0.15 - 0.1j])
    val = evaluate(gamma_series(sd, (0,), spec.parameter), z, order=60)
    # principal branches: z0^(-c) (1 + z1/z0)^(-c)
    ref = complex(mpmath.power(mpmath.mpc(z[0]), -mpmath.mpf(c.numerator) / c.denominator) * mpmath.power(1 + mpmath.mpc(z[1]) / mpmath.mpc(z[0]), -mpmath.mpf(c.numerator) / c.denominator) * mpmath.rgamma(1 - mpmath.mpf(c.numerator) / c.denominator))
    assert abs(val.value - ref) <= 1e-13 * max(abs(ref), 1.0)
    assert val.tail_bound < 1e-13


def test_tail_bound_covers_truncation_error(residue):
    spec, tri = residue
    z = sample_point(tri, R=0.3)
    for sd in tri.simplices:
        for k in representatives(sd):
            g = gamma_series(sd, k, spec.parameter)
            short, long = evaluate(g, z, order=6), evaluate(g, z, order=60)
            assert abs(short.value - long.value) <= 10 * short.tail_bound + 1e-15


def test_evaluation_errors(two_simplex):
    spec, tri = two_simplex
    g = gamma_series(tri.simplices[0], (0,), spec.parameter)
    with pytest.raises(DomainError):
        evaluate(g, [0, 1, 1])
    with pytest.raises(ShapeError):
        evaluate(g, [1, 1])
    with pytest.raises(ShapeError):
        gamma_series(tri.simplices[0], (-1,), spec.parameter)


def test_divergent_direction_has_no_tail_bound():
    spec = catalog.two_simplex_system()
    tri = regular_triangulation(spec, (0, 1, 0))
    sd = tri.simplices[0]  # sigma = {1, 3}: s_2 = 4/3 > 1, a Gevrey (divergent) series
    assert sd.gevrey[1] == Fraction(4, 3)
    v = evaluate(gamma_series(sd, (0,), spec.parameter), sample_point(tri), order=10)
    assert np.isfinite(v.value) and v.tail_bound == float("inf")


@pytest.mark.parametrize("system, weight, u", [
    (catalog.two_simplex_system, catalog.TWO_SIMPLEX_WEIGHT, (2, -3, 2)),
    (catalog.residue_system, catalog.RESIDUE_WEIGHT, (1, -2, 3, -2)),
])
def test_operators_annihilate(system, weight, u):
    spec = system()
    tri = regular_triangulation(spec, weight)
    ops = operators(spec, [u])
    for sd in tri.simplices:
        for k in representatives(sd):
            g = gamma_series(sd, k, spec.parameter)
            res = [operator_residual(g, op, order=10) for op in ops]
            assert all(r == 0 for r in res[: spec.n])
            assert all(r <= 1e-12 for r in res[spec.n:])


def test_grassmannian_single_series_is_well_defined():
    spec = catalog.grassmannian_system()
    sd = simplex_data(spec, [spec.position(x) for x in catalog.GRASSMANNIAN_SIMPLEX])
    assert representatives(sd) == [(0, 0, 0, 0)]
