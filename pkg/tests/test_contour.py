import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkz.contour import (
    Arc,
    Line,
    PathSpec,
    exp_sinh,
    gauss_oracle,
    hankel_integral,
    integrate_path,
    pochhammer_closed_form,
    pochhammer_integral,
    pochhammer_path,
    tanh_sinh,
)
from gkz.errors import DimensionUnsupported, DivergenceDetected, MaxRefinement, ParameterPole, ShapeError, SingularOnPath

TWO_PI_I = 2j * math.pi


def _mp_hankel(a):
    return complex(2j * mpmath.pi * mpmath.rgamma(1 - mpmath.mpc(a.real, a.imag)))


def _mp_beukers(alphas):
    # (1 - e(-a)) for every exponent times the Dirichlet integral
    val = mpmath.mpc(1)
    for a in alphas:
        a = mpmath.mpc(a.real, a.imag)
        val *= (1 - mpmath.exp(-2j * mpmath.pi * a)) * mpmath.gamma(a)
    return complex(val * mpmath.rgamma(sum(mpmath.mpc(a.real, a.imag) for a in alphas)))


# --- engine -------------------------------------------------------------


def test_gk_on_a_polynomial_and_a_circle():
    path = PathSpec([Line(0, 1)])
    r = integrate_path(path, lambda t, L: t**5)
    assert abs(r.value - 1 / 6) < 1e-15
    circle = PathSpec([Arc(0, 1.0, 0, 2 * math.pi)])
    assert abs(integrate_path(circle, lambda t, L: 1 / t).value - TWO_PI_I) < 1e-13


def test_tracked_log_on_a_full_turn_gains_2_pi_i():
    circle = PathSpec([Arc(0, 2.0, 0, 2 * math.pi)], factors=[lambda t: t])
    tr = circle.tracker()
    assert abs(tr.net_winding()[0] - 2 * math.pi) < 1e-12
    # int t^(a-1) dt around the circle = (e(a) - 1) * r^a / a
    a = 0.3
    r = integrate_path(circle, lambda t, L: np.exp((a - 1) * L[0]))
    assert abs(r.value - (cmath.exp(TWO_PI_I * a) - 1) * 2.0**a / a) < 1e-12


def test_commutator_returns_every_branch_to_its_start():
    tr = pochhammer_path().tracker()
    assert all(abs(w) < 1e-12 for w in tr.net_winding())


def test_path_checks():
    with pytest.raises(ShapeError):
        PathSpec([Line(0, 1), Line(2, 3)])
    with pytest.raises(SingularOnPath):
        PathSpec([Line(-1, 1)], factors=[lambda t: t]).tracker()
    with pytest.raises(MaxRefinement):
        integrate_path(PathSpec([Line(0, 1)]), lambda t, L: np.sin(1 / np.maximum(t, 1e-300)) * 1e3, max_panels=20)


def test_double_exponential_rules():
    r = tanh_sinh(lambda x, xa, xb: xa**-0.5 * xb**-0.3, 0.0, 1.0)
    assert abs(r.value - float(mpmath.beta(0.5, 0.7))) < 1e-13
    r = exp_sinh(lambda x: np.exp(-x) * x**-0.5)
    assert abs(r.value - math.sqrt(math.pi)) < 1e-12


# --- Hankel -------------------------------------------------------------


@settings(max_examples=25, deadline=None)
@given(st.floats(-2.5, 2.5), st.floats(-2.0, 2.0))
def test_hankel_matches_mpmath(x, y):
    a = complex(x, y)
    ref = _mp_hankel(a)
    r = hankel_integral(a)
    assert abs(r.value - ref) <= 1e-10 * max(abs(ref), 1e-3)


@pytest.mark.parametrize("delta", [0.1, 0.5, 2.0])
def test_hankel_is_independent_of_the_circle(delta):
    a = 0.4 - 0.3j
    assert abs(hankel_integral(a, delta=delta).value - _mp_hankel(a)) < 1e-12 * abs(_mp_hankel(a))


def test_hankel_at_positive_integer_vanishes():
    # 1/Gamma(1 - alpha) = 0 for alpha = 1, 2, ...
    assert abs(hankel_integral(2.0).value) < 1e-12


# --- Pochhammer ---------------------------------------------------------


@pytest.mark.parametrize("alphas", [(0.5, 0.5), (1 / 3, 1 / 4), (0.3 + 0.1j, 0.6), (2.5, -1.3), (-0.7, -0.6)])
def test_pochhammer_k1_matches_mpmath(alphas):
    ref = _mp_beukers(alphas)
    r = pochhammer_integral(alphas)
    assert abs(r.value - ref) <= 1e-11 * abs(ref)
    assert abs(pochhammer_closed_form(alphas) - ref) <= 1e-13 * abs(ref)


def test_pochhammer_half_half_is_four_pi():
    assert abs(pochhammer_integral((0.5, 0.5)).value - 4 * math.pi) < 1e-12


@pytest.mark.parametrize("radius", [0.1, 0.3, 0.45])
def test_pochhammer_is_radius_invariant(radius):
    al = (0.2 + 0.3j, 0.7)
    assert abs(pochhammer_integral(al, radius=radius).value - _mp_beukers(al)) < 1e-11 * abs(_mp_beukers(al))


def test_pochhammer_at_integer_exponent_is_blind():
    # a = 1: the integrand is single valued around 0 and the cycle integral vanishes
    r = pochhammer_integral((1.0, 0.5))
    assert abs(r.value) < 1e-12


@pytest.mark.slow
def test_pochhammer_k2():
    al = (0.3, 0.45, 0.2 + 0.1j)
    ref = _mp_beukers(al)
    r = pochhammer_integral(al, k=2, tol=1e-10)
    assert abs(r.value - ref) <= 1e-8 * abs(ref)
    assert r.error <= 1e-6 * abs(ref)


def test_pochhammer_limits():
    with pytest.raises(DimensionUnsupported):
        pochhammer_integral((0.1, 0.2, 0.3, 0.4))
    with pytest.raises(ParameterPole):
        pochhammer_integral((0.3, 0.5, 0.5), k=2)


# --- Gauss --------------------------------------------------------------


POINTS = [
    (0.3, 0.7, 1.5, 0.2),
    (0.4, 0.6, 1.3, -0.4),
    (0.25, 0.5, 1.7, 0.5),
    (0.6, 0.3, 1.2, -0.3),
    (0.5 + 0.1j, 0.8, 1.9, 0.35 - 0.2j),
    (0.9, 1.4, 1.1, -0.45 + 0.1j),
]


@pytest.mark.parametrize("a,b,c,z", POINTS)
@pytest.mark.parametrize("rep", ["series", "euler", "laplace", "residue"])
def test_gauss_representations_match_mpmath(a, b, c, z, rep):
    ref = complex(mpmath.hyp2f1(a, b, c, z))
    val = gauss_oracle(a, b, c, z, representation=rep).value
    assert abs(val - ref) <= 1e-12 * abs(ref)


@pytest.mark.parametrize("rep", ["laplace", "residue"])
def test_gauss_divergent_interval_is_reported(rep):
    # c - a < 0: the [0, 1] integrand is not integrable at t = 1
    with pytest.raises(DivergenceDetected):
        gauss_oracle(1.5, 0.3, 1.2, 0.4, representation=rep)
    ref = complex(mpmath.hyp2f1(1.5, 0.3, 1.2, 0.4))
    assert abs(gauss_oracle(1.5, 0.3, 1.2, 0.4, "euler").value - ref) < 1e-11 * abs(ref)


def test_gauss_numeric_residues():
    ref = complex(mpmath.hyp2f1(0.3, 0.7, 1.5, 0.2))
    assert abs(gauss_oracle(0.3, 0.7, 1.5, 0.2, "residue", circles="numeric").value - ref) < 1e-12


def test_gauss_euler_continued_through_a_loop():
    # c - a < 0 makes the [0,1] integral divergent; the loop still works
    ref = complex(mpmath.hyp2f1(0.3, 0.4, 0.2 + 0.1j, 0.3))
    assert abs(gauss_oracle(0.3, 0.4, 0.2 + 0.1j, 0.3, "euler").value - ref) < 1e-10 * abs(ref)
