import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkz import catalog
from gkz.basis import basis_eval, character_matrix, dual_representatives, transform_matrix
from gkz.contour import laplace_cycle_oracle, pochhammer_closed_form
from gkz.errors import HypothesisViolated, ShapeError
from gkz.exactlat import determinant
from gkz.fan import regular_triangulation, sample_point, simplex_data
from gkz.gkzsys import build_system, cayley_matrix
from gkz.series import representatives
from gkz.special import rgamma

TWO_PI_I = 2j * math.pi


def e(x):
    return cmath.exp(TWO_PI_I * complex(x))


def test_laplace_matrix_matches_closed_factorisation(two_simplex):
    spec, tri = two_simplex
    sd = tri.find((1, 2))
    c1, c2 = spec.parameter
    tm = transform_matrix("laplace", sd, reps=[(0,), (1,)], dual_reps=[(0, 0), (0, 1)])
    a = c1 + c2 / 2
    expected = np.diag([1, e(c2 / 2)]) @ np.array([[1, 1], [1, -1]]) @ np.diag([1 - e(-a), 1 + e(-a)])
    assert np.max(np.abs(tm.matrix - expected)) < 1e-13
    assert tm.invertible()


def test_residue_matrix_prefactor(residue):
    spec, tri = residue
    g, d1, d2 = spec.parameter
    tm = transform_matrix("residue", tri.find((0, 1, 2)), cayley=catalog.residue_cayley(), reps=[(0,), (1,)], dual_reps=[(0, 0, 0), (0, 0, 1)])
    assert abs(tm.prefactor - cmath.exp(-1j * math.pi * float(g)) * rgamma(float(g))) < 1e-15
    assert np.allclose(tm.right, 1)


def test_euler_scalar_for_unimodular_simplex():
    spec = catalog.grassmannian_system()
    sd = simplex_data(spec, [spec.position(x) for x in catalog.GRASSMANNIAN_SIMPLEX])
    tm = transform_matrix("euler", sd, cayley=catalog.grassmannian_cayley())
    g1, g2, g3 = (float(x) for x in spec.parameter[:3])
    expected = cmath.exp(-1j * math.pi * (1 + g1 - g2 + g3)) * rgamma(g1) * rgamma(g2) * rgamma(g3) / ((1 - e(-g1)) * (1 - e(-g3)))
    assert tm.rank == 1 and abs(tm.matrix[0, 0] - expected) < 1e-14


def test_mixed_kinds_with_an_exponential_block():
    cs = cayley_matrix([[[0, 1, 3]]], A0=[[1]])  # A0 = (1), A1 = (0 1 3)
    spec = cs.system(["1/3", "1/7"])
    tri = regular_triangulation(spec, (3, 0, 1, 0))
    built = 0
    for sd in tri.simplices:
        for kind in ("mixed", "mixed-euler"):
            try:
                tm = transform_matrix(kind, sd, cayley=cs)
            except HypothesisViolated as exc:
                assert exc.hypothesis in {"gevrey", "block-0-right"}
                continue
            assert tm.matrix.shape == (sd.volume, sd.volume)
            assert tm.invertible()
            built += 1
    # the simplex containing the exponential column admits both mixed kinds
    assert built == 2
    with pytest.raises(HypothesisViolated):
        transform_matrix("residue", tri.simplices[0], cayley=cs)


def test_hypotheses_are_reported(two_simplex):
    spec, tri = two_simplex
    sd = tri.find((1, 2))
    with pytest.raises(HypothesisViolated) as info:
        transform_matrix("laplace", sd, parameter=(1, 2))
    assert info.value.hypothesis == "very-generic"
    with pytest.raises(ShapeError):
        transform_matrix("residue", sd)
    with pytest.raises(ValueError):
        transform_matrix("fourier", sd)
    # residue Gamma prefactor at a pole: gamma = 0
    cs = catalog.residue_cayley()
    s4 = catalog.residue_system((0, Fraction(1, 3), Fraction(1, 5)))
    sd4 = regular_triangulation(s4, catalog.RESIDUE_WEIGHT).simplices[0]
    with pytest.raises(HypothesisViolated):
        transform_matrix("residue", sd4, cayley=cs)


def test_laplace_gevrey_condition():
    spec = catalog.two_simplex_system()
    sd = regular_triangulation(spec, (0, 1, 0)).simplices[0]  # s = 4/3
    with pytest.raises(HypothesisViolated) as info:
        transform_matrix("laplace", sd)
    assert info.value.hypothesis == "gevrey"


def _matrices(draw_n=st.integers(2, 4)):
    return draw_n.flatmap(lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=40, deadline=None)
@given(_matrices())
def test_character_tables_are_unitary(B):
    d = determinant(B)
    if d == 0 or abs(d) > 12:
        return
    n = len(B)
    spec = build_system([row + [int(i == j) for j in range(n)] for i, row in enumerate(B)])
    sd = simplex_data(spec, range(n))
    reps, dreps = representatives(sd), dual_representatives(sd)
    C = character_matrix(sd, reps, dreps)
    r = len(reps)
    assert r == abs(d)
    assert np.max(np.abs(C @ C.conj().T / r - np.eye(r))) < 1e-12


def test_deck_shift_multiplies_rows_by_a_phase(two_simplex):
    spec, tri = two_simplex
    sd = tri.find((1, 2))
    base = transform_matrix("laplace", sd)
    t = (1, -2)
    At = [[sd.A_sigma[j][i] for j in range(2)] for i in range(2)]
    shifted = [tuple(k + sum(At[i][j] * t[j] for j in range(2)) for i, k in enumerate(kt)) for kt in base.dual_reps]
    moved = transform_matrix("laplace", sd, reps=base.reps, dual_reps=shifted)
    phase = e(sum(Fraction(x) * y for x, y in zip(t, spec.parameter)))
    assert np.allclose(moved.character, base.character, atol=1e-14)
    assert np.allclose(moved.matrix, phase * base.matrix, atol=1e-14)


@pytest.mark.slow
@pytest.mark.parametrize("deck", [(0, 0), (0, 1)])
def test_cycle_integral_equals_basis_row_over_2_pi_i(two_simplex, deck):
    spec, tri = two_simplex
    sd = tri.find((1, 2))
    z = sample_point(tri, R=0.1)
    tm = transform_matrix("laplace", sd, reps=[(0,), (1,)], dual_reps=[(0, 0), (0, 1)])
    row = [(0, 0), (0, 1)].index(deck)
    series_side = basis_eval(tm, z)[row]
    integral = laplace_cycle_oracle(spec, sd.sigma, z, deck=deck)
    assert abs(integral.value * TWO_PI_I - series_side) <= 1e-8 * abs(series_side)


def test_cycle_integral_degenerates_to_product_of_closed_forms(two_simplex):
    # with z_3 -> 0 only the rho integral and the u integral remain
    spec, tri = two_simplex
    sd = tri.find((1, 2))
    z = np.array([0.7, 1.3, 1e-200], dtype=complex)
    c1, c2 = (float(x) for x in spec.parameter)
    beta = (c1, c2 / 2)
    integral = laplace_cycle_oracle(spec, sd.sigma, z)
    zpow = z[0] ** (-beta[0]) * z[1] ** (-beta[1])
    ref = zpow / TWO_PI_I**3 * TWO_PI_I * rgamma(1 - sum(beta)) * pochhammer_closed_form(beta)
    assert abs(integral.value - ref) <= 1e-9 * abs(ref)
