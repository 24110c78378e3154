"""The acceptance suite: eleven numbered criteria with pinned tolerances.

Each criterion is a function returning a :class:`Check`.  The suite is run
by ``gkz verify`` and by ``tests/test_acceptance.py``; both print one
pass/fail line per criterion.  Randomised criteria draw from
``numpy.random.default_rng(seed)`` so a run is reproducible from its seed.
"""

from __future__ import annotations

import cmath
import math
import os
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional

import numpy as np

from . import catalog
from .basis import character_matrix, dual_representatives, transform_matrix
from .contour import (
    gauss_oracle,
    hankel_integral,
    laplace_cycle_oracle,
    pochhammer_closed_form,
    pochhammer_integral,
)
from .exactlat import (
    QuotientGroup,
    determinant,
    matmul,
    pairing,
    rational_inverse,
    smith_normal_form,
    transpose,
)
from .fan import regular_triangulation, sample_point, simplex_data
from .gkzsys import build_system, operators
from .series import evaluate, gamma_series, operator_residual, representatives
from .special import rgamma

__all__ = ["Check", "CRITERIA", "DEFAULT_SEED", "run_suite", "seed_from_env"]

DEFAULT_SEED = 20240917


def seed_from_env(default: Optional[int] = None) -> int:
    """Seed from the ``GKZ_SEED`` environment variable, else ``default``."""
    env = os.environ.get("GKZ_SEED")
    if env not in (None, ""):
        return int(env)
    return DEFAULT_SEED if default is None else int(default)


@dataclass
class Check:
    """Outcome of one criterion.

    ``status`` is ``"Pass"``, ``"Fail"`` or ``"Skipped"``; ``measured`` and
    ``threshold`` are the worst observed error and the bound it is held to.
    ``anchor`` names the identity or example being validated.
    """

    name: str
    status: str
    measured: float
    threshold: float
    anchor: str
    details: Dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "Pass"

    def line(self) -> str:
        return f"[{self.status.upper():4s}] {self.name}: measured {self.measured:.3e} (threshold {self.threshold:.1e}) -- {self.anchor}"

    def to_dict(self) -> Dict:
        return asdict(self)


def _status(ok: bool) -> str:
    return "Pass" if ok else "Fail"


def _rel(a, b) -> float:
    return abs(complex(a) - complex(b)) / max(abs(complex(b)), 1e-300)


def _e(x) -> complex:
    return cmath.exp(2j * math.pi * complex(x))


# ---------------------------------------------------------------------------
# 1-3: contour identities


def hankel(tol: Optional[float] = None, seed: int = DEFAULT_SEED) -> Check:
    thr = tol if tol is not None else 1e-8
    worst, slowest = 0.0, 0.0
    for re in np.linspace(-0.8, 0.8, 5):
        for im in np.linspace(-0.8, 0.8, 4):
            a = complex(re, im)
            t0 = time.perf_counter()
            r = hankel_integral(a, tol=min(thr, 1e-12) * 1e-1)
            slowest = max(slowest, time.perf_counter() - t0)
            exact = 2j * math.pi * rgamma(1 - a)
            worst = max(worst, _rel(r.value, exact))
    ok = worst <= thr and slowest < 1.0
    return Check("hankel", _status(ok), worst, thr, "Hankel loop integral 2 pi i / Gamma(1 - alpha)", {"points": 20, "slowest_call_s": slowest})


def pochhammer_1d(tol: Optional[float] = None, seed: int = DEFAULT_SEED) -> Check:
    thr = tol if tol is not None else 1e-8
    worst = 0.0
    rows = []
    for al in [(0.5, 0.5), (1 / 3, 1 / 4), (0.3 + 0.1j, 0.6)]:
        r = pochhammer_integral(al, tol=min(thr, 1e-12))
        exact = pochhammer_closed_form(al)
        err = _rel(r.value, exact)
        worst = max(worst, err, r.error / abs(exact))
        rows.append({"alphas": [[complex(a).real, complex(a).imag] for a in al], "rel_error": err})
    four_pi = _rel(pochhammer_integral((0.5, 0.5)).value, 4 * math.pi)
    worst = max(worst, four_pi)
    return Check("pochhammer-k1", _status(worst <= thr), worst, thr, "double commutator loop around 0 and 1, beta closed form", {"cases": rows, "four_pi_rel_error": four_pi})


def pochhammer_2d(tol: Optional[float] = None, seed: int = DEFAULT_SEED) -> Check:
    thr = tol if tol is not None else 1e-5
    al = (1 / 3, 1 / 4, 1 / 5)
    t0 = time.perf_counter()
    r = pochhammer_integral(al, k=2, tol=min(thr * 1e-2, 1e-10))
    dt = time.perf_counter() - t0
    exact = pochhammer_closed_form(al)
    err = _rel(r.value, exact)
    est = r.error / abs(exact)
    ok = err <= thr and est <= thr and dt <= 60.0
    return Check(
        "pochhammer-k2",
        _status(ok),
        max(err, est),
        thr,
        "fibred Pochhammer cycle of the triangle, closed form with three Gamma factors",
        {"rel_error": err, "estimated_rel_error": est, "seconds": dt, "evaluations": r.evaluations},
    )


# ---------------------------------------------------------------------------
# 4-5: integral representations


GAUSS_POINTS = [
    (0.3, 0.7, 1.5, 0.2),
    (0.4, 0.6, 1.3, -0.4),
    (0.25, 0.5, 1.7, 0.5),
    (0.6, 0.3, 1.2, -0.3),
    (0.5 + 0.1j, 0.8, 1.9, 0.35 - 0.2j),
]


def gauss_cross(tol: Optional[float] = None, seed: int = DEFAULT_SEED) -> Check:
    thr = tol if tol is not None else 1e-8
    thr_l = tol if tol is not None else 1e-6
    worst_exact, worst_l = 0.0, 0.0
    for p in GAUSS_POINTS:
        vals = {rep: gauss_oracle(*p, representation=rep).value for rep in ("series", "euler", "laplace", "residue")}
        for x in ("series", "euler", "residue"):
            for y in ("series", "euler", "residue"):
                worst_exact = max(worst_exact, _rel(vals[x], vals[y]))
            worst_l = max(worst_l, _rel(vals["laplace"], vals[x]))
    ok = worst_exact <= thr and worst_l <= thr_l
    return Check(
        "gauss-representations",
        _status(ok),
        max(worst_exact, worst_l * thr / thr_l),
        thr,
        "series, beta-integral, exponential and residue forms of the Gauss function",
        {"pairwise_max": worst_exact, "laplace_max": worst_l, "laplace_threshold": thr_l, "points": [list(p) for p in GAUSS_POINTS]},
    )


def laplace_end_to_end(tol: Optional[float] = None, seed: int = DEFAULT_SEED) -> Check:
    thr = tol if tol is not None else 1e-4
    c1, c2 = Fraction(1, 3), Fraction(1, 5)
    spec = catalog.two_simplex_system((c1, c2))
    tri = regular_triangulation(spec, catalog.TWO_SIMPLEX_WEIGHT)
    z = sample_point(tri, R=0.1)
    sd = tri.find((1, 2))
    t0 = time.perf_counter()
    integral = laplace_cycle_oracle(spec, sd.sigma, z)
    dt = time.perf_counter() - t0
    phi0 = evaluate(gamma_series(sd, (0,), spec.parameter), z).value
    phi1 = evaluate(gamma_series(sd, (1,), spec.parameter), z).value
    a = c1 + c2 / 2
    combo = (1 - _e(-a)) * phi0 + (1 + _e(-a)) * phi1
    err = _rel(integral.value, combo)
    ratio = complex(integral.value) / combo
    ok = err <= thr and dt <= 120.0
    return Check(
        "laplace-end-to-end",
        _status(ok),
        err,
        thr,
        "exponential cycle integral over Hankel x Pochhammer vs series combination, two-simplex system",
        {
            "integral": [integral.value.real, integral.value.imag],
            "combination": [combo.real, combo.imag],
            "ratio": [ratio.real, ratio.imag],
            "ratio_times_2pi_i": [(ratio * 2j * math.pi).real, (ratio * 2j * math.pi).imag],
            "seconds": dt,
            "z": [[x.real, x.imag] for x in np.asarray(z)],
        },
    )


# ---------------------------------------------------------------------------
# 6-9: exact structure


def triangulations(tol: Optional[float] = None, seed: int = DEFAULT_SEED) -> Check:
    t3 = regular_triangulation(catalog.two_simplex_system(), catalog.TWO_SIMPLEX_WEIGHT)
    t4 = regular_triangulation(catalog.residue_system(), catalog.RESIDUE_WEIGHT)
    got3 = sorted(tuple(s) for s in t3.simplex_labels())
    got4 = sorted(tuple(s) for s in t4.simplex_labels())
    ok = got3 == [(1, 2), (2, 3)] and got4 == [(0, 1, 2), (0, 2, 3)] and t3.volume == 4 and t4.volume == 4
    return Check(
        "triangulations",
        _status(ok),
        0.0 if ok else 1.0,
        0.0,
        "regular triangulations and volumes of the two-simplex and residue systems",
        {"two_simplex": got3, "residue": got4, "volumes": [t3.volume, t4.volume]},
    )


def _criterion_simplices():
    s3 = catalog.two_simplex_system()
    s4 = catalog.residue_system()
    t3 = regular_triangulation(s3, catalog.TWO_SIMPLEX_WEIGHT)
    t4 = regular_triangulation(s4, catalog.RESIDUE_WEIGHT)
    return s3, t3, s4, t4


def factorizations(tol: Optional[float] = None, seed: int = DEFAULT_SEED) -> Check:
    thr = tol if tol is not None else 1e-12
    c1, c2 = Fraction(1, 3), Fraction(1, 5)
    s3 = catalog.two_simplex_system((c1, c2))
    sd = regular_triangulation(s3, catalog.TWO_SIMPLEX_WEIGHT).find((1, 2))
    tm = transform_matrix("laplace", sd, reps=[(0,), (1,)], dual_reps=[(0, 0), (0, 1)])
    a = c1 + c2 / 2
    shown = np.diag([1, _e(c2 / 2)]) @ np.array([[1, 1], [1, -1]]) @ np.diag([1 - _e(-a), 1 + _e(-a)])
    err_l = float(np.max(np.abs(tm.matrix - shown)))

    g, d1, d2 = Fraction(1, 7), Fraction(1, 3), Fraction(1, 5)
    cs = catalog.residue_cayley()
    s4 = catalog.residue_system((g, d1, d2))
    sd4 = regular_triangulation(s4, catalog.RESIDUE_WEIGHT).find((0, 1, 2))
    tm4 = transform_matrix("residue", sd4, cayley=cs, reps=[(0,), (1,)], dual_reps=[(0, 0, 0), (0, 0, 1)])
    shown4 = cmath.exp(-1j * math.pi * float(g)) * rgamma(float(g)) * np.diag([1, _e(d2 / 2)]) @ np.array([[1, 1], [1, -1]])
    err_r = float(np.max(np.abs(tm4.matrix - shown4)))

    cs6 = catalog.grassmannian_cayley()
    s6 = catalog.grassmannian_system()
    sd6 = simplex_data(s6, [s6.position(x) for x in catalog.GRASSMANNIAN_SIMPLEX])
    tm6 = transform_matrix("euler", sd6, cayley=cs6)
    g1, g2, g3 = (float(x) for x in s6.parameter[:3])
    shown6 = cmath.exp(-1j * math.pi * (1 + g1 - g2 + g3)) * rgamma(g1) * rgamma(g2) * rgamma(g3) / ((1 - _e(-g1)) * (1 - _e(-g3)))
    err_e = abs(complex(tm6.matrix[0, 0]) - shown6)
    worst = max(err_l, err_r, err_e)
    return Check(
        "factorizations",
        _status(worst <= thr and tm6.rank == 1),
        worst,
        thr,
        "closed factorisations of transformation matrices: exponential (two-simplex), residue, Euler scalar (3 x 6 Grassmannian)",
        {"laplace": err_l, "residue": err_r, "euler_scalar": err_e},
    )


def _random_unimodular_free(rng, n, max_det=12):
    while True:
        B = rng.integers(-4, 5, size=(n, n)).tolist()
        d = determinant(B)
        if d != 0 and abs(d) <= max_det:
            return B


def unitarity(tol: Optional[float] = None, seed: int = DEFAULT_SEED) -> Check:
    thr = tol if tol is not None else 1e-12
    worst = 0.0
    count = 0
    s3, t3, s4, t4 = _criterion_simplices()
    sds = list(t3.simplices) + list(t4.simplices)
    rng = np.random.default_rng(seed)
    for i in range(10):
        n = 2 + i % 3
        B = _random_unimodular_free(rng, n)
        A = [row + [int(r == j) for j in range(n)] for r, row in enumerate(B)]
        spec = build_system(A)
        sds.append(simplex_data(spec, range(n)))
    for sd in sds:
        reps = representatives(sd)
        dreps = dual_representatives(sd)
        C = character_matrix(sd, reps, dreps)
        r = len(reps)
        worst = max(worst, float(np.max(np.abs(C @ C.conj().T / r - np.eye(r)))))
        count += 1
    return Check("character-unitarity", _status(worst <= thr), worst, thr, "character table of Z^n / Z A_sigma is unitary after 1/sqrt(r) scaling", {"simplices": count})


def annihilation(tol: Optional[float] = None, seed: int = DEFAULT_SEED) -> Check:
    thr = tol if tol is not None else 1e-12
    euler_worst = 0.0
    box_worst = 0.0
    s3, t3, s4, t4 = _criterion_simplices()
    for spec, tri, u in [(s3, t3, (2, -3, 2)), (s4, t4, (1, -2, 3, -2))]:
        ops = operators(spec, [u])
        for sd in tri.simplices:
            for k in representatives(sd):
                g = gamma_series(sd, k, spec.parameter)
                for op in ops:
                    res = operator_residual(g, op, order=10)
                    if type(op).__name__ == "EulerOperator":
                        euler_worst = max(euler_worst, res)
                    else:
                        box_worst = max(box_worst, res)
    ok = euler_worst == 0.0 and box_worst <= thr
    return Check(
        "operator-annihilation",
        _status(ok),
        box_worst,
        thr,
        "Euler and box operators annihilate the truncated Gamma series",
        {"euler_residual": euler_worst, "box_residual": box_worst, "order": 10},
    )


# ---------------------------------------------------------------------------
# 10-11: lattices and deck transformations


def _nondegenerate(B) -> bool:
    inv = rational_inverse(B)
    G = QuotientGroup(B)
    H = QuotientGroup(transpose(B))
    ws = [G.lift(f) for f in G.elements()]
    vs = [H.lift(f) for f in H.elements()]
    if len(ws) != len(vs):
        return False
    for v in vs[1:] if vs else []:
        if all(pairing(v, w, B, inv) == 0 for w in ws):
            return False
    for w in ws[1:] if ws else []:
        if all(pairing(v, w, B, inv) == 0 for v in vs):
            return False
    return True


def snf(tol: Optional[float] = None, seed: int = DEFAULT_SEED) -> Check:
    rng = np.random.default_rng(seed)
    failures = []
    pair_mats = []
    for i in range(200):
        n = 3 if i % 2 == 0 else 4
        M = rng.integers(-9, 10, size=(n, n)).tolist()
        s = smith_normal_form(M)
        d = s.diagonal
        ok = matmul(matmul(s.P, M), s.Q) == s.D
        ok &= all(s.D[i][j] == 0 for i in range(n) for j in range(n) if i != j)
        ok &= all(x >= 0 for x in d)
        ok &= all(d[i + 1] % d[i] == 0 if d[i] else d[i + 1] == 0 for i in range(n - 1))
        ok &= abs(determinant(s.P)) == 1 and abs(determinant(s.Q)) == 1
        if not ok:
            failures.append(M)
        det = determinant(M)
        if det != 0 and abs(det) <= 12:
            pair_mats.append(M)
    s3, t3, s4, t4 = _criterion_simplices()
    pair_mats += [sd.A_sigma for sd in list(t3.simplices) + list(t4.simplices)]
    bad_pairs = [B for B in pair_mats if not _nondegenerate(B)]
    ok = not failures and not bad_pairs
    return Check(
        "smith-normal-form",
        _status(ok),
        float(len(failures) + len(bad_pairs)),
        0.0,
        "Smith normal form identities and nondegenerate discriminant pairing",
        {"matrices": 200, "pairing_matrices": len(pair_mats), "snf_failures": len(failures), "pairing_failures": len(bad_pairs)},
    )


def deck_invariance(tol: Optional[float] = None, seed: int = DEFAULT_SEED) -> Check:
    thr = tol if tol is not None else 1e-12
    rng = np.random.default_rng(seed)
    s3, t3, s4, t4 = _criterion_simplices()
    cases = [("laplace", sd, None) for sd in t3.simplices] + [("residue", sd, catalog.residue_cayley()) for sd in t4.simplices]
    worst_T = 0.0
    worst_C = 0.0
    worst_phase = 0.0
    for kind, sd, cs in cases:
        base = transform_matrix(kind, sd, cayley=cs)
        At = transpose(sd.A_sigma)
        for _ in range(5):
            t = rng.integers(-3, 4, size=sd.spec.n).tolist()
            shifted = [tuple(int(a + b) for a, b in zip(kt, [sum(At[i][j] * t[j] for j in range(len(t))) for i in range(len(t))])) for kt in base.dual_reps]
            moved = transform_matrix(kind, sd, cayley=cs, reps=base.reps, dual_reps=shifted)
            worst_T = max(worst_T, float(np.max(np.abs(moved.matrix - base.matrix))))
            worst_C = max(worst_C, float(np.max(np.abs(moved.character - base.character))))
            # rows change by the scalar e(t . c)
            phase = _e(sum(Fraction(x) * y for x, y in zip(t, sd.spec.parameter)))
            worst_phase = max(worst_phase, float(np.max(np.abs(moved.matrix - phase * base.matrix))))
    return Check(
        "deck-invariance",
        _status(worst_T <= thr),
        worst_T,
        thr,
        "transformation matrix under dual representatives shifted by the transposed simplex lattice",
        {"character_change": worst_C, "change_after_removing_row_phase_e(t.c)": worst_phase},
    )


CRITERIA: Dict[str, Callable[..., Check]] = {
    "hankel": hankel,
    "pochhammer-k1": pochhammer_1d,
    "pochhammer-k2": pochhammer_2d,
    "gauss": gauss_cross,
    "laplace-end-to-end": laplace_end_to_end,
    "triangulations": triangulations,
    "factorizations": factorizations,
    "unitarity": unitarity,
    "annihilation": annihilation,
    "snf": snf,
    "deck-invariance": deck_invariance,
}


def _run_one(args):
    name, tol, seed = args
    t0 = time.perf_counter()
    try:
        chk = CRITERIA[name](tol=tol, seed=seed)
    except Exception as exc:  # a crash is a failed criterion, not a crashed suite
        chk = Check(name, "Fail", math.inf, tol or 0.0, "raised an exception", {"error": f"{type(exc).__name__}: {exc}"})
    chk.seconds = time.perf_counter() - t0
    return chk


def run_suite(only: Optional[List[str]] = None, tol: Optional[float] = None, seed: Optional[int] = None, jobs: int = 1) -> List[Check]:
    """Run the selected criteria (all by default) in a fixed order.

    Parameters
    ----------
    only : names from :data:`CRITERIA`
    tol : overrides every numerical threshold when given
    seed : RNG seed (default from ``GKZ_SEED`` or :data:`DEFAULT_SEED`)
    jobs : number of worker processes; results keep the fixed order
    """
    names = list(CRITERIA) if not only else list(only)
    unknown = [n for n in names if n not in CRITERIA]
    if unknown:
        raise KeyError(f"unknown criteria {unknown}; choose from {list(CRITERIA)}")
    seed = seed_from_env() if seed is None else seed
    work = [(n, tol, seed) for n in names]
    if jobs > 1 and len(work) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_one, work))
    return [_run_one(w) for w in work]
