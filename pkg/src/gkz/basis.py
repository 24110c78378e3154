"""Transformation matrices between Gamma series and cycle-integral solutions.

Near the region of convergence of a simplex ``sigma`` the vector of
integral solutions ``f_{sigma, k~(i)}`` (one per dual representative
``k~(i)``) is ``T_sigma`` times the vector of Gamma series
``phi_{sigma, k(j)}``.  Every ``T_sigma`` factors as

    T = prefactor * diag(left) @ C @ diag(right),

where ``C[i, j] = exp(2 pi i k~(i)^T A_sigma^{-1} A_sigma_bar k(j))`` is a
character table of the finite group ``Z^n / Z A_sigma`` (so
``C C^* = r I``).  Five integral representations are supported:

``laplace``
    Exponential (Fourier-Laplace) integrals; ``right_j = 1 - e(-|A_sigma^{-1}(c + A_sigma_bar k(j))|)``.
``residue``
    Residue integrals of a Cayley configuration.
``euler``
    Euler-type integrals of a Cayley configuration, with dual
    representatives taken in the smaller group of the reduced matrix.
``mixed-residue`` / ``mixed-euler``
    The same for a Cayley configuration with an exponential block ``A_0``.

Here ``e(x) = exp(2 pi i x)`` and ``|v|`` is the entry sum.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import HypothesisViolated, IncompleteReps, ShapeError
from .exactlat import QuotientGroup, matvec, transpose
from .fan import SimplexData
from .gkzsys import CayleyStructure, as_parameter, partition_simplex
from .series import (
    Genericity,
    GammaSeries,
    _affine,
    evaluate,
    gamma_series,
    graded_colex,
    representatives,
    very_generic,
)
from .special import rgamma

__all__ = [
    "KINDS",
    "dual_representatives",
    "character_matrix",
    "TransformMatrix",
    "transform_matrix",
    "basis_eval",
]

KINDS = ("laplace", "residue", "euler", "mixed-residue", "mixed-euler")
_ALIASES = {"mixed": "mixed-residue", "mixedresidue": "mixed-residue", "mixedeuler": "mixed-euler"}

_TWO_PI_I = 2j * math.pi


def _e(x) -> complex:
    """``exp(2 pi i x)``; exact rationals are reduced mod 1 first."""
    if isinstance(x, Fraction):
        x = x - math.floor(x)
        return cmath.exp(_TWO_PI_I * float(x))
    return cmath.exp(_TWO_PI_I * complex(x))


def _is_integer(x, tol=1e-12) -> bool:
    if isinstance(x, Fraction):
        return x.denominator == 1
    x = complex(x)
    return abs(x.imag) <= tol and abs(x.real - round(x.real)) <= tol


def _is_nonpositive_integer(x, tol=1e-12) -> bool:
    return _is_integer(x, tol) and round(complex(x).real) <= 0


# ---------------------------------------------------------------------------
# dual representatives and characters


def _bfs_reps(group: QuotientGroup, dim: int) -> List[Tuple[int, ...]]:
    seen = {}
    for v in graded_colex(dim):
        f = group.canonical_form(v)
        if f not in seen:
            seen[f] = v
            if len(seen) == group.order:
                break
    return list(seen.values())


def dual_representatives(sd: SimplexData) -> List[Tuple[int, ...]]:
    """Representatives of ``Z^n / Z A_sigma^T`` in graded colex order.

    Examples
    --------
    For ``A_sigma = diag(1, 2)`` the result is ``[(0, 0), (0, 1)]``.
    """
    return _bfs_reps(QuotientGroup(transpose(sd.A_sigma)), sd.spec.n)


def _reduced_dual_representatives(part, sd: SimplexData) -> List[Tuple[int, ...]]:
    """Embedded representatives ``(0_{sigma0}, k~)`` for Euler-type kinds.

    ``k~`` runs over ``Z^rest / Z reduced^T``; the embedding places zeros on
    the labelled points.  Returns vectors indexed like ``sd.sigma``.
    """
    small = _bfs_reps(QuotientGroup(transpose(part.reduced)), len(part.rest))
    return [embed_reduced(part, sd, kt) for kt in small]


def embed_reduced(part, sd: SimplexData, kt: Sequence[int]) -> Tuple[int, ...]:
    """Place ``k~`` (indexed by the non-labelled columns) into ``Z^sigma``."""
    pos = {j: p for p, j in enumerate(sd.sigma)}
    v = [0] * len(sd.sigma)
    for j, x in zip(part.rest, kt):
        v[pos[j]] = int(x)
    return tuple(v)


def character_matrix(sd: SimplexData, reps: Sequence[Sequence[int]], dual_reps: Sequence[Sequence[int]]) -> np.ndarray:
    """``C[i, j] = exp(2 pi i k~(i)^T A_sigma^{-1} A_sigma_bar k(j))``.

    The exponent is computed exactly and reduced modulo 1 before the
    exponential, so ``(1/r) C C^*`` is the identity to rounding error
    whenever the representatives are complete.
    """
    r = sd.group.order
    if len(reps) != r or len(dual_reps) != r:
        raise IncompleteReps(f"need {r} representatives on each side")
    C = np.empty((r, r), dtype=complex)
    for j, k in enumerate(reps):
        x = matvec(sd.M, list(k)) if sd.sigma_bar else [Fraction(0)] * sd.spec.n
        for i, kt in enumerate(dual_reps):
            C[i, j] = _e(sum((Fraction(a) * b for a, b in zip(kt, x)), Fraction(0)))
    return C


def _check_complete(sd: SimplexData, reps, dual_reps):
    forms = {sd.group.canonical_form(matvec(sd.A_sigma_bar, list(k)) if k else [0] * sd.spec.n) for k in reps}
    if len(forms) != len(reps):
        raise IncompleteReps("representatives repeat a class")
    dual = QuotientGroup(transpose(sd.A_sigma))
    if len({dual.canonical_form(v) for v in dual_reps}) != len(dual_reps):
        raise IncompleteReps("dual representatives repeat a class")


# ---------------------------------------------------------------------------
# transformation matrices


@dataclass(frozen=True, eq=False)
class TransformMatrix:
    """A factored transformation matrix.

    Attributes
    ----------
    kind : str
    simplex : SimplexData
    reps : list of tuple
        ``k(1..r)`` (indexed by ``sigma_bar``).
    dual_reps : list of tuple
        ``k~(1..r)`` (indexed by ``sigma``; embedded for Euler kinds).
    prefactor : complex
    left, right : ndarray
        Diagonal factors.
    character : ndarray
    """

    kind: str
    simplex: SimplexData
    parameter: tuple
    reps: List[Tuple[int, ...]]
    dual_reps: List[Tuple[int, ...]]
    prefactor: complex
    left: np.ndarray
    character: np.ndarray
    right: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        return self.prefactor * (self.left[:, None] * self.character * self.right[None, :])

    @property
    def rank(self) -> int:
        return len(self.reps)

    def invertible(self, tol: float = 1e-10) -> bool:
        """Numerical invertibility: smallest singular value relative to largest."""
        s = np.linalg.svd(self.matrix, compute_uv=False)
        return bool(s[-1] > tol * s[0]) if s[0] > 0 else False

    def series(self) -> List[GammaSeries]:
        return [gamma_series(self.simplex, k, self.parameter) for k in self.reps]


def _normalise_kind(kind: str) -> str:
    key = kind.lower().replace("_", "-")
    key = _ALIASES.get(key.replace("-", ""), key) if key not in KINDS else key
    if key not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    return key


def _require(cond: bool, message: str, name: str):
    if not cond:
        raise HypothesisViolated(message, name)


def transform_matrix(
    kind: str,
    sd: SimplexData,
    parameter=None,
    cayley: Optional[CayleyStructure] = None,
    sigma0: Optional[Sequence[int]] = None,
    reps: Optional[Sequence[Sequence[int]]] = None,
    dual_reps: Optional[Sequence[Sequence[int]]] = None,
) -> TransformMatrix:
    """Factored transformation matrix ``T_sigma`` of the given kind.

    Parameters
    ----------
    kind : {"laplace", "residue", "euler", "mixed-residue", "mixed-euler"}
        ``"mixed"`` is accepted for ``"mixed-residue"``.
    sd : SimplexData
        A simplex of a triangulation of ``A`` (the assembled Cayley matrix
        for all kinds except ``laplace``).
    parameter : parameter vector; defaults to the one stored in the system.
    cayley : CayleyStructure, required for the Cayley kinds.
    sigma0 : labelled points for the Euler kinds (default: smallest column
        of each block in ``sigma``).
    reps, dual_reps : optional explicit representatives.  Dual
        representatives for the Euler kinds are given in reduced
        coordinates (indexed by the non-labelled columns) and embedded.

    Raises
    ------
    HypothesisViolated
        When the parameter is not very generic for ``sigma``, a Gamma
        prefactor sits at a pole, a right-diagonal entry vanishes, or some
        ``s_j`` exceeds 1 where convergence needs ``s_j <= 1``.
    EmptyBlock
        For Cayley kinds when ``sigma`` misses a block.
    """
    kind = _normalise_kind(kind)
    c = as_parameter(parameter if parameter is not None else sd.spec.parameter)
    verdict = very_generic(sd, c)
    _require(verdict.status is not Genericity.NO, f"parameter is not very generic (witness {verdict.witness})", "very-generic")
    reps = [tuple(k) for k in reps] if reps is not None else representatives(sd)
    base = _affine(sd, c)  # A_sigma^{-1} d
    r = sd.group.order

    def coords_with(k):
        """``A_sigma^{-1}(d + A_sigma_bar k)`` entrywise."""
        shift = matvec(sd.M, list(k)) if sd.sigma_bar else [0] * sd.spec.n
        return [b + s for b, s in zip(base, shift)]

    if kind != "laplace":
        if cayley is None:
            raise ShapeError(f"kind {kind!r} needs a Cayley structure")
        part = partition_simplex(cayley, sd.sigma, sigma0)
        blocks = [[p for p, i in enumerate(sd.sigma) if cayley.block_of(i) == l] for l in range(cayley.k + 1)]
        weights = [sum((base[p] for p in blocks[l]), type(base[0])(0)) for l in range(cayley.k + 1)]
        if kind.startswith("mixed"):
            _require(cayley.has_A0, "mixed kinds need an exponential block", "block-0")
        else:
            _require(not cayley.has_A0, "use a mixed kind with an exponential block", "block-0")

    def exp_block0(k):
        x = coords_with(k)
        return 1 - _e(-sum((x[p] for p in blocks[0]), type(x[0])(0)))

    if kind == "laplace":
        for j in sd.sigma_bar:
            _require(sd.gevrey[j] <= 1, f"s_{sd.spec.labels[j]} = {sd.gevrey[j]} exceeds 1", "gevrey")
        right = []
        for k in reps:
            tot = sum(coords_with(k), type(base[0])(0))
            _require(not _is_integer(tot), f"|A^-1(c + A k)| = {tot} is an integer", "laplace-right")
            right.append(1 - _e(-tot))
        dreps = [tuple(v) for v in dual_reps] if dual_reps is not None else dual_representatives(sd)
        pref = 1.0 + 0j
    elif kind in ("residue", "mixed-residue"):
        w = weights[1:]
        for l, x in enumerate(w, start=1):
            _require(not _is_nonpositive_integer(x), f"block weight {x} of block {l} is a nonpositive integer", "gamma-pole")
        total = sum(w, type(base[0])(0))
        pref = cmath.exp(-1j * math.pi * complex(total))
        for x in w:
            pref *= complex(rgamma(complex(x)))
        dreps = [tuple(v) for v in dual_reps] if dual_reps is not None else dual_representatives(sd)
        if kind == "residue":
            right = [1.0 + 0j] * r
        else:
            for j in sd.sigma_bar:
                _require(sd.gevrey[j] <= 1, f"s_{sd.spec.labels[j]} = {sd.gevrey[j]} exceeds 1", "gevrey")
            right = [exp_block0(k) for k in reps]
            _require(all(abs(x) > 1e-14 for x in right), "a block-0 weight is an integer", "block-0-right")
    else:  # euler, mixed-euler
        ks = cayley.k
        gam = [c[l] for l in range(ks)]  # gamma_l = d_l (indicator rows)
        pref = 1.0 + 0j
        for l in range(ks):
            g = gam[l]
            _require(not _is_nonpositive_integer(g), f"gamma_{l + 1} = {g} is a nonpositive integer", "gamma-pole")
            pref *= complex(rgamma(complex(g)))
            if part.tau[l]:
                pref *= cmath.exp(-1j * math.pi * (1 - complex(g)))
            else:
                _require(not _is_integer(g), f"gamma_{l + 1} = {g} is an integer", "euler-denominator")
                pref *= cmath.exp(-1j * math.pi * complex(g)) / (1 - _e(-g))
        if dual_reps is not None:
            dreps = [embed_reduced(part, sd, kt) for kt in dual_reps]
        else:
            dreps = _reduced_dual_representatives(part, sd)
        if kind == "euler":
            right = [1.0 + 0j] * r
        else:
            for j in sd.sigma_bar:
                _require(sd.gevrey[j] <= 1, f"s_{sd.spec.labels[j]} = {sd.gevrey[j]} exceeds 1", "gevrey")
            right = [exp_block0(k) for k in reps]
            _require(all(abs(x) > 1e-14 for x in right), "a block-0 weight is an integer", "block-0-right")
    _check_complete(sd, reps, dreps)
    if len(dreps) != r:
        raise IncompleteReps(f"found {len(dreps)} dual representatives, expected {r}")
    left = np.array([_e(sum((Fraction(a) * b if isinstance(b, Fraction) else a * b for a, b in zip(kt, base)), type(base[0])(0))) for kt in dreps])
    C = character_matrix(sd, reps, dreps)
    return TransformMatrix(kind, sd, c, list(reps), list(dreps), complex(pref), left, C, np.array(right, dtype=complex))


def basis_eval(tm: TransformMatrix, z, order: int = 24) -> np.ndarray:
    """Values of the integral solutions ``T_sigma @ phi(z)`` at ``z``."""
    phi = np.array([evaluate(g, z, order).value for g in tm.series()])
    return tm.matrix @ phi
