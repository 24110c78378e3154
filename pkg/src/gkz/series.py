"""Gamma series attached to a simplex of a regular triangulation.

For a simplex ``sigma`` and ``k`` in ``Z^{sigma_bar}_{>=0}`` the exponent
vector ``v = v_sigma^k`` has ``sigma``-block ``-A_sigma^{-1}(c + A_sigma_bar k)``
and ``sigma_bar``-block ``k``.  The associated Gamma series is

    phi_{sigma,k}(z) = sum_{l in Lambda_k} z^{w(l)} / Gamma(1 + w(l)),

where ``w(l)`` is the exponent vector built from ``l`` in the same way and
``Lambda_k`` collects all ``l >= 0`` with ``A_sigma_bar (l - k)`` in
``Z A_sigma``.  Powers use the principal branch of ``log z_j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError, IncompleteReps, ShapeError
from .exactlat import matvec
from .fan import SimplexData
from .gkzsys import BoxOperator, EulerOperator, as_parameter, parameter_is_exact
from .special import rgamma

__all__ = [
    "compositions",
    "graded_colex",
    "exponent_vector",
    "representatives",
    "GammaSeries",
    "gamma_series",
    "lambda_set",
    "Genericity",
    "GenericityVerdict",
    "very_generic",
    "SeriesValue",
    "evaluate",
    "operator_residual",
]

DEFAULT_ORDER = 24


# ---------------------------------------------------------------------------
# enumeration helpers


def compositions(total: int, parts: int) -> List[Tuple[int, ...]]:
    """All vectors in ``Z^parts_{>=0}`` with entry sum ``total``, colex order.

    Colex order compares the last coordinate first.
    """
    if parts == 0:
        return [()] if total == 0 else []
    out = []
    for combo in combinations_with_replacement(range(parts), total):
        v = [0] * parts
        for i in combo:
            v[i] += 1
        out.append(tuple(v))
    out.sort(key=lambda v: v[::-1])
    return out


def graded_colex(parts: int, max_degree: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Nonnegative integer vectors by total degree, colex within a degree."""
    d = 0
    while max_degree is None or d <= max_degree:
        yield from compositions(d, parts)
        if parts == 0:
            return
        d += 1


# ---------------------------------------------------------------------------
# exponents and representatives


def _affine(sd: SimplexData, parameter) -> list:
    """``A_sigma^{-1} c`` (exact when the parameter is)."""
    c = as_parameter(parameter)
    if len(c) != sd.spec.n:
        raise ShapeError("parameter has the wrong length")
    if parameter_is_exact(c):
        return matvec(sd.inverse, list(c))
    return [sum(complex(a) * complex(x) for a, x in zip(row, c)) for row in sd.inverse]


def exponent_vector(sd: SimplexData, k: Sequence[int], parameter) -> tuple:
    """The full exponent ``v_sigma^k`` as a length-N tuple.

    Entries are Fractions when the parameter is exact, complex otherwise.

    Examples
    --------
    With ``A = [[1, 0, -1], [0, 2, 3]]``, ``sigma = {0, 1}`` and ``k = (1,)``
    the exponent is ``(-c1 + 1, -c2/2 - 3/2, 1)``.
    """
    k = tuple(int(x) for x in k)
    if len(k) != len(sd.sigma_bar):
        raise ShapeError("k must be indexed by the complement of sigma")
    base = _affine(sd, parameter)
    shift = matvec(sd.M, list(k)) if k else [0] * sd.spec.n
    out = [None] * sd.spec.N
    for p, i in enumerate(sd.sigma):
        out[i] = -(base[p] + shift[p])
    for q, j in enumerate(sd.sigma_bar):
        out[j] = Fraction(k[q]) if parameter_is_exact(as_parameter(parameter)) else complex(k[q])
    return tuple(out)


def _class_of(sd: SimplexData, k: Sequence[int]) -> tuple:
    v = matvec(sd.A_sigma_bar, list(k)) if k else [0] * sd.spec.n
    return sd.group.canonical_form(v)


def representatives(sd: SimplexData) -> List[Tuple[int, ...]]:
    """Coset representatives ``k(1) = 0, ..., k(r)`` of ``Z^n / Z A_sigma``.

    Each ``k(i)`` is a nonnegative vector indexed by ``sigma_bar`` whose
    image ``A_sigma_bar k(i)`` represents a distinct class; the search runs
    in graded colex order so the first representative is always 0.

    Examples
    --------
    For ``A = [[1, 0, -1], [0, 2, 3]]`` and ``sigma = {0, 1}`` the result is
    ``[(0,), (1,)]``.
    """
    r = sd.group.order
    seen = {}
    for k in graded_colex(len(sd.sigma_bar)):
        f = _class_of(sd, k)
        if f not in seen:
            seen[f] = k
            if len(seen) == r:
                break
    if len(seen) != r:
        raise IncompleteReps("complement columns do not reach every class")
    return list(seen.values())


@dataclass(frozen=True, eq=False)
class GammaSeries:
    """The Gamma series ``phi_{sigma,k}`` for a fixed parameter."""

    simplex: SimplexData
    k: Tuple[int, ...]
    parameter: tuple

    @property
    def exponent(self) -> tuple:
        return exponent_vector(self.simplex, self.k, self.parameter)

    def lattice_terms(self, order: int) -> List[Tuple[int, ...]]:
        """Members ``l`` of ``Lambda_k`` with ``|l| <= order``, graded colex."""
        sd = self.simplex
        target = _class_of(sd, self.k)
        return [l for l in graded_colex(len(sd.sigma_bar), order) if _class_of(sd, l) == target]

    def term_exponents(self, order: int) -> Tuple[List[Tuple[int, ...]], np.ndarray]:
        """Members of ``Lambda_k`` and the complex exponent matrix (rows)."""
        ls = self.lattice_terms(order)
        sd = self.simplex
        base = np.array([complex(x) for x in _affine(sd, self.parameter)])
        M = np.array([[float(x) for x in row] for row in sd.M]) if sd.sigma_bar else np.zeros((sd.spec.n, 0))
        L = np.array(ls, dtype=float).reshape(len(ls), len(sd.sigma_bar))
        W = np.zeros((len(ls), sd.spec.N), dtype=complex)
        W[:, list(sd.sigma)] = -(base[None, :] + L @ M.T)
        if sd.sigma_bar:
            W[:, list(sd.sigma_bar)] = L
        return ls, W


def gamma_series(sd: SimplexData, k: Sequence[int], parameter) -> GammaSeries:
    """Construct a :class:`GammaSeries` after validating ``k``."""
    k = tuple(int(x) for x in k)
    if len(k) != len(sd.sigma_bar) or any(x < 0 for x in k):
        raise ShapeError("k must be a nonnegative vector indexed by sigma_bar")
    return GammaSeries(sd, k, as_parameter(parameter))


def lambda_set(series: GammaSeries, bound: int) -> List[Tuple[int, ...]]:
    """Members ``l = k + m`` of ``Lambda_k`` with ``|l| <= bound``.

    Examples
    --------
    For ``A = [[1, 0, -1], [0, 2, 3]]``, ``sigma = {0, 1}``, ``k = 0`` and
    ``bound = 6`` this is ``[(0,), (2,), (4,), (6,)]``.
    """
    return series.lattice_terms(bound)


# ---------------------------------------------------------------------------
# genericity


class Genericity(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN_BEYOND_DEPTH = "unknown"


@dataclass(frozen=True)
class GenericityVerdict:
    """Outcome of :func:`very_generic`.

    ``witness`` is ``(m, i)``: for the vector ``m >= 0`` the ``i``-th entry of
    ``A_sigma^{-1}(c + A_sigma_bar m)`` is an integer.
    """

    status: Genericity
    witness: Optional[Tuple[Tuple[int, ...], int]] = None

    def __bool__(self):
        return self.status is Genericity.YES


def very_generic(sd: SimplexData, parameter, depth: int = 12, tol: float = 1e-12) -> GenericityVerdict:
    """Decide whether no entry of ``A_sigma^{-1}(c + A_sigma_bar m)`` is an integer.

    For rational parameters the answer is exact: the fractional parts of
    entry ``i`` range over ``beta_i + (1/L_i) Z`` where ``L_i`` is the lcm of
    the denominators in row ``i`` of ``A_sigma^{-1} A_sigma_bar``, so an
    integer value occurs iff ``L_i beta_i`` is an integer.  For other
    parameters the vectors ``m`` with ``|m| <= depth`` are searched and
    ``UNKNOWN_BEYOND_DEPTH`` is returned when nothing is found.
    """
    c = as_parameter(parameter)
    beta = _affine(sd, c)
    nb = len(sd.sigma_bar)
    if parameter_is_exact(c):
        for i in range(sd.spec.n):
            L = 1
            for x in (sd.M[i] if nb else []):
                L = L * x.denominator // math.gcd(L, x.denominator)
            if (L * beta[i]).denominator == 1:
                for m in graded_colex(nb, L * max(nb, 1)):
                    val = beta[i] + sum((a * b for a, b in zip(sd.M[i], m)), Fraction(0))
                    if val.denominator == 1:
                        return GenericityVerdict(Genericity.NO, (m, sd.sigma[i]))
        return GenericityVerdict(Genericity.YES)
    for m in graded_colex(nb, depth):
        for i in range(sd.spec.n):
            val = complex(beta[i]) + sum(float(a) * b for a, b in zip(sd.M[i], m))
            if abs(val.imag) <= tol and abs(val.real - round(val.real)) <= tol:
                return GenericityVerdict(Genericity.NO, (m, sd.sigma[i]))
    return GenericityVerdict(Genericity.UNKNOWN_BEYOND_DEPTH)


# ---------------------------------------------------------------------------
# evaluation


@dataclass(frozen=True)
class SeriesValue:
    """A truncated series value.

    Attributes
    ----------
    value : complex
    order : int
        Truncation order (maximal ``|l|`` summed).
    tail_bound : float
        Heuristic geometric estimate of the omitted tail (``inf`` when the
        monomial ratios are not all below 1).
    terms : int
        Number of terms summed.
    """

    value: complex
    order: int
    tail_bound: float
    terms: int


def _check_point(z, N: int) -> np.ndarray:
    z = np.asarray(z, dtype=complex).reshape(-1)
    if z.shape[0] != N:
        raise ShapeError(f"point has {z.shape[0]} coordinates, expected {N}")
    if np.any(z == 0):
        raise DomainError("coordinates must be nonzero")
    return z


def monomial_ratios(sd: SimplexData, z) -> np.ndarray:
    """``|z_sigma^{-A_sigma^{-1} a(j)} z_j|`` for ``j`` in ``sigma_bar``."""
    z = _check_point(z, sd.spec.N)
    logabs = np.log(np.abs(z))
    out = []
    for q, j in enumerate(sd.sigma_bar):
        x = sum(float(sd.M[p][q]) * logabs[i] for p, i in enumerate(sd.sigma))
        out.append(math.exp(logabs[j] - x))
    return np.array(out)


def _coefficients(W: np.ndarray, sd: SimplexData, ls) -> np.ndarray:
    """``1 / Gamma(1 + w)`` for each exponent row."""
    coef = np.ones(W.shape[0], dtype=complex)
    for i in sd.sigma:
        coef = coef * rgamma(1.0 + W[:, i])
    for q in range(len(sd.sigma_bar)):
        coef = coef / np.array([float(math.factorial(l[q])) for l in ls])
    return coef


def evaluate(series: GammaSeries, z, order: int = DEFAULT_ORDER) -> SeriesValue:
    """Evaluate a truncated Gamma series at ``z``.

    Terms with ``|l| <= order`` are summed with compensated (``fsum``)
    accumulation.

    Raises
    ------
    DomainError
        If some coordinate of ``z`` is zero.
    """
    sd = series.simplex
    z = _check_point(z, sd.spec.N)
    ls, W = series.term_exponents(order)
    logz = np.log(z)
    terms = _coefficients(W, sd, ls) * np.exp(W @ logz)
    value = complex(math.fsum(terms.real), math.fsum(terms.imag))
    ratios = monomial_ratios(sd, z) if sd.sigma_bar else np.zeros(0)
    rho = float(ratios.max()) if ratios.size else 0.0
    if rho < 1 and all(s <= 1 for s in sd.gevrey.values()):
        degrees = np.array([sum(l) for l in ls])
        recent = np.abs(terms[degrees >= order - 1]) if ls else np.zeros(0)
        m = float(recent.max()) if recent.size else 0.0
        tail = m * rho / (1 - rho) if rho > 0 else 0.0
    else:
        tail = math.inf
    return SeriesValue(value, order, tail, len(ls))


def _falling(w: np.ndarray, n: np.ndarray) -> np.ndarray:
    out = np.ones(w.shape[0], dtype=complex)
    for col in range(w.shape[1]):
        for t in range(int(n[col])):
            out = out * (w[:, col] - t)
    return out


def operator_residual(series: GammaSeries, op, order: int = 10) -> float:
    """Coefficient-wise residual of an operator applied to a truncated series.

    Euler operators are checked exactly on every exponent (each monomial is
    an eigenvector), giving ``0.0`` by construction.  For a box operator
    ``d^{u+} - d^{u-}`` both derivatives are expanded term by term as
    ``[w]_{u+} / Gamma(1 + w)`` (falling factorials) and matched on the
    shifted exponents; the maximum modulus of the coefficient difference
    over all exponents whose two preimages lie within the truncation is
    returned.
    """
    sd = series.simplex
    if isinstance(op, EulerOperator):
        ws = [exponent_vector(sd, l, series.parameter) for l in series.lattice_terms(order)]
        worst = 0.0
        for w in ws:
            val = sum(a * x for a, x in zip(op.coefficients, w)) + op.constant
            worst = max(worst, abs(complex(val)))
        return worst
    if not isinstance(op, BoxOperator):
        raise TypeError("unknown operator")
    up = np.array(op.u_plus)
    um = np.array(op.u_minus)
    ls, W = series.term_exponents(order)
    coef = _coefficients(W, sd, ls)
    plus = coef * _falling(W, up)
    minus = coef * _falling(W, um)
    sb = list(sd.sigma_bar)

    def keyed(values, shift):
        d = {}
        for l, v in zip(ls, values):
            key = tuple(np.array(l) - shift[sb])
            d[key] = v
        return d

    P = keyed(plus, up)
    Mn = keyed(minus, um)
    worst = 0.0
    for key in set(P) | set(Mn):
        e = np.array(key)
        if sum(e + up[sb]) > order or sum(e + um[sb]) > order:
            continue
        diff = P.get(key, 0.0) - Mn.get(key, 0.0)
        worst = max(worst, abs(diff))
    return worst
