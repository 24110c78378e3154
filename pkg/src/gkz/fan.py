"""Regular triangulations, their cones and sample points of convergence.

For a height vector ``omega`` in ``R^N`` the regular triangulation
``T(omega)`` consists of all ``n``-subsets ``sigma`` with ``det A_sigma != 0``
for which the linear functional ``eta`` solving ``eta . a(i) = omega_i``
(``i`` in ``sigma``) satisfies ``eta . a(j) < omega_j`` for every other
column.  Equivalently, every cone row

    omega_j - (A_sigma^{-1} a(j)) . omega_sigma,   j not in sigma,

is positive.  Everything is decided with exact rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BadLabel, EmptyCone, NonGenericWeight, ShapeError
from .exactlat import QuotientGroup, determinant, matvec, rational_inverse
from .gkzsys import SystemSpec

__all__ = [
    "SimplexData",
    "simplex_data",
    "Triangulation",
    "regular_triangulation",
    "cone_of",
    "sample_point",
]


@dataclass(frozen=True, eq=False)
class SimplexData:
    """Exact data attached to one simplex ``sigma``.

    Attributes
    ----------
    sigma : tuple of int
        Sorted 0-based column positions.
    sigma_bar : tuple of int
        The complementary positions.
    inverse : list of list of Fraction
        ``A_sigma^{-1}``.
    det : int
        ``det A_sigma`` (columns in sorted order).
    M : list of list of Fraction
        ``A_sigma^{-1} A_sigma_bar``; column ``j`` expresses ``a(j)`` in the
        basis ``a(sigma)``.
    gevrey : dict
        ``s_j`` = sum of the entries of ``A_sigma^{-1} a(j)`` for ``j`` in
        ``sigma_bar``.
    group : QuotientGroup
        ``Z^n / Z A_sigma``.
    """

    spec: SystemSpec
    sigma: Tuple[int, ...]
    sigma_bar: Tuple[int, ...]
    inverse: List[List[Fraction]]
    det: int
    M: List[List[Fraction]]
    gevrey: Dict[int, Fraction]
    group: QuotientGroup

    @property
    def volume(self) -> int:
        return abs(self.det)

    @property
    def labels(self) -> Tuple:
        return self.spec.label_of(self.sigma)

    @property
    def A_sigma(self) -> List[List[int]]:
        return self.spec.columns(self.sigma)

    @property
    def A_sigma_bar(self) -> List[List[int]]:
        return self.spec.columns(self.sigma_bar)

    def coordinates(self, j: int) -> List[Fraction]:
        """``A_sigma^{-1} a(j)``."""
        return matvec(self.inverse, list(self.spec.column(j)))

    def __repr__(self):
        return f"SimplexData(sigma={self.labels}, det={self.det})"


def simplex_data(spec: SystemSpec, sigma: Sequence[int]) -> SimplexData:
    """Compute :class:`SimplexData` for a set of column positions."""
    sigma = tuple(sorted(int(j) for j in sigma))
    if len(sigma) != spec.n or len(set(sigma)) != spec.n:
        raise ShapeError(f"a simplex needs {spec.n} distinct columns")
    if any(j < 0 or j >= spec.N for j in sigma):
        raise BadLabel("simplex position out of range")
    A_s = spec.columns(sigma)
    inv = rational_inverse(A_s)
    sigma_bar = tuple(j for j in range(spec.N) if j not in sigma)
    cols = [matvec(inv, list(spec.column(j))) for j in sigma_bar]
    M = [[cols[c][r] for c in range(len(sigma_bar))] for r in range(spec.n)]
    gevrey = {j: sum(col, Fraction(0)) for j, col in zip(sigma_bar, cols)}
    return SimplexData(
        spec=spec,
        sigma=sigma,
        sigma_bar=sigma_bar,
        inverse=inv,
        det=int(determinant(A_s)),
        M=M,
        gevrey=gevrey,
        group=QuotientGroup(A_s),
    )


@dataclass(frozen=True, eq=False)
class Triangulation:
    """A regular triangulation ``T(omega)``.

    Attributes
    ----------
    spec : SystemSpec
    omega : tuple of Fraction
    simplices : tuple of SimplexData
        In lexicographic order of positions.
    volume : int
        ``sum |det A_sigma|`` (the rank of the system for generic
        parameters).
    """

    spec: SystemSpec
    omega: Tuple[Fraction, ...]
    simplices: Tuple[SimplexData, ...]

    @property
    def volume(self) -> int:
        return sum(sd.volume for sd in self.simplices)

    def simplex_labels(self) -> List[Tuple]:
        return [sd.labels for sd in self.simplices]

    def find(self, sigma_labels) -> SimplexData:
        want = tuple(sorted(self.spec.position(x) for x in sigma_labels))
        for sd in self.simplices:
            if sd.sigma == want:
                return sd
        raise BadLabel(f"{tuple(sigma_labels)} is not a simplex of the triangulation")

    def cone_rows(self) -> List[Tuple[Tuple[int, ...], int, Tuple[Fraction, ...]]]:
        return cone_of(self)


def _cone_row(sd: SimplexData, j: int) -> Tuple[Fraction, ...]:
    row = [Fraction(0)] * sd.spec.N
    row[j] = Fraction(1)
    x = sd.coordinates(j)
    for p, i in enumerate(sd.sigma):
        row[i] -= x[p]
    return tuple(row)


def regular_triangulation(spec: SystemSpec, omega: Sequence) -> Triangulation:
    """Regular triangulation induced by the height vector ``omega``.

    All ``C(N, n)`` subsets are examined.

    Parameters
    ----------
    spec : SystemSpec
    omega : length-N vector of rationals (ints, Fractions or strings)

    Returns
    -------
    Triangulation

    Raises
    ------
    ShapeError
        If ``omega`` has the wrong length.
    NonGenericWeight
        If some subset would be a face except that an extra column attains
        equality, i.e. ``omega`` lies on a wall of the secondary fan.

    Examples
    --------
    >>> from gkz.gkzsys import build_system
    >>> s = build_system([[1, 0, -1], [0, 2, 3]], labels=[1, 2, 3])
    >>> regular_triangulation(s, [0, 0, 1]).simplex_labels()
    [(1, 2), (2, 3)]
    """
    w = tuple(Fraction(x) for x in omega)
    if len(w) != spec.N:
        raise ShapeError(f"weight has length {len(w)}, expected {spec.N}")
    chosen = []
    for sigma in combinations(range(spec.N), spec.n):
        if determinant(spec.columns(sigma)) == 0:
            continue
        sd = simplex_data(spec, sigma)
        values = []
        for j in sd.sigma_bar:
            row = _cone_row(sd, j)
            values.append((j, sum(r * x for r, x in zip(row, w))))
        if any(v < 0 for _, v in values):
            continue
        ties = [j for j, v in values if v == 0]
        if ties:
            raise NonGenericWeight(
                f"weight is not generic: column {spec.labels[ties[0]]} lies on the face "
                f"{spec.label_of(sigma)}",
                simplex=sigma,
                column=ties[0],
            )
        chosen.append(sd)
    if not chosen:
        raise EmptyCone("no simplex satisfies the lower-face condition")
    return Triangulation(spec, w, tuple(chosen))


def cone_of(tri: Triangulation) -> List[Tuple[Tuple[int, ...], int, Tuple[Fraction, ...]]]:
    """Defining inequalities of the cone ``C_T`` of heights inducing ``T``.

    Returns
    -------
    list of (sigma, j, row)
        ``row . omega > 0`` for every entry, where ``row`` has ``1`` at
        ``j`` and ``-A_sigma^{-1} a(j)`` on ``sigma``.
    """
    out = []
    for sd in tri.simplices:
        for j in sd.sigma_bar:
            out.append((sd.sigma, j, _cone_row(sd, j)))
    return out


def sample_point(tri: Triangulation, R: float = 0.1, margin: float = 0.5, direction: Optional[Sequence] = None):
    """A point ``z`` (positive reals) where every Gamma series of ``T`` converges.

    For each simplex ``sigma`` and each ``j`` outside it the ratio
    ``|z_sigma^{-A_sigma^{-1} a(j)} z_j|`` is made at most ``margin * R``.
    The point is ``log z = -t w`` for an interior direction ``w`` of the
    cone ``C_T``: the normalised average of the cone rows when it is
    interior, otherwise the height vector of the triangulation itself.

    Parameters
    ----------
    tri : Triangulation
    R : float
        Target bound for the ratios.
    margin : float
        Safety factor in (0, 1].
    direction : optional interior direction overriding the default.

    Returns
    -------
    numpy.ndarray of complex
        Length-N vector.
    """
    import numpy as np

    rows = cone_of(tri)
    if not rows:
        return np.ones(tri.spec.N, dtype=complex)
    R_ = np.array([[float(x) for x in r] for _, _, r in rows])
    if direction is None:
        norms = np.linalg.norm(R_, axis=1)
        w = (R_ / norms[:, None]).sum(axis=0)
        if not np.all(R_ @ w > 1e-12 * np.linalg.norm(w)):
            w = np.array([float(x) for x in tri.omega])
    else:
        w = np.asarray(direction, dtype=float)
    slack = R_ @ w
    if not np.all(slack > 0):
        raise EmptyCone("direction is not interior to the cone")
    t = math.log(1.0 / (R * margin)) / float(slack.min())
    return np.exp(-t * w).astype(complex)
