"""GKZ systems: validated input data, operators and Cayley configurations.

A :class:`SystemSpec` bundles an integer matrix ``A`` (``n x N``) whose
columns generate ``Z^n`` together with a parameter vector ``c``.  The GKZ
system it encodes is

* Euler operators ``E_i = sum_j a_ij z_j d/dz_j + c_i`` for each row, and
* box operators ``d^{u+} - d^{u-}`` for each ``u`` in the integer kernel.

Cayley configurations ``(A_0 | A_1 | ... | A_k)`` with their unit-indicator
rows are assembled by :func:`cayley_matrix`, and the block bookkeeping
attached to a simplex by :func:`partition_simplex`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .errors import (
    BadLabel,
    EmptyBlock,
    GKZError,
    LatticeNotFull,
    NotInKernel,
    ShapeError,
)
from .exactlat import (
    as_int_matrix,
    matmul,
    matvec,
    rational_inverse,
    smith_normal_form,
)

Scalar = Union[Fraction, complex]

__all__ = [
    "as_parameter",
    "parameter_is_exact",
    "SystemSpec",
    "build_system",
    "EulerOperator",
    "BoxOperator",
    "operators",
    "CayleyStructure",
    "cayley_matrix",
    "SimplexPartition",
    "partition_simplex",
    "block_weight",
]


# ---------------------------------------------------------------------------
# parameters


def _as_scalar(x) -> Scalar:
    """Exact rationals stay exact; anything else becomes a complex number."""
    if isinstance(x, bool):
        raise ShapeError("boolean is not a parameter value")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            return complex(x.replace(" ", "").replace("i", "j"))
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return complex(float(x[0]), float(x[1]))
    try:
        return complex(x)
    except (TypeError, ValueError) as exc:
        raise ShapeError(f"cannot interpret parameter entry {x!r}") from exc


def as_parameter(values) -> Tuple[Scalar, ...]:
    """Normalise a parameter vector.

    Integers, Fractions and ``"p/q"`` strings become Fractions; floats,
    complex numbers and ``[re, im]`` pairs become ``complex``.
    """
    return tuple(_as_scalar(x) for x in values)


def parameter_is_exact(c: Sequence[Scalar]) -> bool:
    return all(isinstance(x, Fraction) for x in c)


# ---------------------------------------------------------------------------
# system data


@dataclass(frozen=True)
class SystemSpec:
    """Validated GKZ input ``(A, c)``.

    Attributes
    ----------
    A : tuple of tuple of int
        The ``n x N`` integer matrix.
    parameter : tuple
        Parameter vector ``c`` of length ``n`` (Fractions or complex).
    labels : tuple
        Column labels used in reports; positions are always 0-based
        internally.
    """

    A: Tuple[Tuple[int, ...], ...]
    parameter: Tuple[Scalar, ...]
    labels: Tuple = ()

    @property
    def n(self) -> int:
        return len(self.A)

    @property
    def N(self) -> int:
        return len(self.A[0])

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(row[j] for row in self.A)

    def columns(self, idx: Sequence[int]) -> List[List[int]]:
        """Submatrix with the given columns, in the given order."""
        return [[row[j] for j in idx] for row in self.A]

    def position(self, label) -> int:
        """0-based column position of a label."""
        try:
            return self.labels.index(label)
        except ValueError:
            raise BadLabel(f"unknown column label {label!r}") from None

    def label_of(self, positions: Sequence[int]) -> Tuple:
        return tuple(self.labels[j] for j in positions)

    def with_parameter(self, c) -> "SystemSpec":
        c = as_parameter(c)
        if len(c) != self.n:
            raise ShapeError("parameter length differs from the number of rows")
        return SystemSpec(self.A, c, self.labels)

    @property
    def exact(self) -> bool:
        return parameter_is_exact(self.parameter)


def build_system(A, c=None, labels: Optional[Sequence] = None) -> SystemSpec:
    """Validate ``A`` and ``c`` and return a :class:`SystemSpec`.

    Parameters
    ----------
    A : n x N integer matrix
    c : length-n parameter vector, optional (zeros if omitted)
    labels : column labels, default ``0, 1, ..., N-1``

    Raises
    ------
    ShapeError
        Ragged ``A``, non-integral entries or a parameter of wrong length.
    LatticeNotFull
        If the columns of ``A`` do not generate ``Z^n`` (some invariant
        factor of the Smith form differs from 1).
    """
    M = as_int_matrix(A)
    n, N = len(M), len(M[0])
    if N < n:
        raise LatticeNotFull(f"{N} columns cannot generate Z^{n}")
    inv = smith_normal_form(M).diagonal
    if len(inv) < n or any(d != 1 for d in inv):
        raise LatticeNotFull(f"columns generate a sublattice (invariant factors {inv})")
    c = as_parameter(c if c is not None else [0] * n)
    if len(c) != n:
        raise ShapeError(f"parameter has length {len(c)}, expected {n}")
    if labels is None:
        labels = tuple(range(N))
    labels = tuple(labels)
    if len(labels) != N or len(set(labels)) != N:
        raise BadLabel("labels must be distinct and one per column")
    return SystemSpec(tuple(tuple(r) for r in M), c, labels)


# ---------------------------------------------------------------------------
# operators


@dataclass(frozen=True)
class EulerOperator:
    """``sum_j a_j z_j d/dz_j + c`` (the homogeneity operator of one row)."""

    row: int
    coefficients: Tuple[int, ...]
    constant: Scalar


@dataclass(frozen=True)
class BoxOperator:
    """``d^{u+} - d^{u-}`` for a kernel vector ``u = u+ - u-``."""

    u: Tuple[int, ...]

    @property
    def u_plus(self) -> Tuple[int, ...]:
        return tuple(max(x, 0) for x in self.u)

    @property
    def u_minus(self) -> Tuple[int, ...]:
        return tuple(max(-x, 0) for x in self.u)


def operators(spec: SystemSpec, kernel_basis: Sequence[Sequence[int]] = ()) -> List:
    """Euler operators for every row and box operators for the given vectors.

    The box operators are returned for exactly the supplied kernel vectors;
    no attempt is made to produce a generating set of the toric ideal.

    Raises
    ------
    NotInKernel
        If some supplied ``u`` does not satisfy ``A u = 0``.
    """
    ops: List = [EulerOperator(i, tuple(spec.A[i]), spec.parameter[i]) for i in range(spec.n)]
    for u in kernel_basis:
        u = tuple(int(x) for x in u)
        if len(u) != spec.N:
            raise ShapeError("kernel vector has the wrong length")
        if any(matvec(spec.A, list(u))):
            raise NotInKernel(f"{u} is not in the kernel of A")
        ops.append(BoxOperator(u))
    return ops


# ---------------------------------------------------------------------------
# Cayley configurations


@dataclass(frozen=True)
class CayleyStructure:
    """A Cayley configuration ``(A_0 | A_1 | ... | A_k)``.

    Attributes
    ----------
    blocks : tuple of int matrices
        ``A_1, ..., A_k`` (each ``n x N_l``).
    A0 : int matrix or None
        Optional extra block carrying no indicator row.
    index_sets : tuple of tuple of int
        Column positions of ``I_0, I_1, ..., I_k`` in the assembled matrix
        (``I_0`` is empty when there is no ``A_0``).
    assembled : tuple of tuple of int
        The ``(n + k) x N`` matrix: ``k`` indicator rows on top of the
        concatenated blocks.
    """

    blocks: Tuple
    A0: Optional[Tuple]
    index_sets: Tuple[Tuple[int, ...], ...]
    assembled: Tuple[Tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def n(self) -> int:
        return len(self.assembled) - self.k

    @property
    def has_A0(self) -> bool:
        return bool(self.index_sets[0])

    def block_of(self, j: int) -> int:
        """Block index ``l`` with ``j in I_l``."""
        for l, s in enumerate(self.index_sets):
            if j in s:
                return l
        raise BadLabel(f"column position {j} out of range")

    def system(self, d=None, labels=None) -> SystemSpec:
        """The GKZ system of the assembled matrix with parameter ``d``."""
        return build_system(self.assembled, d, labels)


def cayley_matrix(blocks: Sequence, A0=None) -> CayleyStructure:
    """Assemble a Cayley matrix.

    Parameters
    ----------
    blocks : sequence of n x N_l integer matrices ``A_1 .. A_k``
    A0 : optional n x N_0 integer matrix

    Returns
    -------
    CayleyStructure

    Raises
    ------
    ShapeError
        If the blocks do not share the same number of rows or ``k == 0``.
    """
    mats = [as_int_matrix(b) for b in blocks]
    if not mats:
        raise ShapeError("a Cayley configuration needs at least one block")
    n = len(mats[0])
    a0 = as_int_matrix(A0) if A0 is not None and len(A0) and len(A0[0]) else None
    for M in mats + ([a0] if a0 is not None else []):
        if len(M) != n:
            raise ShapeError("all blocks must have the same number of rows")
    k = len(mats)
    widths = [len(a0[0]) if a0 is not None else 0] + [len(M[0]) for M in mats]
    index_sets = []
    start = 0
    for w in widths:
        index_sets.append(tuple(range(start, start + w)))
        start += w
    N = start
    rows = []
    for l in range(1, k + 1):
        rows.append(tuple(int(j in index_sets[l]) for j in range(N)))
    all_blocks = ([a0] if a0 is not None else []) + mats
    for i in range(n):
        rows.append(tuple(x for M in all_blocks for x in M[i]))
    return CayleyStructure(
        blocks=tuple(tuple(tuple(r) for r in M) for M in mats),
        A0=tuple(tuple(r) for r in a0) if a0 is not None else None,
        index_sets=tuple(index_sets),
        assembled=tuple(rows),
    )


@dataclass(frozen=True)
class SimplexPartition:
    """Block bookkeeping for a simplex of a Cayley configuration.

    Attributes
    ----------
    sigma : tuple of int
        Sorted column positions of the simplex.
    parts : tuple of tuple of int
        ``sigma^(0), sigma^(1), ..., sigma^(k)``.
    sigma0 : tuple of int
        The labelled points ``i^(1), ..., i^(k)``.
    tau : tuple of tuple of int
        ``tau^(l) = sigma^(l) minus i^(l)`` for ``l = 1..k``.
    column_order : tuple of int
        ``sigma0`` followed by ``sigma^(0)`` and then ``tau^(1), ...``;
        in this order ``Q0 @ A_sigma`` is block upper triangular.
    S : list of list of int
        ``k x n`` stair matrix on the non-labelled columns (zero on the
        columns of ``sigma^(0)``).
    T : list of list of int
        ``k x |sigma_bar|`` stair matrix on the complementary columns.
    Q0 : list of list of int
        ``[[I_k, 0], [-A_sigma0, I_n]]``.
    reduced : list of list of int
        ``n x n`` matrix ``A_rest - A_sigma0 S`` (lower rows of the blocks).
    """

    sigma: Tuple[int, ...]
    parts: Tuple[Tuple[int, ...], ...]
    sigma0: Tuple[int, ...]
    tau: Tuple[Tuple[int, ...], ...]
    column_order: Tuple[int, ...]
    rest: Tuple[int, ...]
    sigma_bar: Tuple[int, ...]
    S: List[List[int]]
    T: List[List[int]]
    Q0: List[List[int]]
    reduced: List[List[int]]
    triangular: List[List[int]] = field(repr=False)


def partition_simplex(cs: CayleyStructure, sigma: Sequence[int], sigma0: Optional[Sequence[int]] = None) -> SimplexPartition:
    """Split a simplex by blocks and build the stair matrices.

    Parameters
    ----------
    cs : CayleyStructure
    sigma : column positions of an ``(n+k)``-simplex
    sigma0 : optional labelled points, one per block ``1..k``; default is
        the smallest position of each ``sigma^(l)``.

    Raises
    ------
    EmptyBlock
        If some ``sigma^(l)`` (``l >= 1``) is empty.
    BadLabel
        If a labelled point is not in the corresponding block.
    """
    sigma = tuple(sorted(sigma))
    N = len(cs.assembled[0])
    if any(j < 0 or j >= N for j in sigma):
        raise BadLabel("simplex index out of range")
    k, n = cs.k, cs.n
    parts = tuple(tuple(j for j in sigma if j in cs.index_sets[l]) for l in range(k + 1))
    for l in range(1, k + 1):
        if not parts[l]:
            raise EmptyBlock(f"simplex has no column in block {l}")
    if sigma0 is None:
        s0 = tuple(parts[l][0] for l in range(1, k + 1))
    else:
        s0 = tuple(sigma0)
        if len(s0) != k or any(s0[l - 1] not in parts[l] for l in range(1, k + 1)):
            raise BadLabel("labelled points must pick one column from each block")
    tau = tuple(tuple(j for j in parts[l] if j != s0[l - 1]) for l in range(1, k + 1))
    rest = parts[0] + tuple(j for t in tau for j in t)
    sigma_bar = tuple(j for j in range(N) if j not in sigma)

    def block_indicator(cols):
        return [[int(cs.block_of(j) == l) for j in cols] for l in range(1, k + 1)]

    S = block_indicator(rest)
    T = block_indicator(sigma_bar)
    lower = [list(r) for r in cs.assembled[k:]]
    A_s0 = [[row[j] for j in s0] for row in lower]
    A_rest = [[row[j] for j in rest] for row in lower]
    AS = matmul(A_s0, S) if rest else [[] for _ in range(n)]
    reduced = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(A_rest, AS)]
    Q0 = [[0] * (n + k) for _ in range(n + k)]
    for i in range(k):
        Q0[i][i] = 1
    for i in range(n):
        Q0[k + i][k + i] = 1
        for l in range(k):
            Q0[k + i][l] = -A_s0[i][l]
    order = s0 + rest
    A_sigma = [[row[j] for j in order] for row in cs.assembled]
    tri = matmul(Q0, A_sigma)
    # sanity: Q0 A_sigma = [[I, S], [0, reduced]]
    for i in range(k):
        expect = [int(i == l) for l in range(k)] + S[i]
        if tri[i] != expect:
            raise GKZError("stair decomposition failed (indicator rows)")
    for i in range(n):
        if tri[k + i] != [0] * k + reduced[i]:
            raise GKZError("stair decomposition failed (lower rows)")
    return SimplexPartition(
        sigma=sigma,
        parts=parts,
        sigma0=s0,
        tau=tau,
        column_order=order,
        rest=rest,
        sigma_bar=sigma_bar,
        S=S,
        T=T,
        Q0=Q0,
        reduced=reduced,
        triangular=tri,
    )


def block_weight(cs: CayleyStructure, sigma: Sequence[int], l: int, j: int, inverse=None) -> Fraction:
    """``sum_{i in sigma^(l)} e_i^T A_sigma^{-1} a(j)``.

    For ``l >= 1`` the value is forced by the indicator rows: 1 when ``j``
    lies in block ``l``, and 0 when ``j`` lies in any other block
    (including block 0).  This is checked and a :class:`GKZError` raised
    on violation.
    """
    sigma = tuple(sorted(sigma))
    if not 0 <= l <= cs.k:
        raise BadLabel(f"block index {l} out of range")
    A_sigma = [[row[i] for i in sigma] for row in cs.assembled]
    inv = inverse if inverse is not None else rational_inverse(A_sigma)
    aj = [row[j] for row in cs.assembled]
    x = matvec(inv, aj)
    val = sum((x[p] for p, i in enumerate(sigma) if cs.block_of(i) == l), Fraction(0))
    if l >= 1:
        expect = 1 if cs.block_of(j) == l else 0
        if val != expect:
            raise GKZError(f"block weight {val} differs from {expect}")
    return Fraction(val)
