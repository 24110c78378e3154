"""Exact integer and rational linear algebra on small lattices.

Matrices are plain nested lists (row-major) of Python ``int`` or
:class:`fractions.Fraction`; nothing here touches floating point.  The
routines cover exactly what the rest of the package needs: Smith normal
form, rational inverses, integer kernels, lattice membership, finite
quotient groups ``Z^n / Z B`` and the discriminant pairing
``(v, w) -> v^T B^{-1} w mod 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, List, Sequence, Tuple

from .errors import RankDeficient, ShapeError, SingularMatrix

IntMatrix = List[List[int]]
RatMatrix = List[List[Fraction]]
Vector = Tuple[int, ...]

__all__ = [
    "as_int_matrix",
    "identity",
    "transpose",
    "matmul",
    "matvec",
    "determinant",
    "rank",
    "rational_inverse",
    "SmithForm",
    "smith_normal_form",
    "lattice_kernel",
    "lattice_member",
    "QuotientGroup",
    "quotient_group",
    "pairing",
]


# ---------------------------------------------------------------------------
# elementary helpers


def as_int_matrix(M) -> IntMatrix:
    """Copy ``M`` into a list-of-lists of Python ints, checking the shape.

    Raises
    ------
    ShapeError
        If the rows are ragged or an entry is not integral.
    """
    rows = [list(r) for r in M]
    if not rows:
        raise ShapeError("matrix has no rows")
    width = len(rows[0])
    out: IntMatrix = []
    for r in rows:
        if len(r) != width:
            raise ShapeError("ragged matrix rows")
        conv = []
        for x in r:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ShapeError(f"non-integral entry {x}")
                x = x.numerator
            elif not isinstance(x, int):
                try:
                    ix = int(x)
                except (TypeError, ValueError) as exc:
                    raise ShapeError(f"non-integral entry {x!r}") from exc
                if ix != x:
                    raise ShapeError(f"non-integral entry {x!r}")
                x = ix
            conv.append(int(x))
        out.append(conv)
    return out


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M):
    return [list(col) for col in zip(*M)]


def matmul(A, B):
    """Exact matrix product of nested lists."""
    if A and B and len(A[0]) != len(B):
        raise ShapeError(f"cannot multiply {len(A)}x{len(A[0])} by {len(B)}x{len(B[0])}")
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v):
    if A and len(A[0]) != len(v):
        raise ShapeError("matrix/vector size mismatch")
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def _row_echelon(M) -> Tuple[RatMatrix, int, Fraction]:
    """Gaussian elimination over Q; returns (echelon, rank, det-sign-product)."""
    A = [[Fraction(x) for x in r] for r in M]
    n, m = len(A), len(A[0]) if A else 0
    r = 0
    det = Fraction(1)
    for c in range(m):
        piv = next((i for i in range(r, n) if A[i][c] != 0), None)
        if piv is None:
            det = Fraction(0)
            continue
        if piv != r:
            A[r], A[piv] = A[piv], A[r]
            det = -det
        det *= A[r][c]
        for i in range(r + 1, n):
            if A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
        if r == n:
            break
    return A, r, det


def determinant(M) -> int | Fraction:
    """Exact determinant of a square integer or rational matrix."""
    n = len(M)
    if any(len(r) != n for r in M):
        raise ShapeError("determinant of a non-square matrix")
    if n == 0:
        return 1
    _, r, det = _row_echelon(M)
    if r < n:
        return 0
    return det.numerator if det.denominator == 1 else det


def rank(M) -> int:
    """Rank over Q."""
    if not M or not M[0]:
        return 0
    return _row_echelon(M)[1]


def rational_inverse(M) -> RatMatrix:
    """Exact inverse over Q of a square matrix.

    Parameters
    ----------
    M : sequence of sequences of int or Fraction
        Square matrix.

    Returns
    -------
    list of list of Fraction
        ``M^{-1}`` with ``M @ M^{-1} == I`` exactly.

    Raises
    ------
    ShapeError
        If ``M`` is not square.
    SingularMatrix
        If ``det M == 0``.
    """
    n = len(M)
    if any(len(r) != n for r in M):
        raise ShapeError("inverse of a non-square matrix")
    A = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M)]
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        A[c], A[piv] = A[piv], A[c]
        p = A[c][c]
        A[c] = [x / p for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return [r[n:] for r in A]


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    """Result of :func:`smith_normal_form`: ``P @ M @ Q == D``.

    Attributes
    ----------
    P, Q : list of list of int
        Unimodular row and column transforms.
    D : list of list of int
        Diagonal matrix with ``D[i][i] | D[i+1][i+1]`` and nonnegative
        diagonal.
    """

    P: IntMatrix
    D: IntMatrix
    Q: IntMatrix

    @property
    def diagonal(self) -> List[int]:
        k = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(k)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(M) -> SmithForm:
    """Smith normal form of an integer matrix.

    The pivot at each stage is the nonzero entry of smallest absolute value
    in the remaining block, ties broken by the lowest (row, column) index,
    so the output is deterministic.

    Parameters
    ----------
    M : sequence of sequences of int
        ``n x m`` integer matrix.

    Returns
    -------
    SmithForm
        ``(P, D, Q)`` with ``P M Q = D``, ``P`` and ``Q`` unimodular and the
        invariant factors forming a divisibility chain.

    Examples
    --------
    >>> s = smith_normal_form([[2, 4], [6, 8]])
    >>> s.diagonal
    [2, 4]
    """
    D = as_int_matrix(M)
    n, m = len(D), len(D[0])
    P = identity(n)
    Q = identity(m)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        D[dst] = [a + f * b for a, b in zip(D[dst], D[src])]
        P[dst] = [a + f * b for a, b in zip(P[dst], P[src])]

    def add_col(dst, src, f):  # col_dst += f * col_src
        for row in D:
            row[dst] += f * row[src]
        for row in Q:
            row[dst] += f * row[src]

    for t in range(min(n, m)):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, m):
                    v = abs(D[i][j])
                    if v and (best is None or v < best[0]):
                        best = (v, i, j)
            if best is None:
                return SmithForm(P, D, Q)
            _, pi, pj = best
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = D[t][t]
            clean = True
            for i in range(t + 1, n):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, m):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, m) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            P[t] = [-x for x in P[t]]
    return SmithForm(P, D, Q)


# ---------------------------------------------------------------------------
# kernels, membership, quotients


def _sign_normalise(v: Sequence[int]) -> Vector:
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def lattice_kernel(A) -> List[Vector]:
    """Z-basis of ``{u in Z^N : A u = 0}``.

    Each basis vector is sign-normalised so that its first nonzero entry is
    positive.  The basis comes from the trailing columns of the column
    transform of the Smith normal form, hence spans the saturated kernel.

    Examples
    --------
    >>> lattice_kernel([[1, 0, -1], [0, 2, 3]])
    [(2, -3, 2)]
    """
    s = smith_normal_form(A)
    r = s.rank
    m = len(s.Q)
    basis = [_sign_normalise([s.Q[i][j] for i in range(m)]) for j in range(r, m)]
    return basis


def lattice_member(B, w) -> bool:
    """Whether ``w`` lies in the lattice spanned by the columns of ``B``."""
    B = as_int_matrix(B)
    if len(w) != len(B):
        raise ShapeError("vector length does not match the number of rows")
    s = smith_normal_form(B)
    pw = matvec(s.P, list(w))
    diag = s.diagonal
    for i, x in enumerate(pw):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if x != 0:
                return False
        elif x % d:
            return False
    return True


class QuotientGroup:
    """The finite abelian group ``Z^n / Z B`` for a full-rank square ``B``.

    Elements are encoded by their canonical form: ``P w`` reduced modulo the
    invariant factors, where ``P`` is the Smith row transform.  Two vectors
    are congruent modulo the columns of ``B`` iff their canonical forms
    agree.

    Parameters
    ----------
    B : square integer matrix with nonzero determinant
    """

    def __init__(self, B):
        B = as_int_matrix(B)
        n = len(B)
        if any(len(r) != n for r in B):
            raise ShapeError("quotient needs a square matrix")
        s = smith_normal_form(B)
        if s.rank < n:
            raise RankDeficient("lattice matrix is not of full rank")
        self.B = B
        self.smith = s
        self.invariants: Tuple[int, ...] = tuple(s.diagonal)
        self._Pinv = [[int(x) for x in row] for row in rational_inverse(s.P)]

    @property
    def order(self) -> int:
        o = 1
        for d in self.invariants:
            o *= d
        return o

    def canonical_form(self, w: Sequence[int]) -> Vector:
        if len(w) != len(self.B):
            raise ShapeError("vector length does not match lattice rank")
        pw = matvec(self.smith.P, [int(x) for x in w])
        return tuple(x % d for x, d in zip(pw, self.invariants))

    def same_class(self, v, w) -> bool:
        return self.canonical_form(v) == self.canonical_form(w)

    def elements(self) -> Iterator[Vector]:
        """Iterate over canonical forms of all elements."""
        return product(*(range(d) for d in self.invariants))

    def lift(self, form: Sequence[int]) -> Vector:
        """An integer vector whose canonical form is ``form``."""
        return tuple(matvec(self._Pinv, list(form)))

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"QuotientGroup(invariants={self.invariants})"


def quotient_group(B) -> QuotientGroup:
    """Construct :class:`QuotientGroup` ``Z^n / Z B``."""
    return QuotientGroup(B)


def pairing(v: Sequence[int], w: Sequence[int], B, B_inv: RatMatrix | None = None) -> Fraction:
    """Discriminant pairing ``v^T B^{-1} w mod 1`` as a Fraction in [0, 1).

    Parameters
    ----------
    v, w : integer vectors of length n
    B : n x n integer matrix with nonzero determinant
    B_inv : optional precomputed exact inverse of ``B``
    """
    inv = B_inv if B_inv is not None else rational_inverse(B)
    if len(v) != len(inv) or len(w) != len(inv):
        raise ShapeError("pairing vectors have the wrong length")
    x = sum(Fraction(vi) * sum(inv[i][j] * w[j] for j in range(len(w))) for i, vi in enumerate(v))
    return x - (x.numerator // x.denominator)
