"""A scikit-learn style façade over the solver.

:class:`GKZSolutionBasis` is a transformer: ``fit`` builds the system, the
regular triangulation and one transformation matrix per simplex;
``transform`` evaluates a basis of solutions at a batch of points.  It is a
thin wrapper: everything it does is available from the functional API.

Examples
--------
>>> from gkz.estimator import GKZSolutionBasis
>>> est = GKZSolutionBasis(A=[[1, 0, -1], [0, 2, 3]], parameter=["1/3", "1/5"],
...                        omega=[0, 0, 1]).fit()
>>> est.n_solutions_
4
"""

from __future__ import annotations

from typing import List, Optional

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .basis import basis_eval, transform_matrix
from .errors import ShapeError
from .fan import regular_triangulation, sample_point
from .gkzsys import build_system, cayley_matrix
from .series import evaluate, gamma_series

__all__ = ["GKZSolutionBasis"]


class GKZSolutionBasis(TransformerMixin, BaseEstimator):
    """Solutions of a GKZ system near the region attached to a triangulation.

    Parameters
    ----------
    A : integer matrix, optional
        The system matrix (exclusive with ``blocks``).
    parameter : sequence
        Parameter vector (rationals as ints, Fractions or ``"p/q"``).
    omega : sequence
        Height vector selecting the triangulation.
    kind : str, default "laplace"
        Integral representation used for the transformation matrices.
    blocks, A0 : optional Cayley blocks; the system is then the Cayley matrix.
    labels : optional column labels.
    order : int, default 24
        Series truncation order.
    output : {"integral", "series"}, default "integral"
        ``"integral"`` returns ``T_sigma phi_sigma`` per simplex,
        ``"series"`` the Gamma series themselves.

    Attributes
    ----------
    system_ : SystemSpec
    triangulation_ : Triangulation
    transforms_ : list of TransformMatrix
    n_solutions_ : int
        The volume of the triangulation.
    """

    def __init__(self, A=None, parameter=None, omega=None, kind="laplace", blocks=None, A0=None, labels=None, order=24, output="integral"):
        self.A = A
        self.parameter = parameter
        self.omega = omega
        self.kind = kind
        self.blocks = blocks
        self.A0 = A0
        self.labels = labels
        self.order = order
        self.output = output

    def fit(self, X=None, y=None):
        """Build the system, triangulation and transformation matrices.

        ``X`` and ``y`` are ignored (present for pipeline compatibility).
        """
        if (self.A is None) == (self.blocks is None):
            raise ShapeError("give exactly one of A and blocks")
        if self.output not in ("integral", "series"):
            raise ValueError("output must be 'integral' or 'series'")
        cayley = None
        if self.blocks is not None:
            cayley = cayley_matrix(self.blocks, self.A0)
            self.system_ = cayley.system(self.parameter, labels=self.labels)
        else:
            self.system_ = build_system(self.A, self.parameter, labels=self.labels)
        self.triangulation_ = regular_triangulation(self.system_, self.omega)
        self.transforms_ = [transform_matrix(self.kind, sd, cayley=cayley) for sd in self.triangulation_.simplices] if self.output == "integral" else []
        self.n_solutions_ = self.triangulation_.volume
        return self

    def _check_points(self, Z) -> np.ndarray:
        Z = np.asarray(Z, dtype=complex)
        if Z.ndim == 1:
            Z = Z[None, :]
        if Z.ndim != 2 or Z.shape[1] != self.system_.N:
            raise ShapeError(f"expected points with {self.system_.N} coordinates")
        if not np.all(np.isfinite(Z)):
            raise ValueError("points must be finite")
        return Z

    def transform(self, Z) -> np.ndarray:
        """Evaluate the solution basis at each row of ``Z``.

        Returns
        -------
        ndarray of complex, shape (n_samples, n_solutions_)
            Columns ordered simplex by simplex, in the order of
            ``triangulation_.simplices``.
        """
        check_is_fitted(self, "triangulation_")
        Z = self._check_points(Z)
        out = np.empty((Z.shape[0], self.n_solutions_), dtype=complex)
        for i, z in enumerate(Z):
            cols: List[complex] = []
            if self.output == "integral":
                for tm in self.transforms_:
                    cols.extend(basis_eval(tm, z, self.order))
            else:
                from .series import representatives

                for sd in self.triangulation_.simplices:
                    cols.extend(evaluate(gamma_series(sd, k, self.system_.parameter), z, self.order).value for k in representatives(sd))
            out[i] = cols
        return out

    def sample_points(self, n: int = 1, R: float = 0.1, seed: Optional[int] = None) -> np.ndarray:
        """Points in the common convergence region, randomly rotated in phase."""
        check_is_fitted(self, "triangulation_")
        base = sample_point(self.triangulation_, R=R)
        rng = np.random.default_rng(seed)
        return base[None, :] * np.exp(1j * rng.uniform(-0.5, 0.5, size=(n, base.shape[0])))
