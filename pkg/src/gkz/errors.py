"""Exception hierarchy shared by every module of the package.

All errors derive from :class:`GKZError` so callers can catch the whole
family at once.  The command line maps subclasses onto exit codes: input
problems (shape, labels, malformed data) exit with 1, mathematical
precondition failures exit with 2.
"""

from __future__ import annotations


class GKZError(Exception):
    """Base class of all package errors."""

    #: exit status used by the command line interface
    exit_code = 2


class InputError(GKZError):
    """Malformed user input (wrong shape, bad label, unreadable data)."""

    exit_code = 1


class ShapeError(InputError):
    """A matrix or vector has inconsistent dimensions."""


class BadLabel(InputError):
    """A column label or simplex index does not exist."""


class SingularMatrix(GKZError):
    """A square matrix expected to be invertible has determinant zero."""


class RankDeficient(GKZError):
    """A matrix does not have the rank required by the operation."""


class LatticeNotFull(GKZError):
    """The columns of A do not generate the full integer lattice."""


class NotInKernel(GKZError):
    """A vector that should lie in the integer kernel of A does not."""


class EmptyBlock(GKZError):
    """A block of a Cayley configuration has no column in a simplex."""


class NonGenericWeight(GKZError):
    """A height vector lies on a wall of the secondary fan.

    Attributes
    ----------
    simplex : tuple of int
        Column positions of the offending simplex.
    column : int
        Position of the extra column attaining equality.
    """

    def __init__(self, message, simplex=None, column=None):
        super().__init__(message)
        self.simplex = simplex
        self.column = column


class EmptyCone(GKZError):
    """The cone of height vectors inducing a triangulation is empty."""


class DomainError(GKZError):
    """A point lies outside the domain of a multivalued function."""


class TruncationTooSmall(GKZError):
    """The requested truncation order cannot support the computation."""


class IncompleteReps(GKZError):
    """A list of coset representatives misses a class or repeats one."""


class HypothesisViolated(GKZError):
    """A parameter fails a hypothesis needed by a closed-form result.

    Attributes
    ----------
    hypothesis : str
        Short name of the failing hypothesis.
    """

    def __init__(self, message, hypothesis=""):
        super().__init__(message)
        self.hypothesis = hypothesis


class ParameterPole(GKZError):
    """A Gamma function prefactor is evaluated at a pole."""


class DivergenceDetected(GKZError):
    """An integral representation does not converge for these inputs."""


class MaxRefinement(GKZError):
    """Adaptive quadrature exhausted its subdivision budget."""


class SingularOnPath(GKZError):
    """An integration path passes through (or too near) a singularity."""


class DimensionUnsupported(GKZError):
    """The numerical cycle construction exists only in low dimension."""


class ConvergenceError(GKZError):
    """A numerical procedure failed to reach the requested accuracy."""
