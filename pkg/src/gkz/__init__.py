"""Solutions of GKZ (A-hypergeometric) systems.

Exact lattice algebra, regular triangulations, Gamma series, transformation
matrices to integral solutions and contour-integral oracles.
"""

from .basis import TransformMatrix, basis_eval, character_matrix, dual_representatives, transform_matrix
from .contour import (
    gauss_oracle,
    hankel_integral,
    laplace_cycle_oracle,
    pochhammer_closed_form,
    pochhammer_integral,
)
from .errors import GKZError, HypothesisViolated, InputError, NonGenericWeight
from .exactlat import QuotientGroup, lattice_kernel, pairing, smith_normal_form
from .fan import Triangulation, regular_triangulation, sample_point, simplex_data
from .gkzsys import SystemSpec, build_system, cayley_matrix, operators, partition_simplex
from .series import GammaSeries, evaluate, gamma_series, representatives, very_generic
from .special import rgamma

__version__ = "0.1.0"

__all__ = [
    "GKZError",
    "GammaSeries",
    "HypothesisViolated",
    "InputError",
    "NonGenericWeight",
    "QuotientGroup",
    "SystemSpec",
    "TransformMatrix",
    "Triangulation",
    "basis_eval",
    "build_system",
    "cayley_matrix",
    "character_matrix",
    "dual_representatives",
    "evaluate",
    "gamma_series",
    "gauss_oracle",
    "hankel_integral",
    "laplace_cycle_oracle",
    "lattice_kernel",
    "operators",
    "pairing",
    "partition_simplex",
    "pochhammer_closed_form",
    "pochhammer_integral",
    "regular_triangulation",
    "representatives",
    "rgamma",
    "sample_point",
    "simplex_data",
    "smith_normal_form",
    "transform_matrix",
    "very_generic",
]
