"""Small reference systems used by the documentation, the tests and the CLI.

Each constructor returns fresh objects; parameters default to generic
rational values.
"""

from __future__ import annotations

from fractions import Fraction

from .gkzsys import SystemSpec, build_system, cayley_matrix

__all__ = [
    "two_simplex_system",
    "TWO_SIMPLEX_WEIGHT",
    "residue_cayley",
    "residue_system",
    "RESIDUE_WEIGHT",
    "grassmannian_cayley",
    "grassmannian_system",
    "GRASSMANNIAN_SIMPLEX",
    "gauss_cayley",
]

#: height vector giving the triangulation {{1,2},{2,3}} of the two-simplex system
TWO_SIMPLEX_WEIGHT = (0, 0, 1)
#: height vector giving {{0,1,2},{0,2,3}} for the residue system
RESIDUE_WEIGHT = (0, 0, 0, 1)
#: the unimodular simplex (1-based labels) of the 3 x 6 Grassmannian configuration
GRASSMANNIAN_SIMPLEX = (2, 4, 5, 6, 7)


def two_simplex_system(c=(Fraction(1, 3), Fraction(1, 5))) -> SystemSpec:
    """``A = [[1, 0, -1], [0, 2, 3]]`` with columns labelled 1, 2, 3.

    Kernel ``(2, -3, 2)``; the triangulation for ``omega = (0, 0, 1)`` has
    two simplices of volume 2 each.
    """
    return build_system([[1, 0, -1], [0, 2, 3]], c, labels=(1, 2, 3))


def residue_cayley():
    """One-block Cayley configuration with ``A_1 = [[0,1,0,-1],[0,0,2,3]]``."""
    return cayley_matrix([[[0, 1, 0, -1], [0, 0, 2, 3]]])


def residue_system(d=(Fraction(1, 7), Fraction(1, 3), Fraction(1, 5))) -> SystemSpec:
    """``A = [[1,1,1,1],[0,1,0,-1],[0,0,2,3]]``, columns labelled 0..3."""
    return residue_cayley().system(d, labels=(0, 1, 2, 3))


def grassmannian_cayley():
    """Three copies of ``[[0,1,0],[0,0,1]]`` as a Cayley configuration (5 x 9)."""
    return cayley_matrix([[[0, 1, 0], [0, 0, 1]]] * 3)


def grassmannian_system(
    d=(Fraction(1, 3), Fraction(1, 5), Fraction(1, 7), Fraction(2, 11), Fraction(3, 13)),
) -> SystemSpec:
    """The 5 x 9 Cayley matrix with columns labelled 1..9."""
    return grassmannian_cayley().system(d, labels=tuple(range(1, 10)))


def gauss_cayley():
    """Cayley encoding of the Gauss system: blocks ``[[0, 1]]`` and ``[[0, 1]]``."""
    return cayley_matrix([[[0, 1]], [[0, 1]]])
