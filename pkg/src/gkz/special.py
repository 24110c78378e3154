"""Complex Gamma function via the Lanczos approximation.

Only the reciprocal Gamma function is needed at scale: it is entire, so
``rgamma`` returns exactly 0 at the poles of Gamma instead of raising.
Real arguments of moderate size go through the C library Gamma function.
For complex arguments the approximation (``g = 7``, nine coefficients) is
accurate to roughly 1e-15 relative in the right half plane; the left half
plane is reached through the reflection formula, with ``sin(pi z)``
evaluated after exact reduction of the real part.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

__all__ = ["loggamma", "gamma", "rgamma", "is_nonpositive_integer"]

_G = 7.0
_COEF = np.array(
    [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ]
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _loggamma_right(z: np.ndarray) -> np.ndarray:
    """log Gamma(z) for Re z >= 1/2 (any branch; only used exponentiated)."""
    z = z - 1.0
    x = np.full(z.shape, _COEF[0], dtype=complex)
    for i in range(1, len(_COEF)):
        x = x + _COEF[i] / (z + i)
    t = z + _G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * np.log(t) - t + np.log(x)


def _sinpi(z: np.ndarray) -> np.ndarray:
    """``sin(pi z)`` with the real part reduced exactly to ``[0, 1/2]``.

    Integers give exact zeros and the relative accuracy near them is kept.
    """
    x, y = z.real, z.imag
    r = x - 2.0 * np.round(0.5 * x)  # in [-1, 1], exact
    a = np.abs(r)
    far = a > 0.5
    b = np.where(far, 1.0 - a, a)  # exact by Sterbenz
    s = np.sign(r) * np.sin(np.pi * b)
    c = np.where(far, -1.0, 1.0) * np.where(b == 0.5, 0.0, np.cos(np.pi * b))
    return s * np.cosh(np.pi * y) + 1j * c * np.sinh(np.pi * y)


def is_nonpositive_integer(z, tol: float = 0.0):
    """Elementwise test for z in {0, -1, -2, ...} (exact unless ``tol``)."""
    z = np.asarray(z, dtype=complex)
    re = z.real
    return (np.abs(z.imag) <= tol) & (np.abs(re - np.round(re)) <= tol) & (np.round(re) <= 0)


def loggamma(z):
    """A logarithm of Gamma(z) (not necessarily the principal one).

    Raises
    ------
    ValueError
        At a pole of Gamma.
    """
    arr = np.asarray(z, dtype=complex)
    if np.any(is_nonpositive_integer(arr)):
        raise ValueError("Gamma has a pole at a nonpositive integer")
    scalar = arr.ndim == 0
    a = np.atleast_1d(arr)
    out = np.empty(a.shape, dtype=complex)
    right = a.real >= 0.5
    out[right] = _loggamma_right(a[right])
    left = ~right
    if np.any(left):
        zl = a[left]
        out[left] = math.log(math.pi) - np.log(_sinpi(zl)) - _loggamma_right(1.0 - zl)
    return out[0] if scalar else out


def rgamma(z):
    """Reciprocal Gamma function ``1/Gamma(z)`` for complex ``z``.

    Parameters
    ----------
    z : complex scalar or array

    Returns
    -------
    complex scalar or ndarray
        Exactly zero at ``z = 0, -1, -2, ...``.

    Examples
    --------
    >>> abs(rgamma(5) - 1 / 24) < 1e-16
    True
    >>> rgamma(-3)
    0j
    """
    arr = np.asarray(z, dtype=complex)
    scalar = arr.ndim == 0
    a = np.atleast_1d(arr)
    out = np.zeros(a.shape, dtype=complex)
    poles = is_nonpositive_integer(a)
    # real arguments: the C library Gamma is accurate to a few ulp
    real = (a.imag == 0) & ~poles & (np.abs(a.real) < 170.0)
    if np.any(real):
        # 1/Gamma(x) = x (1 + gamma_E x + ...) below the overflow threshold
        out[real] = [x if abs(x) < 1e-300 else 1.0 / math.gamma(x) for x in a.real[real]]
    rest = ~poles & ~real
    right = (a.real >= 0.5) & rest
    out[right] = np.exp(-_loggamma_right(a[right]))
    left = (a.real < 0.5) & rest
    if np.any(left):
        zl = a[left]
        out[left] = _sinpi(zl) / np.pi * np.exp(_loggamma_right(1.0 - zl))
    return complex(out[0]) if scalar else out


def gamma(z):
    """Gamma function (raises ``ValueError`` at poles)."""
    arr = np.asarray(z, dtype=complex)
    if np.any(is_nonpositive_integer(arr)):
        raise ValueError("Gamma has a pole at a nonpositive integer")
    r = rgamma(arr)
    return 1.0 / r


def cexp_i_pi(x) -> complex:
    """``exp(i pi x)`` for a real or complex ``x`` (helper for phases)."""
    return cmath.exp(1j * math.pi * complex(x))
