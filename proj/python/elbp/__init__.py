"""Elliptic Laurent biorthogonal polynomials: moments, closed forms, QD and spectral checks."""

from ._elbp import *  # noqa: F401,F403
from ._elbp import __doc__  # noqa: F401


def polyval(coeffs, z):
    """Evaluate ascending coefficients at z by Horner."""
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc
