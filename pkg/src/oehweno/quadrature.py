"""Quadrature rules on the unit reference cell xi in [-1/2, 1/2].

All weights are normalized so that sum(w) == 1, i.e. a rule computes the
*cell average* of the integrand.  Keeping everything on the half-unit cell
matches the scaled-polynomial variable used throughout the reconstruction.
"""

import numpy as np

_SQRT5 = np.sqrt(5.0)
_SQRT15 = np.sqrt(15.0)

# 4-point Gauss-Lobatto rule (degree 5).  The endpoint nodes coincide with
# the cell interfaces, which is what lets interface values double as
# quadrature values in the first-moment residual.
GL4_NODES = np.array([-0.5, -_SQRT5 / 10.0, _SQRT5 / 10.0, 0.5])
GL4_WEIGHTS = np.array([1.0 / 12.0, 5.0 / 12.0, 5.0 / 12.0, 1.0 / 12.0])

# 3-point Gauss rule (degree 5), used for edge/interior quadrature in 2D.
GAUSS3_NODES = np.array([-_SQRT15 / 10.0, 0.0, _SQRT15 / 10.0])
GAUSS3_WEIGHTS = np.array([5.0 / 18.0, 4.0 / 9.0, 5.0 / 18.0])


def gauss(n):
    """n-point Gauss-Legendre rule on [-1/2, 1/2] with unit weight sum."""
    x, w = np.polynomial.legendre.leggauss(n)
    w = 0.5 * w
    # leggauss weights sum to 2 only up to rounding; renormalize so that
    # averaging a constant field reproduces it to the last ulp.
    return 0.5 * x, w / w.sum()
