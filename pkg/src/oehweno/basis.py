"""Monic Legendre bases on the reference cell and their moment tables.

The reconstruction works in the local variable ``xi = (x - x_i)/h`` (and
``eta = (y - y_j)/h`` in 2D), where every polynomial is expressed in monic
Legendre polynomials orthogonal on [-1/2, 1/2]:

    phi_0 = 1
    phi_1 = xi
    phi_2 = xi^2 - 1/12
    phi_3 = xi^3 - (3/20) xi
    phi_4 = xi^4 - (3/14) xi^2 + 3/560
    phi_5 = xi^5 - (5/18) xi^3 + (5/336) xi

Orthogonality makes cell averages of phi_n vanish for n >= 1, so the mean
of a polynomial over its own cell is just its phi_0 coefficient.  The 2D
basis is the graded tensor family phi_a(xi) * phi_b(eta).
"""

import numpy as np

from .quadrature import gauss

# Ascending monomial coefficients of phi_0..phi_5.
MONIC_LEGENDRE = (
    (1.0,),
    (0.0, 1.0),
    (-1.0 / 12.0, 0.0, 1.0),
    (0.0, -3.0 / 20.0, 0.0, 1.0),
    (3.0 / 560.0, 0.0, -3.0 / 14.0, 0.0, 1.0),
    (0.0, 5.0 / 336.0, 0.0, -5.0 / 18.0, 0.0, 1.0),
)

# (xi-degree, eta-degree) pairs of the 21-member quintic tensor basis,
# graded by total degree, xi-degree descending within a grade.  The cubic
# sub-basis is the first 10 entries and the linear sub-basis the first 3.
GRADED_2D = (
    (0, 0),
    (1, 0), (0, 1),
    (2, 0), (1, 1), (0, 2),
    (3, 0), (2, 1), (1, 2), (0, 3),
    (4, 0), (3, 1), (2, 2), (1, 3), (0, 4),
    (5, 0), (4, 1), (3, 2), (2, 3), (1, 4), (0, 5),
)


def _poly_deriv(coeffs, order):
    c = np.array(coeffs, dtype=float)
    for _ in range(order):
        if len(c) == 1:
            return np.zeros(1)
        c = c[1:] * np.arange(1, len(c))
    return c


def eval_1d(xi, nbasis=6, deriv=0):
    """Evaluate d^deriv/dxi^deriv of phi_0..phi_{nbasis-1} at points xi.

    Returns an array of shape ``xi.shape + (nbasis,)``.
    """
    xi = np.asarray(xi, dtype=float)
    out = np.empty(xi.shape + (nbasis,))
    for n in range(nbasis):
        c = _poly_deriv(MONIC_LEGENDRE[n], deriv)
        out[..., n] = np.polynomial.polynomial.polyval(xi, c)
    return out


def eval_2d(xi, eta, nbasis=21, dx=0, dy=0):
    """Evaluate mixed derivatives of the tensor basis at points (xi, eta)."""
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    fx = eval_1d(xi, 6, deriv=dx)
    fy = eval_1d(eta, 6, deriv=dy)
    out = np.empty(np.broadcast(xi, eta).shape + (nbasis,))
    for k, (a, b) in enumerate(GRADED_2D[:nbasis]):
        out[..., k] = fx[..., a] * fy[..., b]
    return out


def shifted_moment_table(shifts, moment, nbasis=6):
    """Moments of the basis over unit cells offset from the target cell.

    Entry ``[s, n]`` is the integral over zeta in [-1/2, 1/2] of
    ``phi_n(shifts[s] + zeta) * zeta**moment``, i.e. the cell-average
    (moment=0) or first-moment (moment=1) condition row for a neighbor
    cell at integer offset ``shifts[s]``.  Exact for the degrees used here
    (8-point Gauss).
    """
    z, w = gauss(8)
    shifts = np.asarray(shifts, dtype=float)
    phi = eval_1d(shifts[:, None] + z[None, :], nbasis)  # (ns, 8, nbasis)
    return np.einsum("q,sqn->sn", w * z**moment, phi)
