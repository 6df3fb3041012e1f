"""Moment damping filter: closed-form interface jumps and the exact factor.

After every Runge-Kutta stage the first-order moments are multiplied by
``delta = exp(-alpha*dt/h * sigma)`` per cell, where ``sigma`` measures the
interface jumps of the piecewise-quintic Hermite interpolant relative to the
global spread of the cell averages.  Both the 1D jump pair and the 2D edge
jumps have exact closed forms in the surrounding window moments, so the
interpolant itself is never materialized.

Cell averages are never touched: the filter is conservative bit-for-bit.
"""

from dataclasses import dataclass

import numpy as np

from .fields import GHOST, global_deviation

# ---------------------------------------------------------------------------
# 1D closed forms.  Window columns are the four cells (i-1, i, i+1, i+2)
# around interface i+1/2; jump = right-side value minus left-side value.

_JU_U = np.array([-13.0, -31.0, 31.0, 13.0]) / 108.0
_JU_V = np.array([-50.0, -370.0, -370.0, -50.0]) / 108.0
_JUX_U = np.array([-5.0, 5.0, 5.0, -5.0]) / 36.0
_JUX_V = np.array([-22.0, -54.0, 54.0, 22.0]) / 36.0

# ---------------------------------------------------------------------------
# 2D closed forms.  For an x-edge (i+1/2, j) the 3x4 window W[r, c] holds the
# moment of cell (i-1+c, j-1+r): rows sweep y, columns sweep x.  The jump of
# the m-th x-derivative is
#     hx^-m * (<A_m, U> + <B_m, V> + <C_m, W>),
# and a y-edge uses the axis-swapped windows with V and W trading places.
# Collapsed along the transverse direction the columns of A_m/B_m reproduce
# the 1D stencils above; rows of A_m sum to zero (constants are continuous).

_A0_NUM = np.array([
    [-83711, 213373, -213373, 83711],
    [-179273, -4144421, 4144421, 179273],
    [-83711, 213373, -213373, 83711],
])
_A1_NUM = np.array([
    [-72361, 72361, 72361, -72361],
    [471889, -471889, -471889, 471889],
    [-72361, 72361, 72361, -72361],
])
# Constants must produce zero jumps: every row of the average-moment
# matrices annihilates (1,1,1,1).  Exact in integers.
assert not _A0_NUM.sum(axis=1).any()
assert not _A1_NUM.sum(axis=1).any()

_A0 = _A0_NUM / np.array([[1721856.0], [7748352.0], [1721856.0]])
_A1 = _A1_NUM / np.array([[286976.0], [1291392.0], [286976.0]])

_B0 = np.array([
    [-68215.0, 39895.0, 39895.0, -68215.0],
    [165535.0, -3677215.0, -3677215.0, 165535.0],
    [-68215.0, 39895.0, 39895.0, -68215.0],
])
_B0[0] /= 215232.0
_B0[1] /= 968544.0
_B0[2] /= 215232.0

_B1 = np.array([
    [-23771.0 / 17936.0, -21411.0 / 17936.0, 21411.0 / 17936.0,
     23771.0 / 17936.0],
    [164615.0 / 80712.0, 7959.0 / 8968.0, -7959.0 / 8968.0,
     -164615.0 / 80712.0],
    [-23771.0 / 17936.0, -21411.0 / 17936.0, 21411.0 / 17936.0,
     23771.0 / 17936.0],
])

# The C rows carry the only y-antisymmetric contribution, so their order is
# pinned by the same bottom-up row convention as A and B (verified against
# the least-squares quintic oracle; the A/B rows are y-symmetric and cannot
# disambiguate it).
_C0 = np.array([
    [1541.0 / 45312.0, -1541.0 / 15104.0, 1541.0 / 15104.0,
     -1541.0 / 45312.0],
    [0.0, 0.0, 0.0, 0.0],
    [-1541.0 / 45312.0, 1541.0 / 15104.0, -1541.0 / 15104.0,
     1541.0 / 45312.0],
])

_C1 = np.array([
    [-1665.0 / 7552.0, 1665.0 / 7552.0, 1665.0 / 7552.0, -1665.0 / 7552.0],
    [0.0, 0.0, 0.0, 0.0],
    [1665.0 / 7552.0, -1665.0 / 7552.0, -1665.0 / 7552.0, 1665.0 / 7552.0],
])


@dataclass
class DampingReport:
    """Per-cell damping diagnostics for one filter application.

    sigma_x/sigma_y are the (component-maxed) dimensionless jump measures;
    delta is the multiplicative factor applied to the first-order moments.
    sigma_y is None for 1D fields.
    """

    sigma_x: np.ndarray
    sigma_y: np.ndarray | None
    delta: np.ndarray

    @property
    def max_sigma(self):
        m = float(self.sigma_x.max()) if self.sigma_x.size else 0.0
        if self.sigma_y is not None and self.sigma_y.size:
            m = max(m, float(self.sigma_y.max()))
        return m


def _check_finite(field):
    for name in ("u", "v", "w"):
        arr = getattr(field, name, None)
        if arr is None:
            continue
        bad = ~np.isfinite(arr)
        if bad.any():
            where = np.argwhere(bad)[0]
            raise FloatingPointError(
                "non-finite %s moment at ghosted cell index %s"
                % (name, tuple(int(k) - GHOST for k in where[1:])))


def interface_jumps_1d(u, v, h):
    """Jumps of the Hermite interpolant and its slope at all interfaces.

    u, v: ghosted arrays (..., n+4).  Returns (ju, jux), each (..., n+1),
    where entry k belongs to the interface between interior cells k-1 and k.
    """
    uw = np.lib.stride_tricks.sliding_window_view(u, 4, axis=-1)
    vw = np.lib.stride_tricks.sliding_window_view(v, 4, axis=-1)
    ju = uw @ _JU_U + vw @ _JU_V
    jux = (uw @ _JUX_U + vw @ _JUX_V) / h
    return ju, jux


def sigma_hat_1d(ju, jux, h, deviation):
    """Per-cell damping measure from per-interface jumps.

    ju, jux: (..., n+1) jump arrays; deviation: per-component global spread,
    broadcastable against the leading axes.  Zero deviation (exact test)
    selects sigma = 0.
    """
    ju = np.abs(ju)
    jux = np.abs(jux)
    raw = ju[..., :-1] + ju[..., 1:] + h * (jux[..., :-1] + jux[..., 1:])
    dev = np.asarray(deviation, dtype=float)[..., None]
    with np.errstate(divide="ignore", invalid="ignore"):
        sig = np.where(dev == 0.0, 0.0, raw / np.where(dev == 0.0, 1.0, dev))
    return sig


def oe_apply_1d(field, alpha, dt, grid):
    """Damp the first-order moments in place; cell averages are untouched.

    Ghost cells must be current.  Returns a DampingReport over interior
    cells.  For systems the damping measure is the max over components.
    """
    _check_finite(field)
    dev = np.array([global_deviation(field, k) for k in range(field.n_vars)])
    ju, jux = interface_jumps_1d(field.u, field.v, grid.h)
    sigma = sigma_hat_1d(ju, jux, grid.h, dev).max(axis=0)
    delta = np.exp(-(alpha * dt / grid.h) * sigma)
    field.v[:, GHOST:-GHOST] *= delta
    return DampingReport(sigma_x=sigma, sigma_y=None, delta=delta)


def _edge_jumps_x(u, v, w, hx, ny, nx):
    """x-edge jumps for ghosted arrays (..., ny+4, nx+4).

    Returns (j0, j1) of shape (..., ny, nx+1); entry (..., j, k) sits on the
    edge between interior cells (k-1, j) and (k, j).
    """
    win = (3, 4)
    uw = np.lib.stride_tricks.sliding_window_view(u, win, axis=(-2, -1))
    vw = np.lib.stride_tricks.sliding_window_view(v, win, axis=(-2, -1))
    ww = np.lib.stride_tricks.sliding_window_view(w, win, axis=(-2, -1))
    sl = (Ellipsis, slice(1, ny + 1), slice(0, nx + 1), slice(None),
          slice(None))
    uw, vw, ww = uw[sl], vw[sl], ww[sl]
    j0 = (np.einsum("rc,...rc->...", _A0, uw)
          + np.einsum("rc,...rc->...", _B0, vw)
          + np.einsum("rc,...rc->...", _C0, ww))
    j1 = (np.einsum("rc,...rc->...", _A1, uw)
          + np.einsum("rc,...rc->...", _B1, vw)
          + np.einsum("rc,...rc->...", _C1, ww)) / hx
    return j0, j1


def interface_jumps_2d(u, v, w, hx, hy):
    """Edge jumps of the 2D Hermite interpolant in both directions.

    u, v, w: ghosted arrays (..., ny+4, nx+4).  Returns
    (jx0, jx1, jy0, jy1): x-edge arrays have shape (..., ny, nx+1) and hold
    the jumps of u* and of its x-slope; y-edge arrays have shape
    (..., ny+1, nx) with the jumps of u* and of its y-slope.  The y case is
    the axis-swapped x case with the two moment fields trading roles.
    """
    ny = u.shape[-2] - 2 * GHOST
    nx = u.shape[-1] - 2 * GHOST
    jx0, jx1 = _edge_jumps_x(u, v, w, hx, ny, nx)
    jy0t, jy1t = _edge_jumps_x(u.swapaxes(-2, -1), w.swapaxes(-2, -1),
                               v.swapaxes(-2, -1), hy, nx, ny)
    return jx0, jx1, jy0t.swapaxes(-2, -1), jy1t.swapaxes(-2, -1)


def _sigma_from_edges(j0, j1, h, dev, axis):
    j0 = np.abs(j0)
    j1 = np.abs(j1)
    if axis == "x":
        raw = (j0[..., :, :-1] + j0[..., :, 1:]
               + h * (j1[..., :, :-1] + j1[..., :, 1:]))
    else:
        raw = (j0[..., :-1, :] + j0[..., 1:, :]
               + h * (j1[..., :-1, :] + j1[..., 1:, :]))
    dev = np.asarray(dev, dtype=float)[..., None, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(dev == 0.0, 0.0, raw / np.where(dev == 0.0, 1.0, dev))


def oe_apply_2d(field, alpha_x, alpha_y, dt, grid):
    """Damp both first-order moments in place with a shared factor.

    The factor combines the x- and y-edge measures,
    delta = exp(-ax*dt/hx*sigma_x - ay*dt/hy*sigma_y), maxed over components
    for systems.  Cell averages are untouched.
    """
    _check_finite(field)
    dev = np.array([global_deviation(field, k) for k in range(field.n_vars)])
    jx0, jx1, jy0, jy1 = interface_jumps_2d(
        field.u, field.v, field.w, grid.hx, grid.hy)
    sig_x = _sigma_from_edges(jx0, jx1, grid.hx, dev, "x").max(axis=0)
    sig_y = _sigma_from_edges(jy0, jy1, grid.hy, dev, "y").max(axis=0)
    delta = np.exp(-(alpha_x * dt / grid.hx) * sig_x
                   - (alpha_y * dt / grid.hy) * sig_y)
    field.v[:, GHOST:-GHOST, GHOST:-GHOST] *= delta
    field.w[:, GHOST:-GHOST, GHOST:-GHOST] *= delta
    return DampingReport(sigma_x=sig_x, sigma_y=sig_y, delta=delta)
