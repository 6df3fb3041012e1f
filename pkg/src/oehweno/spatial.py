"""Semi-discrete right-hand sides for the moment system.

The cell averages evolve by flux differences of Lax-Friedrichs numerical
fluxes at interface/edge Gauss points; the first moments additionally
integrate the physical flux of the reconstruction over the cell (the
moment-weighted divergence, integrated by parts).  One-sided interface
states come from the characteristic reconstruction for systems and the
scalar dimensionless reconstruction otherwise; interior quadrature values
are always componentwise.

The optional limiter hook rescales every reconstructed point value of a
cell about its average before any flux is evaluated, using the per-cell
factors provided by the limiter object (see limiters.py).  The ghost ring
participates: its owned one-sided boundary values are limited against the
ghost cell averages so that boundary fluxes see admissible states too.
"""

from dataclasses import dataclass

import numpy as np

from . import basis, recon1d, recon2d
from .fields import GHOST
from .limiters import gamma_point
from .quadrature import GAUSS3_NODES, GAUSS3_WEIGHTS, GL4_WEIGHTS
from .recon1d import EVAL_NODES_1D
from .recon2d import EvalSet2D, gather_windows

#: 2D tensor-product Gauss weights over the 3x3 interior nodes
_W2 = np.outer(GAUSS3_WEIGHTS, GAUSS3_WEIGHTS).ravel()

_FULL_ES = EvalSet2D()
_INT_ES = EvalSet2D(blocks=("interior",))


@dataclass
class Residual1D:
    l0: np.ndarray  # (ncomp, n) cell-average rate
    l1: np.ndarray  # (ncomp, n) first-moment rate


@dataclass
class Residual2D:
    l0: np.ndarray
    l1: np.ndarray  # x-moment rate
    l2: np.ndarray  # y-moment rate


def lf_flux(um, up, alpha, flux):
    """Lax-Friedrichs numerical flux with a shared dissipation speed."""
    return 0.5 * (flux(um) + flux(up) - alpha * (np.asarray(up) - um))


def _require_finite(arr, what):
    if not np.isfinite(arr).all():
        bad = np.argwhere(~np.isfinite(arr))[0]
        raise FloatingPointError(f"non-finite {what} at index "
                                 f"{tuple(int(b) for b in bad)}")


def node_values_1d(field, model, gamma_h=recon1d.GAMMA_H,
                   gamma_l=recon1d.GAMMA_L, eps=recon1d.WEIGHT_EPS):
    """Point values at the Gauss-Lobatto nodes for cells -1..n.

    Returns (ncomp, n+2, 4): columns 0 and 3 are the cell-owned one-sided
    interface values (characteristic for systems), columns 1 and 2 the
    interior nodes (always componentwise).
    """
    u, v = field.u, field.v
    phi = basis.eval_1d(EVAL_NODES_1D, 6)
    uw = np.lib.stride_tricks.sliding_window_view(u, 3, axis=-1)
    vw = np.lib.stride_tricks.sliding_window_view(v, 3, axis=-1)
    pts = recon1d.dimensionless_reconstruct(uw, vw, phi, gamma_h, gamma_l,
                                            eps)
    if model.ncomp > 1:
        left, right = recon1d.characteristic_interface_states(
            u, v, model, gamma_h, gamma_l, eps)
        pts[:, :-1, 3] = left
        pts[:, 1:, 0] = right
    return pts


def residual_1d(field, model, grid, alpha, gamma_h=recon1d.GAMMA_H,
                gamma_l=recon1d.GAMMA_L, eps=recon1d.WEIGHT_EPS,
                limiter=None):
    """Assemble (l0, l1) for every interior cell of a ghosted 1D field."""
    n, h = grid.n, grid.h
    pts = node_values_1d(field, model, gamma_h, gamma_l, eps)
    if limiter is not None:
        avg = field.u[:, GHOST - 1:field.u.shape[-1] - GHOST + 1]
        d = limiter.delta(pts, avg)
        pts = avg[..., None] + d[..., None] * (pts - avg[..., None])
    um = pts[:, :-1, 3]
    up = pts[:, 1:, 0]
    fhat = lf_flux(um, up, alpha, model.flux)
    _require_finite(fhat, "interface flux")
    fint = model.flux(pts[:, 1:n + 1, :])
    l0 = -(fhat[:, 1:] - fhat[:, :-1]) / h
    l1 = (-(0.5 * (fhat[:, :-1] + fhat[:, 1:]))
          + fint @ np.asarray(GL4_WEIGHTS)) / h
    return Residual1D(l0, l1)


def edge_and_interior_values_2d(field, model, gamma_h=recon2d.GAMMA_H,
                                gamma_l=recon2d.GAMMA_L,
                                eps=recon1d.WEIGHT_EPS):
    """One-sided edge Gauss states plus interior tensor-Gauss values.

    Returns (minus_x, plus_x, minus_y, plus_y, interior) with shapes
    (ncomp, ny, nx+1, 3), (ncomp, ny+1, nx, 3) for the y pair, and
    (ncomp, ny, nx, 9).
    """
    u, v, w = field.u, field.v, field.w
    ny = u.shape[-2] - 2 * GHOST
    nx = u.shape[-1] - 2 * GHOST
    if model.ncomp == 1:
        # one reconstruction pass per ring cell at all 21 points
        wins = gather_windows(u, v, w)
        vals = recon2d.dimensionless_reconstruct_2d(wins, _FULL_ES, gamma_h,
                                                    gamma_l, eps)
        blk = _FULL_ES.blocks
        minus_x = vals[:, 1:ny + 1, 0:nx + 1, blk["edge_xp"]]
        plus_x = vals[:, 1:ny + 1, 1:nx + 2, blk["edge_xm"]]
        minus_y = vals[:, 0:ny + 1, 1:nx + 1, blk["edge_yp"]]
        plus_y = vals[:, 1:ny + 2, 1:nx + 1, blk["edge_ym"]]
        interior = vals[:, 1:ny + 1, 1:nx + 1, blk["interior"]]
        return (np.ascontiguousarray(minus_x), np.ascontiguousarray(plus_x),
                np.ascontiguousarray(minus_y), np.ascontiguousarray(plus_y),
                np.ascontiguousarray(interior))
    minus_x, plus_x = recon2d.characteristic_edge_states_2d(
        u, v, w, model, "x", gamma_h, gamma_l, eps)
    minus_y, plus_y = recon2d.characteristic_edge_states_2d(
        u, v, w, model, "y", gamma_h, gamma_l, eps)
    wins = gather_windows(u, v, w)[:, 1:ny + 1, 1:nx + 1]
    interior = recon2d.dimensionless_reconstruct_2d(wins, _INT_ES, gamma_h,
                                                    gamma_l, eps)
    return minus_x, plus_x, np.ascontiguousarray(minus_y), \
        np.ascontiguousarray(plus_y), interior


def _limit_2d(limiter, ocad, u_ghosted, minus_x, plus_x, minus_y, plus_y,
              interior):
    """Rescale all cell-owned point values about the cell averages."""
    if ocad is None:
        raise ValueError("2D limiting needs the cell-average decomposition "
                         "parameters of the current step")
    ncomp, ny, nx = interior.shape[:3]
    avg = u_ghosted[:, GHOST:-GHOST, GHOST:-GHOST]

    own_l = plus_x[:, :, :nx]
    own_r = minus_x[:, :, 1:]
    own_b = plus_y[:, :ny]
    own_t = minus_y[:, 1:]
    gw = np.asarray(GAUSS3_WEIGHTS)
    faces = (own_l @ gw, own_r @ gw, own_b @ gw, own_t @ gw)
    gpt = gamma_point(avg, faces, ocad)
    blocks = [own_l, own_r, own_b, own_t, gpt[..., None]]
    if limiter.needs_interior:
        blocks.append(interior)
    pts = np.concatenate(blocks, axis=-1)
    d = limiter.delta(pts, avg)[..., None]
    a = avg[..., None]
    plus_x[:, :, :nx] = a + d * (own_l - a)
    minus_x[:, :, 1:] = a + d * (own_r - a)
    plus_y[:, :ny] = a + d * (own_b - a)
    minus_y[:, 1:] = a + d * (own_t - a)
    interior[...] = a + d * (interior - a)

    # ghost-ring cells own the remaining one-sided boundary values
    for vals, gavg in (
            (minus_x[:, :, 0], u_ghosted[:, GHOST:-GHOST, GHOST - 1]),
            (plus_x[:, :, nx], u_ghosted[:, GHOST:-GHOST, nx + GHOST]),
            (minus_y[:, 0], u_ghosted[:, GHOST - 1, GHOST:-GHOST]),
            (plus_y[:, ny], u_ghosted[:, ny + GHOST, GHOST:-GHOST])):
        dg = limiter.delta(vals, gavg)[..., None]
        vals[...] = gavg[..., None] + dg * (vals - gavg[..., None])


def residual_2d(field, model, grid, alpha_x, alpha_y,
                gamma_h=recon2d.GAMMA_H, gamma_l=recon2d.GAMMA_L,
                eps=recon1d.WEIGHT_EPS, limiter=None, ocad=None):
    """Assemble (l0, l1, l2) for every interior cell of a 2D field."""
    nx, ny = grid.nx, grid.ny
    hx, hy = grid.hx, grid.hy
    minus_x, plus_x, minus_y, plus_y, interior = edge_and_interior_values_2d(
        field, model, gamma_h, gamma_l, eps)
    if limiter is not None:
        _limit_2d(limiter, ocad, field.u, minus_x, plus_x, minus_y, plus_y,
                  interior)

    gw = np.asarray(GAUSS3_WEIGHTS)
    gn = np.asarray(GAUSS3_NODES)
    fpts = lf_flux(minus_x, plus_x, alpha_x, model.flux)
    gpts = lf_flux(minus_y, plus_y, alpha_y, model.flux_y)
    _require_finite(fpts, "x-edge flux")
    _require_finite(gpts, "y-edge flux")
    f1 = fpts @ gw                    # (c, ny, nx+1)
    f2 = fpts @ (gw * gn)             # moment factor (y - y_j)/hy
    g1 = gpts @ gw                    # (c, ny+1, nx)
    g2 = gpts @ (gw * gn)             # moment factor (x - x_i)/hx

    fint = model.flux(interior) @ _W2
    gint = model.flux_y(interior) @ _W2

    l0 = (-(f1[:, :, 1:] - f1[:, :, :-1]) / hx
          - (g1[:, 1:] - g1[:, :-1]) / hy)
    l1 = (-(0.5 * (f1[:, :, :-1] + f1[:, :, 1:])) + fint) / hx \
        - (g2[:, 1:] - g2[:, :-1]) / hy
    l2 = (-(f2[:, :, 1:] - f2[:, :, :-1])) / hx \
        + (-(0.5 * (g1[:, :-1] + g1[:, 1:])) + gint) / hy
    return Residual2D(l0, l1, l2)
