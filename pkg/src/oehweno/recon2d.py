"""Sixth-order 2D moment reconstruction on the 3x3 stencil.

Six candidates per cell: the 21-coefficient quintic and 10-coefficient cubic
(least-squares fits frozen in recon2d_tables), plus four linear fits on
L-shaped cell triples.  Nonlinear weights blend them in two levels exactly
as in the 1D module; a dimensionless wrapper makes the weights see
normalized data only.

Windows are length-27 vectors [u1..u9, v1..v9, w1..w9] over the 3x3 stencil
in reading order (bottom row first, x increasing), target cell fifth.  All
functions are batched over leading axes.
"""

import numpy as np

from . import basis
from .fields import GHOST
from .quadrature import GAUSS3_NODES
from .recon1d import SCALE_EPS, WEIGHT_EPS
from .recon2d_tables import (CUBIC_MAP, LINEAR_MAP_2, LINEAR_MAP_3,
                             LINEAR_MAP_4, LINEAR_MAP_5, QUINTIC_MAP)

GAMMA_H = (0.975, 0.025)
GAMMA_L = (0.9, 0.025, 0.025, 0.025, 0.025)


def gather_windows(u, v, w):
    """Stack 3x3 stencil windows of ghosted arrays into 27-vectors.

    u, v, w: (..., ny+4, nx+4).  Returns (..., ny+2, nx+2, 27) covering all
    cells that own a complete window (interior plus one ghost ring); the
    interior block is [..., 1:ny+1, 1:nx+1, :].
    """
    parts = []
    for a in (u, v, w):
        win = np.lib.stride_tricks.sliding_window_view(a, (3, 3),
                                                       axis=(-2, -1))
        parts.append(win.reshape(win.shape[:-2] + (9,)))
    return np.concatenate(parts, axis=-1)


def candidate_polynomials_2d(win):
    """Candidate coefficients from windows (..., 27).

    Returns (c0, c1, c2, c3, c4, c5) with trailing sizes 21, 10, 3, 3, 3, 3.
    """
    win = np.asarray(win, dtype=float)
    u9 = win[..., :9]
    return (win @ QUINTIC_MAP.T, win @ CUBIC_MAP.T,
            u9 @ LINEAR_MAP_2.T, u9 @ LINEAR_MAP_3.T,
            u9 @ LINEAR_MAP_4.T, u9 @ LINEAR_MAP_5.T)


def smoothness_indicators_2d(c0, c1, c2, c3, c4, c5):
    """Explicit completed-square forms of the derivative-energy integrals."""
    c = np.moveaxis(np.asarray(c0, dtype=float), -1, 0)
    b0 = (0.5 * (c[1] + c[6] / 5.0) ** 2
          + 0.5 * (c[1] + c[15] / 63.0) ** 2
          + 0.5 * (c[2] + c[9] / 5.0) ** 2
          + 0.5 * (c[2] + c[20] / 63.0) ** 2
          + (13.0 / 3.0) * (c[3] + 123.0 * c[10] / 455.0) ** 2
          + (7.0 / 12.0) * (c[4] + 13.0 * c[13] / 70.0) ** 2
          + (7.0 / 12.0) * (c[4] + 13.0 * c[11] / 70.0) ** 2
          + (13.0 / 3.0) * (c[5] + 123.0 * c[14] / 455.0) ** 2
          + (976.0 / 25.0) * (c[6] + 7235.0 * c[15] / 13664.0) ** 2
          + (47.0 / 20.0) * (c[7] + 781.0 * c[18] / 4230.0) ** 2
          + (47.0 / 20.0) * (c[7] + 533.0 * c[16] / 987.0) ** 2
          + (47.0 / 20.0) * (c[8] + 781.0 * c[17] / 4230.0) ** 2
          + (47.0 / 20.0) * (c[8] + 533.0 * c[19] / 987.0) ** 2
          + (976.0 / 25.0) * (c[9] + 7235.0 * c[20] / 13664.0) ** 2
          + (1421461.0 / 2275.0) * c[10] ** 2
          + (4441.0 / 105.0) * (c[11] + 21.0 * c[13] / 88820.0) ** 2
          + (116856056.0 / 172725.0)
          * (c[16] + 40467.0 * c[18] / 233712112.0) ** 2
          + (564287369.0 / 3331125.0)
          * (c[17] + 780435.0 * c[19] / 1128574738.0) ** 2
          + (5083.0 / 270.0) * c[12] ** 2
          + (7888991959.0 / 186522000.0) * c[13] ** 2
          + (1421461.0 / 2275.0) * c[14] ** 2
          + (242038614799.0 / 15494976.0) * c[15] ** 2
          + (263761553985963511.0 / 1557048518172000.0) * c[18] ** 2
          + (263761553985963511.0 / 389866143242100.0) * c[19] ** 2
          + (242038614799.0 / 15494976.0) * c[20] ** 2)
    d = np.moveaxis(np.asarray(c1, dtype=float), -1, 0)
    b1 = ((d[1] + d[6] / 10.0) ** 2
          + (d[2] + d[9] / 10.0) ** 2
          + (13.0 / 3.0) * (d[3] ** 2 + d[5] ** 2)
          + (7.0 / 6.0) * d[4] ** 2
          + (781.0 / 20.0) * (d[6] ** 2 + d[9] ** 2)
          + (47.0 / 10.0) * (d[7] ** 2 + d[8] ** 2))
    lins = []
    for ck in (c2, c3, c4, c5):
        ck = np.asarray(ck, dtype=float)
        lins.append(ck[..., 1] ** 2 + ck[..., 2] ** 2)
    return (b0, b1, *lins)


def nonlinear_weights_2d(betas, gamma_h=GAMMA_H, gamma_l=GAMMA_L,
                         eps=WEIGHT_EPS):
    """Two-level nonlinear weights; each group normalized to unit sum."""
    b = [np.asarray(x, dtype=float) for x in betas]
    tau0 = (b[0] - b[1]) ** 2
    tau1 = (0.25 * (np.abs(b[1] - b[2]) + np.abs(b[1] - b[3])
                    + np.abs(b[1] - b[4]) + np.abs(b[1] - b[5]))) ** 2
    wh = np.stack([g * (1.0 + tau0 / (b[k] + eps))
                   for k, g in enumerate(gamma_h)], axis=-1)
    wl = np.stack([g * (1.0 + tau1 / (b[k + 1] + eps))
                   for k, g in enumerate(gamma_l)], axis=-1)
    return (wh / wh.sum(axis=-1, keepdims=True),
            wl / wl.sum(axis=-1, keepdims=True))


def combine_values_2d(p_vals, wh, wl, gamma_h=GAMMA_H, gamma_l=GAMMA_L):
    """Blend the six candidates' point values (each (..., npts))."""
    p0v, p1v = p_vals[0], p_vals[1]
    gl = gamma_l
    gh0, gh1 = gamma_h
    low = p1v / gl[0]
    for k in range(2, 6):
        low = low - (gl[k - 1] / gl[0]) * p_vals[k]
    q1 = wl[..., 0:1] * low
    for k in range(2, 6):
        q1 = q1 + wl[..., k - 1:k] * p_vals[k]
    return wh[..., 0:1] * (p0v / gh0 - (gh1 / gh0) * q1) + wh[..., 1:2] * q1


class EvalSet2D:
    """Evaluation points on the reference cell with cached basis values.

    Blocks (slices into the point list, chosen via ``blocks``):
      edge_xm/edge_xp - one-sided limits on the left/right edge at the
                        3-point Gauss nodes in eta;
      edge_ym/edge_yp - bottom/top edge, Gauss nodes in xi;
      interior        - 3x3 tensor Gauss nodes;
      extra           - caller-supplied points (bound-preserving probes).
    """

    ALL_BLOCKS = ("edge_xm", "edge_xp", "edge_ym", "edge_yp", "interior")

    def __init__(self, blocks=ALL_BLOCKS, extra=None):
        g = GAUSS3_NODES
        half = np.full(3, 0.5)
        gx, gy = np.meshgrid(g, g, indexing="xy")
        coords = {
            "edge_xm": (-half, g),
            "edge_xp": (half, g),
            "edge_ym": (g, -half),
            "edge_yp": (g, half),
            "interior": (gx.ravel(), gy.ravel()),
        }
        xi, eta, names = [], [], []
        for name in blocks:
            x, y = coords[name]
            xi.append(x)
            eta.append(y)
            names.append(name)
        if extra is not None and len(extra):
            pts = np.asarray(extra, dtype=float).reshape(-1, 2)
            xi.append(pts[:, 0])
            eta.append(pts[:, 1])
            names.append("extra")
        self.xi = np.concatenate(xi)
        self.eta = np.concatenate(eta)
        self.blocks = {}
        start = 0
        for name, part in zip(names, xi):
            self.blocks[name] = slice(start, start + len(part))
            start += len(part)
        self.npts = start
        self.phi0 = basis.eval_2d(self.xi, self.eta, 21)
        self.phi1 = self.phi0[:, :10]
        self.phi_lin = self.phi0[:, :3]


def _candidate_values(cands, es):
    c0, c1, c2, c3, c4, c5 = cands
    return (c0 @ es.phi0.T, c1 @ es.phi1.T, c2 @ es.phi_lin.T,
            c3 @ es.phi_lin.T, c4 @ es.phi_lin.T, c5 @ es.phi_lin.T)


def reconstruct_cell_2d(win, es, gamma_h=GAMMA_H, gamma_l=GAMMA_L,
                        eps=WEIGHT_EPS):
    """Reconstructed values (..., npts) on raw windows (..., 27)."""
    cands = candidate_polynomials_2d(win)
    wh, wl = nonlinear_weights_2d(smoothness_indicators_2d(*cands),
                                  gamma_h, gamma_l, eps)
    return combine_values_2d(_candidate_values(cands, es), wh, wl,
                             gamma_h, gamma_l)


def dimensionless_reconstruct_2d(win, es, gamma_h=GAMMA_H, gamma_l=GAMMA_L,
                                 eps=WEIGHT_EPS):
    """Scale-invariant reconstruction: normalize, reconstruct, restore.

    The shift is the mean absolute cell average over the stencil and the
    scale its range plus a 1e-15 guard; constants pass through exactly and
    the normalization only changes what the nonlinear weights see.
    """
    win = np.asarray(win, dtype=float)
    u9 = win[..., :9]
    shift = np.abs(u9).mean(axis=-1, keepdims=True)
    scale = (u9.max(axis=-1, keepdims=True)
             - u9.min(axis=-1, keepdims=True) + SCALE_EPS)
    norm = np.empty_like(win)
    norm[..., :9] = (u9 - shift) / scale
    norm[..., 9:] = win[..., 9:] / scale
    vals = reconstruct_cell_2d(norm, es, gamma_h, gamma_l, eps)
    return vals * scale + shift


def _project_windows(left_mat, win):
    """Characteristic projection of stacked component windows.

    left_mat: (n, c, c); win: (c, n, 27) -> (c, n, 27) of projected moments.
    """
    return np.einsum("nab,bnm->anm", left_mat, win)


def characteristic_edge_states_2d(u, v, w, model, axis, gamma_h=GAMMA_H,
                                  gamma_l=GAMMA_L, eps=WEIGHT_EPS):
    """One-sided edge Gauss-point states for a system, via characteristic
    variables at the edge-mean primitive state.

    u, v, w: ghosted (ncomp, ny+4, nx+4).  axis 'x': returns (minus, plus)
    of shape (ncomp, ny, nx+1, 3) at the vertical-edge Gauss points; axis
    'y': (ncomp, ny+1, nx, 3) at horizontal edges.  minus is the limit from
    the lower-index cell.  Scalars short-circuit to component-wise
    dimensionless reconstruction.
    """
    if axis == "y":
        minus, plus = characteristic_edge_states_2d(
            u.swapaxes(-2, -1), w.swapaxes(-2, -1), v.swapaxes(-2, -1),
            model if model.ncomp == 1 else _SwappedModel(model),
            "x", gamma_h, gamma_l, eps)
        # swap the cell-grid axes back; the trailing Gauss axis stays last
        return minus.swapaxes(-3, -2), plus.swapaxes(-3, -2)

    ncomp = u.shape[0]
    ny = u.shape[-2] - 2 * GHOST
    nx = u.shape[-1] - 2 * GHOST
    es = _EDGE_ES
    wins = gather_windows(u, v, w)           # (c, ny+2, nx+2, 27)
    # windows of the cells left/right of every vertical edge (interior rows)
    left_w = wins[:, 1:ny + 1, 0:nx + 1]
    right_w = wins[:, 1:ny + 1, 1:nx + 2]
    shp = (ncomp, ny, nx + 1)

    if ncomp == 1:
        minus = dimensionless_reconstruct_2d(left_w, es, gamma_h, gamma_l,
                                             eps)[..., _XP]
        plus = dimensionless_reconstruct_2d(right_w, es, gamma_h, gamma_l,
                                            eps)[..., _XM]
        return minus, plus

    ua = u[:, GHOST:-GHOST, :]
    mean_prim = 0.5 * (model.primitive(ua[:, :, 1:2 + nx])
                       + model.primitive(ua[:, :, 2:3 + nx]))
    left, right = model.eig_x(mean_prim.reshape(ncomp, -1))
    lw = left_w.reshape(ncomp, -1, 27)
    rw = right_w.reshape(ncomp, -1, 27)
    char_l = _project_windows(left, lw)
    char_r = _project_windows(left, rw)
    vm = dimensionless_reconstruct_2d(char_l, es, gamma_h, gamma_l,
                                      eps)[..., _XP]
    vp = dimensionless_reconstruct_2d(char_r, es, gamma_h, gamma_l,
                                      eps)[..., _XM]
    minus = np.einsum("nba,anp->bnp", right, vm).reshape(shp + (3,))
    plus = np.einsum("nba,anp->bnp", right, vp).reshape(shp + (3,))
    return minus, plus


class _SwappedModel:
    """Axis-swapped view of a system model.  The component axis is never
    permuted by the array transposes, so only the eigensystem direction
    changes: x-eigenvectors of the swapped problem are the inner model's
    y-eigenvectors at the same (unpermuted) state."""

    def __init__(self, inner):
        self.inner = inner
        self.ncomp = inner.ncomp

    def primitive(self, u):
        return self.inner.primitive(u)

    def eig_x(self, w):
        return self.inner.eig_y(w)


_EDGE_ES = EvalSet2D(blocks=("edge_xm", "edge_xp"))
_XM = _EDGE_ES.blocks["edge_xm"]
_XP = _EDGE_ES.blocks["edge_xp"]
