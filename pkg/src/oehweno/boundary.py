"""Ghost-cell filling for the supported boundary types.

A BoundarySpec holds one handler per side ("left"/"right" in 1D, plus
"bottom"/"top" in 2D).  Handlers:

    periodic()                 wraparound copy of all moments
    outflow()                  copy the nearest interior cell's moments
    reflective(parity)         mirror; cell average keeps the per-variable
                               parity sign, the wall-normal first moment
                               flips it, the tangential one keeps it
    prescribed(schedule)       cell average from schedule(pos, t), first
                               moments zero
    custom(fill)               fill(field, grid, t, side) does it itself

Periodic sides must come in matched pairs.  Filling order in 2D is x-sides
on interior rows first, then y-sides across the full (ghost-padded) x
range, which populates the corner blocks consistently.
"""

import numpy as np

from .fields import GHOST, MomentField1D


def periodic():
    return ("periodic",)


def outflow():
    return ("outflow",)


def reflective(parity):
    return ("reflective", np.asarray(parity, dtype=float))


def prescribed(schedule):
    return ("prescribed", schedule)


def custom(fill):
    return ("custom", fill)


class BoundarySpec:
    def __init__(self, **sides):
        self.sides = sides
        kinds = {s: h[0] for s, h in sides.items()}
        for a, b in (("left", "right"), ("bottom", "top")):
            if (kinds.get(a) == "periodic") != (kinds.get(b) == "periodic"):
                raise ValueError(f"periodic sides must pair up ({a}/{b})")

    def __getitem__(self, side):
        return self.sides[side]


def _fill_1d(field, grid, t, side, handler):
    n = field.n
    kind = handler[0]
    lo = side == "left"
    for arr, moment in ((field.u, "u"), (field.v, "v")):
        if kind == "periodic":
            if lo:
                arr[:, :GHOST] = arr[:, n:n + GHOST]
            else:
                arr[:, n + GHOST:] = arr[:, GHOST:2 * GHOST]
        elif kind == "outflow":
            if lo:
                arr[:, :GHOST] = arr[:, GHOST:GHOST + 1]
            else:
                arr[:, n + GHOST:] = arr[:, n + GHOST - 1:n + GHOST]
        elif kind == "reflective":
            parity = handler[1][:, None]
            sign = parity if moment == "u" else -parity
            if lo:
                arr[:, :GHOST] = sign * arr[:, GHOST:2 * GHOST][:, ::-1]
            else:
                arr[:, n + GHOST:] = sign * arr[:, n:n + GHOST][:, ::-1]
        elif kind == "prescribed":
            if moment == "u":
                pos = grid.x_lo if lo else grid.x_hi
                state = np.asarray(handler[1](pos, t), dtype=float)
                if not np.isfinite(state).all():
                    raise FloatingPointError("boundary schedule returned non-finite state")
                block = state[:, None]
            else:
                block = 0.0
            if lo:
                arr[:, :GHOST] = block
            else:
                arr[:, n + GHOST:] = block
        else:
            raise ValueError(f"unknown boundary kind {kind}")


def _fill_2d_x(field, grid, t, side, handler):
    """Fill the left/right ghost columns on interior rows."""
    nx = field.nx
    kind = handler[0]
    lo = side == "left"
    rows = slice(GHOST, GHOST + field.ny)
    for arr, moment in ((field.u, "u"), (field.v, "v"), (field.w, "w")):
        a = arr[:, rows, :]
        if kind == "periodic":
            if lo:
                a[:, :, :GHOST] = a[:, :, nx:nx + GHOST]
            else:
                a[:, :, nx + GHOST:] = a[:, :, GHOST:2 * GHOST]
        elif kind == "outflow":
            if lo:
                a[:, :, :GHOST] = a[:, :, GHOST:GHOST + 1]
            else:
                a[:, :, nx + GHOST:] = a[:, :, nx + GHOST - 1:nx + GHOST]
        elif kind == "reflective":
            parity = handler[1][:, None, None]
            # v is the wall-normal moment for an x-side, w tangential
            sign = -parity if moment == "v" else parity
            if lo:
                a[:, :, :GHOST] = sign * a[:, :, GHOST:2 * GHOST][:, :, ::-1]
            else:
                a[:, :, nx + GHOST:] = sign * a[:, :, nx:nx + GHOST][:, :, ::-1]
        elif kind == "prescribed":
            if moment == "u":
                pos = grid.y_centers()
                x = grid.x_lo if lo else grid.x_hi
                state = np.asarray(handler[1]((x, pos), t), dtype=float)
                if not np.isfinite(state).all():
                    raise FloatingPointError("boundary schedule returned non-finite state")
                block = state[:, :, None]  # (nvars, ny, 1)
            else:
                block = 0.0
            if lo:
                a[:, :, :GHOST] = block
            else:
                a[:, :, nx + GHOST:] = block
        else:
            raise ValueError(f"unknown boundary kind {kind}")


def _fill_2d_y(field, grid, t, side, handler):
    """Fill the bottom/top ghost rows across the full x range."""
    ny = field.ny
    kind = handler[0]
    lo = side == "bottom"
    for arr, moment in ((field.u, "u"), (field.v, "v"), (field.w, "w")):
        if kind == "periodic":
            if lo:
                arr[:, :GHOST, :] = arr[:, ny:ny + GHOST, :]
            else:
                arr[:, ny + GHOST:, :] = arr[:, GHOST:2 * GHOST, :]
        elif kind == "outflow":
            if lo:
                arr[:, :GHOST, :] = arr[:, GHOST:GHOST + 1, :]
            else:
                arr[:, ny + GHOST:, :] = arr[:, ny + GHOST - 1:ny + GHOST, :]
        elif kind == "reflective":
            parity = handler[1][:, None, None]
            # w is the wall-normal moment for a y-side, v tangential
            sign = -parity if moment == "w" else parity
            if lo:
                arr[:, :GHOST, :] = sign * arr[:, GHOST:2 * GHOST, :][:, ::-1, :]
            else:
                arr[:, ny + GHOST:, :] = sign * arr[:, ny:ny + GHOST, :][:, ::-1, :]
        elif kind == "prescribed":
            if moment == "u":
                # include ghost columns so corners are covered
                xg = grid.x_lo + (np.arange(-GHOST, field.nx + GHOST) + 0.5) * grid.hx
                y = grid.y_lo if lo else grid.y_hi
                state = np.asarray(handler[1]((xg, y), t), dtype=float)
                if not np.isfinite(state).all():
                    raise FloatingPointError("boundary schedule returned non-finite state")
                block = state[:, None, :]  # (nvars, 1, nx+4)
            else:
                block = 0.0
            if lo:
                arr[:, :GHOST, :] = block
            else:
                arr[:, ny + GHOST:, :] = block
        else:
            raise ValueError(f"unknown boundary kind {kind}")


def apply_boundary(field, spec: BoundarySpec, grid, t=0.0):
    """Fill every ghost cell of `field` in place and return it."""
    if isinstance(field, MomentField1D):
        for side in ("left", "right"):
            h = spec[side]
            if h[0] == "custom":
                h[1](field, grid, t, side)
            else:
                _fill_1d(field, grid, t, side, h)
        return field
    for side in ("left", "right"):
        h = spec[side]
        if h[0] == "custom":
            h[1](field, grid, t, side)
        else:
            _fill_2d_x(field, grid, t, side, h)
    for side in ("bottom", "top"):
        h = spec[side]
        if h[0] == "custom":
            h[1](field, grid, t, side)
        else:
            _fill_2d_y(field, grid, t, side, h)
    return field
