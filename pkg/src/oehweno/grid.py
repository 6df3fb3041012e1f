"""Uniform structured grids (the only kind the discretization supports)."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Grid1D:
    x_lo: float
    x_hi: float
    n: int

    def __post_init__(self):
        if self.x_hi <= self.x_lo:
            raise ValueError(f"empty extent [{self.x_lo}, {self.x_hi}]")
        if self.n < 4:
            raise ValueError("need at least 4 cells for the stencil")

    @property
    def h(self):
        return (self.x_hi - self.x_lo) / self.n

    def centers(self):
        return self.x_lo + (np.arange(self.n) + 0.5) * self.h

    def interfaces(self):
        return self.x_lo + np.arange(self.n + 1) * self.h


@dataclass(frozen=True)
class Grid2D:
    x_lo: float
    x_hi: float
    nx: int
    y_lo: float
    y_hi: float
    ny: int

    def __post_init__(self):
        if self.x_hi <= self.x_lo or self.y_hi <= self.y_lo:
            raise ValueError("empty extent")
        if self.nx < 4 or self.ny < 4:
            raise ValueError("need at least 4 cells per direction")

    @property
    def hx(self):
        return (self.x_hi - self.x_lo) / self.nx

    @property
    def hy(self):
        return (self.y_hi - self.y_lo) / self.ny

    def x_centers(self):
        return self.x_lo + (np.arange(self.nx) + 0.5) * self.hx

    def y_centers(self):
        return self.y_lo + (np.arange(self.ny) + 0.5) * self.hy


def build_grid(bounds, cells):
    """Build a Grid1D from ((x_lo, x_hi), n) or a Grid2D from
    ((x_lo, x_hi), (y_lo, y_hi)), (nx, ny)."""
    if np.ndim(bounds) == 1:
        return Grid1D(float(bounds[0]), float(bounds[1]), int(cells))
    (xb, yb) = bounds
    nx, ny = cells
    return Grid2D(float(xb[0]), float(xb[1]), int(nx),
                  float(yb[0]), float(yb[1]), int(ny))
