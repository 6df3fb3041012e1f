"""Frozen coefficient tables of the 2D candidate polynomials.

Each matrix maps the stacked stencil window [u_1..u_9, v_1..v_9, w_1..w_9]
(cells labeled in reading order, bottom row first, target cell 5) to the
monic-Legendre coefficients of one candidate polynomial.  The quintic and
cubic rows are the exact rational solutions of the constrained
least-squares moment systems (target cell average matched exactly, all
other moment conditions in the ordinary least-squares sense); the linear
candidates solve their 3x3 systems exactly.  Derived once in exact
rational arithmetic; the ratios below round once to double.

tests/oracles.py re-derives all of this numerically at test time.
"""

import numpy as np

QUINTIC_MAP = np.array([
    [0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 12, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 12, 0, 0, 0, 0],
    [883/3304, -883/1652, 883/3304, 363/472, -363/236, 363/472, 883/3304, -883/1652, 883/3304, 663/413, 0, -663/413, 2661/1652, 0, -2661/1652, 663/413, 0, -663/413, -3/1652, 3/826, -3/1652, 0, 0, 0, 3/1652, -3/826, 3/1652],
    [41/76, 0, -41/76, 0, 0, 0, -41/76, 0, 41/76, 33/19, 0, 33/19, 0, 0, 0, -33/19, 0, -33/19, 33/19, 0, -33/19, 0, 0, 0, 33/19, 0, -33/19],
    [883/3304, 363/472, 883/3304, -883/1652, -363/236, -883/1652, 883/3304, 363/472, 883/3304, -3/1652, 0, 3/1652, 3/826, 0, -3/826, -3/1652, 0, 3/1652, 663/413, 2661/1652, 663/413, 0, 0, 0, -663/413, -2661/1652, -663/413],
    [0, 0, 0, -595/324, 0, 595/324, 0, 0, 0, 0, 0, 0, -985/162, -2585/81, -985/162, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [-1695/2128, 1695/1064, -1695/2128, 0, 0, 0, 1695/2128, -1695/1064, 1695/2128, -135/56, 0, 135/56, 0, 0, 0, 135/56, 0, -135/56, -33/19, 66/19, -33/19, 0, 0, 0, -33/19, 66/19, -33/19],
    [-1695/2128, 0, 1695/2128, 1695/1064, 0, -1695/1064, -1695/2128, 0, 1695/2128, -33/19, 0, -33/19, 66/19, 0, 66/19, -33/19, 0, -33/19, -135/56, 0, 135/56, 0, 0, 0, 135/56, 0, -135/56],
    [0, -595/324, 0, 0, 0, 0, 0, 595/324, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -985/162, 0, 0, -2585/81, 0, 0, -985/162, 0],
    [-95/472, 95/236, -95/472, -105/472, 105/236, -105/472, -95/472, 95/236, -95/472, -145/118, 0, 145/118, -305/236, 0, 305/236, -145/118, 0, 145/118, 5/236, -5/118, 5/236, 0, 0, 0, -5/236, 5/118, -5/236],
    [-5/38, 0, 5/38, 0, 0, 0, 5/38, 0, -5/38, -30/19, 0, -30/19, 0, 0, 0, 30/19, 0, 30/19, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [27/118, -27/59, 27/118, -27/59, 54/59, -27/59, 27/118, -27/59, 27/118, -15/236, 0, 15/236, 15/118, 0, -15/118, -15/236, 0, 15/236, -15/236, 15/118, -15/236, 0, 0, 0, 15/236, -15/118, 15/236],
    [-5/38, 0, 5/38, 0, 0, 0, 5/38, 0, -5/38, 0, 0, 0, 0, 0, 0, 0, 0, 0, -30/19, 0, 30/19, 0, 0, 0, -30/19, 0, 30/19],
    [-95/472, -105/472, -95/472, 95/236, 105/236, 95/236, -95/472, -105/472, -95/472, 5/236, 0, -5/236, -5/118, 0, 5/118, 5/236, 0, -5/236, -145/118, -305/236, -145/118, 0, 0, 0, 145/118, 305/236, 145/118],
    [0, 0, 0, 35/36, 0, -35/36, 0, 0, 0, 0, 0, 0, 77/18, 133/9, 77/18, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [5/16, -5/8, 5/16, 0, 0, 0, -5/16, 5/8, -5/16, 15/8, 0, -15/8, 0, 0, 0, -15/8, 0, 15/8, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [5/38, 0, -5/38, -5/19, 0, 5/19, 5/38, 0, -5/38, 30/19, 0, 30/19, -60/19, 0, -60/19, 30/19, 0, 30/19, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [5/38, -5/19, 5/38, 0, 0, 0, -5/38, 5/19, -5/38, 0, 0, 0, 0, 0, 0, 0, 0, 0, 30/19, -60/19, 30/19, 0, 0, 0, 30/19, -60/19, 30/19],
    [5/16, 0, -5/16, -5/8, 0, 5/8, 5/16, 0, -5/16, 0, 0, 0, 0, 0, 0, 0, 0, 0, 15/8, 0, -15/8, 0, 0, 0, -15/8, 0, 15/8],
    [0, 35/36, 0, 0, 0, 0, 0, -35/36, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 77/18, 0, 0, 133/9, 0, 0, 77/18, 0],
])

CUBIC_MAP = np.array([
    [0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 12, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 12, 0, 0, 0, 0],
    [1/10, -1/5, 1/10, 3/10, -3/5, 3/10, 1/10, -1/5, 1/10, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1/4, 0, -1/4, 0, 0, 0, -1/4, 0, 1/4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1/10, 3/10, 1/10, -1/5, -3/5, -1/5, 1/10, 3/10, 1/10, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, -5/11, 0, 5/11, 0, 0, 0, 0, 0, 0, 0, -120/11, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [-1/4, 1/2, -1/4, 0, 0, 0, 1/4, -1/2, 1/4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [-1/4, 0, 1/4, 1/2, 0, -1/2, -1/4, 0, 1/4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, -5/11, 0, 0, 0, 0, 0, 5/11, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -120/11, 0, 0, 0, 0],
])

LINEAR_MAP_2 = np.array([
    [0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, -1, 1, 0, 0, 0, 0],
    [0, -1, 0, 0, 1, 0, 0, 0, 0],
])

LINEAR_MAP_3 = np.array([
    [0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, -1, 1, 0, 0, 0],
    [0, -1, 0, 0, 1, 0, 0, 0, 0],
])

LINEAR_MAP_4 = np.array([
    [0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, -1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, -1, 0, 0, 1, 0],
])

LINEAR_MAP_5 = np.array([
    [0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, -1, 1, 0, 0, 0],
    [0, 0, 0, 0, -1, 0, 0, 1, 0],
])
