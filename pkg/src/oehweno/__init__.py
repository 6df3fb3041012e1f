"""Sixth-order oscillation-eliminating Hermite-WENO finite-volume solvers.

The package evolves zeroth- and first-order cell moments of 1D/2D hyperbolic
conservation laws with a scale-invariant Hermite-WENO reconstruction, an
exact (integrated-in-time) oscillation-eliminating damping of the first
moments, and optional bound-/positivity-preserving limiters built on an
optimal convex decomposition of cell averages.
"""

__version__ = "0.1.0"
