"""Flux models: conservation-law right-hand sides and their wave-speed bounds.

Every model operates on conserved states stored component-first, i.e. arrays
of shape ``(ncomp, ...)``, and exposes

* ``flux`` / ``flux_y`` — closed-form flux per direction,
* ``max_speed_x`` / ``max_speed_y`` — the scalar wave-speed bound taken over
  cell averages (``max |f'(u)|`` for scalars, ``max(|velocity| + c)`` for
  Euler),
* ``admissible`` — membership in the model's convex admissible set,

and, for systems, the characteristic machinery ``primitive`` / ``conserved``
/ ``eig_x`` / ``eig_y``.  Models are stateless apart from the LWR clamp
counter and may be shared freely between runs.
"""

import numpy as np

# Positivity floor for density and pressure.
EPS_G = 1e-13


class Advection:
    """Linear advection, f(u) = a u (and g(u) = b u in 2D)."""

    ncomp = 1

    def __init__(self, speed=1.0, speed_y=0.0):
        self.speed = float(speed)
        self.speed_y = float(speed_y)
        self.bounds = None

    def flux(self, u):
        return self.speed * np.asarray(u, dtype=float)

    def flux_y(self, u):
        return self.speed_y * np.asarray(u, dtype=float)

    def max_speed_x(self, u):
        return abs(self.speed)

    def max_speed_y(self, u):
        return abs(self.speed_y)

    def admissible(self, u):
        return _interval_test(u, self.bounds)


class Burgers:
    """Burgers flux u^2/2, used in both directions in 2D."""

    ncomp = 1

    def __init__(self):
        self.bounds = None

    def flux(self, u):
        u = np.asarray(u, dtype=float)
        return 0.5 * u * u

    flux_y = flux

    def max_speed_x(self, u):
        return float(np.abs(u).max())

    max_speed_y = max_speed_x

    def admissible(self, u):
        return _interval_test(u, self.bounds)


class LWR:
    """Traffic-flow flux: three concave quadratic pieces, continuous at the
    breakpoints u = 50 and u = 100 (both sides evaluate to 4000).

    Defined for densities in [0, 350] veh/km.  Out-of-range inputs are
    clamped (so limiter-free runs cannot poison the flux) and counted in
    ``clamp_events`` to keep the overshoot observable.
    """

    ncomp = 1
    U_LO = 0.0
    U_HI = 350.0

    def __init__(self):
        self.bounds = None
        self.clamp_events = 0

    def flux(self, u):
        u = np.asarray(u, dtype=float)
        out_of_range = (u < self.U_LO) | (u > self.U_HI)
        if out_of_range.any():
            self.clamp_events += int(out_of_range.sum())
            u = np.clip(u, self.U_LO, self.U_HI)
        return np.where(
            u <= 50.0,
            -0.4 * u * u + 100.0 * u,
            np.where(u <= 100.0,
                     -0.1 * u * u + 15.0 * u + 3500.0,
                     -0.024 * u * u - 5.2 * u + 4760.0))

    def flux_prime(self, u):
        u = np.clip(np.asarray(u, dtype=float), self.U_LO, self.U_HI)
        return np.where(
            u <= 50.0,
            -0.8 * u + 100.0,
            np.where(u <= 100.0, -0.2 * u + 15.0, -0.048 * u - 5.2))

    def max_speed_x(self, u):
        return float(np.abs(self.flux_prime(u)).max())

    def admissible(self, u):
        return _interval_test(u, self.bounds)


def _interval_test(u, bounds):
    u = np.asarray(u)
    if bounds is None:
        return np.ones(u.shape, dtype=bool)
    lo, hi = bounds
    return (u >= lo) & (u <= hi)


class Euler1D:
    """1D compressible Euler equations in conserved variables (rho, m, E).

    Pressure p = (gamma-1)(E - m^2/(2 rho)); sound speed c = sqrt(gamma p/rho).
    Admissible iff rho >= eps and p >= eps.
    """

    ncomp = 3

    def __init__(self, gamma=1.4, eps=EPS_G):
        self.gamma = float(gamma)
        self.eps = float(eps)

    def primitive(self, u):
        """(rho, m, E) -> (rho, velocity, p), shape-preserving."""
        rho, m, en = np.asarray(u, dtype=float)
        vel = m / rho
        p = (self.gamma - 1.0) * (en - 0.5 * m * vel)
        return np.stack([rho, vel, p])

    def conserved(self, w):
        rho, vel, p = np.asarray(w, dtype=float)
        en = p / (self.gamma - 1.0) + 0.5 * rho * vel * vel
        return np.stack([rho, rho * vel, en])

    def pressure(self, u):
        rho, m, en = np.asarray(u, dtype=float)
        return (self.gamma - 1.0) * (en - 0.5 * m * m / rho)

    def flux(self, u):
        rho, m, en = np.asarray(u, dtype=float)
        vel = m / rho
        p = (self.gamma - 1.0) * (en - 0.5 * m * vel)
        return np.stack([m, m * vel + p, vel * (en + p)])

    def max_speed_x(self, u):
        rho, m, en = np.asarray(u, dtype=float)
        p = (self.gamma - 1.0) * (en - 0.5 * m * m / rho)
        if (rho <= 0).any() or (p <= 0).any():
            raise ValueError("inadmissible state in wave-speed bound "
                             "(non-positive density or pressure)")
        c = np.sqrt(self.gamma * p / rho)
        return float((np.abs(m / rho) + c).max())

    def admissible(self, u):
        rho = np.asarray(u[0], dtype=float)
        p = self.pressure(u)
        return (rho >= self.eps) & (p >= self.eps)

    def eig_x(self, w):
        """Left/right eigenvector matrices of df/du at primitive states w.

        w has shape (3, n); returns (L, R) with shape (n, 3, 3) and
        L @ R = I.
        """
        rho, vel, p = (np.asarray(a, dtype=float) for a in w)
        g = self.gamma
        c = np.sqrt(g * p / rho)
        en = p / (g - 1.0) + 0.5 * rho * vel * vel
        big_h = (en + p) / rho
        n = rho.shape[-1] if rho.ndim else 1
        rho, vel, p, c, big_h = (np.broadcast_to(a, (n,))
                                 for a in (rho, vel, p, c, big_h))
        one = np.ones(n)
        right = np.empty((n, 3, 3))
        right[:, 0] = np.stack([one, one, one], axis=-1)
        right[:, 1] = np.stack([vel - c, vel, vel + c], axis=-1)
        right[:, 2] = np.stack([big_h - vel * c, 0.5 * vel * vel,
                                big_h + vel * c], axis=-1)
        b2 = (g - 1.0) / (c * c)
        b1 = 0.5 * b2 * vel * vel
        left = np.empty((n, 3, 3))
        left[:, 0, 0] = 0.5 * (b1 + vel / c)
        left[:, 0, 1] = -0.5 * (b2 * vel + 1.0 / c)
        left[:, 0, 2] = 0.5 * b2
        left[:, 1, 0] = 1.0 - b1
        left[:, 1, 1] = b2 * vel
        left[:, 1, 2] = -b2
        left[:, 2, 0] = 0.5 * (b1 - vel / c)
        left[:, 2, 1] = -0.5 * (b2 * vel - 1.0 / c)
        left[:, 2, 2] = 0.5 * b2
        return left, right


class Euler2D:
    """2D compressible Euler equations, conserved variables (rho, mx, my, E)."""

    ncomp = 4

    def __init__(self, gamma=1.4, eps=EPS_G):
        self.gamma = float(gamma)
        self.eps = float(eps)

    def primitive(self, u):
        rho, mx, my, en = np.asarray(u, dtype=float)
        ux = mx / rho
        uy = my / rho
        p = (self.gamma - 1.0) * (en - 0.5 * (mx * ux + my * uy))
        return np.stack([rho, ux, uy, p])

    def conserved(self, w):
        rho, ux, uy, p = np.asarray(w, dtype=float)
        en = p / (self.gamma - 1.0) + 0.5 * rho * (ux * ux + uy * uy)
        return np.stack([rho, rho * ux, rho * uy, en])

    def pressure(self, u):
        rho, mx, my, en = np.asarray(u, dtype=float)
        return (self.gamma - 1.0) * (en - 0.5 * (mx * mx + my * my) / rho)

    def flux(self, u):
        rho, mx, my, en = np.asarray(u, dtype=float)
        ux = mx / rho
        p = (self.gamma - 1.0) * (en - 0.5 * (mx * mx + my * my) / rho)
        return np.stack([mx, mx * ux + p, my * ux, ux * (en + p)])

    def flux_y(self, u):
        rho, mx, my, en = np.asarray(u, dtype=float)
        uy = my / rho
        p = (self.gamma - 1.0) * (en - 0.5 * (mx * mx + my * my) / rho)
        return np.stack([my, mx * uy, my * uy + p, uy * (en + p)])

    def _speed(self, u, comp):
        rho, mx, my, en = np.asarray(u, dtype=float)
        p = (self.gamma - 1.0) * (en - 0.5 * (mx * mx + my * my) / rho)
        if (rho <= 0).any() or (p <= 0).any():
            raise ValueError("inadmissible state in wave-speed bound "
                             "(non-positive density or pressure)")
        c = np.sqrt(self.gamma * p / rho)
        m = mx if comp == 0 else my
        return float((np.abs(m / rho) + c).max())

    def max_speed_x(self, u):
        return self._speed(u, 0)

    def max_speed_y(self, u):
        return self._speed(u, 1)

    def admissible(self, u):
        rho = np.asarray(u[0], dtype=float)
        return (rho >= self.eps) & (self.pressure(u) >= self.eps)

    def _eig(self, w, normal):
        rho, ux, uy, p = (np.asarray(a, dtype=float) for a in w)
        g = self.gamma
        c = np.sqrt(g * p / rho)
        q2 = ux * ux + uy * uy
        big_h = c * c / (g - 1.0) + 0.5 * q2
        n = rho.shape[-1] if rho.ndim else 1
        ux, uy, c, q2, big_h = (np.broadcast_to(a, (n,))
                                for a in (ux, uy, c, q2, big_h))
        un = ux if normal == 0 else uy   # wall-normal velocity
        ut = uy if normal == 0 else ux   # transverse velocity
        one, zero = np.ones(n), np.zeros(n)
        # Rows of R indexed by conserved component; the transverse-momentum
        # row trades places between the two directions.
        row_n = np.stack([un - c, un, zero, un + c], axis=-1)
        row_t = np.stack([ut, ut, one, ut], axis=-1)
        right = np.empty((n, 4, 4))
        right[:, 0] = np.stack([one, one, zero, one], axis=-1)
        right[:, 1] = row_n if normal == 0 else row_t
        right[:, 2] = row_t if normal == 0 else row_n
        right[:, 3] = np.stack([big_h - un * c, 0.5 * q2, ut,
                                big_h + un * c], axis=-1)
        b2 = (g - 1.0) / (c * c)
        b1 = 0.5 * b2 * q2
        # Left rows in (rho, m_normal, m_transverse, E) ordering, then the
        # momentum columns are swapped back for the y-direction.
        left = np.empty((n, 4, 4))
        left[:, 0, 0] = 0.5 * (b1 + un / c)
        left[:, 0, 1] = -0.5 * (b2 * un + 1.0 / c)
        left[:, 0, 2] = -0.5 * b2 * ut
        left[:, 0, 3] = 0.5 * b2
        left[:, 1, 0] = 1.0 - b1
        left[:, 1, 1] = b2 * un
        left[:, 1, 2] = b2 * ut
        left[:, 1, 3] = -b2
        left[:, 2, 0] = -ut
        left[:, 2, 1] = zero
        left[:, 2, 2] = one
        left[:, 2, 3] = zero
        left[:, 3, 0] = 0.5 * (b1 - un / c)
        left[:, 3, 1] = -0.5 * (b2 * un - 1.0 / c)
        left[:, 3, 2] = -0.5 * b2 * ut
        left[:, 3, 3] = 0.5 * b2
        if normal == 1:
            left = left[:, :, [0, 2, 1, 3]]
        return left, right

    def eig_x(self, w):
        return self._eig(w, 0)

    def eig_y(self, w):
        return self._eig(w, 1)


class AffineRescaled:
    """Combinator: the state w = lam*u + shift of an inner model's u.

    If u solves u_t + f(u)_x = 0 then w solves w_t + ftilde(w)_x = 0 with
    ftilde(w) = lam*f((w - shift)/lam); wave speeds are unchanged.  Used for
    flux-relabeling invariance checks and unit-rescaled model variants.
    Scalar models only.
    """

    ncomp = 1

    def __init__(self, inner, lam=1.0, shift=0.0):
        if inner.ncomp != 1:
            raise ValueError("AffineRescaled wraps scalar models only")
        self.inner = inner
        self.lam = float(lam)
        self.shift = float(shift)
        self.bounds = None

    def _unmap(self, w):
        return (np.asarray(w, dtype=float) - self.shift) / self.lam

    def flux(self, w):
        return self.lam * self.inner.flux(self._unmap(w))

    def flux_y(self, w):
        return self.lam * self.inner.flux_y(self._unmap(w))

    def max_speed_x(self, w):
        return self.inner.max_speed_x(self._unmap(w))

    def max_speed_y(self, w):
        return self.inner.max_speed_y(self._unmap(w))

    def admissible(self, w):
        return _interval_test(w, self.bounds)


_REGISTRY = {
    "advection": Advection,
    "burgers": Burgers,
    "lwr": LWR,
    "euler1d": Euler1D,
    "euler2d": Euler2D,
}


def make_model(name, **params):
    """Build a model by registry name (advection|burgers|lwr|euler1d|euler2d)."""
    try:
        cls = _REGISTRY[name]
    except KeyError:
        raise ValueError("unknown model %r (choose from %s)"
                         % (name, "|".join(sorted(_REGISTRY)))) from None
    return cls(**params)
