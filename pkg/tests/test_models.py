import numpy as np
import pytest

from oehweno import models


def test_burgers_flux_value():
    assert models.Burgers().flux(np.array([2.0]))[0] == 2.0


def test_lwr_flux_continuity_at_breakpoints():
    m = models.LWR()
    # both defining quadratics meet at the breakpoints
    assert -0.4 * 2500.0 + 100.0 * 50.0 == pytest.approx(4000.0)
    assert -0.1 * 2500.0 + 15.0 * 50.0 + 3500.0 == pytest.approx(4000.0)
    for b in (50.0, 100.0):
        below = m.flux(np.array([b - 1e-9]))[0]
        above = m.flux(np.array([b + 1e-9]))[0]
        assert abs(below - above) < 1e-5  # O(f' * 1e-9)
        assert m.flux(np.array([b]))[0] == pytest.approx(4000.0, abs=1e-12)


def test_lwr_clamp_counts_events():
    m = models.LWR()
    m.flux(np.array([10.0, 60.0, 200.0]))
    assert m.clamp_events == 0
    m.flux(np.array([-1.0, 351.0, 20.0]))
    assert m.clamp_events == 2
    # clamped values reproduce the endpoint fluxes
    np.testing.assert_allclose(m.flux(np.array([-5.0])), m.flux(np.array([0.0])))


def test_euler1d_flux_value():
    m = models.Euler1D()
    u = m.conserved(np.array([[1.0], [1.0], [1.0]]))
    assert u[2, 0] == pytest.approx(3.0)
    np.testing.assert_allclose(m.flux(u)[:, 0], [1.0, 2.0, 4.0], rtol=1e-14)


def test_max_speed_trivial():
    assert models.Advection(speed=1.0).max_speed_x(np.zeros((1, 5))) == 1.0
    assert models.Burgers().max_speed_x(np.array([[-1.0, 3.0]])) == 3.0


def test_lwr_max_speed_piecewise():
    m = models.LWR()
    # |f'| maxima per piece: 100 at u=0, 5 at 50/100, 22 at 350
    assert m.max_speed_x(np.array([[0.0, 350.0]])) == pytest.approx(100.0)
    assert m.max_speed_x(np.array([[350.0]])) == pytest.approx(0.048 * 350 + 5.2)


def _random_admissible_1d(rng, n):
    rho = rng.uniform(0.1, 5.0, n)
    vel = rng.uniform(-3.0, 3.0, n)
    p = rng.uniform(0.1, 5.0, n)
    return np.stack([rho, vel, p])


def _random_admissible_2d(rng, n):
    rho = rng.uniform(0.1, 5.0, n)
    ux = rng.uniform(-3.0, 3.0, n)
    uy = rng.uniform(-3.0, 3.0, n)
    p = rng.uniform(0.1, 5.0, n)
    return np.stack([rho, ux, uy, p])


def test_euler_roundtrip_identity():
    rng = np.random.default_rng(3)
    m1 = models.Euler1D()
    w = _random_admissible_1d(rng, 200)
    np.testing.assert_allclose(m1.primitive(m1.conserved(w)), w,
                               rtol=1e-13, atol=1e-13)
    m2 = models.Euler2D(gamma=5.0 / 3.0)
    w2 = _random_admissible_2d(rng, 200)
    np.testing.assert_allclose(m2.primitive(m2.conserved(w2)), w2,
                               rtol=1e-13, atol=1e-13)


def test_euler_max_speed_matches_eigenvalue_scan():
    rng = np.random.default_rng(7)
    m = models.Euler1D()
    w = _random_admissible_1d(rng, 64)
    u = m.conserved(w)
    # brute force: max |vel| + c over the states, one cell at a time
    best = 0.0
    for k in range(64):
        rho, vel, p = w[:, k]
        best = max(best, abs(vel) + np.sqrt(1.4 * p / rho))
    assert m.max_speed_x(u) == best


def test_euler_max_speed_rejects_vacuum():
    m = models.Euler1D()
    u = m.conserved(np.array([[1.0, 1.0], [0.0, 0.0], [1.0, -1.0]]))
    with pytest.raises(ValueError):
        m.max_speed_x(u)


def test_admissible_floor_semantics():
    m = models.Euler1D()
    ok = m.conserved(np.array([[1.0], [0.0], [1.0]]))
    assert m.admissible(ok).all()
    bad_p = np.array([[1.0], [0.0], [-1.0]])  # E < 0 => p < 0
    assert not m.admissible(bad_p).any()
    thin = m.conserved(np.array([[models.EPS_G / 2], [0.0], [1.0]]))
    assert not m.admissible(thin).any()


def _num_jacobian(f, u0, h=1e-6):
    n = u0.size
    jac = np.empty((n, n))
    for k in range(n):
        d = np.zeros(n)
        d[k] = h * max(1.0, abs(u0[k]))
        jac[:, k] = (f((u0 + d)[:, None])[:, 0]
                     - f((u0 - d)[:, None])[:, 0]) / (2 * d[k])
    return jac


def test_euler1d_eigenvectors():
    rng = np.random.default_rng(11)
    m = models.Euler1D()
    w = _random_admissible_1d(rng, 50)
    left, right = m.eig_x(w)
    eye = np.einsum("nij,njk->nik", left, right)
    np.testing.assert_allclose(eye, np.broadcast_to(np.eye(3), eye.shape),
                               atol=1e-12)
    # R^-1 A R diagonal with the expected eigenvalues
    for k in range(0, 50, 7):
        u0 = m.conserved(w[:, k])
        jac = _num_jacobian(m.flux, u0)
        lam = left[k] @ jac @ right[k]
        rho, vel, p = w[:, k]
        c = np.sqrt(1.4 * p / rho)
        np.testing.assert_allclose(np.diag(lam), [vel - c, vel, vel + c],
                                   rtol=1e-6)
        off = lam - np.diag(np.diag(lam))
        assert np.abs(off).max() < 1e-5 * max(1.0, abs(vel) + c)


@pytest.mark.parametrize("direction", ["x", "y"])
def test_euler2d_eigenvectors(direction):
    rng = np.random.default_rng(13)
    m = models.Euler2D()
    w = _random_admissible_2d(rng, 50)
    left, right = (m.eig_x if direction == "x" else m.eig_y)(w)
    eye = np.einsum("nij,njk->nik", left, right)
    np.testing.assert_allclose(eye, np.broadcast_to(np.eye(4), eye.shape),
                               atol=1e-12)
    fl = m.flux if direction == "x" else m.flux_y
    for k in range(0, 50, 7):
        u0 = m.conserved(w[:, k])
        jac = _num_jacobian(fl, u0)
        lam = left[k] @ jac @ right[k]
        rho, ux, uy, p = w[:, k]
        un = ux if direction == "x" else uy
        c = np.sqrt(1.4 * p / rho)
        np.testing.assert_allclose(np.diag(lam), [un - c, un, un, un + c],
                                   rtol=1e-6, atol=1e-7)
        off = lam - np.diag(np.diag(lam))
        assert np.abs(off).max() < 1e-5 * max(1.0, abs(un) + c)


def test_euler_flux_homogeneity():
    # f(lam*U) = lam*f(U): the basis for conserved-variable relabelings
    rng = np.random.default_rng(17)
    m = models.Euler1D()
    u = m.conserved(_random_admissible_1d(rng, 30))
    for lam in (1e-7, 1.0, 1e7):
        np.testing.assert_allclose(m.flux(lam * u), lam * m.flux(u),
                                   rtol=1e-13)


def test_affine_rescaled_flux_relation():
    rng = np.random.default_rng(19)
    inner = models.Burgers()
    for lam, shift in ((10.0, 0.0), (0.1, 0.0), (2.0, -3.0)):
        wrapped = models.AffineRescaled(inner, lam=lam, shift=shift)
        u = rng.uniform(-2.0, 2.0, (1, 40))
        w = lam * u + shift
        np.testing.assert_allclose(wrapped.flux(w), lam * inner.flux(u),
                                   rtol=1e-13, atol=1e-13)
        assert wrapped.max_speed_x(w) == pytest.approx(
            inner.max_speed_x(u), rel=1e-13)


def test_scalar_interval_admissibility():
    m = models.Burgers()
    assert m.admissible(np.array([123.0])).all()  # unbounded by default
    m.bounds = (0.0, 1.0)
    got = m.admissible(np.array([-0.1, 0.0, 0.5, 1.0, 1.1]))
    np.testing.assert_array_equal(got, [False, True, True, True, False])


def test_make_model_registry():
    assert isinstance(models.make_model("burgers"), models.Burgers)
    assert models.make_model("euler1d", gamma=1.6).gamma == 1.6
    with pytest.raises(ValueError):
        models.make_model("mhd")
