import numpy as np
import pytest

from oehweno import basis
from oehweno.limiters import (BpScalarLimiter, OcadParams, PpEulerLimiter,
                              bp_scaling_limiter_scalar, bp_timestep,
                              gamma_point, make_limiter, ocad_parameters,
                              pp_limiter_euler)
from oehweno.models import EPS_G, Euler1D, Euler2D
from oehweno.quadrature import GAUSS3_NODES, GAUSS3_WEIGHTS


def test_face_weight_at_equal_speeds():
    p = ocad_parameters(0.0)
    assert p.wbar == pytest.approx(2.0 - np.sqrt(14.0) / 2.0, abs=1e-12)


def test_weights_sum_and_positivity():
    rng = np.random.default_rng(1)
    for theta in np.concatenate([[-1.0, 0.0, 1.0], rng.uniform(-1, 1, 20)]):
        p = ocad_parameters(float(theta))
        assert 2.0 * p.wbar + p.w1 + p.w2 == pytest.approx(1.0, abs=1e-14)
        assert min(p.wbar, p.w1, p.w2) >= 0.0
        pts = p.interior_points()
        assert np.all(np.abs(pts) <= 0.5 + 1e-14)
        assert p.interior_weights().sum() == pytest.approx(p.w1 + p.w2,
                                                           abs=1e-15)


def _decomposition_error(params, rng, n_polys):
    g = np.asarray(GAUSS3_NODES)
    gw = np.asarray(GAUSS3_WEIGHTS)
    half = np.full(3, 0.5)
    phi_faces = [basis.eval_2d(x, y, 21) for x, y in
                 ((-half, g), (half, g), (g, -half), (g, half))]
    pts = params.interior_points()
    phi_int = basis.eval_2d(pts[:, 0], pts[:, 1], 21)
    worst = 0.0
    for _ in range(n_polys):
        c = rng.standard_normal(21)
        faces = [gw @ (phi @ c) for phi in phi_faces]
        got = params.average_of(faces, (phi_int[:4] @ c).mean(),
                                (phi_int[4:] @ c).mean())
        worst = max(worst, abs(got - c[0]))
    return worst


@pytest.mark.parametrize("theta", [-1.0, -0.5, 0.0, 0.5, 1.0])
def test_decomposition_identity(theta):
    rng = np.random.default_rng(42)
    err = _decomposition_error(ocad_parameters(theta), rng, 200)
    assert err <= 1e-10


def test_degenerate_theta_matches_lobatto_weight():
    # at |theta| = 1 the decomposition collapses to the one-directional
    # Gauss-Lobatto splitting, so the face weight is the endpoint weight
    for theta in (-1.0, 1.0):
        assert ocad_parameters(theta).wbar == pytest.approx(1.0 / 12.0,
                                                            abs=1e-12)


def test_gamma_point_constant():
    p = ocad_parameters(-0.3)
    faces = (np.float64(2.5),) * 4
    assert gamma_point(np.float64(2.5), faces, p) == pytest.approx(
        2.5, rel=1e-14)


def test_gamma_point_equals_interior_combination():
    rng = np.random.default_rng(3)
    g = np.asarray(GAUSS3_NODES)
    gw = np.asarray(GAUSS3_WEIGHTS)
    half = np.full(3, 0.5)
    for theta in (-0.7, 0.0, 0.4):
        p = ocad_parameters(theta)
        pts = p.interior_points()
        phi_faces = [basis.eval_2d(x, y, 21) for x, y in
                     ((-half, g), (half, g), (g, -half), (g, half))]
        phi_int = basis.eval_2d(pts[:, 0], pts[:, 1], 21)
        for _ in range(50):
            c = rng.standard_normal(21)
            faces = [gw @ (phi @ c) for phi in phi_faces]
            got = gamma_point(c[0], faces, p)
            o1 = (phi_int[:4] @ c).mean()
            o2 = (phi_int[4:] @ c).mean()
            want = (p.w1 * o1 + p.w2 * o2) / (p.w1 + p.w2)
            assert got == pytest.approx(want, abs=1e-10)


def test_gamma_point_matches_straight_line_form():
    rng = np.random.default_rng(5)
    p = ocad_parameters(0.25)
    avg = rng.standard_normal((3, 4))
    faces = tuple(rng.standard_normal((3, 4)) for _ in range(4))
    got = gamma_point(avg, faces, p)
    fl, fr, fb, ft = faces
    want = (avg - p.wbar * (0.5 * (1.0 + p.theta) * (fl + fr)
                            + 0.5 * (1.0 - p.theta) * (fb + ft))) \
        / (1.0 - 2.0 * p.wbar)
    assert np.array_equal(got, want)


def test_bp_timestep_modes():
    assert bp_timestep(1.0, 0.0, 0.1, 0.1, "none") == np.inf
    assert bp_timestep(0.0, 0.0, 0.1, 0.1, "classic") == np.inf
    assert bp_timestep(2.0, 0.0, 0.1, 0.1, "classic") == pytest.approx(
        (1.0 / 12.0) / 20.0, rel=1e-14)
    ratio = bp_timestep(1.0, 1.0, 0.1, 0.1, "ocad") / bp_timestep(
        1.0, 1.0, 0.1, 0.1, "classic")
    assert ratio == pytest.approx(12.0 * (2.0 - np.sqrt(14.0) / 2.0),
                                  rel=1e-12)
    assert ratio == pytest.approx(1.55, abs=0.01)
    # 1D degenerate: the ocad bound continues into the classical one
    assert bp_timestep(2.0, 0.0, 0.1, 0.1, "ocad") == pytest.approx(
        (1.0 / 12.0) / 20.0, rel=1e-10)
    with pytest.raises(ValueError):
        bp_timestep(1.0, 1.0, 0.1, 0.1, "bogus")


def test_bp_scalar_identity_inside():
    vals = np.array([[0.2, 0.4, 0.9], [0.5, 0.5, 0.5]])
    avg = np.array([0.4, 0.5])
    out = bp_scaling_limiter_scalar(vals, avg, (0.0, 1.0))
    np.testing.assert_array_equal(out, vals)


def test_bp_scalar_published_factor():
    # avg 0.5 in [0, 1], point max 2, point min 0.4 -> factor 1/3
    vals = np.array([2.0, 0.4, 0.5])
    out = bp_scaling_limiter_scalar(vals, np.float64(0.5), (0.0, 1.0))
    d = (out - 0.5) / (vals - 0.5 + 1e-300)
    assert d[0] == pytest.approx(1.0 / 3.0, rel=1e-14)
    assert out.max() <= 1.0 + 1e-14


def test_bp_scalar_property_sweep():
    rng = np.random.default_rng(11)
    avg = rng.uniform(0.0, 1.0, size=1000)
    vals = avg[:, None] + rng.standard_normal((1000, 7)) * \
        rng.uniform(0, 3, size=(1000, 1))
    out = bp_scaling_limiter_scalar(vals, avg, (0.0, 1.0))
    assert out.max() <= 1.0 + 1e-14
    assert out.min() >= -1e-14
    # the average sits at the fixed point of the scaling
    again = bp_scaling_limiter_scalar(out, avg, (0.0, 1.0))
    np.testing.assert_allclose(again, out, atol=1e-14)


def test_bp_scalar_rejects_escaped_average():
    with pytest.raises(ValueError, match="average"):
        bp_scaling_limiter_scalar(np.array([0.5]), np.float64(1.5),
                                  (0.0, 1.0))


def _admissible_states(rng, n):
    rho = rng.uniform(0.1, 2.0, n)
    vel = rng.uniform(-3.0, 3.0, n)
    p = rng.uniform(0.1, 2.0, n)
    return Euler1D().conserved(np.stack([rho, vel, p]))


def test_pp_identity_when_admissible():
    rng = np.random.default_rng(13)
    model = Euler1D()
    avg = _admissible_states(rng, 5)
    pts = avg[..., None] + 1e-3 * rng.standard_normal((3, 5, 4))
    assert np.all(model.admissible(pts))
    out = pp_limiter_euler(pts, avg, model)
    np.testing.assert_array_equal(out, pts)


def test_pp_density_stage_factor():
    model = Euler1D()
    avg = np.array([1.0, 0.0, 10.0])
    pts = np.array([[-0.1, 1.0], [0.0, 0.0], [10.0, 10.0]])
    out = pp_limiter_euler(pts, avg, model)
    want = (1.0 - EPS_G) / 1.1  # exact stage-1 factor (up to the margin)
    got = (out[0, 0] - 1.0) / (-0.1 - 1.0)
    assert got == pytest.approx(want, rel=1e-9)
    assert out[0].min() >= EPS_G
    assert np.all(model.admissible(out))


def test_pp_property_sweep_near_vacuum():
    rng = np.random.default_rng(17)
    model = Euler2D()
    n = 400
    rho = rng.uniform(EPS_G, 1.0, n)
    vx = rng.uniform(-5, 5, n)
    vy = rng.uniform(-5, 5, n)
    p = rng.uniform(EPS_G, 1.0, n)
    avg = model.conserved(np.stack([rho, vx, vy, p]))
    pts = avg[..., None] + rng.standard_normal((4, n, 22)) * \
        rng.uniform(0, 5, size=(1, n, 1))
    out = pp_limiter_euler(pts, avg, model)
    assert np.all(model.admissible(out))
    got_avg = out.mean(axis=-1)  # not the real average, just finiteness
    assert np.isfinite(got_avg).all()
    # cell average is the fixed point: plugging it back in reproduces it
    mid = pts.mean(axis=-1)
    out_again = pp_limiter_euler(out, avg, model)
    np.testing.assert_allclose(out_again, out, atol=1e-14)
    del mid


def test_pp_preserves_average_exactly():
    # with symmetric deviations the point mean IS the cell average; the
    # scaling must keep it there to rounding
    rng = np.random.default_rng(19)
    model = Euler1D()
    avg = _admissible_states(rng, 20)
    dev = rng.standard_normal((3, 20, 6)) * 3.0
    dev -= dev.mean(axis=-1, keepdims=True)
    pts = avg[..., None] + dev
    out = pp_limiter_euler(pts, avg, model)
    np.testing.assert_allclose(out.mean(axis=-1), avg, rtol=1e-13,
                               atol=1e-14)


def test_pp_rejects_inadmissible_average():
    model = Euler1D()
    avg = np.array([-1.0, 0.0, 1.0])
    with pytest.raises(ValueError, match="[Ii]nadmissible"):
        pp_limiter_euler(np.zeros((3, 4)), avg, model)


def test_make_limiter():
    model = Euler1D()
    assert make_limiter("none", model) is None
    assert make_limiter(None, model) is None
    bp = make_limiter("bp", model, bounds=(0.0, 1.0))
    assert isinstance(bp, BpScalarLimiter) and not bp.needs_interior
    pp = make_limiter("pp", model)
    assert isinstance(pp, PpEulerLimiter) and pp.needs_interior
    with pytest.raises(ValueError):
        make_limiter("bp", model)
    with pytest.raises(ValueError):
        make_limiter("magic", model)


def test_ocad_params_is_frozen_record():
    p = ocad_parameters(0.0)
    assert isinstance(p, OcadParams)
    with pytest.raises(Exception):
        p.wbar = 0.5
