import math

import numpy as np
import pytest
from scipy import integrate, optimize

from spunbook.contactcheck import (
    BUNDLED_PROFILES,
    DEFAULT_BASEPOINT,
    MARGIN_FLOOR,
    CirclePath,
    CollarProfile,
    GridSpec,
    SampledCollarProfile,
    binding_check,
    binding_model,
    circle_profile,
    collar_min_k,
    constant_profile,
    default_grid,
    path_profile,
    verify_form_positive,
)

RADIUS = 0.5
X0 = DEFAULT_BASEPOINT[0]


def quintic(u):
    u = min(max(u, 0.0), 1.0)
    return 10 * u**3 - 15 * u**4 + 6 * u**5


def plateau(s, b, end, w):
    return quintic((s - b) / w) * quintic((end - s) / w)


def weighted_norm(b, c, w=0.25, tail=0.1):
    end = c - tail
    pts = [b + w, end - w]
    val, _ = integrate.quad(lambda s: math.exp(-s) * plateau(s, b, end, w), b, end, points=pts, epsabs=1e-14, epsrel=1e-13)
    return val


def circle_min_dtB(b, c):
    """min of d_tB for the weighted circle profile, in closed form.

    d_tB = psi(s)/N * (p'(t) x x0). With the basepoint on the x-axis the cross
    product is -2 pi R x0 cos(2 pi t), and psi peaks at 1 on the plateau.
    """
    return -2 * math.pi * RADIUS * X0 / weighted_norm(b, c)


def polar_dtB(p, grid):
    """d_tB by the polar route B = e^s f^2 d_s g, independent of the module's Cartesian one."""
    s, t = p.grid(grid)
    f, g = p.polar(s, t)
    B = np.exp(s)[:, None] * f**2 * np.gradient(g, s, axis=0, edge_order=2)
    return np.gradient(B, t, axis=1, edge_order=2)


def test_grid_spec():
    with pytest.raises(ValueError):
        GridSpec(7, 100)
    with pytest.raises(ValueError):
        GridSpec(9, 9, order=4)
    assert GridSpec(9, 17).refined() == GridSpec(17, 33)
    g = GridSpec.for_length(3.0)
    assert g.n_s % 2 == 1 and g.n_s >= 3 * 128


def test_constant_profile_needs_only_margin():
    p = constant_profile()
    r = collar_min_k(p)
    assert r.min_dtB == 0.0
    assert r.k_star == r.margin == MARGIN_FLOOR
    assert not verify_form_positive(0.0, p).passed
    assert verify_form_positive(r.k_star, p).passed


@pytest.mark.parametrize("basepoint", [(0.4, 0.0), (0.1, -0.3), (-0.5, 0.5)])
def test_t_independent_profiles(basepoint):
    p = constant_profile(0.0, 2.0, basepoint)
    s, t = p.grid(default_grid(p))
    assert np.abs(p.dtB(s, t)).max() == 0.0
    assert collar_min_k(p).k_star == MARGIN_FLOOR


def test_normalisation_against_quadrature():
    for b, c in [(0.0, 1.0), (0.0, 3.0), (0.5, 2.0)]:
        p = circle_profile(b, c)
        assert p._norm == pytest.approx(weighted_norm(b, c), rel=1e-12)
        assert float(p.lam(np.array([c]))[0]) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("b, c", [(0.0, 1.0), (0.0, 3.0), (0.25, 2.0)])
def test_circle_k_star_known_bound(b, c):
    p = circle_profile(b, c)
    r = collar_min_k(p)
    m = -circle_min_dtB(b, c)
    assert r.min_dtB == pytest.approx(-m, rel=1e-9)
    assert r.k_star == pytest.approx(m + r.margin, rel=1e-9)
    assert r.argmin[1] in (0.0, 1.0)


def test_plain_ramp_bound_by_optimisation():
    p = circle_profile(ramp="plain")
    L = p.end - p.b
    res = optimize.minimize_scalar(
        lambda s: -math.exp(s) * 30 * ((s - p.b) / L) ** 2 * ((s - p.b) / L - 1) ** 2 / L,
        bounds=(p.b, p.end),
        method="bounded",
        options={"xatol": 1e-10},
    )
    m = -res.fun * 2 * math.pi * RADIUS * X0
    r = collar_min_k(p)
    # the grid minimum cannot beat the continuous one and sits within a grid cell of it
    assert -r.min_dtB <= m * (1 + 1e-12)
    assert -r.min_dtB == pytest.approx(m, rel=1e-3)


def test_k_minus_two_margins_fails():
    p = circle_profile()
    r = collar_min_k(p)
    assert verify_form_positive(r.k_star, p).passed
    assert not verify_form_positive(r.k_star - 2 * r.margin, p).passed


@pytest.mark.parametrize("name", sorted(BUNDLED_PROFILES))
def test_closed_form_agrees_with_finite_differences(name):
    p = BUNDLED_PROFILES[name]()
    r = collar_min_k(p)
    assert r.closed_form and r.agreement_ok
    assert r.max_disagreement <= r.tolerance


@pytest.mark.parametrize("c, ramp", [(1.0, "weighted"), (1.0, "plain"), (3.0, "weighted")])
def test_polar_route_agrees(c, ramp):
    # every straight segment of this homotopy stays in x >= 0.2, so the angle is smooth
    p = circle_profile(0.0, c, radius=0.2, basepoint=(0.6, 0.0), ramp=ramp)
    grid = default_grid(p)
    s, t = p.grid(grid)
    exact = p.dtB(s, t)
    fd = polar_dtB(p, grid)
    scale = np.abs(exact).max()
    # second order: halving h should cut the error by about four
    fine = polar_dtB(p, grid.refined())[::2, ::2]
    err, err_fine = np.abs(fd - exact).max(), np.abs(fine - exact).max()
    assert err < 2e-2 * scale
    assert err_fine < err / 3


@pytest.mark.parametrize("name", sorted(BUNDLED_PROFILES))
def test_refinement_stability(name):
    p = BUNDLED_PROFILES[name]()
    grid = default_grid(p)
    k1 = collar_min_k(p, grid).k_star
    k2 = collar_min_k(p, grid.refined()).k_star
    assert abs(k2 - k1) / k1 < 0.01


def test_monotone_in_collar_length():
    ks = [collar_min_k(circle_profile(0.0, c)).k_star for c in (1.0, 1.5, 2.0, 3.0, 4.0, 6.0)]
    assert all(a >= b for a, b in zip(ks, ks[1:])), ks
    bounds = [-circle_min_dtB(0.0, c) for c in (1.0, 1.5, 2.0, 3.0, 4.0, 6.0)]
    assert all(a > b for a, b in zip(bounds, bounds[1:]))


def test_g_constant_near_c():
    p = circle_profile(0.0, 2.0)
    s = np.linspace(p.end, p.c, 50)
    assert np.abs(p.lam_prime(s)).max() == 0.0
    _, g = p.polar(s, np.linspace(0, 1, 33))
    assert np.ptp(g, axis=0).max() < 1e-14


def test_orientation_reversal():
    p = circle_profile()
    pos, neg = collar_min_k(p), collar_min_k(p, orientation=-1)
    assert neg.min_dtB == pytest.approx(pos.min_dtB, rel=1e-9)
    assert verify_form_positive(neg.k_star, p, orientation=-1).passed
    with pytest.raises(ValueError):
        collar_min_k(p, orientation=0)


def test_profile_leaving_disk_rejected():
    p = CollarProfile(0.0, 1.0, CirclePath((0.9, 0.0), (-0.2, 0.0)))
    with pytest.raises(ValueError):
        collar_min_k(p)
    with pytest.raises(ValueError):
        CollarProfile(0.0, 0.3, CirclePath((0.4, 0.0), (0.0, 0.0)))


def test_sampled_profile_matches_closed_form():
    p = circle_profile()
    grid = GridSpec(65, 129)
    sampled = SampledCollarProfile.from_profile(p, grid)
    back = SampledCollarProfile.from_json(sampled.to_json())
    assert back == sampled
    r = collar_min_k(back)
    assert not r.closed_form and r.agreement_ok
    exact = collar_min_k(p, GridSpec(257, 513))
    assert r.k_star == pytest.approx(exact.k_star, rel=0.02)


def test_sampled_profile_validation():
    bad = SampledCollarProfile(tuple(range(8)), tuple(range(8)), ((1.5,) * 8,) * 8, ((0.0,) * 8,) * 8)
    with pytest.raises(ValueError):
        collar_min_k(bad)


def test_loop_path_closes_up():
    p = path_profile([(1, "c"), (2, "c'")], 4)
    t = np.array([0.0, 0.5, 1.0])
    x, y = p.path.position(t)
    assert np.allclose(x, X0) and np.allclose(y, 0.0)
    vx, vy = p.path.velocity(t)
    assert np.allclose(vx, 0) and np.allclose(vy, 0)


def test_report_lines_and_json():
    r = collar_min_k(circle_profile())
    text = "\n".join(r.lines())
    assert "k_star" in text and "ok" in text
    data = r.to_json()
    assert data["agreement_ok"] and data["k_star"] == r.k_star


def test_binding_standard_model():
    rep = binding_model("standard")
    assert rep.passed
    r = np.linspace(0.005, 1.0, 200)
    # (2 - r^2)(2r) - r^2(-2r) = 4r, smallest at the first radius
    assert rep.min_coefficient == pytest.approx(4 * r[0], rel=1e-6)


def test_binding_flat_model():
    rep = binding_model("flat")
    assert rep.passed
    assert rep.min_coefficient == pytest.approx(2 * 0.005, rel=1e-6)


def test_binding_reversed_model_fails():
    rep = binding_model("reversed")
    assert not rep.passed
    failed = [n for n, ok, _ in rep.checks if not ok]
    assert "contact" in failed
    assert rep.min_coefficient < 0


def test_binding_input_validation():
    r = np.linspace(0.1, 1, 20)
    with pytest.raises(ValueError):
        binding_check(r[::-1], r, r)
    with pytest.raises(ValueError):
        binding_check(r[:5], r[:5], r[:5])
    rep = binding_check(r, 2 - r**2, r**3)
    assert not dict((n, ok) for n, ok, _ in rep.checks)["h2 = r^2 near 0"]
