import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import interlacing_pairs
from hbdisks.analysis import (
    abs_R_squared_in_w,
    convexity_check,
    critical_values,
    disk,
    half_circle_point,
    imag_sign_check,
    level_curve_classify,
    level_curve_sweep,
    min_modulus_on_halfcircle,
    normalize_at_disk,
    phi,
    psi_map,
    psi_term_derivative,
    re_R_monotonicity,
)
from hbdisks.errors import FlatMinimum


def test_w_form_quadratic(quad):
    f = abs_R_squared_in_w(quad, 1, normalized=True)
    np.testing.assert_allclose(f.numerator_factors, [[0.0, 1.0]])
    np.testing.assert_allclose(f.denominator_factors, [[-1.0, 4.0], [1.0, 0.0]])
    w = np.linspace(0.1, 3.9, 20)
    np.testing.assert_allclose(f(w), 1 / (w * (4 - w)))
    assert f(2.0) == pytest.approx(0.25)
    assert abs(quad.R(1j)) ** 2 == pytest.approx(0.25)
    assert f(1e-12) > 1e10


def test_psi_map_examples():
    assert psi_map(1.0) == 0.0
    assert psi_map(-1.0) == 4.0
    assert psi_map(2.0) == -0.5
    with pytest.raises(ZeroDivisionError):
        psi_map(0.0)


def test_convexity_examples(quad, fig7):
    assert convexity_check(quad, 1).convex
    x = np.linspace(-0.99, 0.99, 50)
    np.testing.assert_allclose(phi(quad, 1, x), 1 / (4 * (1 - x**2)), atol=1e-10)
    assert convexity_check(fig7, 2).convex
    with pytest.raises(ValueError):
        convexity_check(quad, 1, n_grid=8)


def test_min_modulus_examples(quad, fig7):
    m, P = min_modulus_on_halfcircle(quad, 1)
    assert m == pytest.approx(0.5, abs=1e-8)
    assert abs(P - 1j) < 1e-6
    m, P = min_modulus_on_halfcircle(fig7, 2)
    assert m > 0 and P.imag > 0.1
    assert phi(fig7, 2, P.real) == pytest.approx(m**2, abs=1e-12)


def test_min_below_critical_values_over_disks(fig1, fig7, quad):
    # the form that holds; the per-disk strict reading fails on fig7 (see README)
    for pair in (fig1, fig7, quad):
        ms = [min_modulus_on_halfcircle(pair, j).m for j in range(1, pair.k)]
        assert min(ms) <= np.min(np.abs(critical_values(pair))) + 1e-7


def test_fig7_disk2_m_above_least_critical_modulus(fig7):
    m2 = min_modulus_on_halfcircle(fig7, 2).m
    assert m2 > np.min(np.abs(critical_values(fig7)))


def test_flat_minimum_signalled():
    from hbdisks.polynomial import InterlacingPair

    # a degenerate-looking pair is not flat; a monkeypatched constant phi is
    pair = InterlacingPair.from_roots([-1, 1], [0])
    import hbdisks.analysis as an

    orig = an.phi
    an.phi = lambda p, j, x: np.ones_like(np.asarray(x, dtype=float))
    try:
        with pytest.raises(FlatMinimum) as ei:
            min_modulus_on_halfcircle(pair, 1)
        assert ei.value.midpoint == 0.0
    finally:
        an.phi = orig


def test_monotonicity_examples(quad, fig1, fig7):
    rep = re_R_monotonicity(quad, 1)
    assert rep.constant and not rep.monotone_decreasing
    assert abs(quad.R(np.exp(0.7j)).real) < 1e-15
    for pair in (fig1, fig7):
        for j in range(1, pair.k):
            assert re_R_monotonicity(pair, j).monotone_decreasing


def test_psi_term_derivative_negative():
    rng = np.random.default_rng(3)
    for _ in range(20):
        pole = rng.uniform(1.01, 10)
        x = rng.uniform(-1, 1)
        d = psi_term_derivative(0.3, pole, x)
        assert d < 0
        h = 1e-6
        f = lambda t: 0.3 * (t - pole) / ((t - pole) ** 2 + 1 - t**2)
        assert d == pytest.approx((f(x + h) - f(x - h)) / (2 * h), rel=1e-5)


def test_normalized_disk_matches_R(fig1):
    for j in range(1, fig1.k):
        nd = normalize_at_disk(fig1, j)
        a, b, c, d = nd.transform
        z = np.array([0.3 + 0.2j, -1.7 + 0.9j])
        w = (a * z + b) / (c * z + d)
        np.testing.assert_allclose(nd.R(w), fig1.R(z), rtol=1e-9)
        assert nd.poles[0] == -1 and nd.poles[1] == 1
        assert np.all(nd.poles[2:] > 1)
        assert np.all(nd.residues > 0)


def test_level_curve_examples(quad, fig7):
    assert level_curve_classify(quad, 1, 0.25).classification == "single-oval"
    assert level_curve_classify(quad, 1, 1.0).classification == "two-arcs"
    assert level_curve_classify(quad, 1, 0.5 * (1 + 1e-4)).classification == "tangent"
    sweep = level_curve_sweep(fig7, 2, [0.3, 0.6, 0.9, 1.0, 1.2, 2.0, 5.0])
    assert [r.classification for r in sweep] == ["single-oval"] * 3 + ["tangent"] + ["two-arcs"] * 3
    assert all(r.real_crossings == 2 for r in sweep if r.classification != "tangent")


def test_level_curve_report_fields(fig7):
    rep = level_curve_classify(fig7, 2, 0.1, grid=128)
    assert rep.to_dict()["component_count"] == 1
    with pytest.raises(ValueError):
        level_curve_classify(fig7, 2, 0.0)


@given(interlacing_pairs(), st.integers(0, 2**31))
def test_stewart_consistency(pair, seed):
    rng = np.random.default_rng(seed)
    for j in range(1, pair.k):
        d = disk(pair, j)
        x = rng.uniform(d.left + 1e-3 * d.radius, d.right - 1e-3 * d.radius, 50)
        z = half_circle_point(pair, j, x)
        exact = pair.abs_R_squared(z)
        for normalized in (False, True):
            f = abs_R_squared_in_w(pair, j, normalized)
            np.testing.assert_allclose(f(f.w_of(z)), exact, rtol=1e-8)
            np.testing.assert_allclose(f(f.w_of_x(x)), exact, rtol=1e-8)


@given(interlacing_pairs(min_k=2, max_k=2))
def test_convexity_degree_two(pair):
    assert convexity_check(pair, 1).convex


def test_convexity_counterexample():
    import mpmath as mp

    from hbdisks.polynomial import InterlacingPair

    pair = InterlacingPair.from_roots([0.0, 1.25, 2.375], [1.0, 1.375])
    rep = convexity_check(pair, 1)
    assert not rep.convex
    # independent oracle: second derivative of |R|^2 on the half-circle at 40 digits
    mp.mp.dps = 40
    c = r = mp.mpf("0.625")

    def Phi(x):
        z = mp.mpc(x, mp.sqrt(r**2 - (x - c) ** 2))
        v = abs(z - 1) ** 2 * abs(z - mp.mpf("1.375")) ** 2
        return v / (abs(z) ** 2 * abs(z - mp.mpf("1.25")) ** 2 * abs(z - mp.mpf("2.375")) ** 2)

    assert mp.diff(Phi, mp.mpf("1.08"), 2) < -0.02
    assert convexity_check(pair, 2).convex


@given(interlacing_pairs())
def test_phi_unimodal(pair):
    for j in range(1, pair.k):
        d = disk(pair, j)
        x = np.linspace(d.left, d.right, 4001)[1:-1]
        s = np.sign(np.diff(phi(pair, j, x)))
        assert np.count_nonzero(np.diff(s[s != 0])) <= 1


@given(interlacing_pairs())
def test_monotonicity_property(pair):
    for j in range(1, pair.k):
        rep = re_R_monotonicity(pair, j)
        if pair.k == 2:
            assert rep.constant
        else:
            assert rep.monotone_decreasing


@given(interlacing_pairs(min_k=3, max_k=6))
def test_unique_minimizer(pair):
    for j in range(1, pair.k):
        m, P = min_modulus_on_halfcircle(pair, j)
        assert abs(phi(pair, j, P.real) - m * m) < pair.tol
        d = disk(pair, j)
        x = np.linspace(d.left, d.right, 2001)[1:-1]
        f = phi(pair, j, x)
        # a single run of descents followed by a single run of ascents
        s = np.sign(np.diff(f))
        assert np.count_nonzero(np.diff(s[s != 0])) <= 1


@given(interlacing_pairs(), st.integers(0, 2**31))
def test_upper_half_plane_maps_down(pair, seed):
    assert imag_sign_check(pair, seed=seed)
