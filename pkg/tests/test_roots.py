import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import interlacing_pairs
from hbdisks.errors import ComplexRootDetected
from hbdisks.polynomial import ComplexPolynomial, InterlacingPair, RealPolynomial, wronskian
from hbdisks.roots import (
    complex_roots,
    hb_roots,
    hb_roots_polar,
    pencil_roots,
    real_roots_sorted,
    verify_interlacing,
    wronskian_roots,
)


def test_real_roots_examples(fig1):
    np.testing.assert_allclose(real_roots_sorted(RealPolynomial([-1, 0, 1])), [-1, 1])
    np.testing.assert_allclose(real_roots_sorted(fig1.p), [-4, -3, 0, 2], atol=1e-12)
    np.testing.assert_allclose(real_roots_sorted(fig1.q), [-3.5, -1, 1], atol=1e-12)
    with pytest.raises(ComplexRootDetected):
        real_roots_sorted(RealPolynomial([1, 0, 1]))


def test_verify_interlacing_examples(fig1):
    assert verify_interlacing(RealPolynomial([-1, 0, 1]), RealPolynomial([0, 1]))
    assert verify_interlacing(fig1.p, fig1.q)
    chk = verify_interlacing(RealPolynomial([-1, 0, 1]), RealPolynomial([-2, 1]))
    assert not chk
    assert "q_1=2 not in (p_1,p_2)" in chk.diagnostic


def test_complex_roots_examples(fig1):
    rs = complex_roots(RealPolynomial([1, 0, 1]))
    np.testing.assert_allclose(sorted(rs.roots, key=lambda z: z.imag), [-1j, 1j], atol=1e-14)
    w = wronskian_roots(fig1).roots
    assert w.size == 6
    assert np.all(np.abs(w.imag) > 1e-3)
    assert np.allclose(np.sort_complex(w), np.sort_complex(np.conj(w)))


def test_triple_root_cluster():
    rs = complex_roots(RealPolynomial.from_roots([1.0, 1.0, 1.0]))
    clusters = rs.clusters()
    assert len(clusters) == 1
    center, mult = clusters[0]
    assert mult == 3
    assert abs(center - 1) < 1e-4


def test_rootset_json():
    d = complex_roots(RealPolynomial([1, 0, 1])).to_dict()
    assert d["roots"] == [[0.0, -1.0], [0.0, 1.0]]
    assert set(d) == {"roots", "residual", "iterations"}


def test_pencil_examples(quad, fig1):
    np.testing.assert_array_equal(pencil_roots(fig1, 0.0), fig1.p_roots)
    s5 = np.sqrt(5)
    np.testing.assert_allclose(pencil_roots(quad, 1.0), [(-1 - s5) / 2, (-1 + s5) / 2], atol=1e-14)


def test_pencil_limits(fig1):
    # p + alpha*q has a root near -alpha, so the p_j -> q_j limit is alpha -> -inf
    r = pencil_roots(fig1, -1e6)
    assert np.all(np.abs(r[:-1] - fig1.q_roots) < 1e-3)
    assert r[-1] > 1e5
    r = pencil_roots(fig1, 1e6)
    assert np.all(np.abs(r[1:] - fig1.q_roots) < 1e-3)
    assert r[0] < -1e5


def test_hb_examples(fig1):
    assert np.all(hb_roots(fig1, -4j).roots.imag > 0)
    assert np.all(hb_roots(fig1, 4j).roots.imag < 0)
    np.testing.assert_allclose(np.sort(hb_roots(fig1, 0).roots.real), fig1.p_roots, atol=1e-12)


def test_hb_polar_solves_equation(fig1):
    z = hb_roots_polar(fig1, 0.7, -1.1).roots
    np.testing.assert_allclose(fig1.R(z), 0.7 * np.exp(-1.1j), rtol=1e-9)


@given(interlacing_pairs(min_k=3), st.lists(st.floats(-10, 10), min_size=20, max_size=20))
def test_pencil_interlaces_q(pair, alphas):
    for a in alphas:
        r = pencil_roots(pair, a)
        assert r.size == pair.k
        merged = np.sort(np.concatenate([r, pair.q_roots]))
        # alternation: p(alpha) roots at even positions (alpha < 0) or odd ones
        is_p = np.isin(merged, r)
        if a != 0:
            assert np.all(is_p[:-1] != is_p[1:]) or np.all(np.diff(merged) > 0)
            assert np.all(np.diff(merged) > 0)


@given(interlacing_pairs(), st.floats(0.01, 100), st.floats(-np.pi, np.pi))
def test_hb_half_plane(pair, mag, ang):
    lam = mag * np.exp(1j * ang)
    if abs(lam.imag) < 1e-3:
        return
    z = hb_roots(pair, lam).roots
    if lam.imag < 0:
        assert np.all(z.imag > pair.tol)
    else:
        assert np.all(z.imag < -pair.tol)


@given(st.integers(2, 10), st.integers(0, 2**31))
def test_roots_from_roots_identity(n, seed):
    rng = np.random.default_rng(seed)
    z = rng.uniform(-3, 3, n) + 1j * rng.uniform(-3, 3, n)
    d = np.abs(z[:, None] - z[None, :]) + np.eye(n) * 10
    if d.min() < 0.05:
        return
    got = complex_roots(ComplexPolynomial.from_roots(z)).roots
    for w in z:
        assert np.min(np.abs(got - w)) < 1e-8


@given(interlacing_pairs())
def test_real_input_conjugation_closed(pair):
    w = wronskian_roots(pair).roots
    for z in w:
        assert np.min(np.abs(w - np.conj(z))) < 1e-9 * max(1.0, abs(z))


@given(interlacing_pairs())
def test_root_count_matches_degree(pair):
    assert len(wronskian_roots(pair)) == wronskian(pair.p, pair.q).degree == 2 * pair.k - 2
