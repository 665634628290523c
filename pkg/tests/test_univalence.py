import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import interlacing_pairs
from hbdisks.analysis import disk
from hbdisks.errors import BoundaryHit
from hbdisks.geometry import Disk, omega_region
from hbdisks.polynomial import InterlacingPair, mobius_pencil
from hbdisks.roots import hb_roots
from hbdisks.univalence import (
    boundary_loop_simple,
    certify_univalent,
    maximality_witness,
    outer_complement_count,
    preimage_count,
)


def roots_inside(pair, dsk, c):
    """Oracle: solutions of q = c p counted directly."""
    z = hb_roots(pair, -1.0 / c).roots if c != 0 else pair.q_roots.astype(complex)
    return int(np.sum(dsk.margin(z) > 0))


def test_preimage_examples(quad, fig1):
    unit = Disk(0.0, 1.0)
    # c = 10i puts both solutions of z = 10i(z^2 - 1) on the unit circle
    with pytest.raises(BoundaryHit):
        preimage_count(quad, unit, 10j)
    assert preimage_count(quad, unit, 1 + 10j) == 1 == roots_inside(quad, unit, 1 + 10j)
    for j in range(1, fig1.k):
        assert preimage_count(fig1, disk(fig1, j), 0.0) == 1
    for T in (10.0, 100.0, 1000.0):
        d = disk(fig1, 2)
        assert preimage_count(fig1, d, -1j * T) == 0 == roots_inside(fig1, d, -1j * T)


def test_certify_examples(quad, fig1):
    assert certify_univalent(quad, Disk(0.0, 1.0)).verdict == "univalent"
    for j in range(1, fig1.k):
        rep = certify_univalent(fig1, disk(fig1, j))
        assert rep.verdict == "univalent"
        assert rep.max_preimage_count == 1
        assert rep.n_probes >= 64
    big = certify_univalent(fig1, disk(fig1, 2).scaled(1.05))
    assert big.verdict == "not-univalent"
    z1, z2 = big.witness
    assert abs(z1 - z2) > 10 * fig1.tol
    assert big.disk.margin(z1) > 0 and big.disk.margin(z2) > 0
    assert big.witness_image_gap <= 1e-8
    assert big.to_dict()["verdict"] == "not-univalent"


def test_boundary_loop_examples(fig7, quad):
    rep = boundary_loop_simple(fig7, 2)
    assert rep.simple and rep.im_negative and not rep.degenerate
    rep = boundary_loop_simple(quad, 1)
    assert rep.degenerate and rep.im_negative
    assert rep.endpoints_are_poles


def test_boundary_ray_closed_form(quad):
    t = np.linspace(0.1, np.pi - 0.1, 50)
    np.testing.assert_allclose(quad.R(np.exp(1j * t)), -0.5j / np.sin(t), rtol=1e-12)


def test_maximality_examples(fig1, quad):
    w = maximality_witness(fig1, 2)
    assert w.boundary_points == (-3.0, 0.0)
    z1, z2 = w.interior_pair
    assert abs(fig1.R(z1) - fig1.R(z2)) < 1e-8 * abs(fig1.R(z1))
    w = maximality_witness(quad, 1)
    z1, z2 = w.interior_pair
    # R(z) = R(-1/z) for this pair: the collision is symmetric under z -> -1/z
    assert z1 * z2 == pytest.approx(-1.0)
    assert w.to_dict()["boundary_image"] == "inf"


@settings(max_examples=8)
@given(interlacing_pairs(min_k=3, max_k=6, min_gap=0.2))
def test_univalent_and_maximal(pair):
    for j in range(1, pair.k):
        d = disk(pair, j)
        assert certify_univalent(pair, d).verdict == "univalent"
        big = certify_univalent(pair, d.scaled(1.05))
        assert big.verdict == "not-univalent"
        assert big.witness_image_gap <= 1e-8


@settings(max_examples=15)
@given(interlacing_pairs(min_k=2, max_k=6, min_gap=0.2), st.floats(-3, 3), st.floats(0.05, 3))
def test_region_counts_total_k(pair, re, im):
    c = complex(re, -im)
    counts = [preimage_count(pair, disk(pair, j), c) for j in range(1, pair.k)]
    outer = outer_complement_count(pair, c)
    sols = hb_roots(pair, -1.0 / c).roots
    region = omega_region(pair)
    in_omega = int(np.sum(region.margin(sols) > 0))
    assert all(n <= 1 for n in counts) and outer <= 1
    assert sum(counts) + outer + in_omega == pair.k


@given(interlacing_pairs(min_k=3))
def test_boundary_loop_simple_property(pair):
    for j in range(1, pair.k):
        rep = boundary_loop_simple(pair, j)
        assert rep.simple and not rep.degenerate and rep.im_negative


@given(interlacing_pairs(min_k=2, max_k=2))
def test_boundary_loop_degenerate_for_degree_two(pair):
    assert boundary_loop_simple(pair, 1).degenerate


@settings(max_examples=6)
@given(interlacing_pairs(min_k=3, max_k=5, min_gap=0.2), st.floats(0.2, 3), st.floats(-3, 3), st.floats(0.2, 3))
def test_mobius_invariance_of_verdict(pair, a, b, d):
    p, q = mobius_pencil(pair, (a, b, 0.0, d))
    moved = InterlacingPair.from_polynomials(p, q)
    for j in (1, pair.k - 1):
        for dsk in (disk(pair, j), disk(pair, j).scaled(1.05)):
            v0 = certify_univalent(pair, dsk).verdict
            v1 = certify_univalent(moved, dsk).verdict
            if "inconclusive" not in (v0, v1):
                assert v0 == v1
