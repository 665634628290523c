import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import interlacing_pairs
from hbdisks.errors import NotInterlacing
from hbdisks.polynomial import RealPolynomial, wronskian
from hbdisks.wronski import (
    NormalizedPair,
    PositivePolynomial,
    chebyshev_seed,
    invert_from_json,
    invert_wronskian,
    is_in_pol,
)


def test_is_in_pol_examples(fig1):
    assert is_in_pol(RealPolynomial([1, 0, 1]))
    assert not is_in_pol(RealPolynomial([-1, 0, 1]))
    assert not is_in_pol(RealPolynomial([1, 0, 2]))  # not monic
    assert not is_in_pol(RealPolynomial([1, 1, 1, 1]))  # odd degree
    npair = NormalizedPair.from_pair(fig1)
    assert is_in_pol(wronskian(npair.p, npair.q))
    with pytest.raises(ValueError):
        PositivePolynomial(RealPolynomial([-1, 0, 1]))


def test_normalized_pair_shape(fig1):
    npair = NormalizedPair.from_pair(fig1)
    assert npair.k == 4
    assert npair.p.coeffs[-2] == pytest.approx(0.0, abs=1e-12)
    npair.check()
    with pytest.raises(NotInterlacing):
        NormalizedPair([-1.0], [2.0]).check()


def test_quadratic_exact():
    out = invert_wronskian(RealPolynomial([1, 0, 1]), 2)
    np.testing.assert_allclose(out.a, [-1.0], atol=1e-8)
    np.testing.assert_allclose(out.b, [0.0], atol=1e-8)


def test_seed_interlaces():
    u = RealPolynomial.from_roots([1 + 2j, 1 - 2j, -3 + 1j, -3 - 1j]).coeffs.real
    seed = chebyshev_seed(RealPolynomial(u), 3)
    seed.check()
    assert wronskian(seed.p, seed.q).coeffs[0] == pytest.approx(u[0])


def test_near_real_root_pair_converges():
    u = RealPolynomial(RealPolynomial.from_roots([1 + 1e-3j, 1 - 1e-3j, -1 + 2j, -1 - 2j]).coeffs.real)
    out, stats = invert_wronskian(u, return_stats=True)
    w = wronskian(out.p, out.q)
    np.testing.assert_allclose(w.coeffs, u.coeffs, rtol=1e-6, atol=1e-9)
    assert stats.steps > 0


def test_wrong_k_rejected():
    with pytest.raises(ValueError):
        invert_wronskian(RealPolynomial([1, 0, 1]), 3)
    with pytest.raises(ValueError):
        invert_wronskian(RealPolynomial([-1, 0, 1]))


def test_json_interface():
    out = invert_from_json(json.dumps({"u": {"coeffs": [1, 0, 1]}, "k": 2}))
    assert out["pair"]["a"] == pytest.approx([-1.0])
    assert set(out["path"]) >= {"steps", "rejected", "max_condition"}


@given(interlacing_pairs(max_k=8))
def test_forward_containment(pair):
    npair = NormalizedPair.from_pair(pair)
    w = wronskian(npair.p, npair.q)
    assert w.degree == 2 * pair.k - 2
    assert w.leading == pytest.approx(1.0)
    assert is_in_pol(w)
    x = np.linspace(-30, 30, 6001)
    assert np.all(w(x) > 0)


@settings(max_examples=20)
@given(interlacing_pairs(min_k=2, max_k=5, min_gap=0.2))
def test_round_trip(pair):
    npair = NormalizedPair.from_pair(pair)
    out, stats = invert_wronskian(wronskian(npair.p, npair.q), return_stats=True)
    ref = np.concatenate([npair.a, npair.b])
    got = np.concatenate([out.a, out.b])
    assert np.all(np.abs(got - ref) <= 1e-5 * np.maximum(1.0, np.abs(ref)))
    assert np.isfinite(stats.max_condition)
