import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hbdisks.instances import fig1_pair, fig7_pair, quadratic_pair
from hbdisks.polynomial import InterlacingPair

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def fig1():
    return fig1_pair()


@pytest.fixture
def fig7():
    return fig7_pair()


@pytest.fixture
def quad():
    return quadratic_pair()


@st.composite
def interlacing_pairs(draw, min_k=2, max_k=8, min_gap=0.1):
    """Monic interlacing pairs built from positive gaps between merged roots."""
    k = draw(st.integers(min_k, max_k))
    gaps = draw(st.lists(st.floats(min_gap, 2.0), min_size=2 * k - 2, max_size=2 * k - 2))
    start = draw(st.floats(-5.0, 5.0))
    x = start + np.concatenate([[0.0], np.cumsum(gaps)])
    return InterlacingPair.from_roots(x[::2], x[1::2])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        passed, note = results[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if passed else 'FAIL'}  {note}")
