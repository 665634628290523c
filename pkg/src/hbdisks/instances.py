"""Named example pairs used by the CLI, demos and tests."""

from __future__ import annotations

from .polynomial import InterlacingPair


def fig1_pair() -> InterlacingPair:
    """p = (z+4)(z+3)z(z-2), q = (z+7/2)(z+1)(z-1)."""
    return InterlacingPair.from_roots([-4.0, -3.0, 0.0, 2.0], [-3.5, -1.0, 1.0])


def fig7_pair() -> InterlacingPair:
    """R = (z-1/2)(z-2)(z+2) / ((z-1)(z+1)(z-3)(z+3)); its disk D_2 is |z| < 1."""
    return InterlacingPair.from_roots([-3.0, -1.0, 1.0, 3.0], [-2.0, 0.5, 2.0])


def quadratic_pair() -> InterlacingPair:
    """(z^2 - 1, z): the smallest case, R = z / (z^2 - 1)."""
    return InterlacingPair.from_roots([-1.0, 1.0], [0.0])


NAMED = {"fig1": fig1_pair, "fig7": fig7_pair, "quadratic": quadratic_pair}

__all__ = ["fig1_pair", "fig7_pair", "quadratic_pair", "NAMED"]
