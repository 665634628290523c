"""Diameter disks on the real axis and the region Omega_p.

Omega_p is the closed disk spanned by the extreme roots of p with the open
disks spanned by consecutive roots removed.  The pencil variant Omega_p(alpha)
uses the roots of p + alpha*q instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import TooFewRoots
from .polynomial import InterlacingPair
from .roots import pencil_roots


@dataclass(frozen=True)
class Disk:
    center: float
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius!r}")

    @classmethod
    def from_diameter(cls, a: float, b: float) -> "Disk":
        a, b = float(min(a, b)), float(max(a, b))
        return cls(0.5 * (a + b), 0.5 * (b - a))

    @property
    def left(self) -> float:
        return self.center - self.radius

    @property
    def right(self) -> float:
        return self.center + self.radius

    def distance(self, z):
        return np.abs(np.asarray(z) - self.center)

    def margin(self, z):
        """radius - |z - center|: positive inside, negative outside."""
        return self.radius - self.distance(z)

    def contains(self, z, closed: bool = False, tol: float = 0.0):
        m = self.margin(z)
        return m >= -tol if closed else m > tol

    def scaled(self, factor: float) -> "Disk":
        return Disk(self.center, self.radius * factor)

    def boundary(self, n: int, offset: float = 0.0) -> np.ndarray:
        t = 2 * np.pi * (np.arange(n) + offset) / n
        return self.center + self.radius * np.exp(1j * t)

    def to_dict(self) -> dict:
        return {"center": float(self.center), "radius": float(self.radius)}


@dataclass(frozen=True)
class OmegaRegion:
    outer: Disk
    inner: tuple

    def margin(self, z):
        """Signed distance-like margin, vectorized over ``z``.

        min(outer margin, distance outside each inner disk); the closed outer
        disk and the inner circles count as inside.
        """
        z = np.asarray(z)
        m = self.outer.margin(z)
        for d in self.inner:
            m = np.minimum(m, -d.margin(z))
        return m

    def to_dict(self) -> dict:
        return {"outer": self.outer.to_dict(), "inner": [d.to_dict() for d in self.inner]}


@dataclass(frozen=True)
class MembershipVerdict:
    inside: bool
    signed_margin: float

    def __bool__(self):
        return self.inside


def disks_from_roots(roots) -> OmegaRegion:
    r = np.asarray(roots, dtype=float)
    if len(r) < 2:
        raise TooFewRoots(f"need at least 2 roots, got {len(r)}")
    if np.any(np.diff(r) <= 0):
        raise ValueError("roots must be strictly increasing")
    outer = Disk.from_diameter(r[0], r[-1])
    inner = tuple(Disk.from_diameter(a, b) for a, b in zip(r[:-1], r[1:]))
    return OmegaRegion(outer, inner)


def omega_region(pair: InterlacingPair) -> OmegaRegion:
    return disks_from_roots(pair.p_roots)


def omega_membership(region: OmegaRegion, z: complex, tol: float) -> MembershipVerdict:
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    m = float(region.margin(complex(z)))
    return MembershipVerdict(m >= -tol, m)


@lru_cache(maxsize=8192)
def _omega_alpha_cached(pair: InterlacingPair, alpha: float) -> OmegaRegion:
    return disks_from_roots(pencil_roots(pair, alpha))


def omega_alpha(pair: InterlacingPair, alpha: float) -> OmegaRegion:
    """Omega built on the roots of p + alpha*q."""
    return _omega_alpha_cached(pair, float(alpha))


def default_alpha_grid(pair: InterlacingPair) -> np.ndarray:
    """0 together with +-2**n * scale for n = -6..6."""
    s = max(1.0, pair.scale)
    pos = s * 2.0 ** np.arange(-6, 7)
    return np.concatenate([-pos[::-1], [0.0], pos])


def _limit_margin(pair: InterlacingPair, z):
    # limits of Omega_p(alpha) as alpha -> -inf / +inf: Re z >= q_1 and Re z <= q_{k-1}
    x = np.real(z)
    return np.minimum(x - pair.q_roots[0], pair.q_roots[-1] - x)


def omega_intersection_margin(pair: InterlacingPair, z, alpha_grid=None, limits: bool = True):
    """Minimum region margin over the grid (vectorized over ``z``)."""
    grid = default_alpha_grid(pair) if alpha_grid is None else np.asarray(alpha_grid, dtype=float)
    if grid.size == 0:
        raise ValueError("alpha grid must be nonempty")
    z = np.asarray(z, dtype=complex)
    m = np.full(z.shape, np.inf)
    for a in grid:
        m = np.minimum(m, omega_alpha(pair, a).margin(z))
    if limits:
        m = np.minimum(m, _limit_margin(pair, z))
    return m


def omega_intersection_membership(
    pair: InterlacingPair, z: complex, alpha_grid=None, tol: float | None = None, limits: bool = True
) -> MembershipVerdict:
    """Membership in the intersection of Omega_p(alpha) over ``alpha_grid``.

    With ``limits`` the two half-planes reached as alpha -> -inf / +inf are
    imposed exactly as well.
    """
    tol = pair.tol if tol is None else tol
    m = float(omega_intersection_margin(pair, complex(z), alpha_grid, limits))
    return MembershipVerdict(m >= -tol, m)


def strip_disk_bound(pair: InterlacingPair, z: complex, tol: float | None = None) -> bool:
    """z in the closed outer disk and q_1 <= Re z <= q_{k-1} (within tol)."""
    tol = pair.tol if tol is None else tol
    outer = Disk.from_diameter(pair.p_roots[0], pair.p_roots[-1])
    x = complex(z).real
    return bool(
        outer.contains(z, closed=True, tol=tol)
        and pair.q_roots[0] - tol <= x <= pair.q_roots[-1] + tol
    )


def strip_disk_bound_imag(pair: InterlacingPair, z: complex, tol: float | None = None) -> bool:
    """Same bound read literally on the imaginary part; kept for comparison."""
    tol = pair.tol if tol is None else tol
    outer = Disk.from_diameter(pair.p_roots[0], pair.p_roots[-1])
    y = complex(z).imag
    return bool(
        outer.contains(z, closed=True, tol=tol)
        and pair.q_roots[0] - tol <= y <= pair.q_roots[-1] + tol
    )


def strip_report(pair: InterlacingPair, z: complex, tol: float | None = None) -> dict:
    return {
        "re_reading": strip_disk_bound(pair, z, tol),
        "im_reading": strip_disk_bound_imag(pair, z, tol),
    }
