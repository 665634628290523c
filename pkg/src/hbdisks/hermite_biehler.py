"""Root location for p + lambda*q and for the equation q/p = r*exp(i*phi).

The disk census sorts the solutions into the open inner disks, the open
complement of the outer disk, the interior of Omega_p, or "uncounted" when a
root sits within tau of a circle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import CorollaryViolation
from .geometry import omega_region
from .polynomial import InterlacingPair, _as_pq
from .roots import RootSet, hb_roots, pencil_roots


@dataclass(frozen=True)
class HBInstance:
    pair: InterlacingPair
    r: float
    phi: float

    def __post_init__(self):
        if not (np.isfinite(self.r) and self.r > 0):
            raise ValueError(f"r must be positive, got {self.r!r}")
        if not (-np.pi < self.phi <= np.pi):
            raise ValueError(f"phi must lie in (-pi, pi], got {self.phi!r}")

    @property
    def lam(self) -> complex:
        """Coefficient in p + lam*q = 0."""
        return -np.exp(-1j * self.phi) / self.r

    @property
    def is_real_case(self) -> bool:
        return self.phi == 0.0 or self.phi == np.pi


def solve_hb(instance: HBInstance) -> RootSet:
    """Solutions of q(z)/p(z) = r*exp(i*phi), as roots of p - q/(r e^{i phi})."""
    pair = instance.pair
    if instance.is_real_case:
        alpha = -1.0 / instance.r if instance.phi == 0.0 else 1.0 / instance.r
        x = pencil_roots(pair, alpha)
        resid = float(np.max(np.abs(pair.p(x) + alpha * pair.q(x))))
        return RootSet(x.astype(complex), resid, 0)
    return hb_roots(pair, instance.lam)


@dataclass(frozen=True)
class DiskRootCensus:
    """Per-region root counts.

    ``per_disk_counts`` holds "D1".."D{k-1}", "outer" (open complement of the
    closed outer disk) and "omega" (interior of Omega_p).
    """

    per_disk_counts: dict
    uncounted: int
    k: int
    tau: float

    @property
    def total(self) -> int:
        return sum(self.per_disk_counts.values()) + self.uncounted

    def violations(self) -> list[str]:
        out = []
        for name, n in self.per_disk_counts.items():
            if name != "omega" and n > 1:
                out.append(f"{name} holds {n} roots")
        return out

    def to_dict(self) -> dict:
        return {"counts": {k: int(v) for k, v in self.per_disk_counts.items()}, "uncounted": int(self.uncounted)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def classify_roots(pair: InterlacingPair, roots, tau: float) -> DiskRootCensus:
    region = omega_region(pair)
    counts = {f"D{j}": 0 for j in range(1, pair.k)}
    counts["outer"] = 0
    counts["omega"] = 0
    uncounted = 0
    for z in np.asarray(roots, dtype=complex):
        margins = [region.outer.margin(z)] + [d.margin(z) for d in region.inner]
        if min(abs(float(m)) for m in margins) < tau:
            uncounted += 1
            continue
        if margins[0] < 0:
            counts["outer"] += 1
            continue
        hit = [j for j, m in enumerate(margins[1:], start=1) if m > 0]
        if hit:
            counts[f"D{hit[0]}"] += 1
        else:
            counts["omega"] += 1
    return DiskRootCensus(counts, uncounted, pair.k, tau)


def census_tau(pair: InterlacingPair) -> float:
    return 1e-7 * max(1.0, pair.scale)


def census(instance: HBInstance, tau: float | None = None) -> DiskRootCensus:
    """Classify the solutions and enforce the at-most-one-per-disk bounds."""
    pair = instance.pair
    tau = census_tau(pair) if tau is None else tau
    result = classify_roots(pair, solve_hb(instance).roots, tau)
    bad = result.violations()
    if bad:
        raise CorollaryViolation("; ".join(bad))
    return result


def hb_theorem_check(pair, alpha: float, tol: float | None = None) -> bool:
    """Roots of p + i*alpha*q all in the open upper (alpha < 0) or lower
    (alpha > 0) half-plane.  ``pair`` may be a raw (p, q) tuple."""
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    p, q = _as_pq(pair)
    if tol is None:
        tol = pair.tol if isinstance(pair, InterlacingPair) else 1e-9
    roots = hb_roots((p, q), 1j * alpha).roots
    im = roots.imag if alpha < 0 else -roots.imag
    return bool(np.all(im > tol))


__all__ = [
    "HBInstance",
    "DiskRootCensus",
    "solve_hb",
    "census",
    "census_tau",
    "classify_roots",
    "hb_theorem_check",
]
