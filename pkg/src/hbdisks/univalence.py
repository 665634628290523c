"""Argument-principle certificates of univalence of R = q/p on real disks.

The number of solutions of R(z) = c inside a disk equals the winding number
of the polynomial q - c*p along the boundary circle.  Working with q - c*p
rather than R - c keeps the contour integrand finite even when the circle
passes through poles of R, as the circles C_j do.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq
from shapely.geometry import LineString, LinearRing, MultiLineString

from .analysis import disk as disk_j
from .errors import BoundaryHit, Inconclusive
from .geometry import Disk
from .polynomial import ComplexPolynomial, InterlacingPair
from .roots import complex_roots, hb_roots

_START_SAMPLES = 256
_MAX_SAMPLES = 2**16
# largest accepted argument jump between neighbouring samples
_MAX_STEP_ANGLE = 0.5


def _factored(roots, z):
    out = np.ones(z.shape, dtype=complex)
    for r in roots:
        out = out * (z - r)
    return out


def _winding_one(pair: InterlacingPair, dsk: Disk, c: complex, tol: float):
    """Winding number of q - c*p along the circle, or None on failure.

    Segments whose argument jump exceeds _MAX_STEP_ANGLE are bisected until
    none remain; the count is then confirmed by two uniform bisections.
    """

    def evaluate(t):
        z = dsk.center + dsk.radius * np.exp(1j * t)
        pv = _factored(pair.p_roots, z)
        return _factored(pair.q_roots, z) - c * pv, pv

    t = 2 * np.pi * (np.arange(_START_SAMPLES) + 0.5) / _START_SAMPLES
    f, pv = evaluate(t)
    estimates = []
    while True:
        with np.errstate(divide="ignore", invalid="ignore"):
            gap = np.abs(f) / np.abs(pv)
        if np.nanmin(gap) < tol:
            return None
        g = np.append(f, f[0])
        steps = np.angle(g[1:] / g[:-1])
        tt = np.append(t, t[0] + 2 * np.pi)
        bad = np.abs(steps) > _MAX_STEP_ANGLE
        if bad.any():
            if t.size + bad.sum() > _MAX_SAMPLES:
                return None
            mids = 0.5 * (tt[:-1][bad] + tt[1:][bad])
        else:
            estimates.append(int(np.rint(steps.sum() / (2 * np.pi))))
            if len(estimates) == 3:
                return estimates[0] if len(set(estimates)) == 1 else None
            if 2 * t.size > _MAX_SAMPLES:
                return estimates[-1] if len(set(estimates)) == 1 else None
            mids = 0.5 * (tt[:-1] + tt[1:])
        fm, pm = evaluate(mids)
        order = np.argsort(np.concatenate([t, mids]), kind="stable")
        t = np.concatenate([t, mids])[order]
        f = np.concatenate([f, fm])[order]
        pv = np.concatenate([pv, pm])[order]


def _windings(pair: InterlacingPair, dsk: Disk, cs: np.ndarray, tol: float):
    """Winding numbers for every probe value; ``failed`` marks probes that
    came within ``tol`` of the boundary image or needed too many samples."""
    cs = np.asarray(cs, dtype=complex).ravel()
    counts = np.zeros(cs.size, dtype=int)
    failed = np.zeros(cs.size, dtype=bool)
    for i, c in enumerate(cs):
        w = _winding_one(pair, dsk, c, tol)
        if w is None:
            failed[i] = True
        else:
            counts[i] = w
    return counts, failed


def preimage_count(pair: InterlacingPair, dsk: Disk, c: complex, tol: float | None = None) -> int:
    """Number of solutions of R(z) = c inside ``dsk``, with multiplicity."""
    tol = pair.tol if tol is None else tol
    counts, failed = _windings(pair, dsk, np.array([c]), tol)
    if failed[0]:
        raise BoundaryHit(f"c = {c!r} lies on or too close to R(boundary)")
    return int(counts[0])


@dataclass(frozen=True)
class BoundaryLoopReport:
    simple: bool
    im_negative: bool
    degenerate: bool
    n_samples: int
    endpoints_are_poles: bool = True
    note: str = ""


def boundary_loop_simple(pair: InterlacingPair, j: int, n_samples: int = 4096) -> BoundaryLoopReport:
    """Is R(C_j^+) a simple arc below the real axis (open ends at the poles)?

    For k = 2 the image folds onto a vertical ray traversed twice; that case
    is reported as ``degenerate``.
    """
    d = disk_j(pair, j)
    eps = 1e-3
    t = np.linspace(eps, np.pi - eps, n_samples)
    vals = pair.R(d.center + d.radius * np.exp(1j * t))
    im_neg = bool(np.all(vals.imag < -pair.tol))
    if pair.k == 2:
        spread = np.ptp(vals.real)
        deg = spread <= 1e-9 * max(1.0, float(np.max(np.abs(vals))))
        return BoundaryLoopReport(False, im_neg, bool(deg), n_samples, note="doubly covered vertical ray")
    simple = LineString(np.column_stack([vals.real, vals.imag])).is_simple
    return BoundaryLoopReport(bool(simple), im_neg, False, n_samples)


def _boundary_simple(pair: InterlacingPair, dsk: Disk, n: int = 4096) -> bool:
    """Sampled simplicity of R(boundary), cut open around poles on the circle."""
    t = 2 * np.pi * np.arange(n) / n
    z = dsk.center + dsk.radius * np.exp(1j * t)
    on = [p for p in pair.p_roots if abs(abs(p - dsk.center) - dsk.radius) <= 1e-9 * max(1.0, dsk.radius)]
    if not on:
        v = pair.R(z)
        return bool(LinearRing(np.column_stack([v.real, v.imag])).is_simple)
    keep = np.ones(n, dtype=bool)
    for p in on:
        keep &= np.abs(z - p) > 2e-3 * dsk.radius
    # split the kept samples into contiguous runs (cyclically)
    runs, cur = [], []
    start = int(np.argmin(keep)) if not keep.all() else 0
    for i in range(n):
        k = (start + i) % n
        if keep[k]:
            cur.append(k)
        elif cur:
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    lines = []
    for run in runs:
        if len(run) >= 2:
            v = pair.R(z[run])
            lines.append(np.column_stack([v.real, v.imag]))
    return bool(MultiLineString(lines).is_simple)


@dataclass(frozen=True)
class UnivalenceReport:
    disk: Disk
    verdict: str  # "univalent" | "not-univalent" | "inconclusive"
    max_preimage_count: int
    witness: tuple | None
    boundary_simple: bool
    boundary_degenerate: bool = False
    n_probes: int = 0
    failed_probes: int = 0
    witness_image_gap: float | None = None
    counts: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        w = None
        if self.witness is not None:
            w = [[float(z.real), float(z.imag)] for z in self.witness]
        return {
            "disk": self.disk.to_dict(),
            "verdict": self.verdict,
            "max_preimage_count": int(self.max_preimage_count),
            "witness": w,
            "witness_image_gap": self.witness_image_gap,
            "boundary_simple": bool(self.boundary_simple),
            "boundary_degenerate": bool(self.boundary_degenerate),
            "n_probes": int(self.n_probes),
            "failed_probes": int(self.failed_probes),
            "counts": {str(k): int(v) for k, v in sorted(self.counts.items())},
        }


def probe_points(pair: InterlacingPair, dsk: Disk, n_probes: int) -> np.ndarray:
    """Interior sample points: a polar grid plus points hugging the poles
    that lie in the closed disk."""
    n_interior = max(8, int(math.ceil(0.9 * n_probes)))
    pole_pts = []
    for p in pair.p_roots:
        if abs(p - dsk.center) <= dsk.radius * (1 + 1e-12):
            for frac in (0.03, 0.01):
                for th in np.pi * (np.arange(8) + 0.5) / 8 * 2:
                    z = p + frac * dsk.radius * np.exp(1j * th)
                    if dsk.margin(z) > 1e-3 * dsk.radius:
                        pole_pts.append(z)
    n_grid = max(4, n_interior - len(pole_pts))
    radii = np.array([0.0, 0.3, 0.6, 0.85, 0.97])
    n_ang = int(math.ceil((n_grid - 1) / (len(radii) - 1)))
    pts = [complex(dsk.center)]
    for i, fr in enumerate(radii[1:]):
        th = 2 * np.pi * (np.arange(n_ang) + 0.25 + 0.5 * (i % 2)) / n_ang
        pts.extend(dsk.center + fr * dsk.radius * np.exp(1j * th))
    return np.array(pts + pole_pts, dtype=complex)


def _witness_from_value(pair: InterlacingPair, dsk: Disk, c: complex):
    if c != 0:
        # q - c p = 0  <=>  p + lam q = 0 with lam = -1/c (framed and polished)
        rs = hb_roots(pair, -1.0 / complex(c)).roots
    else:
        coeffs = np.zeros(pair.k + 1, dtype=complex)
        coeffs[: pair.k] += pair.q.coeffs
        coeffs -= c * np.asarray(pair.p.coeffs)
        rs = complex_roots(ComplexPolynomial(coeffs)).roots
    inside = [z for z in rs if dsk.margin(z) > 0]
    if len(inside) < 2:
        return None
    best = max(
        ((a, b) for i, a in enumerate(inside) for b in inside[i + 1 :]),
        key=lambda ab: abs(ab[0] - ab[1]),
    )
    return best


def certify_univalent(
    pair: InterlacingPair, dsk: Disk, n_probes: int = 64, seed: int = 0, tol: float | None = None
) -> UnivalenceReport:
    """Decide univalence of R on the open disk ``dsk`` by winding counts.

    Probe values are images of interior points (each must be hit exactly
    once) plus about 10% random values (hit at most once).
    """
    tol = pair.tol if tol is None else tol
    rng = np.random.default_rng(seed)
    pts = probe_points(pair, dsk, n_probes)
    interior_vals = pair.R(pts)
    interior_vals = interior_vals[np.isfinite(interior_vals)]
    n_ext = max(1, int(math.ceil(0.1 * n_probes)))
    mag = float(np.median(np.abs(interior_vals))) or 1.0
    ext = mag * (rng.standard_normal(n_ext) + 1j * rng.standard_normal(n_ext))
    cs = np.concatenate([interior_vals, ext])

    counts, failed = _windings(pair, dsk, cs, tol)
    # retry failed probes with a small perturbation
    for attempt in range(3):
        if not failed.any():
            break
        idx = np.flatnonzero(failed)
        bump = 1e-6 * (attempt + 1) * np.exp(1j * rng.uniform(0, 2 * np.pi, idx.size))
        cs[idx] = cs[idx] * (1 + bump) + bump * mag
        c2, f2 = _windings(pair, dsk, cs[idx], tol)
        counts[idx], failed[idx] = c2, f2

    good = ~failed
    hist: dict = {}
    for v in counts[good]:
        hist[int(v)] = hist.get(int(v), 0) + 1
    max_count = int(counts[good].max()) if good.any() else 0

    if max_count >= 2:
        for i in np.flatnonzero(good & (counts >= 2)):
            w = _witness_from_value(pair, dsk, cs[i])
            if w is not None and abs(w[0] - w[1]) > 10 * tol:
                gap = float(abs(pair.R(w[0]) - pair.R(w[1])))
                return UnivalenceReport(
                    dsk, "not-univalent", max_count, w, False,
                    n_probes=cs.size, failed_probes=int(failed.sum()),
                    witness_image_gap=gap, counts=hist,
                )
        return UnivalenceReport(
            dsk, "inconclusive", max_count, None, False,
            n_probes=cs.size, failed_probes=int(failed.sum()), counts=hist,
        )

    degenerate = False
    if pair.k == 2:
        # R(boundary) folds onto itself for degree 2; rely on the counts alone
        simple, degenerate = False, True
        boundary_ok = True
    else:
        simple = _boundary_simple(pair, dsk)
        boundary_ok = simple
    verdict = "univalent" if (boundary_ok and not failed.any()) else "inconclusive"
    return UnivalenceReport(
        dsk, verdict, max_count, None, bool(simple), degenerate,
        n_probes=cs.size, failed_probes=int(failed.sum()), counts=hist,
    )


@dataclass(frozen=True)
class MaximalityWitness:
    j: int
    boundary_points: tuple  # (p_j, p_{j+1}); both are poles, image infinity
    boundary_image: float
    epsilon: float
    interior_pair: tuple | None
    interior_images: tuple | None
    note: str = ""

    def to_dict(self) -> dict:
        out = {
            "j": self.j,
            "boundary_points": [float(x) for x in self.boundary_points],
            "boundary_image": "inf",
            "epsilon": self.epsilon,
            "interior_pair": None,
            "interior_images": None,
            "note": self.note,
        }
        if self.interior_pair is not None:
            out["interior_pair"] = [float(np.real(x)) for x in self.interior_pair]
            out["interior_images"] = [float(np.real(x)) for x in self.interior_images]
        return out


def maximality_witness(pair: InterlacingPair, j: int, eps_rel: float = 1e-3) -> MaximalityWitness:
    """Collision pairs showing no larger real disk is univalent.

    On the boundary both p_j and p_{j+1} map to infinity.  For the inflated
    disk of radius (1 + eps_rel) r_j, the point z1 = p_j - eps_rel*r_j/2 lies
    inside it, and R(z1) is attained again on (q_j, p_{j+1}).
    """
    d = disk_j(pair, j)
    a, b = pair.p_roots[j - 1], pair.p_roots[j]
    qj = pair.q_roots[j - 1]
    eps = eps_rel * d.radius
    z1 = a - 0.5 * eps
    c = float(pair.R(z1).real)
    f = lambda x: float(np.prod(x - pair.q_roots) - c * np.prod(x - pair.p_roots))
    try:
        z2 = brentq(f, qj, b, xtol=1e-15 * max(1.0, abs(b)), rtol=4 * np.finfo(float).eps)
    except ValueError:
        return MaximalityWitness(j, (a, b), math.inf, eps, None, None, note="no interior collision found")
    big = d.scaled(1 + eps_rel)
    if not (big.margin(z1) > 0 and big.margin(z2) > 0):
        return MaximalityWitness(j, (a, b), math.inf, eps, None, None, note="collision left the inflated disk")
    return MaximalityWitness(
        j, (a, b), math.inf, eps, (z1, z2), (c, float(pair.R(z2).real))
    )


def disks_of(pair: InterlacingPair) -> list[Disk]:
    return [disk_j(pair, j) for j in range(1, pair.k)]


def outer_complement_count(pair: InterlacingPair, c: complex, tol: float | None = None) -> int:
    """Solutions of R(z) = c outside the closed outer disk (including infinity
    when c = 0, where deg q < deg p)."""
    tol = pair.tol if tol is None else tol
    outer = Disk.from_diameter(pair.p_roots[0], pair.p_roots[-1])
    inside = preimage_count(pair, outer, c, tol)
    return pair.k - inside


__all__ = [
    "preimage_count",
    "certify_univalent",
    "boundary_loop_simple",
    "maximality_witness",
    "UnivalenceReport",
    "BoundaryLoopReport",
    "MaximalityWitness",
    "Inconclusive",
]
