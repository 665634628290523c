"""Verification suites: each check returns a small JSON-ready record naming
the claim it tests, whether it passed, and the margin by which it did."""

from __future__ import annotations

import math

import numpy as np

from .analysis import (
    convexity_check,
    critical_values,
    disk,
    level_curve_classify,
    min_modulus_on_halfcircle,
    re_R_monotonicity,
)
from .errors import FlatMinimum, HBDisksError
from .geometry import omega_intersection_margin, omega_region, strip_disk_bound
from .hermite_biehler import HBInstance, census_tau, classify_roots, solve_hb
from .polynomial import InterlacingPair
from .roots import wronskian_roots
from .univalence import certify_univalent

SUITES = ("wronskian", "pencil", "strip", "hb", "convexity", "levelcurves",
          "monotonicity", "univalence", "critical")


def _check(name: str, claim: str, passed: bool, margin=None, **details) -> dict:
    out = {"name": name, "claim": claim, "passed": bool(passed)}
    if margin is not None:
        out["margin"] = float(margin)
    out.update(details)
    return out


def _tau(pair: InterlacingPair) -> float:
    return 1e-7 * max(1.0, pair.scale)


def _roots_json(z) -> list:
    return [[float(w.real), float(w.imag)] for w in sorted(z, key=lambda w: (w.real, w.imag))]


def _disks(pair, j):
    return [j] if j is not None else list(range(1, pair.k))


def wronskian_suite(pair: InterlacingPair, **_) -> list[dict]:
    tau = _tau(pair)
    z = wronskian_roots(pair).roots
    region = omega_region(pair)
    margins = region.margin(z)
    min_im = float(np.min(np.abs(z.imag))) if z.size else math.inf
    return [
        _check("wronskian-degree", "W(p,q) has 2k-2 roots", z.size == 2 * pair.k - 2, roots=_roots_json(z)),
        _check("wronskian-in-omega", "all roots of W(p,q) lie in Omega_p",
               bool(np.all(margins >= -tau)), float(np.min(margins))),
        _check("wronskian-nonreal", "roots of W(p,q) are non-real", min_im > tau, min_im - tau),
    ]


def pencil_suite(pair: InterlacingPair, **_) -> list[dict]:
    tau = _tau(pair)
    z = wronskian_roots(pair).roots
    m = omega_intersection_margin(pair, z)
    return [_check("wronskian-in-pencil-intersection",
                   "roots of W(p,q) lie in the intersection of Omega_p(alpha) over alpha",
                   bool(np.all(m >= -tau)), float(np.min(m)))]


def strip_suite(pair: InterlacingPair, **_) -> list[dict]:
    tau = _tau(pair)
    z = wronskian_roots(pair).roots
    ok = [strip_disk_bound(pair, w, tau) for w in z]
    x = z.real
    margin = float(np.min(np.minimum(x - pair.q_roots[0], pair.q_roots[-1] - x)))
    return [_check("wronskian-in-strip", "roots of W(p,q) satisfy q_1 <= Re z <= q_{k-1} inside D_0",
                   all(ok), margin)]


def hb_suite(pair: InterlacingPair, alpha=None, r=None, phi=None, **_) -> list[dict]:
    if alpha is not None:
        if alpha == 0:
            raise ValueError("alpha must be nonzero")
        # p + i*alpha*q = p - q/(r e^{i phi})
        r, phi = 1.0 / abs(alpha), (-math.pi / 2 if alpha < 0 else math.pi / 2)
    if r is None:
        r = 0.25
    if phi is None:
        phi = -math.pi / 2
    inst = HBInstance(pair, float(r), float(phi))
    roots = solve_hb(inst).roots
    tau = census_tau(pair)
    cen = classify_roots(pair, roots, tau)
    bounded = {k: v for k, v in cen.per_disk_counts.items() if k != "omega"}
    checks = [
        _check("hb-root-count", "q/p = r e^{i phi} has k solutions", roots.size == pair.k,
               r=float(r), phi=float(phi), roots=_roots_json(roots)),
    ]
    if 0 < phi < math.pi:
        im = -roots.imag
        side = "lower"
    elif -math.pi < phi < 0:
        im = roots.imag
        side = "upper"
    else:
        im = None
        side = "real"
    if im is not None:
        checks.append(_check("hb-half-plane", f"solutions lie in the open {side} half-plane",
                             bool(np.all(im > tau)), float(np.min(im)) - tau))
    else:
        real_ok = bool(np.all(np.abs(roots.imag) <= tau))
        checks.append(_check("hb-real", "solutions are real for phi in {0, pi}", real_ok))
    checks.append(_check("hb-census-disks", "each open D_j and the outer complement hold at most one solution",
                         all(v <= 1 for v in bounded.values()), census=cen.to_dict()))
    checks.append(_check("hb-census-outside", "at most one solution outside the closed outer disk",
                         cen.per_disk_counts["outer"] <= 1))
    return checks


def convexity_suite(pair: InterlacingPair, disk_index=None, **_) -> list[dict]:
    out = []
    for j in _disks(pair, disk_index):
        rep = convexity_check(pair, j)
        out.append(_check(f"convexity-D{j}", "|R|^2 is convex in Re z along C_j^+",
                          rep.convex, rep.min_second_difference))
    return out


def levelcurve_suite(pair: InterlacingPair, disk_index=None, grid: int = 512, **_) -> list[dict]:
    out = []
    for j in _disks(pair, disk_index):
        try:
            mm = min_modulus_on_halfcircle(pair, j)
        except FlatMinimum as exc:
            out.append(_check(f"levelcurves-D{j}", "level curves split at the threshold m", False,
                              error=str(exc)))
            continue
        m = mm.m
        try:
            lo = level_curve_classify(pair, j, 0.5 * m, grid, m=m)
            hi = level_curve_classify(pair, j, 2.0 * m, grid, m=m)
            at = level_curve_classify(pair, j, m, grid, m=m)
            ok = (lo.classification, hi.classification, at.classification) == ("single-oval", "two-arcs", "tangent")
            out.append(_check(
                f"levelcurves-D{j}", "in D_j, |R| = r is one oval for r < m and two arcs for r > m", ok,
                m=m, P=[mm.P.real, mm.P.imag],
                classes={"0.5m": lo.classification, "m": at.classification, "2m": hi.classification},
            ))
        except HBDisksError as exc:
            out.append(_check(f"levelcurves-D{j}", "level curves split at the threshold m", False,
                              m=m, error=str(exc)))
    return out


def monotonicity_suite(pair: InterlacingPair, disk_index=None, **_) -> list[dict]:
    out = []
    for j in _disks(pair, disk_index):
        rep = re_R_monotonicity(pair, j)
        if pair.k == 2:
            out.append(_check(f"monotonicity-D{j}", "Re R is constant on the half-circle for degree 2",
                              rep.constant, rep.spread))
        else:
            out.append(_check(f"monotonicity-D{j}", "Re R decreases along the normalized half-circle",
                              rep.monotone_decreasing, -rep.max_first_difference))
    return out


def univalence_suite(pair: InterlacingPair, disk_index=None, seed: int = 0, **_) -> list[dict]:
    out = []
    for j in _disks(pair, disk_index):
        d = disk(pair, j)
        rep = certify_univalent(pair, d, seed=seed)
        big = certify_univalent(pair, d.scaled(1.05), seed=seed)
        gap = big.witness_image_gap
        out.append(_check(f"univalent-D{j}", "R is univalent on D_j", rep.verdict == "univalent",
                          report=rep.to_dict()))
        out.append(_check(f"maximal-D{j}", "R is not univalent on the 5% larger disk",
                          big.verdict == "not-univalent" and gap is not None and gap <= 1e-8,
                          report=big.to_dict()))
    return out


def critical_suite(pair: InterlacingPair, **_) -> list[dict]:
    tau = _tau(pair)
    cv = float(np.min(np.abs(critical_values(pair))))
    ms = []
    for j in range(1, pair.k):
        try:
            ms.append(min_modulus_on_halfcircle(pair, j).m)
        except FlatMinimum:
            ms.append(float("nan"))
    m_min = float(np.nanmin(ms))
    # equality is possible: for degree 2 the critical point lies on C_1
    return [_check("critical-values", "min_j m_j does not exceed the least modulus of a critical value",
                   m_min <= cv + tau, cv + tau - m_min, m=ms, least_critical_modulus=cv,
                   strict=bool(m_min < cv - tau))]


_RUNNERS = {
    "wronskian": wronskian_suite,
    "pencil": pencil_suite,
    "strip": strip_suite,
    "hb": hb_suite,
    "convexity": convexity_suite,
    "levelcurves": levelcurve_suite,
    "monotonicity": monotonicity_suite,
    "univalence": univalence_suite,
    "critical": critical_suite,
}


def run_suite(pair: InterlacingPair, suite: str, **opts) -> dict:
    names = SUITES if suite == "all" else (suite,)
    checks = []
    for name in names:
        if name not in _RUNNERS:
            raise KeyError(f"unknown suite {name!r}")
        checks.extend(_RUNNERS[name](pair, **opts))
    return {"suite": suite, "passed": all(c["passed"] for c in checks), "checks": checks}


__all__ = ["SUITES", "run_suite"]
