"""Root finding: Aberth-Ehrlich for complex roots, bracketed solves for the
real-rooted pencil p + alpha*q."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import ComplexRootDetected, NoConvergence
from .polynomial import (
    ComplexPolynomial,
    InterlacingPair,
    RealPolynomial,
    _Polynomial,
    default_tol,
    eval_poly,
    interlacing_violation,
    wronskian,
)

_EPS = np.finfo(float).eps
# initial-circle rotation, breaks the symmetry of real inputs
_ROTATION = 0.4


@dataclass(frozen=True, eq=False)
class RootSet:
    roots: np.ndarray
    residual: float
    iterations: int

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def sorted(self) -> np.ndarray:
        return np.array(sorted(self.roots, key=lambda z: (z.real, z.imag)))

    def clusters(self, tol: float | None = None) -> list[tuple[complex, int]]:
        """Group roots into (center, multiplicity).

        Two groups of sizes a and b merge when their centers are closer than
        ``tol ** (1 / (a + b))`` (relative to ``max(1, |z|)``).
        """
        if tol is None:
            tol = default_tol(1.0)
        groups = [[z] for z in self.roots]
        merged = True
        while merged and len(groups) > 1:
            merged = False
            centers = [np.mean(g) for g in groups]
            best = None
            for i in range(len(groups)):
                for j in range(i + 1, len(groups)):
                    d = abs(centers[i] - centers[j])
                    m = len(groups[i]) + len(groups[j])
                    lim = tol ** (1.0 / m) * max(1.0, abs(centers[i]))
                    if d < lim and (best is None or d < best[0]):
                        best = (d, i, j)
            if best is not None:
                _, i, j = best
                groups[i] = groups[i] + groups[j]
                del groups[j]
                merged = True
        return [(complex(np.mean(g)), len(g)) for g in groups]

    def to_dict(self) -> dict:
        return {
            "roots": [[float(z.real), float(z.imag)] for z in self.sorted()],
            "residual": float(self.residual),
            "iterations": int(self.iterations),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _taylor_shift(c: np.ndarray, s: complex) -> np.ndarray:
    """Coefficients (ascending) of p(z + s)."""
    c = np.array(c, dtype=complex)
    n = len(c) - 1
    out = c.copy()
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            out[j] += s * out[j + 1]
    return out


def _fujiwara_radius(a: np.ndarray) -> float:
    """Upper bound on root moduli of the monic polynomial with coefficients ``a``."""
    n = len(a) - 1
    terms = [abs(a[n - i]) ** (1.0 / i) for i in range(1, n)]
    terms.append(abs(a[0] / 2.0) ** (1.0 / n))
    return 2.0 * max(terms) if terms else 0.0


def _horner2(c: np.ndarray, z: np.ndarray):
    p = np.zeros_like(z)
    dp = np.zeros_like(z)
    for coef in c[::-1]:
        dp = dp * z + p
        p = p * z + coef
    return p, dp


def _aberth_step(a: np.ndarray, z: np.ndarray) -> np.ndarray:
    pz, dpz = _horner2(a, z)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(dpz != 0, pz / dpz, pz)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        s = np.sum(1.0 / diff, axis=1)
        w = ratio / (1.0 - ratio * s)
    return np.where(np.isfinite(w), w, 0.0)


def complex_roots(poly: _Polynomial, max_iter: int = 500) -> RootSet:
    """All roots of ``poly`` by Aberth-Ehrlich simultaneous iteration.

    Real inputs produce a conjugation-closed root set.
    """
    c = np.asarray(poly.coeffs, dtype=complex)
    n = len(c) - 1
    if n < 1:
        raise ValueError("polynomial of degree >= 1 required")
    if c[-1] == 0:
        raise ValueError("leading coefficient is zero")
    a = c / c[-1]
    is_real = not np.iscomplexobj(poly.coeffs) or not np.any(poly.coeffs.imag)

    if n == 1:
        z = np.array([-a[0]])
        return RootSet(z.astype(complex), float(abs(eval_poly(poly, z[0]))), 0)

    center = -a[n - 1] / n
    if is_real:
        center = complex(center.real)
    # iterate on the centred polynomial: evaluation error grows with |z|
    a = _taylor_shift(a, center)
    radius = _fujiwara_radius(a)
    if radius == 0.0:
        radius = 1.0
    angles = 2 * np.pi * np.arange(n) / n + _ROTATION
    z = radius * np.exp(1j * angles)
    absa = np.abs(a)
    active = np.ones(n, dtype=bool)

    it = 0
    for it in range(1, max_iter + 1):
        w = _aberth_step(a, z)
        z = np.where(active, z - w, z)
        bound = 4 * n * _EPS * np.polyval(absa[::-1], np.abs(z))
        pz_new = np.polyval(a[::-1], z)
        done = (np.abs(pz_new) <= bound) | (np.abs(w) <= 4 * _EPS * np.abs(z))
        active &= ~done
        if not active.any():
            break

    # a few more sweeps over all roots: the per-root stopping bound is
    # generous, and clustered roots frozen early are otherwise left coarse
    for _ in range(3):
        z_old = z
        z = z - _aberth_step(a, z)
        if np.max(np.abs(np.polyval(a[::-1], z))) > np.max(np.abs(np.polyval(a[::-1], z_old))) * 1e3:
            z = z_old
            break
    z = z + center

    residual = float(np.max(np.abs(eval_poly(poly, z))))
    coeff_scale = float(np.polyval(np.abs(c)[::-1], np.max(np.abs(z))))
    if active.any() and residual > default_tol(1.0) * coeff_scale:
        raise NoConvergence(f"Aberth iteration did not converge in {max_iter} steps")

    if is_real:
        z = _symmetrize(z)
        residual = float(np.max(np.abs(eval_poly(poly, z))))
    return RootSet(z, residual, it)


def _symmetrize(z: np.ndarray) -> np.ndarray:
    """Pair each upper root with its closest lower mirror and average them."""
    z = z.copy()
    scale = np.maximum(1.0, np.abs(z))
    near_real = np.abs(z.imag) <= 1e-10 * scale
    z[near_real] = z[near_real].real
    upper = [i for i in range(len(z)) if z[i].imag > 0]
    lower = set(i for i in range(len(z)) if z[i].imag < 0)
    for i in sorted(upper, key=lambda i: -z[i].imag):
        if not lower:
            break
        j = min(lower, key=lambda j: abs(z[i] - np.conj(z[j])))
        if abs(z[i] - np.conj(z[j])) <= 1e-6 * scale[i]:
            m = 0.5 * (z[i] + np.conj(z[j]))
            z[i], z[j] = m, np.conj(m)
            lower.discard(j)
    return z


def real_roots_sorted(poly: _Polynomial) -> np.ndarray:
    """Sorted roots of a polynomial whose roots are all real and simple."""
    rs = complex_roots(poly)
    z = rs.roots
    scale = max(1.0, float(np.max(np.abs(z))))
    bad = np.abs(z.imag) > 1e-7 * scale
    if np.any(bad):
        raise ComplexRootDetected(f"non-real root {z[bad][0]!r}")
    x = np.sort(z.real)
    c = np.real(np.asarray(poly.coeffs))
    dc = c[1:] * np.arange(1, len(c))
    for _ in range(3):
        px = np.polyval(c[::-1], x)
        dpx = np.polyval(dc[::-1], x)
        step = np.where(dpx != 0, px / np.where(dpx != 0, dpx, 1.0), 0.0)
        # reject steps that would jump past a neighbour
        gap = np.min(np.abs(np.diff(x))) if len(x) > 1 else np.inf
        step = np.where(np.abs(step) < 0.25 * gap, step, 0.0)
        x = x - step
    return np.sort(x)


@dataclass(frozen=True)
class InterlacingCheck:
    ok: bool
    diagnostic: str
    p_roots: np.ndarray | None = None
    q_roots: np.ndarray | None = None

    def __bool__(self):
        return self.ok


def verify_interlacing(p: _Polynomial, q: _Polynomial) -> InterlacingCheck:
    """True iff deg q = deg p - 1 and the real simple roots strictly alternate."""
    if q.degree != p.degree - 1 or p.degree < 1:
        return InterlacingCheck(False, f"degrees {p.degree}, {q.degree}: need deg q = deg p - 1")
    try:
        pr = real_roots_sorted(p)
        qr = real_roots_sorted(q) if q.degree > 0 else np.zeros(0)
    except ComplexRootDetected as exc:
        return InterlacingCheck(False, f"non-real root: {exc}")
    tol = default_tol(float(np.max(np.abs(pr))) if len(pr) else 1.0)
    if len(pr) > 1 and np.min(np.diff(pr)) <= tol:
        return InterlacingCheck(False, "p has a repeated root", pr, qr)
    if len(pr) < 2:
        return InterlacingCheck(True, "", pr, qr)
    problem = interlacing_violation(pr, qr)
    if problem:
        return InterlacingCheck(False, problem, pr, qr)
    return InterlacingCheck(True, "", pr, qr)


def pencil_roots(pair: InterlacingPair, alpha: float) -> np.ndarray:
    """Sorted real roots of p + alpha*q.

    On each interval (p_j, p_{j+1}) the function R = q/p decreases from +inf
    to -inf, so each interval holds exactly one root; the last root lies past
    p_k for alpha < 0 and before p_1 for alpha > 0.
    """
    alpha = float(alpha)
    pr, qr = pair.p_roots, pair.q_roots
    if alpha == 0.0:
        return pr.copy()

    def f(x):
        return float(np.prod(x - pr) + alpha * np.prod(x - qr))

    brackets = []
    for j in range(pair.k - 1):
        brackets.append((pr[j], qr[j]) if alpha < 0 else (qr[j], pr[j + 1]))
    if alpha < 0:
        brackets.append((pr[-1], pr[-1] + 2 * abs(alpha) + 1.0))
    else:
        brackets.append((pr[0] - 2 * abs(alpha) - 1.0, pr[0]))

    out = []
    for a, b in brackets:
        fa, fb = f(a), f(b)
        if fa == 0.0:
            out.append(a)
            continue
        if fb == 0.0:
            out.append(b)
            continue
        if fa * fb > 0:
            raise ComplexRootDetected(f"no sign change of p + alpha q on [{a}, {b}]")
        xtol = 2 * _EPS * max(1.0, abs(a), abs(b))
        out.append(brentq(f, a, b, xtol=xtol, rtol=4 * _EPS, maxiter=500))
    return np.sort(np.array(out))


def _frame(pair: InterlacingPair):
    """Centre and half-width of the p-roots, with p, q rebuilt in the
    coordinate zeta = (z - centre)/width (better conditioned coefficients)."""
    pr = pair.p_roots
    c = 0.5 * (pr[0] + pr[-1])
    s = max(0.5 * (pr[-1] - pr[0]), 1e-300)
    p = RealPolynomial.from_roots((pr - c) / s)
    q = RealPolynomial.from_roots((pair.q_roots - c) / s)
    return c, s, p, q


def _unframe(rs: RootSet, c: float, s: float, poly) -> RootSet:
    z = c + s * rs.roots
    return RootSet(z, float(np.max(np.abs(eval_poly(poly, z)))), rs.iterations)


def _polish(z, f_df, steps: int = 3):
    """Guarded Newton steps with ``f_df(z) -> (f, f')``; a step is kept only
    where it lowers |f|."""
    z = np.array(z, dtype=complex)
    f, df = f_df(z)
    for _ in range(steps):
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(df != 0, f / df, 0.0)
        step = np.where(np.isfinite(step), step, 0.0)
        z_new = z - step
        f_new, df_new = f_df(z_new)
        better = np.abs(f_new) < np.abs(f)
        z = np.where(better, z_new, z)
        f = np.where(better, f_new, f)
        df = np.where(better, df_new, df)
    return z


def _pencil_f_df(pr, qr, lam):
    # f = P + lam*Q in product form, f' via logarithmic derivatives
    def f_df(z):
        dp = z[:, None] - pr[None, :]
        dq = z[:, None] - qr[None, :]
        P, Q = np.prod(dp, axis=1), np.prod(dq, axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            dP = P * np.sum(1.0 / dp, axis=1)
            dQ = Q * np.sum(1.0 / dq, axis=1) if qr.size else np.zeros_like(P)
        return P + lam * Q, dP + lam * dQ

    return f_df


def _wronskian_f_df(pr, qr):
    # W / (P Q) = sum 1/(z - p_j) - sum 1/(z - q_l), valid off the roots of P Q
    def f_df(z):
        dp = z[:, None] - pr[None, :]
        dq = z[:, None] - qr[None, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            g = np.sum(1.0 / dp, axis=1) - np.sum(1.0 / dq, axis=1)
            dg = -np.sum(1.0 / dp**2, axis=1) + np.sum(1.0 / dq**2, axis=1)
        return g, dg

    return f_df


def hb_roots(pair, lam: complex) -> RootSet:
    """Roots of p + lam*q.  ``pair`` may be an InterlacingPair or a (p, q) tuple."""
    if isinstance(pair, InterlacingPair):
        c, s, p, q = _frame(pair)
        # p(z) + lam q(z) = s^k (p~(zeta) + (lam/s) q~(zeta))
        rs = hb_roots((p, q), complex(lam) / s)
        z = _polish(rs.roots, _pencil_f_df((pair.p_roots - c) / s, (pair.q_roots - c) / s, complex(lam) / s))
        rs = RootSet(z, rs.residual, rs.iterations)
        return _unframe(rs, c, s, _combine(pair.p, pair.q, lam))
    p, q = pair
    return complex_roots(_combine(p, q, lam))


def _combine(p, q, lam) -> ComplexPolynomial:
    n = max(len(p.coeffs), len(q.coeffs))
    c = np.zeros(n, dtype=complex)
    c[: len(p.coeffs)] += p.coeffs
    c[: len(q.coeffs)] += complex(lam) * np.asarray(q.coeffs)
    return ComplexPolynomial(c)


def hb_roots_polar(pair, r: float, phi: float) -> RootSet:
    """Solutions of q(z)/p(z) = r*exp(i*phi)."""
    return hb_roots(pair, -np.exp(-1j * phi) / r)


def wronskian_roots(pair: InterlacingPair) -> RootSet:
    """Roots of W(p, q), found in the centred frame (W commutes with
    translation and scales homogeneously)."""
    c, s, p, q = _frame(pair)
    rs = complex_roots(wronskian(p, q))
    z = _polish(rs.roots, _wronskian_f_df((pair.p_roots - c) / s, (pair.q_roots - c) / s))
    z = _symmetrize(z)
    return _unframe(RootSet(z, rs.residual, rs.iterations), c, s, wronskian(pair.p, pair.q))


__all__ = [
    "RootSet",
    "InterlacingCheck",
    "complex_roots",
    "real_roots_sorted",
    "verify_interlacing",
    "pencil_roots",
    "hb_roots",
    "hb_roots_polar",
    "wronskian_roots",
]
