"""Numerical inverse of the Wronski map on normalized interlacing pairs.

A pair is normalized when p = z^k + a_1 z^{k-2} + ... + a_{k-1} (roots sum
to zero) and q = z^{k-1} + b_1 z^{k-2} + ... + b_{k-1}.  Its Wronskian
p'q - q'p is monic of degree 2k - 2 and positive on the real line, and every
such polynomial arises from exactly one normalized pair.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import NotInterlacing, PathLost, PositivityLost
from .polynomial import InterlacingPair, RealPolynomial, wronskian
from .roots import complex_roots, verify_interlacing

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class NormalizedPair:
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float).ravel()
        b = np.asarray(self.b, dtype=float).ravel()
        if a.size != b.size or a.size < 1:
            raise ValueError("a and b need the same length k - 1 >= 1")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def k(self) -> int:
        return self.a.size + 1

    @property
    def p(self) -> RealPolynomial:
        # descending z^k, 0, a_1, ..., a_{k-1}
        return RealPolynomial(np.concatenate([[1.0, 0.0], self.a])[::-1])

    @property
    def q(self) -> RealPolynomial:
        return RealPolynomial(np.concatenate([[1.0], self.b])[::-1])

    def check(self):
        chk = verify_interlacing(self.p, self.q)
        if not chk:
            raise NotInterlacing(chk.diagnostic)
        return chk

    def to_pair(self) -> InterlacingPair:
        return InterlacingPair.from_polynomials(self.p, self.q)

    @classmethod
    def from_pair(cls, pair: InterlacingPair) -> "NormalizedPair":
        """Shift so the p-roots sum to zero (q stays monic)."""
        s = float(np.mean(pair.p_roots))
        p = RealPolynomial.from_roots(pair.p_roots - s)
        q = RealPolynomial.from_roots(pair.q_roots - s)
        k = pair.k
        return cls(p.coeffs[::-1][2:], q.coeffs[::-1][1:k])

    @classmethod
    def from_roots(cls, p_roots, q_roots) -> "NormalizedPair":
        return cls.from_pair(InterlacingPair.from_roots(p_roots, q_roots))

    def to_dict(self) -> dict:
        return {"k": self.k, "a": [float(x) for x in self.a], "b": [float(x) for x in self.b],
                "p": self.p.to_dict(), "q": self.q.to_dict()}


def _w_lower(x: np.ndarray, k: int) -> np.ndarray:
    """Coefficients z^0..z^{2k-3} of the Wronskian of the pair with unknowns x = (a, b)."""
    npair = NormalizedPair(x[: k - 1], x[k - 1:])
    return wronskian(npair.p, npair.q).coeffs[: 2 * k - 2]


def _fd_jacobian(x: np.ndarray, k: int) -> np.ndarray:
    n = x.size
    J = np.empty((n, n))
    for i in range(n):
        h = 1e-6 * max(1.0, abs(x[i]))
        e = np.zeros(n)
        e[i] = h
        J[:, i] = (_w_lower(x + e, k) - _w_lower(x - e, k)) / (2 * h)
    return J


def is_in_pol(poly, tol: float = 1e-9) -> bool:
    """Monic, even degree >= 2, no root within ``tol`` of the real axis."""
    c = np.asarray(poly.coeffs)
    if np.iscomplexobj(c):
        if np.any(np.abs(c.imag) > 0):
            return False
        c = c.real
    deg = c.size - 1
    if deg < 2 or deg % 2 or abs(c[-1] - 1.0) > 1e-12:
        return False
    roots = complex_roots(RealPolynomial(c)).roots
    scale = np.maximum(1.0, np.abs(roots))
    if np.any(np.abs(roots.imag) < tol * scale):
        return False
    return bool(c[0] > 0)


@dataclass(frozen=True)
class PositivePolynomial:
    poly: RealPolynomial

    def __post_init__(self):
        if not is_in_pol(self.poly):
            raise ValueError("polynomial is not monic, even and positive on the real line")

    @property
    def k(self) -> int:
        return self.poly.degree // 2 + 1


@dataclass
class PathStats:
    steps: int = 0
    rejected: int = 0
    newton_iterations: int = 0
    max_condition: float = 0.0
    rerouted: bool = False
    final_residual: float = float("nan")
    condition_log: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "steps": self.steps,
            "rejected": self.rejected,
            "newton_iterations": self.newton_iterations,
            "max_condition": float(self.max_condition),
            "rerouted": self.rerouted,
            "final_residual": float(self.final_residual),
        }


def chebyshev_seed(u: RealPolynomial, k: int) -> NormalizedPair:
    """Chebyshev-node p-roots, midpoint q-roots, dilated so W(seed)(0) = u(0)."""
    i = np.arange(1, k + 1)
    pr = np.sort(np.cos((2 * i - 1) * np.pi / (2 * k)))
    qr = 0.5 * (pr[:-1] + pr[1:])
    w0 = wronskian(RealPolynomial.from_roots(pr), RealPolynomial.from_roots(qr)).coeffs[0]
    s = (abs(u.coeffs[0]) / w0) ** (1.0 / (2 * k - 2))
    return NormalizedPair.from_roots(s * pr, s * qr)


def _root_blend(u0: np.ndarray, u1: np.ndarray):
    """Path through Pol interpolating upper-half-plane root sets."""
    r0 = np.sort_complex(_upper(u0))
    r1 = np.sort_complex(_upper(u1))

    def path(t):
        r = (1 - t) * r0 + t * r1
        full = np.concatenate([r, np.conj(r)])
        return RealPolynomial.from_roots(full).coeffs.real

    return path


def _upper(c):
    z = complex_roots(RealPolynomial(c)).roots
    return z[z.imag > 0]


def _newton(x, target, k, tol, stats, max_iter=8):
    for _ in range(max_iter):
        F = _w_lower(x, k) - target
        res = float(np.max(np.abs(F)))
        if res <= tol:
            return x, res
        J = _fd_jacobian(x, k)
        stats.newton_iterations += 1
        try:
            x = x - np.linalg.solve(J, F)
        except np.linalg.LinAlgError:
            return x, np.inf
    F = _w_lower(x, k) - target
    return x, float(np.max(np.abs(F)))


def _interlaces(x, k) -> bool:
    try:
        return bool(NormalizedPair(x[: k - 1], x[k - 1:]).check())
    except NotInterlacing:
        return False


def invert_wronskian(u, k: int | None = None, max_steps: int = 10000, return_stats: bool = False):
    """The normalized pair whose Wronskian equals ``u``, by Newton continuation.

    Tracks the straight coefficient path from the Wronskian of a Chebyshev
    seed to ``u``; positivity is re-checked at each accepted point, and the
    path falls back to a root-set blend if it ever leaves Pol.
    """
    if isinstance(u, PositivePolynomial):
        u = u.poly
    elif not isinstance(u, RealPolynomial):
        u = RealPolynomial(np.asarray(u, dtype=float))
    if not is_in_pol(u):
        raise ValueError("u must be monic, of even degree and positive on the real line")
    kk = u.degree // 2 + 1
    if k is not None and k != kk:
        raise ValueError(f"deg u = {u.degree} needs k = {kk}, got {k}")
    k = kk
    target = u.coeffs[: 2 * k - 2].astype(float)
    cscale = max(1.0, float(np.max(np.abs(u.coeffs))))
    tol = 1e-11 * cscale

    stats = PathStats()
    seed = chebyshev_seed(u, k)
    x = np.concatenate([seed.a, seed.b])
    u0 = wronskian(seed.p, seed.q).coeffs.astype(float)
    u1 = u.coeffs.astype(float)

    def straight(t):
        return (1 - t) * u0 + t * u1

    path = straight
    t, h = 0.0, 0.05
    while t < 1.0:
        if stats.steps + stats.rejected > max_steps:
            raise PathLost(f"continuation exceeded {max_steps} steps at t = {t:.6g}")
        h = min(h, 1.0 - t)
        accepted = False
        for _ in range(9):
            t_new = t + h
            ut = path(t_new)
            if not is_in_pol(RealPolynomial(ut)):
                if path is straight:
                    log.info("positivity lost at t=%.4g; rerouting through root blend", t_new)
                    path = _root_blend(path(t), u1)
                    stats.rerouted = True
                    # restart the parameter on the new path
                    t_base = t
                    base = path
                    path = lambda s, base=base, t_base=t_base: base((s - t_base) / (1 - t_base))
                    continue
                raise PositivityLost(f"path point at t = {t_new:.6g} left Pol")
            # Euler predictor along dx/dt = J^{-1} du/dt
            J = _fd_jacobian(x, k)
            du = (path(t_new)[: 2 * k - 2] - path(t)[: 2 * k - 2])
            try:
                x_pred = x + np.linalg.solve(J, du)
            except np.linalg.LinAlgError:
                x_pred = x
            x_new, res = _newton(x_pred, ut[: 2 * k - 2], k, tol * 1e3, stats)
            if np.isfinite(res) and res <= tol * 1e3 and _interlaces(x_new, k):
                accepted = True
                break
            stats.rejected += 1
            h *= 0.5
        if not accepted:
            raise PathLost(f"no step accepted after 8 halvings at t = {t:.6g}")
        cond = float(np.linalg.cond(_fd_jacobian(x_new, k)))
        stats.max_condition = max(stats.max_condition, cond)
        stats.condition_log.append(cond)
        x, t = x_new, t_new
        stats.steps += 1
        h = min(2 * h, 0.25)

    x, res = _newton(x, target, k, tol, stats, max_iter=20)
    stats.final_residual = res
    if res > 1e3 * tol or not _interlaces(x, k):
        raise PathLost(f"final Newton polish stalled at residual {res:.3g}")
    out = NormalizedPair(x[: k - 1], x[k - 1:])
    log.debug("inverted degree-%d Wronskian: %s", 2 * k - 2, stats.to_dict())
    return (out, stats) if return_stats else out


def invert_from_json(text: str) -> dict:
    d = json.loads(text)
    u = RealPolynomial(np.asarray(d["u"]["coeffs"], dtype=float))
    pair, stats = invert_wronskian(u, d.get("k"), return_stats=True)
    return {"pair": pair.to_dict(), "path": stats.to_dict()}


__all__ = [
    "NormalizedPair",
    "PositivePolynomial",
    "PathStats",
    "is_in_pol",
    "invert_wronskian",
    "invert_from_json",
    "chebyshev_seed",
]
