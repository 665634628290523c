"""|R|^2 and Re R on the diameter circles C_j, and the level curves |R| = r
inside the disks D_j.

Disk indices ``j`` are 1-based: D_j has diameter (p_j, p_{j+1}).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np
from scipy import ndimage

from .errors import FlatMinimum, GridTooCoarse
from .geometry import Disk
from .polynomial import InterlacingPair, default_tol
from .roots import wronskian_roots

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _check_j(pair: InterlacingPair, j: int):
    if not 1 <= j <= pair.k - 1:
        raise ValueError(f"disk index must be in 1..{pair.k - 1}, got {j}")


def disk(pair: InterlacingPair, j: int) -> Disk:
    _check_j(pair, j)
    return Disk.from_diameter(pair.p_roots[j - 1], pair.p_roots[j])


def half_circle_point(pair: InterlacingPair, j: int, x):
    """The point of the upper half-circle C_j^+ with real part ``x``."""
    d = disk(pair, j)
    x = np.asarray(x, dtype=float)
    y = np.sqrt(np.maximum(d.radius**2 - (x - d.center) ** 2, 0.0))
    return x + 1j * y


# ---------------------------------------------------------------- Stewart form


@dataclass(frozen=True, eq=False)
class RationalInW:
    """|R|^2 on C_j written in w = |z - p_{j+1}|^2 as a ratio of linear factors.

    ``numerator_factors[l] = (s_l, t_l)`` stands for ``s_l*w + t_l``; likewise
    the denominator.  ``constant`` multiplies the ratio (1 unless normalized).
    """

    numerator_factors: np.ndarray
    denominator_factors: np.ndarray
    j: int
    domain: tuple
    constant: float = 1.0
    normalized: bool = False
    center: float = 0.0
    radius: float = 1.0

    def __call__(self, w):
        w = np.asarray(w, dtype=float)
        num = np.ones(w.shape)
        den = np.ones(w.shape)
        for s, t in self.numerator_factors:
            num = num * (s * w + t)
        for u, v in self.denominator_factors:
            den = den * (u * w + v)
        with np.errstate(divide="ignore"):
            out = self.constant * num / den
        return out[()] if out.ndim == 0 else out

    def w_of(self, z):
        """The coordinate w of a point z on C_j."""
        right = self.center + self.radius
        w = np.abs(np.asarray(z) - right) ** 2
        if self.normalized:
            w = w / self.radius**2
        return w

    def w_of_x(self, x):
        """w as an affine function of Re z (w = 2(1 - x) after normalizing)."""
        xn = (np.asarray(x, dtype=float) - self.center) / self.radius
        w = 2.0 * (1.0 - xn)
        return w if self.normalized else w * self.radius**2


def abs_R_squared_in_w(pair: InterlacingPair, j: int, normalized: bool = False) -> RationalInW:
    _check_j(pair, j)
    a, b = pair.p_roots[j - 1], pair.p_roots[j]
    center, radius = 0.5 * (a + b), 0.5 * (b - a)
    if normalized:
        qn = (pair.q_roots - center) / radius
        pn = (pair.p_roots - center) / radius
        num = np.column_stack([qn, (1.0 - qn) ** 2])
        den = np.column_stack([pn, (1.0 - pn) ** 2])
        return RationalInW(num, den, j, (0.0, 4.0), 1.0 / radius**2, True, center, radius)
    num = np.column_stack([(2 * pair.q_roots - a - b) / (b - a), (pair.q_roots - b) ** 2])
    den = np.column_stack([(2 * pair.p_roots - a - b) / (b - a), (pair.p_roots - b) ** 2])
    return RationalInW(num, den, j, (0.0, (b - a) ** 2), 1.0, False, center, radius)


def psi_map(xi: float) -> float:
    """xi -> -(1 - xi)^2 / xi, the root of the factor xi*w + (1 - xi)^2."""
    xi = float(xi)
    if xi == 0.0:
        raise ZeroDivisionError("psi_map is undefined at 0")
    return -((1.0 - xi) ** 2) / xi


# ---------------------------------------------------------------- convexity


def phi(pair: InterlacingPair, j: int, x):
    """|R|^2 along C_j^+ as a function of the real part x."""
    return pair.abs_R_squared(half_circle_point(pair, j, x))


@dataclass(frozen=True)
class ConvexityReport:
    convex: bool
    min_second_difference: float
    threshold: float
    n_grid: int


def convexity_check(pair: InterlacingPair, j: int, n_grid: int = 256) -> ConvexityReport:
    if n_grid < 16:
        raise ValueError("n_grid must be at least 16")
    d = disk(pair, j)
    delta = 2 * d.radius / (4 * n_grid)
    x = np.linspace(d.left + delta, d.right - delta, n_grid)
    f = phi(pair, j, x)
    second = f[:-2] - 2 * f[1:-1] + f[2:]
    local = np.maximum(1.0, np.maximum(np.maximum(f[:-2], f[1:-1]), f[2:]))
    tol = pair.tol * local
    worst = float(np.min(second))
    return ConvexityReport(bool(np.all(second >= -tol)), worst, float(pair.tol), n_grid)


class MinModulus(NamedTuple):
    m: float
    P: complex


def _golden_min(f, a: float, b: float, xtol: float):
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > xtol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return (a + b) / 2


def min_modulus_on_halfcircle(pair: InterlacingPair, j: int) -> MinModulus:
    """m = min |R| over C_j^+ and the point P where it is attained."""
    d = disk(pair, j)
    f = lambda x: float(phi(pair, j, x))
    x = _golden_min(f, d.left, d.right, 1e-13 * max(1.0, abs(d.center), d.radius))
    fmin = f(x)
    lo, hi = f(x - 0.25 * d.radius), f(x + 0.25 * d.radius)
    if abs(lo - fmin) <= default_tol(1.0) * fmin and abs(hi - fmin) <= default_tol(1.0) * fmin:
        raise FlatMinimum("|R|^2 is constant near the minimum", midpoint=d.center)
    return MinModulus(math.sqrt(fmin), complex(half_circle_point(pair, j, x)))


def critical_values(pair: InterlacingPair) -> np.ndarray:
    """R at the roots of W(p, q)."""
    return pair.R(wronskian_roots(pair).roots)


# ---------------------------------------------------------------- Re R on C_j


@dataclass(frozen=True)
class NormalizedDisk:
    """R composed with a real Moebius map T sending p_j -> -1, p_{j+1} -> 1 and
    q_{j-1} -> infinity (T is affine for j = 1).

    In these coordinates R = sum residues/(w - poles) with poles[0] = -1,
    poles[1] = 1 and all other poles > 1.
    """

    poles: np.ndarray
    residues: np.ndarray
    transform: tuple  # (a, b, c, d): T(z) = (a z + b)/(c z + d)

    def R(self, w):
        w = np.asarray(w, dtype=complex)
        out = np.zeros(w.shape, dtype=complex)
        for a, p in zip(self.residues, self.poles):
            out = out + a / (w - p)
        return out


def normalize_at_disk(pair: InterlacingPair, j: int) -> NormalizedDisk:
    _check_j(pair, j)
    a_, b_ = pair.p_roots[j - 1], pair.p_roots[j]
    others = np.concatenate([pair.p_roots[j + 1 :], pair.p_roots[: j - 1]])
    res_others = np.concatenate([pair.residues[j + 1 :], pair.residues[: j - 1]])
    if j == 1:
        # affine: T(z) = (2z - a - b)/(b - a)
        sc = 2.0 / (b_ - a_)
        T = (sc, -(a_ + b_) / (b_ - a_), 0.0, 1.0)
        deriv = lambda z: sc * np.ones_like(z)
    else:
        s = pair.q_roots[j - 2]
        ca = (b_ + a_ - 2 * s) / (b_ - a_)
        cb = -(a_ - s) - ca * a_
        T = (ca, cb, 1.0, -s)
        det = -ca * s - cb
        deriv = lambda z: det / (z - s) ** 2
    ta, tb, tc, td = T
    Tz = lambda z: (ta * z + tb) / (tc * z + td)
    src = np.concatenate([[a_, b_], others])
    res = np.concatenate([[pair.residues[j - 1], pair.residues[j]], res_others])
    poles = Tz(src)
    poles[0], poles[1] = -1.0, 1.0
    return NormalizedDisk(poles, res * deriv(src), T)


def psi_term_derivative(alpha: float, pole: float, x):
    """Derivative in x of alpha (x - pole)/((x - pole)^2 + 1 - x^2).

    The numerator is 1 - pole^2 (not 1 - pole); the sign is the same for
    pole > 1, which is all the monotonicity argument uses.
    """
    x = np.asarray(x, dtype=float)
    return alpha * (1.0 - pole**2) / (1.0 + pole**2 - 2.0 * pole * x) ** 2


@dataclass(frozen=True)
class MonotonicityReport:
    monotone_decreasing: bool
    constant: bool
    max_first_difference: float
    spread: float
    n_samples: int


def re_R_monotonicity(
    pair: InterlacingPair, j: int, n_samples: int = 201, tol: float | None = None
) -> MonotonicityReport:
    """Sample Re R on the normalized upper unit half-circle, x from -1 to 1."""
    tol = default_tol(1.0) if tol is None else tol
    nd = normalize_at_disk(pair, j)
    # stay off the two poles at x = -1, 1
    x = np.cos(np.linspace(np.pi, 0.0, n_samples + 2)[1:-1])
    w = x + 1j * np.sqrt(1.0 - x**2)
    vals = nd.R(w).real
    diffs = np.diff(vals)
    spread = float(np.max(vals) - np.min(vals))
    return MonotonicityReport(
        monotone_decreasing=bool(np.all(diffs < -tol)),
        constant=spread <= 1e-10 * max(1.0, float(np.max(np.abs(vals)))),
        max_first_difference=float(np.max(diffs)),
        spread=spread,
        n_samples=n_samples,
    )


def loop_convexity_flag(pair: InterlacingPair, j: int, n_samples: int = 400) -> bool:
    """Uncertified: does the sampled loop R(C_j^+) turn in one direction only?"""
    d = disk(pair, j)
    t = np.linspace(0, np.pi, n_samples + 2)[1:-1]
    vals = pair.R(d.center + d.radius * np.exp(1j * t))
    seg = np.diff(vals)
    cross = (np.conj(seg[:-1]) * seg[1:]).imag
    scale = np.abs(seg[:-1]) * np.abs(seg[1:])
    cross = cross[scale > 0] / scale[scale > 0]
    return bool(np.all(cross >= -1e-9) or np.all(cross <= 1e-9))


# ---------------------------------------------------------------- level curves


@dataclass(frozen=True)
class LevelCurveReport:
    r: float
    j: int
    m: float
    component_count: int
    classification: str  # "single-oval" | "two-arcs" | "tangent"
    grid_resolution: int
    real_crossings: int

    def to_dict(self) -> dict:
        return asdict(self)


_TANGENT_REL = 1e-3
_EIGHT = np.ones((3, 3), dtype=int)


def _real_crossings(pair, j, r, n=4001):
    d = disk(pair, j)
    x = np.linspace(d.left, d.right, n + 2)[1:-1]
    s = np.sign(np.abs(pair.R(x)) - r)
    return int(np.count_nonzero(np.diff(s)))


def rasterize_disk(pair: InterlacingPair, j: int, grid: int):
    """Pixel centers over the square around D_j, the in-disk mask and |R|."""
    d = disk(pair, j)
    h = 2 * d.radius / grid
    ax = -d.radius + (np.arange(grid) + 0.5) * h
    X, Y = np.meshgrid(d.center + ax, ax[::-1])
    Z = X + 1j * Y
    dist = np.abs(Z - d.center)
    mask = dist < d.radius
    absR = np.full(Z.shape, np.inf)
    absR[mask] = np.abs(pair.R(Z[mask]))
    return Z, mask, absR, dist, h


def level_curve_classify(
    pair: InterlacingPair, j: int, r: float, grid: int = 512, m: float | None = None
) -> LevelCurveReport:
    """Classify {|R| = r} inside D_j from a flood fill of the sublevel raster.

    single-oval: the sublevel component around q_j stays off the circle and
    the rest of the disk is connected.  two-arcs: the superlevel set splits
    into the two crescents at p_j and p_{j+1}.
    """
    if not r > 0:
        raise ValueError("r must be positive")
    if m is None:
        m = min_modulus_on_halfcircle(pair, j).m
    crossings = _real_crossings(pair, j, r)
    if abs(r - m) < _TANGENT_REL * m:
        return LevelCurveReport(float(r), j, float(m), 1, "tangent", grid, crossings)

    d = disk(pair, j)
    Z, mask, absR, dist, h = rasterize_disk(pair, j, grid)
    sub = mask & (absR < r)
    sup = mask & ~sub
    sub_lab, n_sub = ndimage.label(sub)
    sup_lab, n_sup = ndimage.label(sup, structure=_EIGHT)

    qj = pair.q_roots[j - 1]
    qi = np.unravel_index(np.argmin(np.abs(Z - qj)), Z.shape)
    comp = sub_lab[qi]
    if comp == 0:
        raise GridTooCoarse("no sublevel pixel at q_j")
    ring = mask & (dist > d.radius - 1.5 * h)
    touches = bool(np.any(ring & (sub_lab == comp)))

    if not touches and n_sup == 1 and n_sub == 1:
        return LevelCurveReport(float(r), j, float(m), 1, "single-oval", grid, crossings)
    if touches and n_sup == 2:
        return LevelCurveReport(float(r), j, float(m), 2, "two-arcs", grid, crossings)
    raise GridTooCoarse(
        f"ambiguous raster at r={r:g}: touches={touches}, sublevel={n_sub}, superlevel={n_sup}"
    )


def level_curve_sweep(pair: InterlacingPair, j: int, ratios, grid: int = 256):
    m = min_modulus_on_halfcircle(pair, j).m
    return [level_curve_classify(pair, j, ratio * m, grid, m=m) for ratio in ratios]


def imag_sign_check(pair: InterlacingPair, n: int = 1000, seed: int = 0) -> bool:
    """Im R(z) < 0 at ``n`` random points of the upper half-plane near the roots."""
    rng = np.random.default_rng(seed)
    s = max(1.0, pair.scale)
    z = rng.uniform(-2 * s, 2 * s, n) + 1j * s * rng.uniform(1e-3, 2.0, n)
    return bool(np.all(pair.R(z).imag < 0))
