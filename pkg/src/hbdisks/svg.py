"""Deterministic SVG figures: circles, Omega_p, root markers, level contours.

Numbers are printed with a fixed format so identical inputs give
byte-identical files.
"""

from __future__ import annotations

import os
import tempfile

import numpy as np
from skimage.measure import find_contours

from .analysis import disk as disk_j
from .analysis import min_modulus_on_halfcircle
from .geometry import omega_region
from .polynomial import InterlacingPair

_W = 640


def _f(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class Canvas:
    """Maps a complex-plane box onto a square SVG viewport."""

    def __init__(self, xmin, xmax, ymin, ymax, margin: float = 0.15, size: int = _W):
        w, h = xmax - xmin, ymax - ymin
        side = max(w, h, 1e-9) * (1 + 2 * margin)
        cx, cy = 0.5 * (xmin + xmax), 0.5 * (ymin + ymax)
        self.x0, self.y0 = cx - side / 2, cy - side / 2
        self.side = side
        self.size = size
        self.items: list[str] = []

    def xy(self, z):
        s = self.size / self.side
        return (z.real - self.x0) * s, (self.y0 + self.side - z.imag) * s

    def length(self, r):
        return r * self.size / self.side

    def add(self, item: str):
        self.items.append(item)

    def circle(self, center: complex, r: float, cls: str):
        x, y = self.xy(complex(center))
        self.add(f'<circle class="{cls}" cx="{_f(x)}" cy="{_f(y)}" r="{_f(self.length(r))}"/>')

    def cross(self, z: complex, cls: str = "wroot", h: float = 5.0):
        x, y = self.xy(complex(z))
        self.add(
            f'<path class="{cls}" d="M{_f(x - h)} {_f(y - h)}L{_f(x + h)} {_f(y + h)}'
            f'M{_f(x - h)} {_f(y + h)}L{_f(x + h)} {_f(y - h)}"/>'
        )

    def dot(self, z: complex, cls: str = "hbroot", r: float = 4.0):
        x, y = self.xy(complex(z))
        self.add(f'<circle class="{cls}" cx="{_f(x)}" cy="{_f(y)}" r="{_f(r)}"/>')

    def polyline(self, pts, cls: str):
        coords = " ".join(f"{_f(x)},{_f(y)}" for x, y in (self.xy(z) for z in pts))
        self.add(f'<polyline class="{cls}" points="{coords}"/>')

    def circle_path(self, center, r) -> str:
        x, y = self.xy(complex(center))
        rr = self.length(r)
        return (f"M{_f(x - rr)} {_f(y)}A{_f(rr)} {_f(rr)} 0 1 0 {_f(x + rr)} {_f(y)}"
                f"A{_f(rr)} {_f(rr)} 0 1 0 {_f(x - rr)} {_f(y)}Z")

    def render(self, title: str = "") -> str:
        style = (
            ".omega{fill:#cfe3f5;fill-rule:evenodd;stroke:none}"
            ".c0{fill:none;stroke:#1f4e79;stroke-width:1.5}"
            ".cj{fill:none;stroke:#1f4e79;stroke-width:1}"
            ".axis{stroke:#888;stroke-width:0.5}"
            ".wroot{stroke:#b00;stroke-width:1.5;fill:none}"
            ".hbroot{fill:#060}"
            ".pole{fill:#000}.zero{fill:#fff;stroke:#000}"
            ".level{fill:none;stroke:#444;stroke-width:0.8}"
            ".critical{fill:none;stroke:#b00;stroke-width:1.2}"
        )
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.size}" height="{self.size}" '
            f'viewBox="0 0 {self.size} {self.size}">\n<style>{style}</style>\n'
        )
        if title:
            head += f"<title>{title}</title>\n"
        return head + "\n".join(self.items) + "\n</svg>\n"


def _axis(cv: Canvas):
    y = cv.xy(0j)[1]
    cv.add(f'<line class="axis" x1="0" y1="{_f(y)}" x2="{cv.size}" y2="{_f(y)}"/>')


def omega_svg(pair: InterlacingPair, wronskian_roots=(), hb_roots=()) -> str:
    """Circles C_0..C_{k-1}, shaded Omega_p, crosses at Wronskian roots and
    dots at HB roots."""
    region = omega_region(pair)
    pts = np.concatenate([np.asarray(wronskian_roots, complex), np.asarray(hb_roots, complex),
                          pair.p_roots.astype(complex),
                          [region.outer.center + 1j * region.outer.radius,
                           region.outer.center - 1j * region.outer.radius]])
    cv = Canvas(pts.real.min(), pts.real.max(), pts.imag.min(), pts.imag.max())
    d = cv.circle_path(region.outer.center, region.outer.radius)
    d += "".join(cv.circle_path(c.center, c.radius) for c in region.inner)
    cv.add(f'<path class="omega" d="{d}"/>')
    _axis(cv)
    cv.circle(region.outer.center, region.outer.radius, "c0")
    for c in region.inner:
        cv.circle(c.center, c.radius, "cj")
    for x in pair.p_roots:
        cv.dot(x, "pole", 2.5)
    for x in pair.q_roots:
        cv.dot(x, "zero", 2.5)
    for z in sorted(np.asarray(wronskian_roots, complex), key=lambda z: (z.real, z.imag)):
        cv.cross(z)
    for z in sorted(np.asarray(hb_roots, complex), key=lambda z: (z.real, z.imag)):
        cv.dot(z)
    return cv.render("Omega_p")


def level_svg(pair: InterlacingPair, j: int, ratios=(0.25, 0.5, 0.75, 1.0, 1.5, 2.5, 4.0), grid: int = 256) -> str:
    """Contours |R| = ratio * m inside D_j, traced by marching squares on a raster."""
    dsk = disk_j(pair, j)
    m = min_modulus_on_halfcircle(pair, j).m
    xs = np.linspace(dsk.left, dsk.right, grid)
    ys = np.linspace(-dsk.radius, dsk.radius, grid)
    X, Y = np.meshgrid(xs, ys)
    Z = X + 1j * Y
    with np.errstate(divide="ignore", invalid="ignore"):
        A = np.sqrt(pair.abs_R_squared(Z))
    A = np.where(np.isfinite(A), A, 1e300)

    cv = Canvas(dsk.left, dsk.right, -dsk.radius, dsk.radius)
    _axis(cv)
    cv.circle(dsk.center, dsk.radius, "cj")
    step_x = (xs[-1] - xs[0]) / (grid - 1)
    step_y = (ys[-1] - ys[0]) / (grid - 1)
    for ratio in ratios:
        cls = "critical" if ratio == 1.0 else "level"
        for c in find_contours(A, ratio * m):
            z = (xs[0] + c[:, 1] * step_x) + 1j * (ys[0] + c[:, 0] * step_y)
            # keep only the runs inside the closed disk
            keep = np.abs(z - dsk.center) <= dsk.radius
            edges = np.flatnonzero(np.diff(np.concatenate([[0], keep.astype(int), [0]])))
            for a, b in zip(edges[::2], edges[1::2]):
                if b - a >= 2:
                    cv.polyline(z[a:b], cls)
    cv.dot(pair.q_roots[j - 1], "zero", 2.5)
    return cv.render(f"level curves in D_{j}")


def atomic_write(path: str, text: str):
    """Write ``text`` to ``path`` through a temp file and rename."""
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


__all__ = ["Canvas", "omega_svg", "level_svg", "atomic_write"]
