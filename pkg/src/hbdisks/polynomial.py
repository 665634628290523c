"""Real and complex polynomials, the Wronskian, residues and interlacing pairs.

Coefficients are stored in ascending degree order, ``coeffs[i]`` multiplying
``z**i``.  Everything here is immutable.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DegenerateMatrix, NonSimpleRoot, NotInterlacing

BASE_TOL = 1e-9
TOL_ENV = "HBDISKS_TOL"


def default_tol(scale: float = 1.0) -> float:
    """Absolute tolerance for a problem whose roots have magnitude ``scale``.

    The base value 1e-9 can be overridden with the HBDISKS_TOL environment
    variable.
    """
    base = float(os.environ.get(TOL_ENV, BASE_TOL))
    return base * max(1.0, abs(float(scale)))


def _trim(c: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(c)
    if nz.size == 0:
        return c[:1] * 0
    return c[: nz[-1] + 1]


class _Polynomial:
    _dtype: type = float

    def __init__(self, coeffs: Sequence):
        c = np.array(coeffs, dtype=self._dtype).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=self._dtype)
        c = _trim(c)
        c.setflags(write=False)
        self._coeffs = c

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def leading(self):
        return self._coeffs[-1]

    def is_zero(self) -> bool:
        return self.degree == 0 and self._coeffs[0] == 0

    @classmethod
    def from_roots(cls, roots, leading=1.0):
        c = np.array([leading], dtype=complex)
        for r in np.asarray(roots).ravel():
            c = np.convolve(c, [-r, 1.0])
        if cls._dtype is float:
            c = c.real
        return cls(c)

    def __call__(self, z):
        return eval_poly(self, z)

    def __repr__(self):
        return f"{type(self).__name__}({list(self._coeffs)!r})"

    def _coerce(self, other):
        if isinstance(other, _Polynomial):
            return other
        return _wrap([other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        out = np.zeros(n, dtype=np.result_type(self.coeffs, other.coeffs))
        out[: len(self.coeffs)] += self.coeffs
        out[: len(other.coeffs)] += other.coeffs
        return _wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return _wrap(-self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, _Polynomial):
            # direct convolution; degrees stay small
            return _wrap(np.convolve(self.coeffs, other.coeffs))
        return _wrap(self.coeffs * other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, _Polynomial):
            return NotImplemented
        return self.coeffs.shape == other.coeffs.shape and bool(
            np.all(self.coeffs == other.coeffs)
        )

    def __hash__(self):
        return hash(tuple(self.coeffs.tolist()))

    def allclose(self, other, rtol=1e-9, atol=0.0) -> bool:
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(n, dtype=complex)
        b = np.zeros(n, dtype=complex)
        a[: len(self.coeffs)] = self.coeffs
        b[: len(other.coeffs)] = other.coeffs
        scale = max(np.max(np.abs(a)), np.max(np.abs(b)), 1e-300)
        return bool(np.all(np.abs(a - b) <= atol + rtol * scale))

    def derivative(self):
        return derivative(self)

    def monic(self):
        return _wrap(self.coeffs / self.leading)

    def to_dict(self) -> dict:
        if np.iscomplexobj(self.coeffs):
            return {"coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs]}
        return {"coeffs": [float(c) for c in self.coeffs]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


class RealPolynomial(_Polynomial):
    _dtype = float


class ComplexPolynomial(_Polynomial):
    _dtype = complex

    def is_real(self, tol=0.0) -> bool:
        return bool(np.all(np.abs(self.coeffs.imag) <= tol))


def _wrap(coeffs) -> _Polynomial:
    c = np.asarray(coeffs)
    if np.iscomplexobj(c):
        return ComplexPolynomial(c)
    return RealPolynomial(c)


def polynomial_from_dict(d: dict) -> _Polynomial:
    """Inverse of ``to_dict``; ``[re, im]`` entries give a complex polynomial."""
    raw = d["coeffs"]
    if any(isinstance(c, (list, tuple)) for c in raw):
        vals = [complex(c[0], c[1]) if isinstance(c, (list, tuple)) else complex(c) for c in raw]
        return ComplexPolynomial(vals)
    return RealPolynomial([float(c) for c in raw])


def eval_poly(poly: _Polynomial, z):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    z = np.asarray(z)
    acc = np.zeros(z.shape, dtype=np.result_type(z, poly.coeffs, float))
    for c in poly.coeffs[::-1]:
        acc = acc * z + c
    return acc[()] if acc.ndim == 0 else acc


def derivative(poly: _Polynomial) -> _Polynomial:
    if poly.degree == 0:
        return type(poly)([0.0])
    c = poly.coeffs[1:] * np.arange(1, len(poly.coeffs))
    return type(poly)(c)


def wronskian(p: _Polynomial, q: _Polynomial) -> _Polynomial:
    """W(p, q) = p'q - q'p."""
    return derivative(p) * q - derivative(q) * p


def mobius_pencil(pair, matrix) -> tuple[_Polynomial, _Polynomial]:
    """Return ``(a p + b q, c p + d q)`` for ``matrix = (a, b, c, d)``.

    The Wronskian of the result is ``(ad - bc) * W(p, q)``.
    """
    p, q = _as_pq(pair)
    a, b, c, d = (float(x) for x in matrix)
    det = a * d - b * c
    entry_scale = max(abs(a), abs(b), abs(c), abs(d), 1e-300)
    if abs(det) <= default_tol(1.0) * entry_scale**2:
        raise DegenerateMatrix(f"ad - bc = {det!r} is numerically zero")
    return a * p + b * q, c * p + d * q


def _as_pq(pair):
    if isinstance(pair, InterlacingPair):
        return pair.p, pair.q
    p, q = pair
    return p, q


@dataclass(frozen=True, eq=False)
class InterlacingPair:
    """Monic ``p`` of degree k and monic ``q`` of degree k-1 with strictly
    interlacing real roots ``p_1 < q_1 < p_2 < ... < q_{k-1} < p_k``.

    Build with :meth:`from_roots` (exact roots) or :meth:`from_polynomials`.
    """

    p: RealPolynomial
    q: RealPolynomial
    p_roots: np.ndarray
    q_roots: np.ndarray
    residues: np.ndarray = field(repr=False)

    @classmethod
    def from_roots(cls, p_roots, q_roots) -> "InterlacingPair":
        pr = np.sort(np.asarray(p_roots, dtype=float).ravel())
        qr = np.sort(np.asarray(q_roots, dtype=float).ravel())
        problem = interlacing_violation(pr, qr)
        if problem:
            raise NotInterlacing(problem)
        p = RealPolynomial.from_roots(pr)
        q = RealPolynomial.from_roots(qr)
        return cls._build(p, q, pr, qr)

    @classmethod
    def from_polynomials(cls, p, q) -> "InterlacingPair":
        from .roots import verify_interlacing

        p = RealPolynomial(np.real(np.asarray(p.coeffs)))
        q = RealPolynomial(np.real(np.asarray(q.coeffs)))
        if p.degree < 2 or q.degree != p.degree - 1:
            raise NotInterlacing(
                f"need deg q = deg p - 1 >= 1, got deg p = {p.degree}, deg q = {q.degree}"
            )
        if p.leading * q.leading < 0:
            raise NotInterlacing("leading coefficients of p and q have opposite signs")
        p, q = p.monic(), q.monic()
        check = verify_interlacing(p, q)
        if not check:
            raise NotInterlacing(check.diagnostic)
        return cls._build(p, q, check.p_roots, check.q_roots)

    @classmethod
    def _build(cls, p, q, pr, qr):
        pr = np.array(pr, dtype=float)
        qr = np.array(qr, dtype=float)
        res = _residues_from_roots(pr, qr)
        for a in (pr, qr, res):
            a.setflags(write=False)
        return cls(p, q, pr, qr, res)

    @property
    def k(self) -> int:
        return len(self.p_roots)

    @property
    def scale(self) -> float:
        return float(np.max(np.abs(self.p_roots)))

    @property
    def tol(self) -> float:
        return default_tol(self.scale)

    def R(self, z):
        """q(z)/p(z), evaluated from the factored forms."""
        z = np.asarray(z, dtype=complex)
        num = np.ones(z.shape, dtype=complex)
        den = np.ones(z.shape, dtype=complex)
        for r in self.q_roots:
            num = num * (z - r)
        for r in self.p_roots:
            den = den * (z - r)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = num / den
        return out[()] if out.ndim == 0 else out

    def abs_R_squared(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.ones(z.shape)
        for r in self.q_roots:
            out = out * np.abs(z - r) ** 2
        for r in self.p_roots:
            out = out / np.abs(z - r) ** 2
        return out[()] if out.ndim == 0 else out

    def to_dict(self) -> dict:
        return {
            "p": self.p.to_dict(),
            "q": self.q.to_dict(),
            "p_roots": [float(x) for x in self.p_roots],
            "q_roots": [float(x) for x in self.q_roots],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "InterlacingPair":
        """Accepts ``{"p": ..., "q": ...}``; optional root lists take precedence
        when they reproduce the coefficients."""
        if "p_roots" in d and "q_roots" in d:
            pair = cls.from_roots(d["p_roots"], d["q_roots"])
            if "p" in d and "q" in d:
                p = polynomial_from_dict(d["p"]).monic()
                q = polynomial_from_dict(d["q"]).monic()
                if not (p.allclose(pair.p, rtol=1e-8) and q.allclose(pair.q, rtol=1e-8)):
                    raise NotInterlacing("root lists do not match the coefficients")
            return pair
        return cls.from_polynomials(polynomial_from_dict(d["p"]), polynomial_from_dict(d["q"]))

    @classmethod
    def from_json(cls, text: str) -> "InterlacingPair":
        return cls.from_dict(json.loads(text))


def interlacing_violation(p_roots, q_roots) -> str:
    """Empty string if ``p_1 < q_1 < ... < q_{k-1} < p_k``, else the first failure."""
    pr = np.asarray(p_roots, dtype=float)
    qr = np.asarray(q_roots, dtype=float)
    k = len(pr)
    if k < 2:
        return f"need at least two roots of p, got {k}"
    if len(qr) != k - 1:
        return f"q has {len(qr)} roots, expected {k - 1}"
    for j in range(k - 1):
        if not pr[j] < qr[j] < pr[j + 1]:
            return f"q_{j + 1}={qr[j]:g} not in (p_{j + 1},p_{j + 2}) = ({pr[j]:g}, {pr[j + 1]:g})"
    return ""


def _residues_from_roots(pr, qr) -> np.ndarray:
    k = len(pr)
    out = np.empty(k)
    for j in range(k):
        num = np.prod(pr[j] - qr)
        den = np.prod(np.delete(pr[j] - pr, j))
        if den == 0:
            raise NonSimpleRoot(f"p has a repeated root at {pr[j]!r}")
        out[j] = num / den
    return out


def residues(pair: InterlacingPair) -> np.ndarray:
    """alpha_j = q(p_j)/p'(p_j) for each root of p."""
    dp = derivative(pair.p)
    vals = np.asarray(eval_poly(dp, pair.p_roots), dtype=float)
    if np.any(np.abs(vals) < pair.tol):
        raise NonSimpleRoot("p'(p_j) vanishes numerically")
    return np.asarray(eval_poly(pair.q, pair.p_roots), dtype=float) / vals
