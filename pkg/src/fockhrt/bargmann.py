"""Bargmann transform L^2(R) -> F^2 and the time-frequency / Fock point map.

    (B g)(z) = (2 pi)^(-1/4) * int exp(-i z x + z^2/2 - x^2/4) g(x) dx

A time-frequency atom (a, b) acts on g by g(x) -> exp(2 pi i b x) g(x - a);
under B it becomes exp(i pi a b) U_lam with lam = -2 pi b - i a / 2.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import AliasingNotConverged, InputError, InsufficientGridError
from .fock import FockVector, inner

QUAD_HALF_WIDTH = 12.0
QUAD_NODES = 400
DECAY_TOL = 1e-14
ALIAS_TOL = 1e-8

_NORM = (2.0 * math.pi) ** -0.25


@dataclass(frozen=True)
class TimeFrequencyAtom:
    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise InputError("atom coordinates must be finite")

    def apply(self, g: Callable) -> Callable:
        a, b = self.a, self.b
        return lambda x: np.exp(2j * np.pi * b * x) * g(np.asarray(x) - a)


def tf_to_fock_point(atom: TimeFrequencyAtom) -> complex:
    return complex(-2.0 * math.pi * atom.b, -atom.a / 2.0)


def tf_phase(atom: TimeFrequencyAtom) -> complex:
    return cmath.exp(1j * math.pi * atom.a * atom.b)


def gaussian_window(x):
    """(2 pi)^(-1/4) exp(-x^2/4); its transform is the constant function 1."""
    x = np.asarray(x, dtype=float)
    return _NORM * np.exp(-x * x / 4.0)


@dataclass(frozen=True, eq=False)
class SampledSignal:
    grid: np.ndarray
    values: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        x = np.array(self.grid, dtype=float).reshape(-1)
        v = np.array(self.values, dtype=complex).reshape(-1)
        w = np.array(self.weights, dtype=float).reshape(-1)
        if not (x.size == v.size == w.size) or x.size < 2:
            raise InputError("grid, values and weights must have equal length >= 2")
        if np.any(np.diff(x) <= 0):
            raise InputError("grid must be strictly increasing")
        if np.any(w <= 0):
            raise InputError("quadrature weights must be positive")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(v))):
            raise InputError("signal samples must be finite")
        for arr in (x, v, w):
            arr.flags.writeable = False
        object.__setattr__(self, "grid", x)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_function(cls, g: Callable, half_width: float = QUAD_HALF_WIDTH,
                      nodes: int = QUAD_NODES) -> "SampledSignal":
        """Sample g on Gauss-Legendre nodes over [-half_width, half_width]."""
        t, w = np.polynomial.legendre.leggauss(nodes)
        x = half_width * t
        return cls(x, np.asarray(g(x), dtype=complex) * np.ones_like(x), half_width * w)

    def with_values(self, values) -> "SampledSignal":
        return SampledSignal(self.grid, values, self.weights)

    def l2_inner(self, other: "SampledSignal") -> complex:
        return complex(np.sum(self.weights * self.values * np.conj(other.values)))

    def to_dict(self) -> dict:
        return {
            "grid": [float(x) for x in self.grid],
            "values": [[float(v.real), float(v.imag)] for v in self.values],
            "weights": [float(w) for w in self.weights],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SampledSignal":
        try:
            x = np.array(d["grid"], dtype=float)
            v = np.array([complex(re, im) for re, im in d["values"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed signal: {exc}") from None
        w = d.get("weights")
        if w is None:
            # trapezoid weights; spectrally accurate on uniform grids for decaying integrands
            dx = np.diff(x)
            w = np.zeros_like(x)
            w[:-1] += dx / 2
            w[1:] += dx / 2
        return cls(x, v, np.asarray(w, dtype=float))

    @classmethod
    def from_json(cls, text: str) -> "SampledSignal":
        return cls.from_dict(json.loads(text))


def bargmann_values(signal: SampledSignal, zs) -> np.ndarray:
    zs = np.atleast_1d(np.asarray(zs, dtype=complex))
    out = np.zeros(zs.shape, dtype=complex)
    if not np.any(signal.values != 0):
        return out
    x = signal.grid
    base = signal.values * np.exp(-x * x / 4)
    for lo in range(0, zs.size, 256):
        z = zs[lo:lo + 256, None]
        integrand = np.exp(-1j * z * x + z * z / 2) * base
        mag = np.abs(integrand)
        peak = mag.max(axis=1)
        ends = np.maximum(mag[:, 0], mag[:, -1])
        bad = ends > DECAY_TOL * peak
        if bad.any():
            i = int(np.argmax(bad))
            raise InsufficientGridError(
                f"integrand at z={complex(z[i, 0])} is {ends[i] / peak[i]:.2e} of its "
                f"peak at the grid ends; widen the grid"
            )
        out[lo:lo + 256] = _NORM * (integrand @ signal.weights)
    return out


def bargmann_point(signal: SampledSignal, z: complex) -> complex:
    return complex(bargmann_values(signal, [z])[0])


def _contour_coefficients(signal, js, radius, N):
    theta = 2.0 * np.pi * np.arange(N) / N
    vals = bargmann_values(signal, radius * np.exp(1j * theta))
    avg = np.fft.fft(vals) / N  # (1/N) sum_n F(z_n) exp(-i j theta_n)
    return avg[js] * np.exp(-js * math.log(radius))


def _circles(M: int, radius: float | None):
    if radius is not None:
        return [(np.arange(M), float(radius))]
    # blocks of 8 coefficients, each read off the circle |z| = sqrt(j) of its
    # middle index, where sqrt(j!)/r^j * exp(r^2/2) is smallest
    out = []
    for lo in range(0, M, 8):
        js = np.arange(lo, min(lo + 8, M))
        out.append((js, max(1.0, math.sqrt(js.mean()))))
    return out


def bargmann_coefficients(signal: SampledSignal, M: int = 64, radius: float | None = 1.0,
                          points: int | None = None) -> FockVector:
    """Taylor coefficients of B g from discrete contour averages.

    With a numeric ``radius`` all coefficients come from one circle, as in
    a_j = (1/N) sum_n Bg(r e^{i t_n}) r^-j e^{-i j t_n}.  ``radius=None`` reads
    each block of coefficients off its own circle of radius ~sqrt(j), which
    keeps rounding noise flat in the Fock norm for long vectors.

    The estimate from N points is compared against 2N points; the largest
    per-coefficient change must stay below 1e-8.
    """
    if M < 1 or (radius is not None and radius <= 0):
        raise InputError("need M >= 1 and radius > 0")
    N = 4 * M if points is None else int(points)
    if N < 4 * M:
        raise InputError(f"contour needs at least 4M = {4 * M} points, got {N}")
    a = np.zeros(M, dtype=complex)
    err = 0.0
    for js, r in _circles(M, radius):
        a1 = _contour_coefficients(signal, js, r, N)
        a2 = _contour_coefficients(signal, js, r, 2 * N)
        err = max(err, float(np.max(np.abs(a1 - a2))))
        a[js] = a2
    if err > ALIAS_TOL:
        raise AliasingNotConverged(
            f"coefficients moved by {err:.2e} when doubling contour points to {2 * N}"
        )
    return FockVector(a)


def hermite_modes(count: int, half_width: float = QUAD_HALF_WIDTH,
                  nodes: int = QUAD_NODES) -> list[SampledSignal]:
    """Orthonormal modes from Gram-Schmidt on x^n h_0(x) in L^2(R).

    h_0 is the Gaussian window, whose transform is exactly 1; orthogonalising
    in L^2 (by quadrature) keeps the unitarity check on the images honest.
    """
    base = SampledSignal.from_function(gaussian_window, half_width, nodes)
    modes: list[SampledSignal] = []
    for n in range(count):
        v = base.with_values(base.values * base.grid ** n)
        for _ in range(2):  # second pass cleans rounding
            vals = v.values.copy()
            for q in modes:
                vals = vals - v.with_values(vals).l2_inner(q) * q.values
            v = v.with_values(vals)
        v = v.with_values(v.values / math.sqrt(v.l2_inner(v).real))
        modes.append(v)
    return modes


def image_gram(modes: list[SampledSignal], M: int, radius: float = 1.0) -> np.ndarray:
    images = [bargmann_coefficients(h, M, radius) for h in modes]
    K = len(images)
    G = np.empty((K, K), dtype=complex)
    for i in range(K):
        for j in range(K):
            G[i, j] = inner(images[i], images[j])
    return G


def _cross(u: complex, v: complex) -> float:
    return (u.conjugate() * v).imag


def map_preserves_lines(p: TimeFrequencyAtom, q: TimeFrequencyAtom,
                        r: TimeFrequencyAtom) -> bool:
    pts = [complex(t.a, t.b) for t in (p, q, r)]
    if len({pts[0], pts[1], pts[2]}) < 3:
        raise InputError("points must be distinct")
    lp, lq, lr = (tf_to_fock_point(t) for t in (p, q, r))
    u, v = lq - lp, lr - lp
    return abs(_cross(u, v)) <= 1e-12 * max(1.0, abs(u) * abs(v))


def lattice_image(A, offset) -> tuple[complex, complex, complex]:
    """Generators (e1, e2, e) of the image of the lattice A Z^2 + offset in C."""
    A = np.asarray(A, dtype=float)
    if abs(np.linalg.det(A)) == 0:
        raise InputError("lattice matrix must be invertible")
    to = lambda a, b: tf_to_fock_point(TimeFrequencyAtom(float(a), float(b)))  # noqa: E731
    zero = to(0.0, 0.0)
    e1 = to(*A[:, 0]) - zero
    e2 = to(*A[:, 1]) - zero
    return e1, e2, to(*offset)
