"""Truncated Fock space F^2 over C.

A function f(z) = sum_j a_j z^j is stored by its first M Taylor coefficients.
The Gaussian measure is exp(-|z|^2) dA(z) with dA = dx dy / pi, so the
monomials are orthogonal with

    <z^j, z^k> = delta_jk * j!

and every norm or inner product below carries that factorial weight.  The
orthonormal basis is e_j = z^j / sqrt(j!); coordinates in that basis are
called *normalized* coordinates (c_j = a_j sqrt(j!)).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InputError, TailGuardError

DEFAULT_M = 64
GUARD_FRACTION = 0.25
GUARD_REL_TOL = 1e-10


@lru_cache(maxsize=64)
def _sqrt_factorials(M: int) -> np.ndarray:
    # incremental w_{j+1} = w_j * sqrt(j+1); entries past float range become inf
    w = np.empty(M)
    acc = 1.0
    for j in range(M):
        if j:
            acc *= math.sqrt(j)
        w[j] = acc
    w.flags.writeable = False
    return w


def sqrt_factorials(M: int) -> np.ndarray:
    return _sqrt_factorials(int(M))


def _scale_by_sqrt_factorial(a: np.ndarray, inverse: bool = False) -> np.ndarray:
    w = sqrt_factorials(len(a))
    fin = np.isfinite(w)
    out = np.zeros(len(a), dtype=complex)
    out[fin] = a[fin] / w[fin] if inverse else a[fin] * w[fin]
    idx = np.nonzero(~fin & (a != 0))[0]
    if idx.size:
        # weights overflowed; redo those entries in log scale
        logw = np.array([0.5 * math.lgamma(j + 1) for j in idx])
        mag = np.log(np.abs(a[idx])) + (-logw if inverse else logw)
        if np.any(mag > 709.0):
            raise OverflowError("normalized coefficient exceeds float range")
        out[idx] = np.exp(mag + 1j * np.angle(a[idx]))
    return out


@dataclass(frozen=True, eq=False)
class FockVector:
    """Element of F^2 truncated to its first ``trunc_dim`` Taylor coefficients."""

    coeffs: np.ndarray

    def __post_init__(self):
        a = np.array(self.coeffs, dtype=complex).reshape(-1)
        if a.size == 0:
            raise InputError("FockVector needs at least one coefficient")
        if not np.all(np.isfinite(a)):
            raise InputError("FockVector coefficients must be finite")
        a.flags.writeable = False
        object.__setattr__(self, "coeffs", a)

    @property
    def trunc_dim(self) -> int:
        return self.coeffs.size

    @classmethod
    def from_normalized(cls, c) -> "FockVector":
        c = np.asarray(c, dtype=complex).reshape(-1)
        return cls(_scale_by_sqrt_factorial(c, inverse=True))

    def normalized(self) -> np.ndarray:
        """Coordinates in the orthonormal basis e_j = z^j / sqrt(j!)."""
        return _scale_by_sqrt_factorial(self.coeffs)

    def padded(self, M: int) -> "FockVector":
        if M < self.trunc_dim:
            raise InputError(f"cannot pad dimension {self.trunc_dim} down to {M}")
        if M == self.trunc_dim:
            return self
        a = np.zeros(M, dtype=complex)
        a[: self.trunc_dim] = self.coeffs
        return FockVector(a)

    def __add__(self, other: "FockVector") -> "FockVector":
        M = max(self.trunc_dim, other.trunc_dim)
        return FockVector(self.padded(M).coeffs + other.padded(M).coeffs)

    def __sub__(self, other: "FockVector") -> "FockVector":
        M = max(self.trunc_dim, other.trunc_dim)
        return FockVector(self.padded(M).coeffs - other.padded(M).coeffs)

    def __mul__(self, scalar) -> "FockVector":
        return FockVector(self.coeffs * complex(scalar))

    __rmul__ = __mul__

    def to_json(self) -> str:
        return json.dumps(self.to_list())

    def to_list(self) -> list:
        return [[float(x.real), float(x.imag)] for x in self.coeffs]

    @classmethod
    def from_list(cls, pairs) -> "FockVector":
        try:
            return cls(np.array([complex(re, im) for re, im in pairs], dtype=complex))
        except (TypeError, ValueError) as exc:
            raise InputError(f"expected a list of [re, im] pairs: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "FockVector":
        return cls.from_list(json.loads(text))


@dataclass(frozen=True)
class TailReport:
    total_energy: float
    guard_energy: float
    guard_fraction: float

    @property
    def relative(self) -> float:
        return self.guard_energy / self.total_energy if self.total_energy else 0.0


def _pair(f: FockVector, g: FockVector):
    M = max(f.trunc_dim, g.trunc_dim)
    return f.padded(M), g.padded(M)


def norm(f: FockVector) -> float:
    return float(np.linalg.norm(f.normalized()))


def inner(f: FockVector, g: FockVector) -> complex:
    """sum_j a_j conj(b_j) j!  (linear in the first slot); shorter vector is zero-padded."""
    f, g = _pair(f, g)
    return complex(np.vdot(g.normalized(), f.normalized()))


def evaluate(f: FockVector, z: complex) -> complex:
    # Horner
    acc = 0j
    for a in f.coeffs[::-1]:
        acc = acc * z + a
    return complex(acc)


def evaluate_many(f: FockVector, zs) -> np.ndarray:
    zs = np.asarray(zs, dtype=complex)
    acc = np.zeros_like(zs)
    for a in f.coeffs[::-1]:
        acc = acc * zs + a
    return acc


def basis_vector(j: int, M: int = DEFAULT_M) -> FockVector:
    if not 0 <= j < M:
        raise InputError(f"basis index {j} out of range for dimension {M}")
    c = np.zeros(M, dtype=complex)
    c[j] = 1.0
    return FockVector.from_normalized(c)


def tail_report(f: FockVector, guard_fraction: float = GUARD_FRACTION) -> TailReport:
    if not 0 < guard_fraction <= 1:
        raise InputError("guard_fraction must lie in (0, 1]")
    energy = np.abs(f.normalized()) ** 2
    k = math.ceil(guard_fraction * f.trunc_dim)
    return TailReport(
        total_energy=float(energy.sum()),
        guard_energy=float(energy[f.trunc_dim - k:].sum()),
        guard_fraction=guard_fraction,
    )


def check_tail(f: FockVector, guard_fraction: float = GUARD_FRACTION,
               rel_tol: float = GUARD_REL_TOL) -> TailReport:
    """Raise TailGuardError when the top band of f carries too much energy."""
    rep = tail_report(f, guard_fraction)
    if rep.guard_energy > rel_tol * rep.total_energy:
        raise TailGuardError(
            f"guard band holds {rep.relative:.3e} of the energy "
            f"(limit {rel_tol:g}); increase the truncation dimension",
            deviation=rep.relative,
        )
    return rep
