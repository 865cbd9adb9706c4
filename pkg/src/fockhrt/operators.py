"""Weyl, rotation and residue-class projection operators on truncated F^2.

Matrices act on normalized coordinates (basis e_j = z^j / sqrt(j!)).

The Weyl operator is U_a f(z) = exp(-|a|^2/2 - conj(a) z) f(z + a).  Its matrix
is built column by column by composing power series: expand (z + a)^m with
the binomial theorem, multiply by the Taylor series of exp(-conj(a) z), and
rescale.  The alternating sums cancel heavily once m and |a| grow (about
exp(2|a| sqrt(M)) of dynamic range), so the composition runs in gmpy2
multiprecision with a working precision sized to that range.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import gmpy2
import numpy as np

from .errors import InputError, NeedsLargerTruncation
from .fock import FockVector, check_tail, evaluate

COLUMN_TOL = 1e-6
# columns whose coefficient is below this fraction of ||f|| are skipped in apply_weyl
_NEGLIGIBLE = 1e-20


@dataclass(frozen=True)
class RootOfUnity:
    d: int
    value: complex = field(init=False)

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise InputError(f"root of unity order must be a positive integer, got {self.d}")
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "value", self.power(1))

    def power(self, k: int) -> complex:
        return complex(_root_table(self.d)[k % self.d])

    def table(self) -> np.ndarray:
        return _root_table(self.d)


@lru_cache(maxsize=256)
def _root_table(d: int) -> np.ndarray:
    # direct evaluation of exp(2 pi i k/d) after exact reduction mod d; quarter
    # turns are set exactly so that d in {1, 2, 4} yields exact +-1, +-i
    exact = {0: 1 + 0j, 1: 1j, 2: -1 + 0j, 3: -1j}
    out = np.empty(d, dtype=complex)
    for k in range(d):
        if (4 * k) % d == 0:
            out[k] = exact[4 * k // d]
        else:
            t = 2.0 * math.pi * k / d
            out[k] = complex(math.cos(t), math.sin(t))
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    entries: np.ndarray
    guard_band: int
    label: str = ""

    def __post_init__(self):
        e = np.array(self.entries, dtype=complex)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise InputError("operator matrix must be square")
        if not np.all(np.isfinite(e)):
            raise InputError("operator matrix has non-finite entries")
        if not 0 <= self.guard_band < e.shape[0]:
            raise InputError("guard band must satisfy 0 <= g < M")
        e.flags.writeable = False
        object.__setattr__(self, "entries", e)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def interior(self) -> int:
        return self.dim - self.guard_band

    def __matmul__(self, f: FockVector) -> FockVector:
        return FockVector.from_normalized(self.entries @ f.padded(self.dim).normalized())

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "guard_band": self.guard_band,
            "M": self.dim,
            "entries": [[[float(x.real), float(x.imag)] for x in row] for row in self.entries],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "OperatorMatrix":
        rows = [[complex(re, im) for re, im in row] for row in d["entries"]]
        return cls(np.array(rows, dtype=complex), int(d["guard_band"]), d.get("label", ""))


class _WeylSeries:
    """Shared multiprecision data for the columns of one U_alpha at dimension M."""

    def __init__(self, alpha: complex, M: int):
        self.alpha = alpha
        self.M = M
        r = abs(alpha)
        self.prec = 64 + math.ceil((2.0 * r * math.sqrt(M) + 1.0) / math.log(2.0))
        with gmpy2.context(gmpy2.get_context(), precision=self.prec):
            a = gmpy2.mpc(alpha.real, alpha.imag)
            b = gmpy2.mpc(-alpha.real, alpha.imag)  # -conj(alpha)
            expser = [gmpy2.mpc(1)]
            apow = [gmpy2.mpc(1)]
            sqf = [gmpy2.mpfr(1)]
            for n in range(1, M):
                expser.append(expser[-1] * b / n)
                apow.append(apow[-1] * a)
                sqf.append(sqf[-1] * gmpy2.sqrt(gmpy2.mpfr(n)))
            self.expser = np.array(expser, dtype=object)
            self.apow = apow
            self.sqf = np.array(sqf, dtype=object)
            self.gauss = gmpy2.exp(-gmpy2.mpfr(r) ** 2 / 2) if r else gmpy2.mpfr(1)

    def column(self, m: int) -> np.ndarray:
        M = self.M
        with gmpy2.context(gmpy2.get_context(), precision=self.prec):
            # Taylor coefficients of (z + alpha)^m, lowest degree first
            binom = np.array([math.comb(m, k) * self.apow[m - k] for k in range(m + 1)],
                             dtype=object)
            prod = np.convolve(binom, self.expser)[:M]
            col = prod * self.sqf[:M] * (self.gauss / self.sqf[m])
            return np.array([complex(x) for x in col], dtype=complex)


@lru_cache(maxsize=128)
def _series(alpha: complex, M: int) -> _WeylSeries:
    return _WeylSeries(alpha, M)


@lru_cache(maxsize=8192)
def _column(alpha: complex, M: int, m: int) -> np.ndarray:
    col = _series(alpha, M).column(m)
    col.flags.writeable = False
    return col


def _check_dim(M: int):
    if int(M) != M or M < 4:
        raise InputError(f"truncation dimension must be an integer >= 4, got {M}")


def weyl_matrix(alpha: complex, M: int = 64, guard: int | None = None,
                check: bool = True, tol: float = COLUMN_TOL) -> OperatorMatrix:
    """Matrix of U_alpha in the normalized basis, entry (n, m) = <U_alpha e_m, e_n>.

    With ``check`` set, every interior column (m < M - guard) must keep unit
    norm within ``tol``; otherwise NeedsLargerTruncation carries the observed
    worst deviation.  Entries themselves are exact truncations of the infinite
    matrix regardless of the guard.
    """
    _check_dim(M)
    M = int(M)
    g = M // 4 if guard is None else int(guard)
    if not 0 <= g < M:
        raise InputError("guard band must satisfy 0 <= g < M")
    alpha = complex(alpha)
    if alpha == 0:
        return OperatorMatrix(np.eye(M, dtype=complex), g, "U(0)")
    U = np.column_stack([_column(alpha, M, m) for m in range(M)])
    if check:
        dev = np.abs(np.sum(np.abs(U[:, : M - g]) ** 2, axis=0) - 1.0)
        worst = float(dev.max())
        if worst > tol:
            raise NeedsLargerTruncation(
                f"U({alpha}) at M={M}, guard={g}: interior column norm deviates by "
                f"{worst:.3e} (> {tol:g})",
                deviation=worst,
            )
    return OperatorMatrix(U, g, f"U({alpha!r})")


def apply_weyl(alpha: complex, f: FockVector, strict: bool = True,
               tol: float = COLUMN_TOL) -> FockVector:
    """U_alpha f on the same truncation.

    The truncation check is done on the vector rather than on a fixed column
    block: f must pass the tail guard (when ``strict``), and the relative norm
    defect of the result must stay within ``tol``.
    """
    if strict:
        check_tail(f)
    M = f.trunc_dim
    _check_dim(M)
    alpha = complex(alpha)
    if alpha == 0:
        return f
    c = f.normalized()
    scale = float(np.linalg.norm(c))
    out = np.zeros(M, dtype=complex)
    for m in np.nonzero(np.abs(c) > _NEGLIGIBLE * scale)[0]:
        out += c[m] * _column(alpha, M, int(m))
    if scale:
        defect = abs(float(np.linalg.norm(out)) ** 2 / scale ** 2 - 1.0)
        if defect > tol:
            raise NeedsLargerTruncation(
                f"U({alpha}) loses {defect:.3e} of the norm at M={M}", deviation=defect
            )
    return FockVector.from_normalized(out)


def norm_defect(alpha: complex, f: FockVector) -> float:
    """Relative norm defect | ||U_alpha f||^2 / ||f||^2 - 1 | (no guard applied)."""
    g = apply_weyl(alpha, f, strict=False, tol=math.inf)
    a = np.linalg.norm(f.normalized())
    if not a:
        return 0.0
    return abs(float(np.linalg.norm(g.normalized())) ** 2 / float(a) ** 2 - 1.0)


def rotation_apply(w: RootOfUnity, m: int, f: FockVector) -> FockVector:
    """(C_phi^m f)(z) = f(omega^m z): coefficient j picks up omega^(j m)."""
    j = np.arange(f.trunc_dim)
    return FockVector(f.coeffs * w.table()[(j * m) % w.d])


def _check_residue(k: int, d: int):
    if d < 1 or not 0 <= k < d:
        raise InputError(f"need 0 <= k < d, got k={k}, d={d}")


def project(k: int, d: int, f: FockVector) -> FockVector:
    _check_residue(k, d)
    a = np.array(f.coeffs)
    a[np.arange(f.trunc_dim) % d != k] = 0
    return FockVector(a)


def project_via_filter(k: int, d: int, f: FockVector) -> FockVector:
    """P_k f = (1/d) sum_m omega^(-k m) f(omega^m z)."""
    _check_residue(k, d)
    w = RootOfUnity(d)
    acc = np.zeros(f.trunc_dim, dtype=complex)
    for m in range(d):
        acc += w.power(-k * m) * rotation_apply(w, m, f).coeffs
    return FockVector(acc / d)


def interior_norm(f: FockVector, guard: int | None = None) -> float:
    M = f.trunc_dim
    g = M // 4 if guard is None else guard
    return float(np.linalg.norm(f.normalized()[: M - g]))


def commutation_residual(d: int, beta: complex, f: FockVector,
                         guard: int | None = None) -> float:
    """|| C U_beta f - U_(beta/omega) C f || on the guard-trimmed coefficients."""
    w = RootOfUnity(d)
    beta = complex(beta)
    lhs = rotation_apply(w, 1, apply_weyl(beta, f))
    rhs = apply_weyl(beta * w.power(-1), rotation_apply(w, 1, f))
    return interior_norm(lhs - rhs, guard)


def displaced_value(alpha: complex, f: FockVector, z: complex) -> complex:
    """(U_alpha f)(z) straight from the defining formula, no matrices."""
    alpha = complex(alpha)
    return cmath.exp(-abs(alpha) ** 2 / 2 - alpha.conjugate() * z) * evaluate(f, z + alpha)
