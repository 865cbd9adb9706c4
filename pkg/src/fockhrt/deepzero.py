"""Deep-zero constraint systems on truncated F^2.

For d >= 2 and residue classes E_k = {k + d j}, the conditions

    f^(j)(0) = 0            for j in E_0
    (U_beta f)^(j)(0) = 0   for j in E_k, k = 1..d-1

are stacked into one square linear system.  Since f^(j)(0) = j! a_j, each
condition says that one Taylor coefficient vanishes; rows are written on the
normalized coordinates c_j = sqrt(j!) a_j (an invertible diagonal rescaling,
which keeps the system isometric to F^2 and avoids factorial conditioning).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import InputError
from .fock import FockVector, evaluate_many, norm
from .operators import (RootOfUnity, apply_weyl, displaced_value, interior_norm,
                        project, weyl_matrix)

SETTLED_D = (2, 3, 4, 6)


@dataclass(frozen=True)
class DeepZeroProblem:
    d: int
    beta: complex
    M: int = 64
    guard: int | None = None
    betas: tuple | None = None  # per-class shifts for k = 1..d-1; defaults to beta

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise InputError("d must be an integer >= 2")
        if self.M < 4 * self.d:
            raise InputError(f"need M >= 4d = {4 * self.d}, got {self.M}")
        g = self.M // 4 if self.guard is None else int(self.guard)
        if not 0 <= g < self.M:
            raise InputError("guard must satisfy 0 <= g < M")
        object.__setattr__(self, "guard", g)
        object.__setattr__(self, "beta", complex(self.beta))
        if self.betas is not None:
            b = tuple(complex(x) for x in self.betas)
            if len(b) != self.d - 1:
                raise InputError("betas needs one shift per class E_1..E_{d-1}")
            object.__setattr__(self, "betas", b)

    def shift(self, k: int) -> complex:
        return self.beta if self.betas is None else self.betas[k - 1]

    @property
    def status(self) -> str:
        return "corroborates" if self.d in SETTLED_D else "exploratory"

    def to_dict(self) -> dict:
        return {"d": self.d, "beta": [self.beta.real, self.beta.imag], "M": self.M,
                "guard": self.guard}

    @classmethod
    def from_dict(cls, d: dict) -> "DeepZeroProblem":
        try:
            return cls(int(d["d"]), complex(*d.get("beta", [0.0, 0.0])), int(d.get("M", 64)),
                       d.get("guard"))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed experiment: {exc}") from None


@dataclass(frozen=True)
class RowLabel:
    index: int
    residue: int
    kind: str  # "select" or "weyl"
    shift: complex = 0j


@dataclass(frozen=True, eq=False)
class ConstraintSystem:
    rows: np.ndarray
    row_labels: tuple = field(default=())
    weyl_column_defect: float = 0.0

    @property
    def shape(self):
        return self.rows.shape


def residue_classes(d: int, M: int) -> list[list[int]]:
    if d < 2:
        raise InputError("d must be >= 2")
    return [list(range(k, M, d)) for k in range(d)]


def assemble_constraints(p: DeepZeroProblem) -> ConstraintSystem:
    """Row n is the condition on index n: a selector for n in E_0, else row n of U_beta_k.

    Weyl entries are exact truncations of the infinite matrix whatever M is;
    the worst interior column-norm defect is recorded rather than enforced,
    since constraint rows stay valid even where columns leak past M.
    """
    M = p.M
    rows = np.zeros((M, M), dtype=complex)
    labels = []
    mats = {}
    defect = 0.0
    for n in range(M):
        k = n % p.d
        if k == 0:
            rows[n, n] = 1.0
            labels.append(RowLabel(n, 0, "select"))
            continue
        b = p.shift(k)
        if b not in mats:
            U = weyl_matrix(b, M, p.guard, check=False).entries
            mats[b] = U
            interior = U[:, : M - p.guard]
            defect = max(defect, float(np.max(np.abs(np.sum(np.abs(interior) ** 2, axis=0) - 1))))
        rows[n] = mats[b][n]
        labels.append(RowLabel(n, k, "weyl", b))
    rows.flags.writeable = False
    return ConstraintSystem(rows, tuple(labels), defect)


def min_singular_value(s: ConstraintSystem, guard: int) -> float:
    """Smallest singular value on the interior columns (< M - guard)."""
    R, M = s.rows.shape
    if not 0 <= guard < M or R < M - guard:
        raise InputError("need 0 <= guard < M and at least M - guard rows")
    return float(scipy.linalg.svdvals(s.rows[:, : M - guard])[-1])


def sigma_sweep(d: int, beta: complex, Ms, guard: int | None = None,
                interior: int | None = None) -> list[dict]:
    """sigma_min over a list of truncations.

    ``interior`` fixes the number of unknowns (guard = M - interior) so that
    different M probe the same coefficient window; otherwise the guard is
    ``guard`` or M // 4.
    """
    out = []
    for M in sorted(Ms):
        g = (M - interior) if interior is not None else guard
        p = DeepZeroProblem(d, beta, M, g)
        s = assemble_constraints(p)
        out.append({
            "d": d, "beta_re": p.beta.real, "beta_im": p.beta.imag, "M": M,
            "guard": p.guard, "interior": M - p.guard,
            "sigma_min": min_singular_value(s, p.guard),
            "weyl_column_defect": s.weyl_column_defect,
            "status": p.status,
        })
    return out


def reduction_identity_residual(d: int, beta: complex, h: FockVector,
                                guard: int | None = None) -> float:
    """|| P_0 U_{-beta} h - (1/d) sum_m U_{-beta omega^-m} h || for h supported on E_0."""
    c = h.normalized()
    off = np.abs(c[np.arange(h.trunc_dim) % d != 0]) ** 2
    if off.sum() > 1e-24 * max(float(np.sum(np.abs(c) ** 2)), 1e-300):
        raise InputError("h must be supported on indices divisible by d")
    w = RootOfUnity(d)
    beta = complex(beta)
    lhs = project(0, d, apply_weyl(-beta, h))
    acc = np.zeros(h.trunc_dim, dtype=complex)
    for m in range(d):
        acc += apply_weyl(-beta * w.power(-m), h).coeffs
    rhs = FockVector(acc / d)
    return interior_norm(lhs - rhs, guard)


def rotation_sum_residual(f: FockVector, d: int, samples) -> float:
    """max over samples of | sum_{m<d} f(omega^m z) |  (= d |P_0 f(z)|)."""
    z = np.asarray(samples, dtype=complex)
    w = RootOfUnity(d)
    total = sum(evaluate_many(f, w.power(m) * z) for m in range(d))
    return float(np.max(np.abs(total)))


@dataclass(frozen=True)
class FunctionalEquationReport:
    rotation_sum: float
    weyl_invariance: float | None
    norm: float


def functional_equation_check(f: FockVector, samples, beta: complex | None = None,
                              d: int = 4) -> FunctionalEquationReport:
    """Sample the two functional equations of the d = 4 problem.

    rotation_sum: max |f(z) + f(iz) + f(-z) + f(-iz)|, zero iff P_0 f = 0;
    weyl_invariance: max |U_beta f(iz) - U_beta f(z)|, zero iff U_beta f lives on E_0.
    Values of U_beta f come straight from its defining formula.
    """
    samples = list(samples)
    if not samples:
        raise InputError("need at least one sample point")
    rot = rotation_sum_residual(f, d, samples)
    inv = None
    if beta is not None:
        w = RootOfUnity(d).value
        inv = max(abs(displaced_value(beta, f, w * z) - displaced_value(beta, f, z))
                  for z in samples)
    return FunctionalEquationReport(rot, inv, norm(f))
