"""Linear independence of Weyl translates U_lam f for finitely many points lam.

Independence is certified through the Gram matrix G_jk = <U_lj f, U_lk f>:
a smallest eigenvalue that clears the truncation slack proves the truncated
translates independent.  Truncation can never prove dependence, so the only
verdicts are INDEPENDENT and INCONCLUSIVE.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np
import scipy.linalg

from .cyclo import CycloElement, real_independent
from .errors import ExactnessRequired, InputError, NeedsLargerTruncation
from .fock import FockVector, basis_vector, check_tail, inner, norm
from .lattice import lattice_membership_decision
from .operators import RootOfUnity, apply_weyl

MIN_SEPARATION = 1e-12
COLLINEAR_TOL = 1e-10


class Verdict(str, enum.Enum):
    INDEPENDENT = "INDEPENDENT"
    INCONCLUSIVE = "INCONCLUSIVE"


class KnownCase(str, enum.Enum):
    SMALL_N = "SmallN"
    PARALLEL_PAIRS = "ParallelPairs"
    REGULAR_LATTICE = "RegularLattice"
    UNKNOWN = "Unknown"


@dataclass(frozen=True, eq=False)
class PointConfig:
    points: tuple
    exact: tuple | None = None

    def __post_init__(self):
        pts = tuple(complex(p) for p in self.points)
        if not pts:
            raise InputError("a configuration needs at least one point")
        object.__setattr__(self, "points", pts)
        if self.exact is not None:
            ex = tuple(self.exact)
            if len(ex) != len(pts):
                raise InputError("exact forms must match the points one to one")
            if len({e.conductor for e in ex}) != 1:
                raise InputError("exact forms must share one conductor")
            if len(set(ex)) != len(ex):
                raise InputError("points must be distinct")
            object.__setattr__(self, "exact", ex)
        for p, q in combinations(pts, 2):
            if abs(p - q) <= MIN_SEPARATION:
                raise InputError(f"points {p} and {q} are not distinct (|p-q| <= 1e-12)")

    def __len__(self):
        return len(self.points)

    def to_dict(self) -> dict:
        out = {"points": [[p.real, p.imag] for p in self.points]}
        if self.exact is not None:
            out["exact"] = {
                "conductor": self.exact[0].conductor,
                "coeffs": [e.to_dict()["coeffs"] for e in self.exact],
            }
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "PointConfig":
        try:
            pts = [complex(re, im) for re, im in d["points"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed point list: {exc}") from None
        exact = None
        if d.get("exact"):
            n = d["exact"]["conductor"]
            exact = [CycloElement.from_dict({"conductor": n, "coeffs": c})
                     for c in d["exact"]["coeffs"]]
        return cls(tuple(pts), None if exact is None else tuple(exact))


@dataclass(frozen=True, eq=False)
class Certificate:
    gram: np.ndarray
    min_eigenvalue: float
    condition_number: float
    tail_slack: float
    verdict: Verdict | None = None
    known_case: KnownCase | None = None

    @property
    def label(self) -> str:
        """'KNOWN' when a known result covers the configuration, otherwise 'EVIDENCE'."""
        if self.known_case is None or self.known_case is KnownCase.UNKNOWN:
            return "EVIDENCE"
        return "KNOWN"

    def to_dict(self) -> dict:
        return {
            "gram": [[[float(x.real), float(x.imag)] for x in row] for row in self.gram],
            "min_eigenvalue": self.min_eigenvalue,
            "condition_number": self.condition_number,
            "tail_slack": self.tail_slack,
            "verdict": self.verdict.value if self.verdict else None,
            "known_case": self.known_case.value if self.known_case else None,
            "label": self.label,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        gram = np.array([[complex(re, im) for re, im in row] for row in d["gram"]])
        return cls(
            gram=gram,
            min_eigenvalue=float(d["min_eigenvalue"]),
            condition_number=float(d["condition_number"]),
            tail_slack=float(d["tail_slack"]),
            verdict=Verdict(d["verdict"]) if d.get("verdict") else None,
            known_case=KnownCase(d["known_case"]) if d.get("known_case") else None,
        )


def _window(window: FockVector | None, M: int) -> FockVector:
    if window is None:
        return basis_vector(0, M)
    if window.trunc_dim > M:
        raise InputError(f"window has dimension {window.trunc_dim} > M = {M}")
    return window.padded(M)


def gram_matrix(config: PointConfig, window: FockVector | None = None,
                M: int = 64) -> Certificate:
    """Gram matrix of the translates; eigen-analysis is left to certify_independence."""
    w = _window(window, M)
    check_tail(w)
    w2 = norm(w) ** 2
    vecs = [apply_weyl(lam, w) for lam in config.points]
    N = len(vecs)
    G = np.empty((N, N), dtype=complex)
    for j in range(N):
        for k in range(N):
            G[j, k] = inner(vecs[j], vecs[k])
    defect = float(np.max(np.abs(np.diag(G).real - w2)))
    if defect > 1e-8 * max(w2, 1.0):
        raise NeedsLargerTruncation(
            f"diagonal Gram entries deviate from ||f||^2 by {defect:.3e}", deviation=defect)
    # rounding floor keeps the slack honest when the observed defect is exactly 0
    slack = N * max(defect, np.finfo(float).eps * w2)
    return Certificate(G, math.nan, math.nan, slack)


def certify_independence(config: PointConfig, window: FockVector | None = None,
                         M: int = 64, classify: bool = True) -> Certificate:
    cert = gram_matrix(config, window, M)
    G = cert.gram
    N = G.shape[0]
    H = (G + G.conj().T) / 2
    ev = scipy.linalg.eigvalsh(H)  # ascending, LAPACK Hermitian tridiagonal path
    lo, hi = float(ev[0]), float(ev[-1])
    cond = hi / lo if lo > 0 else math.inf
    verdict = Verdict.INDEPENDENT if lo > N * cert.tail_slack else Verdict.INCONCLUSIVE
    case = None
    if classify:
        try:
            case = classify_known_case(config)
        except ExactnessRequired:
            case = KnownCase.UNKNOWN
    return Certificate(G, lo, cond, cert.tail_slack, verdict, case)


def gaussian_gram_closed_form(points) -> np.ndarray:
    """<U_a 1, U_b 1> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b), from the kernel e^{z conj(w)}."""
    p = np.asarray(points, dtype=complex)
    a = p[:, None]
    b = p[None, :]
    return np.exp(-(np.abs(a) ** 2 + np.abs(b) ** 2) / 2 + np.conj(a) * b)


def _pairings4():
    return [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]


def _parallel_pairs_numeric(pts) -> bool:
    def cross(u, v):
        return (u.conjugate() * v).imag

    for (i, j), (k, l) in _pairings4():
        u, v = pts[j] - pts[i], pts[l] - pts[k]
        w = pts[k] - pts[i]
        scale = abs(u) * abs(v)
        if abs(cross(u, v)) <= COLLINEAR_TOL * scale and \
                abs(cross(u, w)) > COLLINEAR_TOL * abs(u) * abs(w):
            return True
    return False


def _parallel_pairs_exact(ex) -> bool:
    for (i, j), (k, l) in _pairings4():
        u, v, w = ex[j] - ex[i], ex[l] - ex[k], ex[k] - ex[i]
        if not real_independent(u, v) and real_independent(u, w):
            return True
    return False


def classify_known_case(config: PointConfig) -> KnownCase:
    """First applicable known-true case: small N, parallel pairs, regular lattice."""
    N = len(config)
    if N <= 3:
        return KnownCase.SMALL_N
    if N == 4:
        found = (_parallel_pairs_exact(config.exact) if config.exact is not None
                 else _parallel_pairs_numeric(config.points))
        if found:
            return KnownCase.PARALLEL_PAIRS
    if config.exact is None:
        raise ExactnessRequired(
            "only the regular-lattice test remains and it needs exact cyclotomic forms")
    if lattice_membership_decision(config.exact).embeddable:
        return KnownCase.REGULAR_LATTICE
    return KnownCase.UNKNOWN


def _exact_beta(beta, d: int) -> CycloElement | None:
    if isinstance(beta, CycloElement):
        if beta.conductor != d:
            if all(c == 0 for c in beta.coeffs[1:]):
                return CycloElement.rational(d, beta.coeffs[0])
            raise InputError("exact beta must live in Q(zeta_d)")
        return beta
    if isinstance(beta, (int, Fraction)):
        return CycloElement.rational(d, beta)
    if isinstance(beta, float) and beta.is_integer():
        return CycloElement.rational(d, int(beta))
    return None


def roots_config(d: int, beta=1) -> PointConfig:
    """Points beta * omega^k, 0 <= k < d, with exact forms when beta is cyclotomic-rational."""
    if int(d) != d or d < 1:
        raise InputError("d must be a positive integer")
    d = int(d)
    ex_beta = _exact_beta(beta, d)
    bnum = ex_beta.to_complex() if ex_beta is not None else complex(beta)
    if bnum == 0 or (ex_beta is not None and ex_beta.is_zero()):
        raise InputError("beta must be nonzero")
    w = RootOfUnity(d)
    pts = tuple(bnum * w.power(k) for k in range(d))
    exact = None
    if ex_beta is not None:
        exact = tuple(ex_beta * CycloElement.zeta(d, k) for k in range(d))
    return PointConfig(pts, exact)
