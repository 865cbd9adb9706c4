"""Deciding whether finitely many points of Q(zeta_n) lie in a regular lattice.

A regular lattice is Z e1 + Z e2 + e with e1, e2 independent over R.  If the
points lie in one, their differences from the first point span a Q-space of
dimension <= 2; conversely a rank <= 2 difference span with an R-independent
basis yields an explicit lattice after clearing denominators.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .cyclo import CycloElement, euler_phi, lift, real_independent
from .errors import ConductorMismatch, InputError, VerificationFailure


def _integer_rows(vectors) -> list[list[int]]:
    rows = []
    for v in vectors:
        v = [Fraction(x) for x in v]
        den = math.lcm(*(x.denominator for x in v)) if v else 1
        rows.append([int(x * den) for x in v])
    return rows


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    rank, prev = 0, 1
    for col in range(n):
        piv = next((i for i in range(rank, m) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, m):
            for j in range(col + 1, n):
                a[i][j] = (p * a[i][j] - a[i][col] * a[rank][j]) // prev
            a[i][col] = 0
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def rational_rank(vectors) -> int:
    """Dimension over Q of the span of rational vectors (all the same length)."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 0
    if len({len(v) for v in vectors}) != 1:
        raise InputError("vectors must have equal length")
    return bareiss_rank(_integer_rows(vectors))


def _solve(basis: list[tuple], v: tuple) -> list[Fraction] | None:
    """Rational coordinates of v in the given independent vectors, or None."""
    k = len(basis)
    rows = [[Fraction(b[i]) for b in basis] + [Fraction(v[i])] for i in range(len(v))]
    piv_cols, r = [], 0
    for c in range(k):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            return None
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][k] for i in range(r, len(rows))):
        return None
    return [rows[i][k] for i in range(k)]


@dataclass(frozen=True)
class LatticeBasis:
    e1: CycloElement
    e2: CycloElement
    e: CycloElement

    def __post_init__(self):
        if not real_independent(self.e1, self.e2):
            raise VerificationFailure("lattice generators are not independent over R")

    def point(self, m: int, k: int) -> CycloElement:
        return self.e1 * m + self.e2 * k + self.e

    def to_dict(self) -> dict:
        return {"e1": self.e1.to_dict(), "e2": self.e2.to_dict(), "e": self.e.to_dict()}

    @classmethod
    def from_dict(cls, d: dict) -> "LatticeBasis":
        return cls(*(CycloElement.from_dict(d[k]) for k in ("e1", "e2", "e")))


@dataclass(frozen=True)
class MembershipResult:
    embeddable: bool
    rank_certificate: int
    witness: LatticeBasis | None = None
    coordinates: tuple = ()
    collinear: bool = False
    points: tuple = field(default=(), repr=False)

    def __post_init__(self):
        if self.embeddable != (self.witness is not None):
            raise VerificationFailure("witness must be present exactly when embeddable")
        if self.embeddable and self.rank_certificate > 2:
            raise VerificationFailure("embeddable result with rank above 2")

    def verify(self) -> bool:
        """Re-check every point as an exact integer combination of the witness."""
        if not self.embeddable:
            return True
        pts = [lift(p, self.witness.e.conductor) if p.conductor != self.witness.e.conductor
               else p for p in self.points]
        if len(pts) != len(self.coordinates):
            return False
        return all(self.witness.point(m, k) == p for (m, k), p in zip(self.coordinates, pts))

    def to_dict(self) -> dict:
        return {
            "embeddable": self.embeddable,
            "rank_certificate": self.rank_certificate,
            "collinear": self.collinear,
            "witness": self.witness.to_dict() if self.witness else None,
            "coordinates": [list(c) for c in self.coordinates],
            "points": [p.to_dict() for p in self.points],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MembershipResult":
        return cls(
            embeddable=bool(d["embeddable"]),
            rank_certificate=int(d["rank_certificate"]),
            witness=LatticeBasis.from_dict(d["witness"]) if d.get("witness") else None,
            coordinates=tuple(tuple(int(x) for x in c) for c in d.get("coordinates", [])),
            collinear=bool(d.get("collinear", False)),
            points=tuple(CycloElement.from_dict(p) for p in d.get("points", [])),
        )


def _lcm_den(values) -> int:
    return math.lcm(*(Fraction(x).denominator for x in values)) if values else 1


def lattice_membership_decision(points) -> MembershipResult:
    points = list(points)
    if not points:
        raise InputError("need at least one point")
    n = points[0].conductor
    if any(p.conductor != n for p in points):
        raise ConductorMismatch("all points must share one conductor")
    original = tuple(points)
    if euler_phi(n) == 1:
        # Q(zeta_1) = Q(zeta_2) = Q holds no non-real companion; work inside Q(i)
        n = 4
        points = [lift(p, n) for p in points]

    base = points[0]
    diffs = [p - base for p in points[1:]]
    vecs = [d.coeffs for d in diffs]
    r = rational_rank(vecs)
    if r >= 3:
        return MembershipResult(False, r, points=original)

    zeta = CycloElement.zeta(n)
    coords: list[tuple[int, int]]
    if r == 0:
        e1 = CycloElement.rational(n, 1)
        e2 = zeta
        coords = [(0, 0)] * len(points)
    elif r == 1:
        u = next(d for d in diffs if not d.is_zero())
        qs = [_solve([u.coeffs], d.coeffs)[0] for d in diffs]
        L = _lcm_den(qs)
        e1 = u * Fraction(1, L)
        e2 = zeta * e1  # zeta is non-real for n >= 3, so this is R-independent
        coords = [(0, 0)] + [(int(q * L), 0) for q in qs]
    else:
        nonzero = [d for d in diffs if not d.is_zero()]
        pair = None
        for a, b in combinations(nonzero, 2):
            if rational_rank([a.coeffs, b.coeffs]) == 2 and real_independent(a, b):
                pair = (a, b)
                break
        if pair is None:
            # all differences on one real line but with an irrational ratio:
            # lattice points on a line are integer multiples of one step, so no lattice
            return MembershipResult(False, 2, collinear=True, points=original)
        a, b = pair
        xy = [_solve([a.coeffs, b.coeffs], d.coeffs) for d in diffs]
        L = _lcm_den([t for c in xy for t in c])
        e1 = a * Fraction(1, L)
        e2 = b * Fraction(1, L)
        coords = [(0, 0)] + [(int(x * L), int(y * L)) for x, y in xy]

    witness = LatticeBasis(e1, e2, base)
    for (m, k), p in zip(coords, points):
        if witness.point(m, k) != p:
            raise VerificationFailure(f"point {p} is not {m} e1 + {k} e2 + e")
    return MembershipResult(True, r, witness, tuple(coords), points=original)


def roots_of_unity(d: int, beta: CycloElement | None = None) -> list[CycloElement]:
    if d < 1:
        raise InputError("d must be >= 1")
    pts = [CycloElement.zeta(d, k) for k in range(d)]
    if beta is not None:
        pts = [beta * p for p in pts]
    return pts


def roots_in_lattice(d: int) -> MembershipResult:
    """Do the d-th roots of unity lie in one regular lattice?"""
    return lattice_membership_decision(roots_of_unity(d))
