"""Exact arithmetic: Euler's totient, cyclotomic polynomials, and Q(zeta_n).

Elements of Q(zeta_n) are stored in the power basis 1, zeta, ..., zeta^(phi(n)-1),
i.e. as polynomials in zeta reduced modulo the n-th cyclotomic polynomial.
Rationals are ``fractions.Fraction``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ConductorMismatch, InputError


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    if n < 1:
        raise InputError(f"factorize needs n >= 1, got {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    if int(n) != n or n < 1:
        raise InputError(f"euler_phi needs an integer n >= 1, got {n}")
    result = 1
    for p, k in factorize(int(n)).items():
        result *= p ** (k - 1) * (p - 1)
    return result


def totient_table(bound: int) -> np.ndarray:
    """phi(0..bound) by a linear-time sieve over primes (phi(0) is set to 0)."""
    phi = np.arange(bound + 1, dtype=np.int64)
    for p in range(2, bound + 1):
        if phi[p] == p:  # untouched, so p is prime
            phi[p::p] -= phi[p::p] // p
    return phi


def phi_equals_two_solutions(bound: int) -> list[int]:
    """All n <= bound with phi(n) = 2.

    The scan also asserts that phi(n) is even for every 2 < n <= bound.
    """
    if bound < 1:
        raise InputError("bound must be >= 1")
    phi = totient_table(bound)
    odd = np.nonzero(phi[3:] % 2 == 1)[0]
    if odd.size:
        raise AssertionError(f"phi({int(odd[0]) + 3}) is odd")
    return [int(n) for n in np.nonzero(phi == 2)[0]]


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Exact division by a monic integer polynomial (coefficients low -> high)."""
    num = list(num)
    dn = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    q = [0] * max(len(num) - dn, 1)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            q[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    rem = num[:dn] or [0]
    return q, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Phi_n as integer coefficients, lowest degree first.

    Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, each division exact.
    """
    if int(n) != n or n < 1:
        raise InputError(f"cyclotomic_polynomial needs n >= 1, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
        if any(rem):
            raise ArithmeticError(f"Phi_{d} does not divide x^{n} - 1")
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def _reduce(coeffs, n: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    c = [Fraction(x) for x in coeffs]
    for i in range(len(c) - 1, deg - 1, -1):
        t = c[i]
        if t:
            for j in range(deg + 1):
                c[i - deg + j] -= t * phi[j]
    c = c[:deg] + [Fraction(0)] * (deg - len(c))
    return tuple(c)


@lru_cache(maxsize=4096)
def _zeta_power(n: int, k: int) -> tuple[Fraction, ...]:
    k %= n
    return _reduce([0] * k + [1], n)


@dataclass(frozen=True)
class CycloElement:
    """sum_j coeffs[j] zeta_n^j with len(coeffs) == phi(n)."""

    conductor: int
    coeffs: tuple

    def __post_init__(self):
        n = self.conductor
        if int(n) != n or n < 1:
            raise InputError(f"conductor must be a positive integer, got {n}")
        c = tuple(Fraction(x) for x in self.coeffs)
        if len(c) != euler_phi(n):
            c = _reduce(c, n)
        object.__setattr__(self, "conductor", int(n))
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_poly(cls, n: int, coeffs) -> "CycloElement":
        return cls(n, _reduce(coeffs, n))

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycloElement":
        return cls(n, _zeta_power(n, k))

    @classmethod
    def rational(cls, n: int, q) -> "CycloElement":
        return cls(n, (Fraction(q),) + (Fraction(0),) * (euler_phi(n) - 1))

    def _same(self, other: "CycloElement"):
        if not isinstance(other, CycloElement):
            raise TypeError("expected a CycloElement")
        if other.conductor != self.conductor:
            raise ConductorMismatch(
                f"conductors differ ({self.conductor} vs {other.conductor})")

    def __add__(self, other):
        self._same(other)
        return CycloElement(self.conductor, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._same(other)
        return CycloElement(self.conductor, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return CycloElement(self.conductor, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElement(self.conductor, tuple(a * other for a in self.coeffs))
        self._same(other)
        prod = [Fraction(0)] * (2 * len(self.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return CycloElement.from_poly(self.conductor, prod)

    __rmul__ = __mul__

    def conj(self) -> "CycloElement":
        """Complex conjugate: zeta -> zeta^(n-1)."""
        n = self.conductor
        poly = [Fraction(0)] * n
        for j, a in enumerate(self.coeffs):
            poly[(-j) % n] += a
        return CycloElement.from_poly(n, poly)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_complex(self) -> complex:
        z = cmath.exp(2j * math.pi / self.conductor)
        return complex(sum(float(a) * z ** j for j, a in enumerate(self.coeffs)))

    def to_dict(self) -> dict:
        return {"conductor": self.conductor,
                "coeffs": [[a.numerator, a.denominator] for a in self.coeffs]}

    @classmethod
    def from_dict(cls, d: dict) -> "CycloElement":
        try:
            n = int(d["conductor"])
            coeffs = [Fraction(int(num), int(den)) for num, den in d["coeffs"]]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"malformed exact point: {exc}") from None
        if len(coeffs) > euler_phi(n):
            return cls.from_poly(n, coeffs)
        return cls(n, coeffs + [Fraction(0)] * (euler_phi(n) - len(coeffs)))


def add(a: CycloElement, b: CycloElement) -> CycloElement:
    return a + b


def mul(a: CycloElement, b: CycloElement) -> CycloElement:
    return a * b


def conj(a: CycloElement) -> CycloElement:
    return a.conj()


def is_zero(a: CycloElement) -> bool:
    return a.is_zero()


def lift(a: CycloElement, n: int) -> CycloElement:
    """Re-express a rational element (conductor 1 or 2) in conductor n."""
    if euler_phi(a.conductor) != 1:
        raise ConductorMismatch("only rational elements can be lifted")
    return CycloElement.rational(n, a.coeffs[0])


def real_independent(a: CycloElement, b: CycloElement) -> bool:
    """Exact test that a, b are linearly independent over R: a conj(b) != conj(a) b."""
    return not (a * b.conj() - a.conj() * b).is_zero()
