"""Exact truncated power series for Zeta functions.

All arithmetic is over ``fractions.Fraction`` so that series built from point
counts, Euler products and rational functions can be compared for equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import NegativeOrbitCount, NonIntegralOrbitCount


@dataclass(frozen=True)
class TruncatedSeries:
    """c_0 + c_1 T + ... + c_S T^S, known modulo T^(S+1)."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series known to order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        S = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        return TruncatedSeries(
            tuple(sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(S + 1))
        )

    def inverse(self) -> "TruncatedSeries":
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        out = [1 / a[0]]
        for k in range(1, len(a)):
            out.append(-sum(a[i] * out[k - i] for i in range(1, k + 1)) / a[0])
        return TruncatedSeries(tuple(out))

    def __pow__(self, e: int) -> "TruncatedSeries":
        if e < 0:
            return self.inverse() ** (-e)
        result = TruncatedSeries.one(self.order)
        for _ in range(e):
            result = result * self
        return result

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def as_ints(self) -> list[int]:
        if not self.is_integral:
            raise ValueError("series has non-integer coefficients")
        return [int(c) for c in self.coeffs]

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls((Fraction(1),) + (Fraction(0),) * order)

    @classmethod
    def from_poly(cls, coeffs: Sequence, order: int) -> "TruncatedSeries":
        c = [Fraction(x) for x in coeffs[: order + 1]]
        return cls(tuple(c + [Fraction(0)] * (order + 1 - len(c))))


def rational_series(num: Sequence, den: Sequence, order: int) -> TruncatedSeries:
    """Expansion of num(T)/den(T) through T^order."""
    return TruncatedSeries.from_poly(num, order) * TruncatedSeries.from_poly(den, order).inverse()


def zeta_series(counts: Sequence[int]) -> TruncatedSeries:
    """exp(sum_s N_s T^s / s) through order S = len(counts).

    Uses Z' = (sum_s N_s T^(s-1)) Z, i.e. k z_k = sum_{j=1..k} N_j z_{k-j}.
    """
    if len(counts) < 1:
        raise ValueError("need at least one count")
    N = [None] + [Fraction(c) for c in counts]
    z = [Fraction(1)]
    for k in range(1, len(counts) + 1):
        z.append(sum(N[j] * z[k - j] for j in range(1, k + 1)) / k)
    return TruncatedSeries(tuple(z))


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def orbit_counts(counts: Sequence[int], *, check: bool = True) -> list[int]:
    """Number b_d of Frobenius orbits of size d, from N_s = sum_{d|s} d b_d.

    With ``check`` (the default) a non-integral or negative b_d raises; those
    counts cannot come from a variety.  With ``check=False`` the raw values are
    returned as Fractions.
    """
    if len(counts) < 1:
        raise ValueError("need at least one count")
    out = []
    for d in range(1, len(counts) + 1):
        total = sum(mobius(d // e) * counts[e - 1] for e in divisors(d))
        b = Fraction(total, d)
        if check:
            if b.denominator != 1:
                raise NonIntegralOrbitCount(d, b)
            if b < 0:
                raise NegativeOrbitCount(d, b)
            b = int(b)
        out.append(b)
    return out


def euler_product_series(orbits: Sequence[int], order: int | None = None) -> TruncatedSeries:
    """prod_d (1 - T^d)^(-b_d) through T^order (default: len(orbits))."""
    S = len(orbits) if order is None else order
    if S < 1:
        raise ValueError("order must be >= 1")
    if S > len(orbits):
        raise ValueError(f"need orbit counts up to degree {S}, got {len(orbits)}")
    result = TruncatedSeries.one(S)
    for d, b in enumerate(orbits[:S], start=1):
        if b == 0:
            continue
        # (1 - T^d)^(-b) = sum_k C(b+k-1, k) T^(dk)
        factor = [Fraction(0)] * (S + 1)
        for k in range(S // d + 1):
            factor[d * k] = Fraction(comb(b + k - 1, k)) if b > 0 else Fraction((-1) ** k * comb(-b, k))
        result = result * TruncatedSeries(tuple(factor))
    return result
