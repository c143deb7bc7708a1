"""Zeta functions of diagonal (Fermat) hypersurfaces via Gauss sums.

For f = c_0 X_0^m + ... + c_n X_n^m over F_q with q = 1 mod m the Zeta
function of the hypersurface f = 0 in P^n is

    Z(T) = P(T)^((-1)^n) / ((1 - T)(1 - qT)...(1 - q^(n-1) T)),

with P(T) = prod_j (1 - alpha_j T) and one reciprocal root alpha_j for every
tuple (b_0, ..., b_n), 1 <= b_i < m, sum b_i = 0 mod m:

    1/alpha = (-1)^(n-1) q^(-n) prod g(chi_i) / prod chi_i(c_i),
    chi_i = chi~^(b_i),

chi~ being the character of order m.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .characters import Character, gauss_sum, order_m_character
from .errors import BadCongruence, ResidualTooLarge, ZeroCoefficient
from .field import FieldCtx, FieldElement, field_create
from .series import TruncatedSeries, zeta_series
from .varieties import PolySystem

COUNT_TOL = 1e-3
COEFF_TOL = 1e-6
WEIL_TOL = 1e-6


@dataclass(frozen=True)
class FermatSurface:
    """c_0 X_0^m + ... + c_n X_n^m = 0 in P^n over ctx."""

    ctx: FieldCtx
    m: int
    coeffs: tuple[FieldElement, ...]

    def __post_init__(self):
        coeffs = tuple(self.ctx(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if self.m < 2:
            raise ValueError(f"degree m must be >= 2, got {self.m}")
        if len(coeffs) < 2:
            raise ValueError("need at least two variables (n >= 1)")
        if (self.ctx.q - 1) % self.m:
            raise BadCongruence(self.ctx.q, self.m)
        for i, c in enumerate(coeffs):
            if c.code == 0:
                raise ZeroCoefficient(i)

    @classmethod
    def over(cls, p: int, m: int, coeffs: Sequence, r: int = 1) -> "FermatSurface":
        """Convenience constructor from plain integers (reduced mod p)."""
        ctx = field_create(p, r)
        return cls(ctx, m, tuple(ctx(c) for c in coeffs))

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    @property
    def d(self) -> int:
        return self.n - 1

    def tuples(self) -> list[tuple[int, ...]]:
        return valid_tuples(self.m, self.n)

    def to_poly_system(self) -> PolySystem:
        nv = self.n + 1
        poly = {}
        for i, c in enumerate(self.coeffs):
            exps = [0] * nv
            exps[i] = self.m
            poly[tuple(exps)] = c
        return PolySystem(self.ctx, nv, (poly,), projective=True)

    def describe(self) -> dict:
        return {
            "p": self.ctx.p,
            "r": self.ctx.r,
            "q": self.q,
            "m": self.m,
            "n": self.n,
            "coeffs": [list(c.coeffs) if self.ctx.r > 1 else c.code for c in self.coeffs],
        }


def valid_tuples(m: int, n: int) -> list[tuple[int, ...]]:
    """(b_0..b_n) in {1..m-1}^(n+1) with sum = 0 mod m, lexicographic order."""
    return [b for b in itertools.product(range(1, m), repeat=n + 1) if sum(b) % m == 0]


def root_count(m: int, n: int) -> int:
    """(m-1)[(m-1)^n + (-1)^(n-1)]/m."""
    num = (m - 1) * ((m - 1) ** n + (-1) ** (n - 1))
    assert num % m == 0
    return num // m


def root_count_alt(m: int, n: int) -> int:
    """[(m-1)^(n+1) - (-1)^n (m-1)]/m, the second closed form of the count."""
    num = (m - 1) ** (n + 1) - (-1) ** n * (m - 1)
    assert num % m == 0
    return num // m


def tuple_root(surface: FermatSurface, b: Sequence[int]) -> complex:
    """Reciprocal root alpha for one tuple, from Gauss sums."""
    chi = order_m_character(surface.ctx, surface.m)
    n, q = surface.n, surface.q
    gprod = 1 + 0j
    cprod = 1 + 0j
    for bi, ci in zip(b, surface.coeffs):
        chi_i = chi**bi
        gprod *= gauss_sum(chi_i)
        cprod *= chi_i(ci)
    inv_alpha = (-1) ** (n - 1) * gprod / (q**n * cprod)
    return 1 / inv_alpha


def normalized_phase(surface: FermatSurface, b: Sequence[int]) -> complex:
    """e^(i theta) = sqrt(q^(n-1)) / alpha for the tuple b (unit modulus)."""
    n, q = surface.n, surface.q
    chi = order_m_character(surface.ctx, surface.m)
    val = (-1) ** (n - 1) + 0j
    for bi, ci in zip(b, surface.coeffs):
        chi_i = chi**bi
        val *= gauss_sum(chi_i) / (np.sqrt(q) * chi_i(ci))
    return complex(val)


@dataclass(frozen=True)
class RationalZeta:
    """Z(T) = P(T)^((-1)^n) / prod_{i<n} (1 - q^i T) with integer P."""

    p_coeffs: tuple[int, ...]
    trivial_factors: tuple[int, ...]  # q^i, standing for (1 - q^i T)
    p_in_numerator: bool
    n: int
    q: int

    def series(self, order: int) -> TruncatedSeries:
        den = TruncatedSeries.one(order)
        for a in self.trivial_factors:
            den = den * TruncatedSeries.from_poly([1, -a], order)
        P = TruncatedSeries.from_poly(list(self.p_coeffs), order)
        if self.p_in_numerator:
            return P * den.inverse()
        return (P * den).inverse()


@dataclass(frozen=True)
class ZetaProfile:
    """Nontrivial reciprocal roots of a hypersurface Zeta function and derived data."""

    roots: tuple[complex, ...]
    n: int
    q: int
    tuples: tuple[tuple[int, ...], ...] | None = None
    p_coeffs: tuple[int, ...] | None = None
    counts: tuple[int, ...] | None = None
    series: TruncatedSeries | None = field(default=None, repr=False)

    @property
    def expected_modulus(self) -> float:
        return float(self.q) ** ((self.n - 1) / 2)

    def with_counts(self, order: int) -> "ZetaProfile":
        counts = tuple(counts_from_roots(self, s) for s in range(1, order + 1))
        return ZetaProfile(
            self.roots, self.n, self.q, self.tuples, self.p_coeffs, counts, zeta_series(counts)
        )


def fermat_roots(surface: FermatSurface, order: int | None = None) -> ZetaProfile:
    """Reciprocal roots alpha_j, one per valid tuple in lexicographic order.

    With ``order`` the profile also carries N_1..N_order and the Zeta series.
    """
    tuples = surface.tuples()
    expected = root_count(surface.m, surface.n)
    if len(tuples) != expected or len(tuples) != root_count_alt(surface.m, surface.n):
        raise AssertionError(f"enumerated {len(tuples)} tuples, closed form gives {expected}")
    roots = tuple(tuple_root(surface, b) for b in tuples)
    prof = ZetaProfile(roots, surface.n, surface.q, tuple(tuples))
    rz = reconstruct_rational(prof)
    prof = ZetaProfile(roots, surface.n, surface.q, tuple(tuples), rz.p_coeffs)
    if order is not None:
        prof = prof.with_counts(order)
    return prof


def plane_count(n: int, q: int, s: int) -> int:
    """Points of a hyperplane P^(n-1) over F_{q^s}."""
    Q = q**s
    return (Q**n - 1) // (Q - 1)


def counts_from_roots(profile: ZetaProfile, s: int) -> int:
    """N_s = (q^(sn) - 1)/(q^s - 1) - (-1)^n sum_j alpha_j^s, rounded."""
    if s < 1:
        raise ValueError("s must be >= 1")
    dev = sum((complex(a) ** s for a in profile.roots), 0j)
    value = plane_count(profile.n, profile.q, s) - (-1) ** profile.n * dev
    nearest = round(value.real)
    residual = abs(value - nearest)
    if residual >= COUNT_TOL:
        raise ResidualTooLarge(f"N_{s}", residual, COUNT_TOL)
    if nearest < 0:
        raise ResidualTooLarge(f"N_{s} = {nearest} < 0", float(-nearest), 0.0)
    return int(nearest)


def _expand_roots(roots: Sequence[complex]) -> np.ndarray:
    coeffs = np.array([1 + 0j])
    for a in roots:
        coeffs = np.convolve(coeffs, np.array([1 + 0j, -complex(a)]))
    return coeffs


def reconstruct_rational(profile: ZetaProfile) -> RationalZeta:
    """Integer P(T) = prod (1 - alpha_j T) plus the trivial factors."""
    raw = _expand_roots(profile.roots)
    p_coeffs = []
    for k, c in enumerate(raw):
        nearest = round(c.real)
        residual = abs(c - nearest) / max(1.0, abs(c))
        if residual >= COEFF_TOL:
            raise ResidualTooLarge(f"coefficient of T^{k}", residual, COEFF_TOL)
        p_coeffs.append(int(nearest))
    return RationalZeta(
        p_coeffs=tuple(p_coeffs),
        trivial_factors=tuple(profile.q**i for i in range(profile.n)),
        p_in_numerator=profile.n % 2 == 0,
        n=profile.n,
        q=profile.q,
    )


@dataclass(frozen=True)
class WeilReport:
    expected_modulus: float
    max_deviation: float  # relative
    unmatched: int
    passed: bool

    def as_dict(self) -> dict:
        return {
            "expected_modulus": self.expected_modulus,
            "max_deviation": self.max_deviation,
            "unmatched_conjugates": self.unmatched,
            "verdict": "pass" if self.passed else "fail",
        }


def unmatched_conjugates(roots: Sequence[complex], tol: float) -> int:
    """How many roots cannot be paired with a conjugate from the multiset."""
    pool = [complex(z) for z in roots]
    unmatched = 0
    for z in roots:
        target = complex(z).conjugate()
        if not pool:
            unmatched += 1
            continue
        dists = [abs(w - target) for w in pool]
        k = int(np.argmin(dists))
        if dists[k] <= tol:
            pool.pop(k)
        else:
            unmatched += 1
    return unmatched


def verify_weil(profile: ZetaProfile, tol: float = WEIL_TOL) -> WeilReport:
    """|alpha_j| = q^((n-1)/2) and closure of the roots under conjugation."""
    expected = profile.expected_modulus
    if not profile.roots:
        return WeilReport(expected, 0.0, 0, True)
    dev = max(abs(abs(a) - expected) / expected for a in profile.roots)
    unmatched = unmatched_conjugates(profile.roots, tol * expected)
    return WeilReport(expected, float(dev), unmatched, dev < tol and unmatched == 0)


def zeta_from_counts_and_rational(profile: ZetaProfile, order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """The Zeta series two ways: from N_s and from the rational form."""
    counts = [counts_from_roots(profile, s) for s in range(1, order + 1)]
    return zeta_series(counts), reconstruct_rational(profile).series(order)

