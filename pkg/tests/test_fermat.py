import itertools

import numpy as np
import pytest

from fermatzeta.errors import BadCongruence, ResidualTooLarge, ZeroCoefficient
from fermatzeta.fermat import (
    FermatSurface,
    ZetaProfile,
    counts_from_roots,
    fermat_roots,
    reconstruct_rational,
    root_count,
    root_count_alt,
    valid_tuples,
    verify_weil,
)
from fermatzeta.series import TruncatedSeries, euler_product_series, orbit_counts, zeta_series
from fermatzeta.varieties import count_points


def quartic():
    return FermatSurface.over(5, 4, (1, 1, 1))


def quadric():
    return FermatSurface.over(7, 2, (-1, 1, 1, 1))


def cube_of_quadratic():
    # (1 - 2T + 5T^2)^3 by repeated convolution of integer lists
    out = [1]
    for _ in range(3):
        out = list(np.convolve(out, [1, -2, 5]))
    return [int(c) for c in out]


def test_quartic_roots():
    prof = fermat_roots(quartic())
    assert len(prof.roots) == 6
    for target in (1 + 2j, 1 - 2j):
        assert sum(abs(a - target) < 1e-9 for a in prof.roots) == 3


def test_quadric_root():
    prof = fermat_roots(quadric())
    assert len(prof.roots) == 1
    assert abs(prof.roots[0] - (-7)) < 1e-9


def test_cubic_curve_f7():
    prof = fermat_roots(FermatSurface.over(7, 3, (1, 1, 1)))
    assert len(prof.roots) == 2
    a, b = prof.roots
    assert abs(a - b.conjugate()) < 1e-9
    assert abs(abs(a) - np.sqrt(7)) < 1e-9


def test_surface_validation():
    with pytest.raises(BadCongruence):
        FermatSurface.over(7, 4, (1, 1, 1))
    with pytest.raises(ZeroCoefficient) as exc:
        FermatSurface.over(7, 3, (1, 0, 1))
    assert exc.value.i == 1
    with pytest.raises(ValueError):
        FermatSurface.over(7, 3, (1,))
    with pytest.raises(ValueError):
        FermatSurface.over(7, 1, (1, 1))


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_tuple_count_closed_forms(m, n):
    brute = sum(
        1 for b in itertools.product(range(1, m), repeat=n + 1) if sum(b) % m == 0
    )
    assert len(valid_tuples(m, n)) == brute == root_count(m, n) == root_count_alt(m, n)
    assert valid_tuples(m, n) == sorted(valid_tuples(m, n))


def test_counts_from_roots_examples():
    assert counts_from_roots(fermat_roots(quartic()), 1) == 0
    assert counts_from_roots(ZetaProfile((), 2, 5), 1) == 6
    prof = fermat_roots(quadric())
    assert [counts_from_roots(prof, s) for s in (1, 2)] == [50, 2500]
    for s in range(1, 6):
        assert counts_from_roots(prof, s) == 1 + 7**s + (-7) ** s + 49**s


def test_counts_from_roots_flags_bad_roots():
    with pytest.raises(ResidualTooLarge):
        counts_from_roots(ZetaProfile((0.3 + 0.1j,), 2, 5), 1)


def test_reconstruct_quartic():
    rz = reconstruct_rational(fermat_roots(quartic()))
    assert list(rz.p_coeffs) == cube_of_quadratic()
    assert list(rz.p_coeffs) == [1, -6, 27, -68, 135, -150, 125]
    assert rz.p_in_numerator
    assert rz.trivial_factors == (1, 5)


def test_reconstruct_quadric_and_empty():
    rz = reconstruct_rational(fermat_roots(quadric()))
    assert rz.p_coeffs == (1, 7)
    assert not rz.p_in_numerator
    # Z = 1/((1-T)(1-7T)(1+7T)(1-49T)) = 1/((1-T)(1-49T^2)(1-49T))
    den = TruncatedSeries.from_poly([1, -1], 6) * TruncatedSeries.from_poly([1, 0, -49], 6) * TruncatedSeries.from_poly([1, -49], 6)
    assert rz.series(6) == den.inverse()
    assert reconstruct_rational(ZetaProfile((), 2, 5)).p_coeffs == (1,)


def test_reconstruct_flags_non_integral():
    with pytest.raises(ResidualTooLarge):
        reconstruct_rational(ZetaProfile((0.5,), 2, 5))


def test_weil_reports():
    rep = verify_weil(fermat_roots(quartic()))
    assert rep.passed and rep.max_deviation < 1e-9 and rep.unmatched == 0
    bad = ZetaProfile(fermat_roots(quartic()).roots + (5 + 0j,), 2, 5)
    assert not verify_weil(bad).passed
    assert verify_weil(ZetaProfile((), 2, 5)).passed
    unpaired = ZetaProfile((1 + 2j, 1 + 2j), 2, 5)
    rep = verify_weil(unpaired)
    assert rep.max_deviation < 1e-9 and rep.unmatched == 2 and not rep.passed


# every (q, m) with q <= 13, m <= 4, q = 1 mod m
FIELDS = [(p, r) for p, r in [(2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (11, 1), (13, 1)]]
SURFACES = []
for (p, r), m, n in itertools.product(FIELDS, [2, 3, 4], [1, 2, 3]):
    q = p**r
    if (q - 1) % m:
        continue
    SURFACES.append((p, r, m, (1,) * (n + 1)))
    rng = np.random.default_rng(q * 100 + m * 10 + n)
    SURFACES.append((p, r, m, tuple(int(x) for x in rng.integers(1, p, n + 1))))
SURFACES = sorted(set(SURFACES))


def make(p, r, m, coeffs):
    if r == 1:
        return FermatSurface.over(p, m, coeffs)
    from fermatzeta.field import field_create

    F = field_create(p, r)
    # non-prime-field coefficients for the extension cases
    vals = [F.gen ** (3 * i + c) for i, c in enumerate(coeffs)]
    return FermatSurface(F, m, tuple(vals))


@pytest.mark.parametrize("p,r,m,coeffs", SURFACES)
def test_oracle_equivalence(p, r, m, coeffs):
    surface = make(p, r, m, coeffs)
    prof = fermat_roots(surface)
    system = surface.to_poly_system()
    for s in (1, 2):
        assert counts_from_roots(prof, s) == count_points(system, s)


@pytest.mark.parametrize("p,r,m,coeffs", SURFACES)
def test_root_invariants(p, r, m, coeffs):
    surface = make(p, r, m, coeffs)
    prof = fermat_roots(surface)
    assert len(prof.roots) == root_count(m, surface.n)
    rep = verify_weil(prof)
    assert rep.passed, rep
    # series from counts equals the rational form
    S = 4
    rz = reconstruct_rational(prof)
    counts = [counts_from_roots(prof, s) for s in range(1, S + 1)]
    assert zeta_series(counts) == rz.series(S)
    assert zeta_series(counts).is_integral
    assert prof.with_counts(S).series == rz.series(S)


@pytest.mark.parametrize("p,r,m,coeffs", [c for c in SURFACES if c[0] ** c[1] <= 7 and len(c[3]) <= 3])
def test_orbit_counts_of_brute_forced_surfaces(p, r, m, coeffs):
    system = make(p, r, m, coeffs).to_poly_system()
    S = 4 if system.enumeration_size(4) <= 3 * 10**6 else 3
    counts = [count_points(system, s) for s in range(1, S + 1)]
    b = orbit_counts(counts)
    assert all(x >= 0 for x in b)
    assert euler_product_series(b) == zeta_series(counts)
