from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermatzeta.errors import NegativeOrbitCount, NonIntegralOrbitCount
from fermatzeta.field import field_create
from fermatzeta.series import (
    TruncatedSeries,
    euler_product_series,
    mobius,
    orbit_counts,
    rational_series,
    zeta_series,
)


def frobenius_orbit_sizes(points, q, frob):
    """Sizes of orbits of x -> frob(x) on a finite point set."""
    seen = set()
    sizes = []
    for x in points:
        if x in seen:
            continue
        orbit = [x]
        y = frob(x)
        while y != x:
            orbit.append(y)
            y = frob(y)
        seen.update(orbit)
        sizes.append(len(orbit))
    return sizes


def test_zeta_series_zero_counts():
    assert zeta_series([0, 0, 0]).coeffs == (1, 0, 0, 0)


def test_zeta_series_line_q5():
    # 1/((1-T)(1-5T)) = sum_k (1 + 5 + ... + 5^k) T^k
    expected = [sum(5**i for i in range(k + 1)) for k in range(4)]
    assert expected == [1, 6, 31, 156]
    series = zeta_series([1 + 5**s for s in range(1, 4)])
    assert series.as_ints() == expected
    assert series == rational_series([1], [1, -6, 5], 3)


def test_zeta_series_gaussian_p3():
    series = zeta_series([1 + (-1) ** s for s in range(1, 7)])
    assert series.as_ints() == [1, 0, 1, 0, 1, 0, 1]


def test_truncated_series_algebra():
    a = TruncatedSeries.from_poly([1, 2, 3], 4)
    assert (a * a.inverse()) == TruncatedSeries.one(4)
    assert a**2 == TruncatedSeries.from_poly([1, 4, 10, 12, 9], 4)
    assert (a**-1) == a.inverse()
    with pytest.raises(ZeroDivisionError):
        TruncatedSeries.from_poly([0, 1], 3).inverse()
    assert a.truncate(2).coeffs == (1, 2, 3)


def test_mobius_values():
    assert [mobius(n) for n in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


def test_orbit_counts_projective_line_f2():
    assert orbit_counts([3, 5, 9, 17]) == [3, 1, 2, 3]
    # same numbers from Frobenius orbits on P^1(F_16): points 0..15 and infinity
    F = field_create(2, 4)
    pts = list(range(16)) + ["inf"]
    sizes = frobenius_orbit_sizes(pts, 2, lambda x: x if x == "inf" else int(F.pow(x, 2)))
    assert [sizes.count(d) for d in (1, 2, 3, 4)] == [3, 1, 0, 3]
    # b_3 needs F_8, which is not inside F_16
    F8 = field_create(2, 3)
    pts8 = list(range(8)) + ["inf"]
    sizes8 = frobenius_orbit_sizes(pts8, 2, lambda x: x if x == "inf" else int(F8.pow(x, 2)))
    assert sizes8.count(3) == 2


def test_orbit_counts_gaussian_f3():
    assert orbit_counts([0, 2, 0, 2]) == [0, 1, 0, 0]


def test_orbit_counts_single_point():
    assert orbit_counts([1] * 6) == [1, 0, 0, 0, 0, 0]


def test_orbit_counts_rejects_non_varieties():
    with pytest.raises(NonIntegralOrbitCount):
        orbit_counts([1, 2])
    with pytest.raises(NegativeOrbitCount):
        orbit_counts([3, 1])
    assert orbit_counts([1, 2], check=False) == [1, Fraction(1, 2)]


def test_euler_product_examples():
    assert euler_product_series([0, 1, 0, 0, 0, 0]).as_ints() == [1, 0, 1, 0, 1, 0, 1]
    assert euler_product_series([1, 0, 0, 0]).as_ints() == [1, 1, 1, 1, 1]
    assert euler_product_series(orbit_counts([3, 5, 9, 17])) == zeta_series([3, 5, 9, 17])


def test_euler_product_negative_exponent():
    # b_1 = -1 gives (1 - T)
    assert euler_product_series([-1, 0, 0]).as_ints() == [1, -1, 0, 0]


def counts_from_orbits(b):
    return [sum(d * b[d - 1] for d in range(1, s + 1) if s % d == 0) for s in range(1, len(b) + 1)]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 40), min_size=1, max_size=8))
def test_orbit_roundtrip_and_euler_equals_exp(b):
    N = counts_from_orbits(b)
    assert orbit_counts(N) == b
    assert euler_product_series(b) == zeta_series(N)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(-50, 50), min_size=1, max_size=7),
    st.lists(st.integers(-50, 50), min_size=1, max_size=7),
)
def test_zeta_of_sum_is_product(a, b):
    k = min(len(a), len(b))
    a, b = a[:k], b[:k]
    assert zeta_series([x + y for x, y in zip(a, b)]) == zeta_series(a) * zeta_series(b)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=1, max_size=4), st.integers(1, 7))
def test_zeta_of_reciprocal_roots(roots, S):
    # N_s = sum a^s gives prod 1/(1 - aT)
    N = [sum(a**s for a in roots) for s in range(1, S + 1)]
    den = TruncatedSeries.one(S)
    for a in roots:
        den = den * TruncatedSeries.from_poly([1, -a], S)
    assert zeta_series(N) == den.inverse()
