from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from circlecorr.numutil import (CircleDistance, PrecisionMismatchError,
                                RationalPoint, UnitPoint, circle_dist,
                                circle_dist_raw, circle_dist_rational,
                                threshold_from)

M64 = 1 << 64

raw64 = st.integers(min_value=0, max_value=M64 - 1)


def test_unit_point_wraps():
    assert UnitPoint(M64 + 5).value == 5
    assert UnitPoint(-1).value == M64 - 1


def test_unit_point_bad_precision():
    with pytest.raises(ValueError):
        UnitPoint(0, precision=32)


def test_from_fraction_rounds_to_nearest():
    # 1/3 * 2^64 = 6148914691236517205.33.., rounds down
    assert UnitPoint.from_fraction(Fraction(1, 3)).value == 6148914691236517205
    # 2/3 rounds up
    assert UnitPoint.from_fraction(Fraction(2, 3)).value == 12297829382473034411
    assert UnitPoint.from_fraction(Fraction(1, 2)).value == 1 << 63
    assert UnitPoint.from_fraction(Fraction(5, 4)).value == 1 << 62


@given(raw64, raw64)
def test_add_sub_are_mod_one(a, b):
    p, q = UnitPoint(a), UnitPoint(b)
    assert (p + q).to_fraction() == (p.to_fraction() + q.to_fraction()) % 1
    assert (p - q).to_fraction() == (p.to_fraction() - q.to_fraction()) % 1


def test_precision_mixing_rejected():
    with pytest.raises(PrecisionMismatchError):
        UnitPoint(0, 64) + UnitPoint(0, 128)
    with pytest.raises(PrecisionMismatchError):
        circle_dist(UnitPoint(0, 64), UnitPoint(0, 128))


@given(raw64, raw64)
def test_circle_dist_symmetric_and_bounded(a, b):
    d = circle_dist_raw(a, b, M64)
    assert d == circle_dist_raw(b, a, M64)
    assert 0 <= d <= M64 // 2
    assert (d == 0) == (a == b)


@given(raw64, raw64, raw64)
def test_circle_dist_triangle(a, b, c):
    ab = circle_dist_raw(a, b, M64)
    bc = circle_dist_raw(b, c, M64)
    ac = circle_dist_raw(a, c, M64)
    assert ac <= ab + bc


@given(raw64, raw64, raw64)
def test_circle_dist_translation_invariant(a, b, shift):
    d1 = circle_dist_raw(a, b, M64)
    d2 = circle_dist_raw((a + shift) % M64, (b + shift) % M64, M64)
    assert d1 == d2


def test_rational_distance():
    a = RationalPoint(1, 10, 1)
    b = RationalPoint(9, 10, 1)
    assert circle_dist_rational(a, b) == Fraction(1, 5)
    with pytest.raises(PrecisionMismatchError):
        circle_dist_rational(a, RationalPoint(1, 2, 1))


def test_rational_rescale():
    p = RationalPoint(1, 2, 1).rescale(4)
    assert p.to_fraction() == Fraction(1, 2)
    assert p.denominator == 16


def test_circle_distance_range_checked():
    with pytest.raises(ValueError):
        CircleDistance((1 << 63) + 1)


def test_threshold_known_value():
    # s/N^alpha = 1/10 at N=100, alpha=1/2; 2^64/10 rounds up (.6 remainder)
    thr = threshold_from(1, 100, Fraction(1, 2))
    assert thr.distance.value == M64 // 10 + 1
    assert not thr.degenerate


def test_threshold_degenerate():
    thr = threshold_from(2, 100, Fraction(1, 4))  # 2/100^0.25 = 0.632 >= 1/2
    assert thr.degenerate
    assert thr.distance.value == 1 << 63


def test_threshold_precision_128():
    thr = threshold_from(Fraction(1, 2), 2, 1, precision=128)
    assert thr.distance.value == 1 << 126  # exactly 1/4


@given(st.integers(min_value=1, max_value=10 ** 6),
       st.fractions(min_value=Fraction(1, 100), max_value=4),
       st.fractions(min_value=Fraction(1, 10), max_value=1))
def test_threshold_within_half_ulp(n, s, alpha):
    import mpmath
    thr = threshold_from(s, n, alpha)
    if thr.degenerate:
        return
    with mpmath.workdps(60):
        exact = (mpmath.mpf(s.numerator) / s.denominator
                 * mpmath.power(n, -mpmath.mpf(alpha.numerator) / alpha.denominator))
        assert abs(thr.distance.value - exact * M64) <= mpmath.mpf(1) / 2 + 1e-12


def test_threshold_rejects_bad_input():
    with pytest.raises(ValueError):
        threshold_from(0, 10, 1)
    with pytest.raises(ValueError):
        threshold_from(1, 0, 1)
