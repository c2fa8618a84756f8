import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from circlecorr.sequences import (RationalBatch, SequenceSpec, generate,
                                  golden_raw, iid_uniform, kronecker,
                                  kronecker_orbit, resolve_z, sqrt_frac, vdc)

M64 = 1 << 64


def test_vdc_base2_first_points():
    expected = [Fraction(0), Fraction(1, 2), Fraction(1, 4), Fraction(3, 4),
                Fraction(1, 8), Fraction(5, 8), Fraction(3, 8), Fraction(7, 8)]
    assert [vdc(n, 2).to_fraction() for n in range(8)] == expected


def test_vdc_base10_digit_reversal():
    assert vdc(123, 10).to_fraction() == Fraction(321, 1000)
    assert vdc(190, 10).to_fraction() == Fraction(91, 1000)


@given(st.integers(min_value=2, max_value=7), st.integers(min_value=1, max_value=4))
def test_vdc_block_is_grid_permutation(base, n_exp):
    # the first b^n points hit every multiple of b^-n exactly once
    n = base ** n_exp
    batch = generate(SequenceSpec("vdc", base=base), n)
    assert isinstance(batch, RationalBatch)
    scale = batch.denominator // n
    assert sorted(batch.numerators) == [i * scale for i in range(n)]


def test_golden_raw_matches_mpmath():
    with mpmath.workdps(50):
        frac_phi = (mpmath.sqrt(5) - 1) / 2
        expected = int(mpmath.nint(frac_phi * M64))
    assert golden_raw(64) == expected


def test_resolve_z_forms_agree():
    dec = "0." + "6180339887498948482045868343656381177203091798057628621354486227"
    assert abs(resolve_z(dec) - resolve_z("golden")) <= 1
    assert resolve_z(Fraction(1, 4)) == 1 << 62
    assert resolve_z("1/4") == 1 << 62
    assert resolve_z(5) == 5


def test_resolve_z_short_decimal_rejected():
    with pytest.raises(ValueError):
        resolve_z("0.618")


@given(st.integers(min_value=0, max_value=10 ** 6),
       st.integers(min_value=0, max_value=10 ** 6))
def test_kronecker_is_homomorphism(m, n):
    assert kronecker(m) + kronecker(n) == kronecker(m + n)


def test_kronecker_batch_matches_scalar():
    batch = generate(SequenceSpec("kronecker"), 500)
    z = resolve_z("golden")
    for n in (0, 1, 7, 499):
        assert int(batch.raw[n]) == (n * z) % M64


def test_kronecker_orbit_starts_at_one():
    orbit = kronecker_orbit("golden", 3)
    assert int(orbit.raw[0]) == resolve_z("golden")
    assert len(orbit) == 3


@given(st.integers(min_value=1, max_value=10 ** 9))
def test_sqrt_frac_within_one_ulp(n):
    p = sqrt_frac(n)
    r = math.isqrt(n)
    if r * r == n:
        assert p.value == 0
    else:
        with mpmath.workdps(50):
            exact = (mpmath.sqrt(n) % 1) * M64
            assert 0 <= exact - p.value <= 1  # floor of the true value


def test_sqrt_frac_precision_128():
    p = sqrt_frac(2, precision=128)
    # floor(sqrt(2) * 2^128) mod 2^128
    assert p.value == math.isqrt(2 << 256) - (1 << 128)


def test_iid_deterministic():
    a = iid_uniform(100, seed=7)
    b = iid_uniform(100, seed=7)
    assert np.array_equal(a.raw, b.raw)
    c = iid_uniform(100, seed=8)
    assert not np.array_equal(a.raw, c.raw)


def test_generate_prefix_consistency():
    spec = SequenceSpec("kronecker")
    long = generate(spec, 50)
    short = generate(spec, 20)
    assert [int(v) for v in long.raw[:20]] == [int(v) for v in short.raw]


def test_generate_vdc_stays_exact():
    # the common denominator b^k tracks N, far below the exact-mode cap
    small = generate(SequenceSpec("vdc", base=2), 1 << 10)
    assert isinstance(small, RationalBatch)
    assert small.denominator == 1 << 10
    odd = generate(SequenceSpec("vdc", base=2), (1 << 10) + 1)
    assert isinstance(odd, RationalBatch)
    assert odd.denominator == 1 << 11


def test_generate_vdc_skip_zero():
    batch = generate(SequenceSpec("vdc", base=2, include_zero=False), 3)
    fracs = [Fraction(v, batch.denominator) for v in batch.numerators]
    assert fracs == [Fraction(1, 2), Fraction(1, 4), Fraction(3, 4)]


def test_rational_to_fixed_rounds():
    batch = RationalBatch(3, 1, [0, 1, 2])
    fixed = batch.to_fixed()
    assert int(fixed.raw[1]) == 6148914691236517205  # nearest to 2^64/3


def test_spec_validation():
    with pytest.raises(ValueError):
        SequenceSpec("nope")
    with pytest.raises(ValueError):
        SequenceSpec("vdc", base=1)
    with pytest.raises(ValueError):
        SequenceSpec("iid", precision=96)
