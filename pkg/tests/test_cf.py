from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from circlecorr.cf import (ContinuedFraction, cf_expand, fibonacci,
                           golden_cf, golden_ostrowski, golden_phi_fraction,
                           lemma11_ratio, lemma12_value, ostrowski, residue)


def test_expand_355_113():
    cf = cf_expand(Fraction(355, 113))
    assert cf.quotients == [3, 7, 16]
    assert cf.exact
    assert cf.value() == Fraction(355, 113)


def test_expand_round_trips_rationals():
    for frac in (Fraction(1, 2), Fraction(7, 3), Fraction(199, 71), Fraction(5)):
        assert cf_expand(frac).value() == frac


@given(st.fractions(min_value=Fraction(1, 10 ** 6), max_value=10 ** 6))
def test_expand_value_round_trip(frac):
    cf = cf_expand(frac)
    assert cf.value() == frac
    assert all(a >= 1 for a in cf.quotients[1:])


def test_golden_convergents_are_fibonacci():
    cf = golden_cf(10)
    assert cf.q == [fibonacci(h) for h in range(1, 11)]
    assert cf.p == [fibonacci(h) for h in range(2, 12)]


def test_convergent_determinant_identity():
    cf = cf_expand(Fraction(199, 71))
    for i in range(len(cf)):
        p_i, q_i = cf.convergent(i)
        p_prev, q_prev = cf.convergent(i - 1)
        assert p_i * q_prev - p_prev * q_i == (-1) ** (i + 1)


def test_invalid_quotients_rejected():
    with pytest.raises(ValueError):
        ContinuedFraction([])
    with pytest.raises(ValueError):
        ContinuedFraction([1, 0, 2])


def test_str_form():
    assert str(cf_expand(Fraction(355, 113))) == "[3; 7, 16]"
    assert str(ContinuedFraction([5])) == "[5]"


def test_fixed_input_expansion_truncates():
    from circlecorr.sequences import resolve_z
    cf = cf_expand(resolve_z("golden"), precision=64)
    assert not cf.exact
    assert cf.quotients[0] == 0
    assert all(a == 1 for a in cf.quotients[1:25])


@given(st.fractions(min_value=Fraction(1, 1000), max_value=Fraction(999, 1000)))
def test_residue_bracket(z):
    cf = cf_expand(z)
    for n in range(len(cf) - 1):
        q_n = cf.q[n]
        q_next = cf.q[n + 1]
        r = residue(z, cf, n)
        assert r != 0
        # sign alternates; magnitude between the classic bounds
        assert (r > 0) == (n % 2 == 0)
        assert Fraction(1, q_n * (q_next + q_n)) < abs(r) <= Fraction(1, q_n * q_next)


def test_residue_rejects_out_of_range():
    cf = cf_expand(Fraction(355, 113))
    with pytest.raises(ValueError):
        residue(Fraction(355, 113), cf, 5)


# --- Ostrowski representations ---------------------------------------------


def test_golden_ostrowski_examples():
    assert str(golden_ostrowski(12)) == "1@6 1@4 1@2"  # 12 = 8 + 3 + 1
    assert str(golden_ostrowski(1)) == "1@2"
    assert str(golden_ostrowski(100)) == "1@11 1@6 1@4"  # 89 + 8 + 3


@given(st.integers(min_value=1, max_value=10 ** 9))
def test_golden_ostrowski_is_zeckendorf(n):
    rep = golden_ostrowski(n)
    assert sum(b * w for b, w in zip(rep.coeffs, rep.weights)) == n
    support = [i for i, b in rep.nonzero()]
    # no two adjacent Fibonacci indices
    assert all(a - b >= 2 for a, b in zip(support, support[1:]))


@given(st.integers(min_value=1, max_value=10 ** 6),
       st.lists(st.integers(min_value=1, max_value=9), min_size=12, max_size=20))
def test_ostrowski_reconstructs_over_random_ladders(n, quots):
    cf = ContinuedFraction([0] + quots + [1] * 30)
    rep = ostrowski(n, cf)
    assert sum(b * w for b, w in zip(rep.coeffs, rep.weights)) == n
    for j, (b, cap) in enumerate(zip(rep.coeffs, rep.caps)):
        assert 0 <= b <= cap
        if b == cap and j > 0:
            assert rep.coeffs[j - 1] == 0


def test_ostrowski_requires_long_enough_table():
    with pytest.raises(ValueError):
        ostrowski(100, ContinuedFraction([0, 2, 2]))


def test_lemma11_ratio_pure_fibonacci():
    rep = golden_ostrowski(fibonacci(20))
    assert lemma11_ratio(rep) == Fraction(fibonacci(20), fibonacci(19))


def test_lemma11_ratio_degenerate():
    from circlecorr.cf import OstrowskiRep
    # a lone digit at index 1 has shifted weight q_0 = 0
    rep = OstrowskiRep(1, [1, 0], [1, 1], [1, 1], [0, 1], [1, 2])
    with pytest.raises(ZeroDivisionError):
        lemma11_ratio(rep)


def test_lemma12_value_converges():
    assert abs(lemma12_value(20) - 1) < 1e-4
    assert abs(lemma12_value(30) - 1) < 1e-8
    with pytest.raises(ValueError):
        lemma12_value(1)


def test_phi_fraction_accuracy():
    phi = golden_phi_fraction(192)
    assert abs(float(phi) - (1 + 5 ** 0.5) / 2) < 1e-15
    # squares to phi + 1
    assert abs(float(phi * phi - phi - 1)) < 1e-50
