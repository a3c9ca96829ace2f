from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from randpart.counting import build_count_table
from randpart.errors import ValidationError
from randpart.expectations import expect_Yms, expect_Zds
from randpart.series import (
    TruncatedSeries,
    euler_product,
    lemma1_coefficient,
    lemma2_coefficient,
)

from conftest import brute_multiplicities


def test_euler_product_small():
    assert list(euler_product(5).coeffs) == [1, 1, 2, 3, 5, 7]
    assert list(euler_product(0).coeffs) == [1]


def test_euler_product_matches_table():
    t = build_count_table(200)
    g = euler_product(200)
    assert list(g.coeffs) == [t[k] for k in range(201)]


def test_geometric_division_is_inverse_of_multiplication():
    s = TruncatedSeries(12, (3, -1, 4, 1, -5, 9, 2, 6))
    for k in (1, 2, 5, 13):
        assert s.over_one_minus_xk(k).times_one_minus_xk(k) == s


coeff_lists = st.lists(st.integers(-50, 50), min_size=0, max_size=9)


@given(a=coeff_lists, b=coeff_lists, c=coeff_lists)
def test_multiplication_ring_laws(a, b, c):
    A, B, Cs = (TruncatedSeries(8, tuple(x)) for x in (a, b, c))
    assert A * B == B * A
    assert (A * B) * Cs == A * (B * Cs)
    assert A * (B + Cs) == A * B + A * Cs


def test_cap_mismatch_rejected():
    with pytest.raises(ValidationError):
        TruncatedSeries(3, (1,)) * TruncatedSeries(4, (1,))


@pytest.mark.parametrize("n,d,s,expected", [(4, 1, 4, 3), (4, 4, 4, 12), (1, 1, 1, 1)])
def test_lemma1_examples(n, d, s, expected):
    assert lemma1_coefficient(n, n, d, s) == expected


@pytest.mark.parametrize("n,m,s,expected", [(4, 1, 4, 4), (4, 5, 4, 0), (4, 2, 4, 2)])
def test_lemma2_examples(n, m, s, expected):
    assert lemma2_coefficient(n, n, m, s) == expected


def test_cap_smaller_than_n_rejected():
    with pytest.raises(ValidationError):
        lemma2_coefficient(3, 4, 1, 1)


def _constrained_count(parts, d, s):
    return sum(
        sum(a for j, a in lam if j <= s)
        for lam in parts
        if all(a <= d for j, a in lam if j <= s)
    )


def test_lemma1_counts_the_constrained_ensemble():
    for n in range(1, 21):
        parts = brute_multiplicities(n)
        for d in range(1, n + 1):
            for s in range(1, n + 1):
                assert lemma1_coefficient(n, n, d, s) == _constrained_count(parts, d, s)


def test_lemma1_differs_from_truncated_statistic():
    t = build_count_table(10)
    assert lemma1_coefficient(4, 4, 1, 4) == 3
    assert t[4] * expect_Zds(t, 4, 1, 4) == 4


def test_lemma2_normalised_is_expectation_by_enumeration():
    t = build_count_table(30)
    for n in range(1, 31):
        parts = brute_multiplicities(n)
        for m in range(1, 6):
            for s in range(1, n + 1):
                hits = sum(1 for lam in parts for j, a in lam if j <= s and a == m)
                assert Fraction(lemma2_coefficient(n, n, m, s), t[n]) == Fraction(hits, len(parts))
                assert lemma2_coefficient(n, n, m, s) == t[n] * expect_Yms(t, n, m, s)
