import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from randpart.counting import build_count_table
from randpart.errors import TableTooSmall
from randpart.expectations import (
    expect_Yms,
    expect_Yn,
    expect_Zds,
    expect_Zn,
    expectation_report,
)

from conftest import brute_multiplicities

T30 = build_count_table(30)


def enum_mean(n, stat):
    parts = brute_multiplicities(n)
    return Fraction(sum(stat(lam) for lam in parts), len(parts))


@pytest.mark.parametrize("n,expected", [(4, Fraction(12, 5)), (1, 1), (2, Fraction(3, 2))])
def test_Zn_examples(n, expected):
    assert expect_Zn(T30, n) == expected


@pytest.mark.parametrize("n,expected", [(4, Fraction(7, 5)), (1, 1), (3, Fraction(4, 3))])
def test_Yn_examples(n, expected):
    assert expect_Yn(T30, n) == expected


@pytest.mark.parametrize("n,d,s,expected", [
    (4, 1, 4, Fraction(4, 5)),
    (4, 4, 4, Fraction(12, 5)),
    (4, 1, 1, Fraction(1, 5)),
])
def test_Zds_examples(n, d, s, expected):
    assert expect_Zds(T30, n, d, s) == expected


@pytest.mark.parametrize("n,m,s,expected", [
    (4, 1, 4, Fraction(4, 5)),
    # no partition of 4 has a size repeated exactly three times
    (4, 3, 4, Fraction(0)),
    (4, 5, 4, Fraction(0)),
])
def test_Yms_examples(n, m, s, expected):
    assert expect_Yms(T30, n, m, s) == expected
    assert enum_mean(n, lambda lam: sum(1 for j, a in lam if j <= s and a == m)) == expected


def test_all_expectations_match_enumeration():
    for n in range(1, 31):
        parts = brute_multiplicities(n)
        N = len(parts)
        assert expect_Zn(T30, n) == Fraction(sum(sum(a for _, a in lam) for lam in parts), N)
        assert expect_Yn(T30, n) == Fraction(sum(len(lam) for lam in parts), N)
        for s in range(1, n + 1):
            for d in range(1, n + 1):
                z = sum(a for lam in parts for j, a in lam if j <= s and a <= d)
                assert expect_Zds(T30, n, d, s) == Fraction(z, N)
            for m in range(1, 6):
                y = sum(1 for lam in parts for j, a in lam if j <= s and a == m)
                assert expect_Yms(T30, n, m, s) == Fraction(y, N)


def test_real_thresholds_use_integer_parts():
    assert expect_Zds(T30, 10, 2.7, 3.99) == expect_Zds(T30, 10, 2, 3)
    assert expect_Yms(T30, 10, 1, 5.5) == expect_Yms(T30, 10, 1, 5)


@settings(max_examples=60)
@given(n=st.integers(1, 30), d=st.integers(1, 30), s=st.integers(1, 30), m=st.integers(1, 6))
def test_monotone_and_bounded(n, d, s, m):
    z = expect_Zds(T30, n, d, s)
    assert 0 <= z <= expect_Zn(T30, n)
    assert expect_Zds(T30, n, d + 1, s) >= z
    assert expect_Zds(T30, n, d, s + 1) >= z
    y = expect_Yms(T30, n, m, s)
    assert 0 <= y <= expect_Yn(T30, n)
    assert expect_Yms(T30, n, m, s + 1) >= y


def test_Yms_sum_over_m_is_Yn():
    for n in range(1, 31):
        assert sum(expect_Yms(T30, n, m, n) for m in range(1, n + 1)) == expect_Yn(T30, n)


def test_ratio_trends(table):
    ns = (100, 400, 1600)
    ry = [float(expect_Yn(table, n)) * math.pi / math.sqrt(6 * n) for n in ns]
    rz = [float(expect_Zn(table, n)) * 2 * math.pi / (math.sqrt(6 * n) * math.log(n)) for n in ns]
    for r in (ry, rz):
        gaps = [abs(x - 1) for x in r]
        assert gaps[0] > gaps[1] > gaps[2]


def test_table_bounds():
    with pytest.raises(TableTooSmall):
        expect_Zn(T30, 31)


def test_report(table):
    rep = expectation_report(table, 400, "yn")
    assert rep.exact == expect_Yn(table, 400)
    assert rep.asymptotic == pytest.approx(math.sqrt(2400) / math.pi)
    js = expectation_report(T30, 4, "zds", d=1, s=4).to_json()
    assert js["exact"] == "4/5"
