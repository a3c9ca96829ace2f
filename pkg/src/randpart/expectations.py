"""Exact finite-n expectations of the part statistics, computed from counts.

All four use E(alpha_j) = sum_{m>=1} Pr(alpha_j >= m) = sum_{m>=1} p(n-jm)/p(n)
or Pr(alpha_j = m) = (p(n-jm) - p(n-j(m+1)))/p(n); no enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .counting import CountTable
from .errors import ValidationError

STATISTICS = ("zn", "yn", "zds", "yms")


def _check(table: CountTable, n: int) -> None:
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    table.require(n)


def _int_part(value, name: str) -> int:
    if value < 1:
        raise ValidationError(f"{name} must be >= 1, got {value}")
    return int(math.floor(value))


def expect_Zn(table: CountTable, n: int) -> Fraction:
    """E(Z_n), the mean total number of parts."""
    _check(table, n)
    p = table
    num = sum(p[n - j * m] for j in range(1, n + 1) for m in range(1, n // j + 1))
    return Fraction(num, p[n])


def expect_Yn(table: CountTable, n: int) -> Fraction:
    """E(Y_n), the mean number of distinct part sizes."""
    _check(table, n)
    return Fraction(sum(table[n - k] for k in range(1, n + 1)), table[n])


def expect_Zds(table: CountTable, n: int, d, s) -> Fraction:
    """E(Z_{d,s}): parts of size <= s with multiplicity <= d.

    Real d and s act through their integer parts.
    """
    _check(table, n)
    d = _int_part(d, "d")
    s = min(_int_part(s, "s"), n)
    p = table
    num = 0
    for j in range(1, s + 1):
        for m in range(1, min(d, n // j) + 1):
            num += m * (p[n - j * m] - p[n - j * (m + 1)])
    return Fraction(num, p[n])


def expect_Yms(table: CountTable, n: int, m: int, s) -> Fraction:
    """E(Y_{m,s}) = (1/p(n)) sum_{k<=s} (p(n-mk) - p(n-(m+1)k))."""
    _check(table, n)
    if m < 1:
        raise ValidationError(f"m must be a positive integer, got {m}")
    s = min(_int_part(s, "s"), n)
    p = table
    num = sum(p[n - m * k] - p[n - (m + 1) * k] for k in range(1, s + 1))
    return Fraction(num, p[n])


@dataclass(frozen=True)
class ExpectationReport:
    n: int
    stat: str
    params: dict
    exact: Fraction
    asymptotic: Optional[float] = None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "stat": self.stat,
            "params": self.params,
            "exact": f"{self.exact.numerator}/{self.exact.denominator}",
            "float": float(self.exact),
            "asymptotic": self.asymptotic,
        }


def expectation_report(table: CountTable, n: int, stat: str, d=None, s=None, m=None) -> ExpectationReport:
    from . import asymptotics

    if stat == "zn":
        return ExpectationReport(n, stat, {}, expect_Zn(table, n), asymptotics.asym_EZ(n))
    if stat == "yn":
        return ExpectationReport(n, stat, {}, expect_Yn(table, n), asymptotics.asym_EY(n))
    if stat == "zds":
        if d is None or s is None:
            raise ValidationError("zds needs --d and --s")
        approx = asymptotics.phi_ds(asymptotics.solve_saddle(n).h, min(d, n), min(s, n))
        return ExpectationReport(n, stat, {"d": d, "s": s}, expect_Zds(table, n, d, s), approx)
    if stat == "yms":
        if m is None or s is None:
            raise ValidationError("yms needs --m and --s")
        approx = asymptotics.asym_EYms(n, m, min(s, n))
        return ExpectationReport(n, stat, {"m": m, "s": s}, expect_Yms(table, n, m, s), approx)
    raise ValidationError(f"unknown statistic {stat!r}; expected one of {STATISTICS}")
