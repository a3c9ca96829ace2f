"""Exact power series truncated at a fixed degree.

Used to expand the generating-function identities for the truncated part
statistics coefficient by coefficient, so that they can be compared with
direct counting and enumeration by plain integer equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import floor
from typing import Iterable

from .errors import ValidationError


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series with integer coefficients, exact modulo x^(cap+1)."""

    cap: int
    coeffs: tuple

    def __post_init__(self):
        if self.cap < 0:
            raise ValidationError("cap must be non-negative")
        c = tuple(self.coeffs[: self.cap + 1])
        object.__setattr__(self, "coeffs", c + (0,) * (self.cap + 1 - len(c)))

    @classmethod
    def one(cls, cap: int) -> "TruncatedSeries":
        return cls.monomial(cap, 0)

    @classmethod
    def monomial(cls, cap: int, degree: int, coeff: int = 1) -> "TruncatedSeries":
        c = [0] * (cap + 1)
        if 0 <= degree <= cap:
            c[degree] = coeff
        return cls(cap, tuple(c))

    @classmethod
    def from_terms(cls, cap: int, terms: Iterable[tuple]) -> "TruncatedSeries":
        """Sum of ``coeff * x**degree`` over ``(degree, coeff)`` pairs."""
        c = [0] * (cap + 1)
        for degree, coeff in terms:
            if 0 <= degree <= cap:
                c[degree] += coeff
        return cls(cap, tuple(c))

    def __getitem__(self, degree: int) -> int:
        if 0 <= degree <= self.cap:
            return self.coeffs[degree]
        if degree < 0:
            return 0
        raise ValidationError(f"degree {degree} is beyond the retained cap {self.cap}")

    def _check(self, other: "TruncatedSeries") -> None:
        if self.cap != other.cap:
            raise ValidationError(f"cap mismatch: {self.cap} vs {other.cap}")

    def __add__(self, other):
        self._check(other)
        return TruncatedSeries(self.cap, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return TruncatedSeries(self.cap, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return TruncatedSeries(self.cap, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncatedSeries(self.cap, tuple(other * a for a in self.coeffs))
        self._check(other)
        cap = self.cap
        out = [0] * (cap + 1)
        b = other.coeffs
        for i, a in enumerate(self.coeffs):
            if a:
                for k in range(cap + 1 - i):
                    if b[k]:
                        out[i + k] += a * b[k]
        return TruncatedSeries(cap, tuple(out))

    __rmul__ = __mul__

    def times_one_minus_xk(self, k: int) -> "TruncatedSeries":
        """Multiply by (1 - x^k)."""
        c = list(self.coeffs)
        for i in range(self.cap, k - 1, -1):
            c[i] -= c[i - k]
        return TruncatedSeries(self.cap, tuple(c))

    def over_one_minus_xk(self, k: int) -> "TruncatedSeries":
        """Multiply by 1/(1 - x^k) = 1 + x^k + x^{2k} + ... (truncated).

        The running-sum form below is the geometric-series product evaluated
        in place; all coefficients stay integral.
        """
        if k < 1:
            raise ValidationError("k must be positive")
        c = list(self.coeffs)
        for i in range(k, self.cap + 1):
            c[i] += c[i - k]
        return TruncatedSeries(self.cap, tuple(c))


def geometric(cap: int, k: int, start: int | None = None) -> TruncatedSeries:
    """x^start / (1 - x^k) truncated at ``cap``; ``start`` defaults to k."""
    start = k if start is None else start
    return TruncatedSeries.from_terms(cap, ((d, 1) for d in range(start, cap + 1, k)))


def euler_product(cap: int) -> TruncatedSeries:
    """prod_{k>=1} 1/(1 - x^k) truncated at x^cap; coefficients are p(0..cap)."""
    if cap < 0:
        raise ValidationError("cap must be non-negative")
    g = TruncatedSeries.one(cap)
    for k in range(1, cap + 1):
        g = g.over_one_minus_xk(k)
    return g


def _int_part(value, name: str) -> int:
    if value < 1:
        raise ValidationError(f"{name} must be >= 1, got {value}")
    return int(floor(value))


def lemma1_series(cap: int, d, s) -> TruncatedSeries:
    """g(x) * (sum_{j<=s} x^j/(1-x^j) - (d+1) sum_{j<=s} x^{j(d+1)}/(1-x^{j(d+1)}))
    * prod_{j<=s} (1 - x^{j(d+1)}), with d and s replaced by their integer parts.

    This is the series obtained by differentiating, at z = 1, the generating
    function of partitions whose parts of size <= s have multiplicity <= d,
    marked by the number of those parts. It is *not* the generating function
    of p(n) E(Z_{d,s}) for the indicator-truncated statistic.
    """
    d = _int_part(d, "d")
    s = _int_part(s, "s")
    step = d + 1
    bracket = TruncatedSeries(cap, ())
    for j in range(1, min(s, cap) + 1):
        bracket = bracket + geometric(cap, j)
        if j * step <= cap:
            bracket = bracket - step * geometric(cap, j * step)
    for j in range(1, s + 1):
        if j * step > cap:
            break
        bracket = bracket.times_one_minus_xk(j * step)
    return euler_product(cap) * bracket


def lemma1_coefficient(cap: int, n: int, d, s) -> int:
    """Coefficient of x^n in :func:`lemma1_series`."""
    if not 0 <= n <= cap:
        raise ValidationError(f"need 0 <= n <= cap, got n={n}, cap={cap}")
    return lemma1_series(cap, d, s)[n]


def lemma2_series(cap: int, m: int, s) -> TruncatedSeries:
    """g(x) * sum_{1<=k<=s} (x^{mk} - x^{(m+1)k})."""
    if m < 1:
        raise ValidationError(f"m must be a positive integer, got {m}")
    s = _int_part(s, "s")
    terms = []
    for k in range(1, s + 1):
        if m * k > cap:
            break
        terms.append((m * k, 1))
        terms.append(((m + 1) * k, -1))
    return euler_product(cap) * TruncatedSeries.from_terms(cap, terms)


def lemma2_coefficient(cap: int, n: int, m: int, s) -> int:
    """Coefficient of x^n in :func:`lemma2_series`.

    Equals sum_{k<=s} (p(n-mk) - p(n-(m+1)k)), i.e. p(n) E(Y_{m,s}) with the
    normalising 1/p(n) left out.
    """
    if not 0 <= n <= cap:
        raise ValidationError(f"need 0 <= n <= cap, got n={n}, cap={cap}")
    return lemma2_series(cap, m, s)[n]
