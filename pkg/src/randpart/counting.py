"""Exact partition counts p(0..N) and the multiplicity probabilities built on them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ResourceCapExceeded, TableTooSmall, ValidationError

DEFAULT_TABLE_CAP = 10**6


@dataclass(frozen=True)
class CountTable:
    """Immutable table of p(0), ..., p(limit).

    Indexing below zero returns 0 so that the convolution identities can be
    written without boundary cases; indexing above ``limit`` raises
    :class:`TableTooSmall`.
    """

    limit: int
    values: Sequence[int]

    def __getitem__(self, k: int) -> int:
        if k < 0:
            return 0
        if k > self.limit:
            raise TableTooSmall(f"p({k}) requested from a table with limit {self.limit}")
        return self.values[k]

    def __len__(self) -> int:
        return self.limit + 1

    def require(self, n: int) -> None:
        if n > self.limit:
            raise TableTooSmall(f"n={n} exceeds count table limit {self.limit}")


def build_count_table(N: int, cap: int = DEFAULT_TABLE_CAP) -> CountTable:
    """Build p(0..N) with Euler's pentagonal-number recurrence.

    Uses O(N^{3/2}) big-integer additions.
    """
    if N < 0:
        raise ValidationError(f"table limit must be non-negative, got {N}")
    if N > cap:
        raise ResourceCapExceeded(f"table limit {N} exceeds configured cap {cap}")
    p = [0] * (N + 1)
    p[0] = 1
    # generalized pentagonal numbers k(3k-1)/2 for k = 1, -1, 2, -2, ...
    pent = []
    k = 1
    while k * (3 * k - 1) // 2 <= N:
        sign = 1 if k % 2 else -1
        pent.append((k * (3 * k - 1) // 2, sign))
        pent.append((k * (3 * k + 1) // 2, sign))
        k += 1
    for n in range(1, N + 1):
        total = 0
        for g, sign in pent:
            if g > n:
                break
            if sign > 0:
                total += p[n - g]
            else:
                total -= p[n - g]
        p[n] = total
    return CountTable(N, tuple(p))


def _check_args(table: CountTable, n: int, j: int) -> None:
    if n < 0:
        raise ValidationError(f"n must be non-negative, got {n}")
    if j < 1:
        raise ValidationError(f"part size must be positive, got {j}")
    table.require(n)


def prob_multiplicity(table: CountTable, n: int, j: int, m: int) -> Fraction:
    """Exact Pr(alpha_j = m) for a uniform partition of n.

    Equal to (p(n - jm) - p(n - j(m+1))) / p(n); parts larger than n give 0
    for every m >= 1.
    """
    _check_args(table, n, j)
    if m < 0:
        raise ValidationError(f"multiplicity must be non-negative, got {m}")
    return Fraction(table[n - j * m] - table[n - j * (m + 1)], table[n])


def count_no_part_k(table: CountTable, n: int, k: int) -> int:
    """Number of partitions of n in which no part equals k."""
    _check_args(table, n, k)
    return table[n] - table[n - k]
