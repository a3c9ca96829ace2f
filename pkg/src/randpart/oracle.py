"""Brute-force enumeration of all partitions of n and the exact joint laws
of (multiplicity, size) of the sampled part.

Everything here is ground truth for the other modules, so it deliberately
avoids the count-table shortcuts (except :func:`exact_joint_proc3`, which has
an enumeration twin for cross-checking).
"""

from __future__ import annotations

import csv
import io
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .counting import CountTable, prob_multiplicity
from .errors import EnumerationCapExceeded, ValidationError
from .sampler import Partition, stat_Yms, stat_Yn, stat_Zds, stat_Zn

DEFAULT_ENUMERATION_CAP = 45


def enumerate_partitions(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[Partition]:
    """Yield every partition of ``n`` once, in ascending-composition order."""
    if n < 0:
        raise ValidationError(f"n must be non-negative, got {n}")
    if n > cap:
        raise EnumerationCapExceeded(f"n={n} exceeds enumeration cap {cap}")
    if n == 0:
        yield Partition(0, ())
        return
    for parts in _accel_asc(n):
        yield Partition.from_parts(parts)


def _accel_asc(n: int) -> Iterator[list]:
    # Kelleher's ascending-composition generator
    a = [0] * (n + 1)
    k = 1
    y = n - 1
    while k != 0:
        x = a[k - 1] + 1
        k -= 1
        while 2 * x <= y:
            a[k] = x
            y -= x
            k += 1
        l = k + 1
        while x <= y:
            a[k] = x
            a[l] = y
            yield a[: k + 2]
            x += 1
            y -= 1
        a[k] = x + y
        y = x + y - 1
        yield a[: k + 1]


def _floor_arg(value, name: str) -> int:
    # real thresholds act through their integer part; below 1 nothing qualifies
    if value < 0:
        raise ValidationError(f"{name} must be non-negative, got {value}")
    return int(math.floor(value))


def _check_proc_arg(n: int, cap: int) -> None:
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    if n > cap:
        raise EnumerationCapExceeded(f"n={n} exceeds enumeration cap {cap}")


def exact_joint_proc1(n: int, d, s, cap: int = DEFAULT_ENUMERATION_CAP) -> Fraction:
    """P(mu <= d, sigma <= s) under procedure 1: the mean of Z_{d,s}/Z_n."""
    _check_proc_arg(n, cap)
    d, s = _floor_arg(d, "d"), _floor_arg(s, "s")
    total = Fraction(0)
    for lam in enumerate_partitions(n, cap):
        total += Fraction(stat_Zds(lam, d, s), stat_Zn(lam))
    return total / _count(n, cap)


def exact_joint_proc2(n: int, m: int, s, cap: int = DEFAULT_ENUMERATION_CAP) -> Fraction:
    """P(mu = m, sigma <= s) under procedure 2: the mean of Y_{m,s}/Y_n."""
    _check_proc_arg(n, cap)
    s = _floor_arg(s, "s")
    total = Fraction(0)
    for lam in enumerate_partitions(n, cap):
        total += Fraction(stat_Yms(lam, m, s), stat_Yn(lam))
    return total / _count(n, cap)


def exact_joint_proc3_enum(n: int, m: int, s, cap: int = DEFAULT_ENUMERATION_CAP) -> Fraction:
    """P(mu = m, sigma <= s) under procedure 3 by summing the per-partition
    selection weights (m/n) * sum_{j<=s, alpha_j=m} j."""
    _check_proc_arg(n, cap)
    s = _floor_arg(s, "s")
    total = 0
    for lam in enumerate_partitions(n, cap):
        total += sum(j for j, a in lam.items if j <= s and a == m)
    return Fraction(m * total, n * _count(n, cap))


def exact_joint_proc3(table: CountTable, n: int, m: int, s) -> Fraction:
    """P(mu = m, sigma <= s) under procedure 3 from the multiplicity law:
    (m/n) * sum_{j<=s} j Pr(alpha_j = m)."""
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    table.require(n)
    s = min(_floor_arg(s, "s"), n)
    acc = sum((j * prob_multiplicity(table, n, j, m) for j in range(1, s + 1)), Fraction(0))
    return Fraction(m, n) * acc


def _count(n: int, cap: int) -> int:
    return sum(1 for _ in enumerate_partitions(n, cap))


def constrained_part_count(n: int, d, s, cap: int = DEFAULT_ENUMERATION_CAP) -> int:
    """Sum, over partitions of n in which every size <= s occurs at most d
    times, of the number of parts of size <= s.

    This is what the differentiated generating function for Z_{d,s}
    actually counts (compare :func:`randpart.series.lemma1_coefficient`).
    """
    d, s = _floor_arg(d, "d"), _floor_arg(s, "s")
    total = 0
    for lam in enumerate_partitions(n, cap):
        if all(a <= d for j, a in lam.items if j <= s):
            total += sum(a for j, a in lam.items if j <= s)
    return total


@dataclass
class JointTable:
    """Exact joint distribution function of the sampled part on an integer grid.

    ``entries[(k, s)]`` is P(mu <= k, sigma <= s) for procedure 1 and
    P(mu = k, sigma <= s) for procedures 2 and 3. ``k`` runs over
    1..max_multiplicity and ``s`` over 1..n.
    """

    n: int
    procedure: int
    entries: dict = field(default_factory=dict)

    @property
    def max_multiplicity(self) -> int:
        return max((k for k, _ in self.entries), default=0)

    def value(self, k: int, s) -> Fraction:
        """Lookup with real ``s`` floored onto the grid and out-of-grid cells clamped."""
        s = min(int(math.floor(s)), self.n)
        if s < 1 or k < 1:
            return Fraction(0)
        kmax = self.max_multiplicity
        if k > kmax:
            return self.entries[(kmax, s)] if self.procedure == 1 else Fraction(0)
        return self.entries[(k, s)]

    def total_mass(self) -> Fraction:
        if self.procedure == 1:
            return self.entries[(self.max_multiplicity, self.n)]
        return sum((self.entries[(k, self.n)] for k in range(1, self.max_multiplicity + 1)), Fraction(0))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m_or_d", "s", "num", "den", "float"])
        for (k, s), v in sorted(self.entries.items()):
            w.writerow([k, s, v.numerator, v.denominator, format(float(v), ".17g")])
        return buf.getvalue()


def joint_table(n: int, procedure: int, cap: int = DEFAULT_ENUMERATION_CAP) -> JointTable:
    """All grid values of one procedure's joint law from a single enumeration pass.

    Per-partition masses are accumulated as integers grouped by their
    denominator, so the pass itself does no rational arithmetic.
    """
    _check_proc_arg(n, cap)
    if procedure not in (1, 2, 3):
        raise ValidationError(f"procedure must be 1, 2 or 3, got {procedure}")
    # mass[(multiplicity, size)][denominator] -> integer numerator
    mass: dict = defaultdict(lambda: defaultdict(int))
    count = 0
    kmax = 0
    for lam in enumerate_partitions(n, cap):
        count += 1
        if procedure == 1:
            den = stat_Zn(lam)
        elif procedure == 2:
            den = stat_Yn(lam)
        else:
            den = n
        for j, a in lam.items:
            kmax = max(kmax, a)
            num = a if procedure == 1 else 1 if procedure == 2 else j * a
            mass[(a, j)][den] += num
    cell = {key: sum((Fraction(v, den) for den, v in by_den.items()), Fraction(0)) / count
            for key, by_den in mass.items()}
    entries = {}
    for k in range(1, kmax + 1):
        running = Fraction(0)
        for s in range(1, n + 1):
            running += cell.get((k, s), Fraction(0))
            entries[(k, s)] = running
    if procedure == 1:
        # turn mu = k into mu <= k
        for s in range(1, n + 1):
            running = Fraction(0)
            for k in range(1, kmax + 1):
                running += entries[(k, s)]
                entries[(k, s)] = running
    return JointTable(n, procedure, entries)
