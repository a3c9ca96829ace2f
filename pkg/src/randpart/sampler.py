"""Uniform random partitions and the three part-sampling procedures."""

from __future__ import annotations

import math
import random
from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate
from typing import Iterable, Mapping

import numpy as np

from .counting import CountTable
from .errors import RetryLimitExceeded, ValidationError

C = math.pi / math.sqrt(6)
SEED_BITS = 64
DEFAULT_MAX_TRIALS = 10**7
PROCEDURES = (1, 2, 3)


@dataclass(frozen=True)
class Partition:
    """A partition of ``n`` stored as sorted ``(part size, multiplicity)`` pairs.

    Only sizes with positive multiplicity are kept.
    """

    n: int
    items: tuple

    def __post_init__(self):
        total = 0
        prev = 0
        for j, a in self.items:
            if j <= prev or a < 1:
                raise ValidationError(f"malformed multiplicity pairs {self.items!r}")
            prev = j
            total += j * a
        if total != self.n:
            raise ValidationError(f"parts sum to {total}, expected {self.n}")

    @classmethod
    def from_multiplicities(cls, mult: Mapping[int, int]) -> "Partition":
        items = tuple(sorted((int(j), int(a)) for j, a in mult.items() if a))
        if any(j < 1 for j, _ in items):
            raise ValidationError("part sizes must be positive")
        return cls(sum(j * a for j, a in items), items)

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "Partition":
        mult: dict[int, int] = {}
        for j in parts:
            mult[j] = mult.get(j, 0) + 1
        return cls.from_multiplicities(mult)

    @property
    def multiplicities(self) -> dict:
        return dict(self.items)

    def alpha(self, j: int) -> int:
        for size, a in self.items:
            if size == j:
                return a
        return 0

    def parts(self) -> list:
        """Parts in non-increasing order."""
        return [j for j, a in reversed(self.items) for _ in range(a)]

    def to_json(self) -> dict:
        return {str(j): a for j, a in self.items}


@dataclass(frozen=True)
class PartDraw:
    procedure: int
    mu: int
    sigma: int


def stat_Zn(lam: Partition) -> int:
    """Total number of parts."""
    return sum(a for _, a in lam.items)


def stat_Yn(lam: Partition) -> int:
    """Number of distinct part sizes."""
    return len(lam.items)


def stat_Zds(lam: Partition, d, s) -> int:
    """Parts of size <= s whose size occurs at most d times, counted with multiplicity."""
    return sum(a for j, a in lam.items if j <= s and a <= d)


def stat_Yms(lam: Partition, m: int, s) -> int:
    """Distinct sizes <= s occurring exactly m times."""
    return sum(1 for j, a in lam.items if j <= s and a == m)


def make_rng(seed: int, replica: int = 0) -> random.Random:
    """Deterministic stream for ``seed``; replica r gets the stream of ``seed ^ r``."""
    if not 0 <= seed < 2**SEED_BITS:
        raise ValidationError(f"seed must be a {SEED_BITS}-bit unsigned integer, got {seed}")
    if replica < 0:
        raise ValidationError("replica index must be non-negative")
    return random.Random(seed ^ replica)


@lru_cache(maxsize=8)
def divisor_sums(limit: int) -> tuple:
    """sigma(k) = sum of divisors of k for k = 0..limit (sigma(0) = 0)."""
    sig = [0] * (limit + 1)
    for d in range(1, limit + 1):
        for k in range(d, limit + 1, d):
            sig[k] += d
    return tuple(sig)


def _check_n(table: CountTable, n: int) -> None:
    if n < 0:
        raise ValidationError(f"n must be non-negative, got {n}")
    table.require(n)


class ExactSampler:
    """Exactly uniform partitions of n <= table.limit (Nijenhuis-Wilf).

    While m > 0 remain, a pair (d, j) is chosen with probability
    d p(m - jd) / (m p(m)) and j copies of the part d are added. Grouping the
    pairs by k = jd turns the choice into: pick k with weight
    sigma(k) p(m - k), then a divisor d of k with weight d. Only p(0..n) is needed and every draw is
    made with exact integer arithmetic.

    With ``cache_limit > 0`` the cumulative weights for m <= cache_limit are
    kept and searched by bisection, which pays off over many draws.
    """

    def __init__(self, table: CountTable, cache_limit: int = 0):
        self.table = table
        self.sigma = divisor_sums(max(table.limit, 1))
        self.cache_limit = cache_limit
        self._cumulative: dict = {}

    def _cumulative_weights(self, m: int) -> list:
        cum = self._cumulative.get(m)
        if cum is None:
            p, sig = self.table, self.sigma
            cum = list(accumulate(sig[k] * p[m - k] for k in range(1, m + 1)))
            self._cumulative[m] = cum
        return cum

    def _pick_k(self, m: int, r: int):
        """Return (k, r') with r' uniform on [0, sigma(k) p(m-k))."""
        if m <= self.cache_limit:
            cum = self._cumulative_weights(m)
            i = bisect_right(cum, r)
            return i + 1, r - (cum[i - 1] if i else 0)
        p, sig = self.table, self.sigma
        k = 1
        while True:
            w = sig[k] * p[m - k]
            if r < w:
                return k, r
            r -= w
            k += 1

    def sample(self, n: int, rng: random.Random) -> Partition:
        _check_n(self.table, n)
        p = self.table
        mult: dict[int, int] = {}
        m = n
        while m > 0:
            k, r = self._pick_k(m, rng.randrange(m * p[m]))
            # r // p(m-k) is uniform on [0, sigma(k)); split it over divisors d | k
            t = r // p[m - k]
            for d in _divisors(k):
                if t < d:
                    break
                t -= d
            mult[d] = mult.get(d, 0) + k // d
            m -= k
        return Partition(n, tuple(sorted(mult.items())))


def sample_uniform_exact(table: CountTable, n: int, rng: random.Random) -> Partition:
    """One exactly uniform partition of ``n``; see :class:`ExactSampler`."""
    return ExactSampler(table).sample(n, rng)


def _divisors(k: int) -> list:
    small, large = [], []
    i = 1
    while i * i <= k:
        if k % i == 0:
            small.append(i)
            if i * i != k:
                large.append(k // i)
        i += 1
    return small + large[::-1]


def fristedt_q(n: int) -> float:
    return math.exp(-C / math.sqrt(n))


def _geometric(rng: random.Random, x: float) -> int:
    """Pr(G = k) = (1 - x) x^k, k >= 0."""
    if x <= 0.0:
        return 0
    return int(math.log(1.0 - rng.random()) / math.log(x))


class FristedtSampler:
    """Fristedt's conditioning device with acceptance bookkeeping.

    Independent gamma_j, Pr(gamma_j = k) = (1 - q^j) q^{jk}, are drawn for
    j = 1..n and the draw is accepted when sum j gamma_j = n. Sizes j above
    ``dense_limit`` are visited by thinning: candidates are spaced by
    geometric gaps with success probability q^(dense_limit+1) and kept with
    probability q^(j - dense_limit - 1), so a trial costs roughly
    O(dense_limit) instead of O(n).
    """

    def __init__(self, n: int, q: float | None = None, max_trials: int = DEFAULT_MAX_TRIALS):
        if n < 1:
            raise ValidationError(f"n must be positive, got {n}")
        self.n = n
        self.q = fristedt_q(n) if q is None else q
        if not 0.0 < self.q < 1.0:
            raise ValidationError("q must lie in (0, 1)")
        self.max_trials = max_trials
        self.trials = 0
        self.accepted = 0
        # below this size Pr(gamma_j > 0) >= 1e-3 and direct draws are cheap
        self.dense_limit = min(n, max(1, int(math.ceil(math.log(1e-3) / math.log(self.q)))))

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.trials if self.trials else 0.0

    def _trial(self, rng: random.Random):
        n, q = self.n, self.q
        mult = {}
        total = 0
        for j in range(1, self.dense_limit + 1):
            g = _geometric(rng, q**j)
            if g:
                total += j * g
                if total > n:
                    return None
                mult[j] = g
        j0 = self.dense_limit + 1
        if j0 <= n:
            bound = q**j0
            log_miss = math.log1p(-bound)
            j = j0 - 1
            while True:
                j += 1 + int(math.log(1.0 - rng.random()) / log_miss)
                if j > n:
                    break
                if rng.random() * bound < q**j:
                    # gamma_j >= 1; by memorylessness gamma_j - 1 is again geometric
                    g = 1 + _geometric(rng, q**j)
                    total += j * g
                    if total > n:
                        return None
                    mult[j] = g
        if total != n:
            return None
        return mult

    def sample(self, rng: random.Random) -> Partition:
        start = self.trials
        while self.trials - start < self.max_trials:
            self.trials += 1
            mult = self._trial(rng)
            if mult is not None:
                self.accepted += 1
                return Partition.from_multiplicities(mult)
        raise RetryLimitExceeded(
            f"no acceptance in {self.max_trials} trials for n={self.n} "
            f"(measured acceptance rate {self.acceptance_rate:.3g})",
            trials=self.trials,
            accepted=self.accepted,
        )

    def sample_batch(self, count: int, rng: random.Random, block: int | None = None) -> list:
        """``count`` accepted partitions using vectorised numpy trials.

        The numpy generator is seeded from ``rng`` so results stay a pure
        function of the caller's stream. Accepted draws keep trial order.
        """
        n, q = self.n, self.q
        gen = np.random.Generator(np.random.PCG64(rng.getrandbits(128)))
        sizes = np.arange(1, n + 1)
        # numpy's geometric counts trials to first success, starting at 1
        success = 1.0 - q**sizes
        block = block or max(1024, (1 << 20) // n)
        out = []
        start = self.trials
        while len(out) < count:
            if self.trials - start >= self.max_trials:
                raise RetryLimitExceeded(
                    f"{len(out)} of {count} draws accepted within {self.max_trials} trials "
                    f"(measured acceptance rate {self.acceptance_rate:.3g})",
                    trials=self.trials,
                    accepted=self.accepted,
                )
            b = min(block, self.max_trials - (self.trials - start))
            gammas = gen.geometric(success, size=(b, n)) - 1
            hit = np.flatnonzero(gammas @ sizes == n)
            need = count - len(out)
            if len(hit) > need:
                # count only the trials up to the last draw that is kept
                b = int(hit[need - 1]) + 1
                hit = hit[:need]
            self.trials += b
            self.accepted += len(hit)
            for row in gammas[hit]:
                nz = np.flatnonzero(row)
                out.append(Partition(n, tuple((int(j) + 1, int(row[j])) for j in nz)))
        return out


def sample_uniform_fristedt(
    n: int, rng: random.Random, max_trials: int = DEFAULT_MAX_TRIALS
) -> Partition:
    return FristedtSampler(n, max_trials=max_trials).sample(rng)


def part_weights(lam: Partition, procedure: int) -> list:
    """Selection weight of each distinct size (ascending) under a procedure.

    1: alpha_j (uniform over all parts); 2: 1 (uniform over distinct sizes);
    3: j * alpha_j (proportional to the block area in the Ferrers diagram).
    """
    if procedure == 1:
        return [a for _, a in lam.items]
    if procedure == 2:
        return [1] * len(lam.items)
    if procedure == 3:
        return [j * a for j, a in lam.items]
    raise ValidationError(f"procedure must be 1, 2 or 3, got {procedure}")


def draw_part(lam: Partition, procedure: int, rng: random.Random) -> PartDraw:
    if not lam.items:
        raise ValidationError("the empty partition has no parts to draw")
    weights = part_weights(lam, procedure)
    r = rng.randrange(sum(weights))
    for (j, a), w in zip(lam.items, weights):
        if r < w:
            return PartDraw(procedure, a, j)
        r -= w
    raise AssertionError("unreachable")
