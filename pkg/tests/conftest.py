from collections import Counter
from functools import lru_cache

import pytest

from randpart.counting import build_count_table


def brute_partitions(n, max_part=None):
    """All partitions of n as non-increasing tuples; plain recursion, no tables."""
    if max_part is None:
        max_part = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in brute_partitions(n - first, first):
            out.append((first,) + rest)
    return out


@lru_cache(maxsize=None)
def brute_multiplicities(n):
    return tuple(tuple(sorted(Counter(p).items())) for p in brute_partitions(n))


@pytest.fixture(scope="session")
def table():
    return build_count_table(10000)


@pytest.fixture(scope="session")
def small_table():
    return build_count_table(60)


ACCEPTANCE_LINES = []


@pytest.fixture
def verdict():
    """Record one summary line per acceptance criterion, then assert it."""

    def check(number, label, results, elapsed=None):
        ok = all(passed for _, passed in results)
        details = "; ".join(f"{name}={'ok' if passed else 'FAIL'}" for name, passed in results)
        timing = f" ({elapsed:.1f}s)" if elapsed is not None else ""
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'} {label}{timing}: {details}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        failed = [name for name, passed in results if not passed]
        assert not failed, f"criterion {number} failed: {failed}"

    return check


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
