"""Saddle-point asymptotics for p(n) and for the truncated part count.

Everything that grows like exp(pi sqrt(2n/3)) is handled as a logarithm;
the ``*_log`` functions are the primary API and the plain versions
exponentiate (returning ``inf`` once a double overflows).

With x = e^{-h}, the partition generating function g has
    a(h) = sum_j j x^j / (1 - x^j)              (= x g'/g)
    b(h) = sum_j j^2 x^j / (1 - x^j)^2          (= x a'(x) = -da/dh)
    log g(h) = -sum_j log(1 - x^j)
and the saddle point h_n solves a(h_n) = n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .counting import CountTable
from .errors import BracketError, ValidationError

C = math.pi / math.sqrt(6)
ZETA2 = math.pi**2 / 6
ZETA0 = -0.5
ZETA0_PRIME = -0.5 * math.log(2 * math.pi)
TRUNCATION = 18 * math.log(10)  # terms stop once e^{-jh} < 1e-18


def _terms(h: float) -> np.ndarray:
    if not h > 0:
        raise ValidationError(f"h must be positive, got {h}")
    J = int(math.ceil(TRUNCATION / h)) + 1
    return np.arange(1, J + 1, dtype=np.float64)


def a_series(h: float) -> float:
    j = _terms(h)
    return math.fsum(j / np.expm1(j * h))


def b_series(h: float) -> float:
    j = _terms(h)
    e = np.expm1(j * h)
    # j^2 x^j/(1-x^j)^2 = j^2 e^{jh} / (e^{jh}-1)^2
    return math.fsum(j * j * (e + 1.0) / (e * e))


def log_g_series(h: float) -> float:
    j = _terms(h)
    return -math.fsum(np.log1p(-np.exp(-j * h)))


def log_g_meinardus(h: float) -> float:
    """zeta(2)/h - zeta(0) log h + zeta'(0), the small-h expansion of log g."""
    return ZETA2 / h - ZETA0 * math.log(h) + ZETA0_PRIME


def h_expansion(n: float) -> float:
    """Two-term expansion sqrt(zeta(2)/n) + zeta(0)/(2n) of the saddle point."""
    return math.sqrt(ZETA2 / n) + ZETA0 / (2 * n)


@dataclass(frozen=True)
class SaddleState:
    n: float
    h: float
    b: float
    log_g: float
    residual: float

    def to_json(self) -> dict:
        return {"n": self.n, "h": self.h, "b": self.b, "log_g": self.log_g, "residual": self.residual}


def solve_saddle(n: float, tol: float = 1e-12) -> SaddleState:
    """Solve a(e^{-h}) = n for h.

    Bisection on the bracket (0.2, 5) * pi/sqrt(6n) until its relative width
    is below 1e-3, then Newton steps with the exact derivative -b(h), kept
    inside the bracket. Stops when |a(h) - n| <= tol * n.
    """
    if not n >= 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    if not tol > 0:
        raise ValidationError("tol must be positive")
    scale = math.pi / math.sqrt(6 * n)
    lo, hi = 0.2 * scale, 5.0 * scale
    f_lo, f_hi = a_series(lo) - n, a_series(hi) - n
    # a is strictly decreasing in h
    if not (f_lo > 0 > f_hi):
        raise BracketError(f"no sign change of a(h) - n on [{lo}, {hi}] for n={n}")
    while (hi - lo) > 1e-3 * hi:
        mid = 0.5 * (lo + hi)
        if a_series(mid) - n > 0:
            lo = mid
        else:
            hi = mid
    h = 0.5 * (lo + hi)
    for _ in range(100):
        f = a_series(h) - n
        if abs(f) <= tol * n:
            break
        if f > 0:
            lo = h
        else:
            hi = h
        step = f / b_series(h)
        h_new = h + step
        if not lo < h_new < hi:
            h_new = 0.5 * (lo + hi)
        if h_new == h:
            break
        h = h_new
    residual = abs(a_series(h) - n)
    return SaddleState(n, h, b_series(h), log_g_series(h), residual)


def _exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def hr_leading_log(n: float) -> float:
    """log of exp(pi sqrt(2n/3)) / (4 n sqrt 3)."""
    return math.pi * math.sqrt(2 * n / 3) - math.log(4 * n * math.sqrt(3))


def hr_leading(n: float) -> float:
    return _exp(hr_leading_log(n))


def rademacher_two_term_log(n: float) -> float:
    """log of the leading term minus exp(pi sqrt(2n/3)) / (4 pi sqrt2 n^{3/2}).

    The correction relative to the leading term is sqrt(3/2) / (pi sqrt n).
    """
    ratio = math.sqrt(1.5) / (math.pi * math.sqrt(n))
    if ratio >= 1:
        raise ValidationError(f"two-term form is not positive at n={n}")
    return hr_leading_log(n) + math.log1p(-ratio)


def rademacher_two_term(n: float) -> float:
    return _exp(rademacher_two_term_log(n))


def hayman_pn_log(n: float, state: Optional[SaddleState] = None) -> float:
    """log of e^{n h} g(e^{-h}) / sqrt(2 pi b) at the saddle point."""
    st = state or solve_saddle(n)
    return n * st.h + st.log_g - 0.5 * math.log(2 * math.pi * st.b)


def hayman_pn(n: float) -> float:
    return _exp(hayman_pn_log(n))


def relative_error(log_approx: float, exact: int) -> float:
    """approx/exact - 1 computed without leaving log space."""
    return math.expm1(log_approx - math.log(exact))


def phi_components(h: float, d, s) -> tuple:
    """(S1, S2, P) with x = e^{-h} and integer parts of d, s:
    S1 = sum_{j<=s} x^j/(1-x^j), S2 = sum_{j<=s} x^{j(d+1)}/(1-x^{j(d+1)}),
    P = prod_{j<=s} (1 - x^{j(d+1)})."""
    if not h > 0:
        raise ValidationError(f"h must be positive, got {h}")
    if d < 1 or s < 1:
        raise ValidationError("d and s must be >= 1")
    d, s = math.floor(d), math.floor(s)
    j = np.arange(1, s + 1, dtype=np.float64)
    S1 = math.fsum(1.0 / np.expm1(j * h))
    arg = j * (d + 1) * h
    tail = np.exp(-arg)
    S2 = math.fsum(tail / -np.expm1(-arg))
    P = math.exp(math.fsum(np.log(-np.expm1(-arg))))
    return S1, S2, P


def phi_ds(h: float, d, s) -> float:
    """(S1 - (d+1) S2) * P, the saddle-point approximation of E(Z_{d,s})."""
    S1, S2, P = phi_components(h, d, s)
    return (S1 - (math.floor(d) + 1) * S2) * P


def asym_EY(n: float) -> float:
    return math.sqrt(6 * n) / math.pi


def asym_EZ(n: float) -> float:
    return math.sqrt(6 * n) / (2 * math.pi) * math.log(n)


def asym_EYms(n: float, m: int, s) -> float:
    """(sqrt(n)/c) * int_0^{c s/sqrt n} e^{-my}(1-e^{-y}) dy."""
    from .limitlaws import L2

    return math.sqrt(n) / C * L2(m, C * math.floor(s) / math.sqrt(n))


def approx_joint_proc1(n: int, u: float, v: float, table: Optional[CountTable] = None) -> float:
    """2c E(Z_{d,s}) / (sqrt(n) log n) with d = n^{u/2}, s = n^{v/2}.

    Uses the exact expectation when ``table`` covers n, the saddle-point
    value phi_{d,s}(e^{-h_n}) otherwise.
    """
    if n < 2:
        raise ValidationError("n must be >= 2 so that log n > 0")
    d = max(1.0, n ** (u / 2))
    s = max(1.0, n ** (v / 2))
    if table is not None and n <= table.limit:
        from .expectations import expect_Zds

        ez = float(expect_Zds(table, n, d, min(s, n)))
    else:
        ez = phi_ds(solve_saddle(n).h, min(d, n), min(s, n))
    return 2 * C * ez / (math.sqrt(n) * math.log(n))
