"""Limiting joint and marginal laws of (multiplicity, size) of the sampled part.

Procedure 1 lives on the log scale (2 log mu / log n, 2 log sigma / log n);
procedures 2 and 3 on the size scale t = pi sigma / sqrt(6n) with the
multiplicity left discrete. Closed forms are paired with quadrature versions
(``*_quad``) that serve as independent checks.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate

from .errors import ValidationError

PI2 = math.pi**2
QUAD_OPTS = dict(epsabs=1e-13, epsrel=1e-13, limit=200)


def F1(u: float, v: float) -> float:
    """Limit of P(2 log mu / log n <= u, 2 log sigma / log n <= v), procedure 1."""
    if min(u, v) <= 0:
        return 0.0
    if u > 1 and v > 1:
        return 1.0
    if u > 1:
        return min(1.0, v)
    if v > 1:
        return min(1.0, u)
    return max(0.0, u + v - 1.0)


def _check_mt(m: int, t: float) -> None:
    if m < 1 or int(m) != m:
        raise ValidationError(f"m must be a positive integer, got {m}")
    if t < 0 or math.isnan(t):
        raise ValidationError(f"t must be non-negative, got {t}")


def _one_minus_exp(x: float) -> float:
    # 1 - e^{-x}
    return -math.expm1(-x)


def _first_moment_tail(a: float, t: float) -> float:
    # int_0^t y e^{-ay} dy = (1 - e^{-at}(1 + at)) / a^2
    x = a * t
    if math.isinf(x):
        return 1.0 / (a * a)
    return (-math.expm1(-x) - x * math.exp(-x)) / (a * a)


def L2(m: int, t: float) -> float:
    """int_0^t e^{-my}(1 - e^{-y}) dy: limit of P(mu = m, pi sigma/sqrt(6n) <= t), procedure 2."""
    _check_mt(m, t)
    if math.isinf(t):
        return 1.0 / (m * (m + 1))
    # the difference cancels to ~t^2/2 for tiny t; keep rounding from going negative
    return max(0.0, _one_minus_exp(m * t) / m - _one_minus_exp((m + 1) * t) / (m + 1))


def L3(m: int, t: float) -> float:
    """(6m/pi^2) int_0^t y (1 - e^{-y}) e^{-my} dy, procedure 3."""
    _check_mt(m, t)
    return max(0.0, 6.0 * m / PI2 * (_first_moment_tail(m, t) - _first_moment_tail(m + 1, t)))


def L2_quad(m: int, t: float) -> float:
    _check_mt(m, t)
    val, _ = integrate.quad(lambda y: math.exp(-m * y) * -math.expm1(-y), 0.0, t, **QUAD_OPTS)
    return val


def L3_quad(m: int, t: float) -> float:
    _check_mt(m, t)
    val, _ = integrate.quad(lambda y: y * -math.expm1(-y) * math.exp(-m * y), 0.0, t, **QUAD_OPTS)
    return 6.0 * m / PI2 * val


def M1(t: float) -> float:
    """Marginal of 2 log mu / log n (and of 2 log sigma / log n) under procedure 1."""
    return min(1.0, max(0.0, t))


def M2_mult(m: int) -> float:
    return 1.0 / (m * (m + 1))


def M2_size(t: float) -> float:
    return _one_minus_exp(t) if t > 0 else 0.0


def M3_mult(m) -> float:
    """6(2m+1) / (pi^2 m (m+1)^2); accepts a numpy array of m as well."""
    return 6.0 * (2 * m + 1) / (PI2 * m * (m + 1) ** 2)


def _bose(y: float) -> float:
    # y / (e^y - 1), continuous at 0 with value 1
    if y < 1e-8:
        return 1.0 - 0.5 * y
    if y > 700:
        return y * math.exp(-y)
    return y / math.expm1(y)


def M3_size(t: float) -> float:
    """(6/pi^2) int_0^t y/(e^y - 1) dy; ``t`` may be ``math.inf``."""
    if t <= 0:
        return 0.0
    val, _ = integrate.quad(_bose, 0.0, t, **QUAD_OPTS)
    return 6.0 * val / PI2


def M3_mult_total(M: int) -> float:
    """sum_{m=1}^{M} M3_mult(m), summed exactly-rounded."""
    m = np.arange(1, M + 1, dtype=np.float64)
    return math.fsum(M3_mult(m))


def law(procedure: int, k: int, t: float) -> float:
    """Limit value on the (multiplicity, t) grid for procedures 2 and 3."""
    if procedure == 2:
        return L2(k, t)
    if procedure == 3:
        return L3(k, t)
    raise ValidationError("procedure 1 uses F1(u, v) on the log scale")
