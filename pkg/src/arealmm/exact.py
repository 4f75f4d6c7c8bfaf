"""Exact rational quantities: Bernoulli and Euler numbers, log-moment integrals.

``fractions.Fraction`` is the carrier for every exact value (reduced,
positive denominator by construction).  The Bernoulli/Euler tables are
grown once per process behind a lock and shared read-only afterwards.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb, factorial

__all__ = [
    "bernoulli", "euler_number", "xj_logk_integral",
    "zigzag_number", "tangent_number", "secant_number",
]

_CACHE_TARGET = 64  # indices precomputed on first use

_lock = threading.Lock()
_bernoulli_cache: list[Fraction] = []
_euler_cache: list[Fraction] = []


def _extend_bernoulli(n: int):
    """Grow the table via sum_{k=0}^{m} C(m+1, k) B_k = 0 (B_1 = -1/2)."""
    cache = _bernoulli_cache
    if not cache:
        cache.append(Fraction(1))
    for m in range(len(cache), n + 1):
        acc = Fraction(0)
        for k in range(m):
            acc += comb(m + 1, k) * cache[k]
        cache.append(-acc / (m + 1))


def _extend_euler(n: int):
    """Grow the table via the sech recurrence sum_{k even} C(m, k) E_k = 0."""
    cache = _euler_cache
    if not cache:
        cache.append(Fraction(1))
    for m in range(len(cache), n + 1):
        if m % 2 == 1:
            cache.append(Fraction(0))
            continue
        acc = Fraction(0)
        for k in range(0, m, 2):
            acc += comb(m, k) * cache[k]
        cache.append(-acc)


def bernoulli(n: int) -> Fraction:
    """nth Bernoulli number, convention B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    with _lock:
        _extend_bernoulli(max(n, _CACHE_TARGET))
        return _bernoulli_cache[n]


def euler_number(n: int) -> Fraction:
    """nth Euler number (integer-valued; zero for odd n)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    with _lock:
        _extend_euler(max(n, _CACHE_TARGET))
        return _euler_cache[n]


def zigzag_number(n: int) -> int:
    """nth zigzag (Euler up/down) number via the boustrophedon triangle.

    Even indices give the secant numbers |E_n|, odd indices the tangent
    numbers; pure integer additions, so it is an independent cross-check
    for both generating-function recurrences above.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    row = [1]
    for i in range(1, n + 1):
        prev = row
        row = [0] * (i + 1)
        for j in range(1, i + 1):
            row[j] = row[j - 1] + prev[i - j]
    return row[-1]


def tangent_number(n: int) -> int:
    """T_n for odd n (zigzag route); relates to B_{n+1} for cross-checking."""
    if n < 1 or n % 2 == 0:
        raise ValueError("tangent numbers are indexed by odd n >= 1")
    return zigzag_number(n)


def secant_number(n: int) -> int:
    """S_n = |E_n| for even n (zigzag route)."""
    if n < 0 or n % 2 == 1:
        raise ValueError("secant numbers are indexed by even n >= 0")
    return zigzag_number(n)


def xj_logk_integral(j: int, k: int) -> Fraction:
    """Exact value of the moment integral of x^j log^k x over [0, 1].

    Equals (-1)^k k! / (j+1)^(k+1); the sign lives in the numerator so the
    denominator stays positive.
    """
    if j < 0 or k < 0:
        raise ValueError("j and k must be nonnegative")
    return Fraction((-1) ** k * factorial(k), (j + 1) ** (k + 1))
