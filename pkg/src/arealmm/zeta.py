"""Riemann zeta at integer arguments and Dirichlet L for conductors 3 and 4.

Even zeta arguments use the exact Bernoulli closed form
zeta(2m) = (-1)^(m+1) B_2m (2 pi)^(2m) / (2 (2m)!); everything else runs
through a Hurwitz-zeta evaluator that sums an initial segment and corrects
the tail with Euler-Maclaurin terms.  The L-functions decompose over the
residue classes of their character, which is exactly the accelerated form
of the alternating character series.
"""

from __future__ import annotations

import math

from .core import DEFAULT_CONTROL, SeriesBudgetError, SeriesControl
from .exact import bernoulli, euler_number

__all__ = [
    "zeta_int", "hurwitz_zeta", "dirichlet_L", "catalan",
    "dirichlet_L4_odd_closed",
]

_EVEN_CLOSED_FORM_MAX = 64


def hurwitz_zeta(s: float, a: float, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Hurwitz zeta for s > 1, a > 0 by direct sum + Euler-Maclaurin tail."""
    if s <= 1:
        raise ValueError("hurwitz_zeta requires s > 1")
    if a <= 0:
        raise ValueError("hurwitz_zeta requires a > 0")
    cutoff = 24
    for _ in range(6):
        head = 0.0
        for k in range(cutoff - 1, -1, -1):  # small terms first
            head += (a + k) ** (-s)
        x = a + cutoff
        tail = x ** (1.0 - s) / (s - 1.0) + 0.5 * x ** (-s)
        poch = s  # s(s+1)...(s+2j-2), built incrementally
        xpow = x ** (-s - 1.0)
        converged = False
        for j in range(1, 40):
            term = float(bernoulli(2 * j)) / math.factorial(2 * j) * poch * xpow
            tail += term
            if abs(term) < ctl.tol * 1e-3:
                converged = True
                break
            poch *= (s + 2 * j - 1) * (s + 2 * j)
            xpow /= x * x
        if converged:
            return head + tail
        cutoff *= 2
    raise SeriesBudgetError("Euler-Maclaurin tail failed to reach tolerance")


def zeta_int(n: int, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """zeta(n) for integer n >= 2."""
    if n < 2:
        raise ValueError("zeta_int requires n >= 2")
    if n % 2 == 0 and n <= _EVEN_CLOSED_FORM_MAX:
        m = n // 2
        sign = -1.0 if m % 2 == 0 else 1.0  # (-1)^(m+1)
        return sign * float(bernoulli(n)) * (2.0 * math.pi) ** n / (2.0 * math.factorial(n))
    return hurwitz_zeta(float(n), 1.0, ctl)


def dirichlet_L(conductor: int, s: int, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """L(chi_-3, s) or L(chi_-4, s) for integer s >= 2.

    chi_-4 is +1, -1 on 1, 3 mod 4; chi_-3 is +1, -1 on 1, 2 mod 3.
    """
    if s < 2:
        raise ValueError("dirichlet_L requires s >= 2")
    if conductor == 4:
        return 4.0 ** (-s) * (hurwitz_zeta(s, 0.25, ctl) - hurwitz_zeta(s, 0.75, ctl))
    if conductor == 3:
        return 3.0 ** (-s) * (hurwitz_zeta(s, 1.0 / 3.0, ctl) - hurwitz_zeta(s, 2.0 / 3.0, ctl))
    raise ValueError("only conductors 3 and 4 are supported")


def catalan(ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Catalan's constant, the alias for L(chi_-4, 2)."""
    return dirichlet_L(4, 2, ctl)


def dirichlet_L4_odd_closed(s: int) -> float:
    """Closed form L(chi_-4, 2n+1) = (-1)^n E_2n pi^(2n+1) / (2^(2n+2) (2n)!)."""
    if s < 1 or s % 2 == 0:
        raise ValueError("closed form applies to odd s >= 1")
    n = (s - 1) // 2
    sign = 1.0 if n % 2 == 0 else -1.0
    return sign * float(euler_number(2 * n)) * math.pi ** (2 * n + 1) / (
        2.0 ** (2 * n + 2) * math.factorial(2 * n)
    )
