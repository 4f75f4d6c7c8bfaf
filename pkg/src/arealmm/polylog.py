"""Polylogarithms on the closed unit disk, Bloch-Wigner D, length-2 reductions.

Li_n(z) = sum_{k>=1} z^k / k^n.  Away from the circle the defining series
converges geometrically; near and on the circle it is hopeless (about 10^12
terms for n=2 at 10^-12), so there we switch to the expansion in powers of
mu = log z,

    Li_n(z) = sum_{m>=0, m != n-1} zeta(n-m) mu^m / m!
              + mu^(n-1)/(n-1)! (H_{n-1} - log(-mu)),

valid for |mu| < 2 pi, with zeta at nonpositive integers supplied by
Bernoulli numbers.  On our domain |mu| <= sqrt(log(4/3)^2 + pi^2), so the
terms decay at least like 0.52^m and the truncation error has a hard
geometric bound.  At z = 1 exactly, Li_n(1) is evaluated as a zeta value
through the Hurwitz series-plus-tail route (deliberately not the Bernoulli
closed form, so the two stay independently checkable).

Length-2 sums Li_{1,s}(u,v) = sum_{0<a<b} u^a v^b / (a b^s) are summed
directly with a partial-fraction tail bound; the reduction of
2 Re_k Li_{r,s}(u,v) to length-1 polylogarithms is assembled term by term
with guards for the exactly-cancelling divergent pairs.
"""

from __future__ import annotations

import cmath
import math
from math import comb

import numpy as np

from .core import DEFAULT_CONTROL, DISK_SLACK, SeriesBudgetError, SeriesControl
from .exact import bernoulli
from .zeta import hurwitz_zeta, zeta_int

__all__ = [
    "polylog", "bloch_wigner", "multiple_polylog_1s",
    "nakamura_reduce", "lemma_length1",
]

_DIRECT_SERIES_RADIUS = 0.75
_TWO_PI = 2.0 * math.pi


def _zeta_any_int(m: int, ctl: SeriesControl) -> float:
    """zeta at any integer except 1; negative arguments via Bernoulli."""
    if m >= 2:
        return zeta_int(m, ctl)
    if m == 1:
        raise ValueError("zeta pole at 1")
    if m == 0:
        return -0.5
    j = -m
    if j % 2 == 0:
        return 0.0
    return -float(bernoulli(j + 1)) / (j + 1)


def _polylog_direct(n: int, z: complex, ctl: SeriesControl) -> complex:
    total = 0j
    power = 1 + 0j
    r = abs(z)
    geom = 1.0 / (1.0 - r)
    for k in range(1, ctl.max_terms + 1):
        power *= z
        term = power / k ** n
        total += term
        if abs(power) * geom / (k + 1) ** n < ctl.tol:
            return total
    raise SeriesBudgetError("polylog series budget exhausted")


def _polylog_log_expansion(n: int, z: complex, ctl: SeriesControl) -> complex:
    mu = cmath.log(z)
    amu = abs(mu)
    ratio = amu / _TWO_PI  # < 1 on the closed disk
    total = 0j
    mu_pow = 1 + 0j  # mu^m / m!
    for m in range(0, 300):
        if m == n - 1:
            harmonic = sum(1.0 / j for j in range(1, n))
            total += mu_pow * (harmonic - cmath.log(-mu))
        else:
            zv = _zeta_any_int(n - m, ctl)
            if zv != 0.0:
                total += zv * mu_pow
        mu_pow *= mu / (m + 1)
        # |zeta(n-m)| <= 2.2 (m-n+1)!/(2 pi)^(m-n+1) for m > n, so the
        # m-th term is below 2.2 (2 pi)^(n-1) ratio^m
        if m > n and 2.2 * _TWO_PI ** (n - 1) * ratio ** m < ctl.tol:
            return total
    raise SeriesBudgetError("polylog log-expansion failed to converge")


def polylog(n: int, z: complex, ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Li_n(z) for integer n >= 1 and |z| <= 1; (n, z) = (1, 1) is excluded."""
    if n < 1:
        raise ValueError("polylog requires n >= 1")
    z = complex(z)
    if abs(z) > 1.0 + DISK_SLACK:
        raise ValueError("polylog is only supported on the closed unit disk")
    if z == 1:
        if n == 1:
            raise ValueError("Li_1(1) diverges")
        return complex(hurwitz_zeta(float(n), 1.0, ctl))
    if n == 1:
        return -cmath.log(1.0 - z)
    if abs(z) <= _DIRECT_SERIES_RADIUS:
        return _polylog_direct(n, z, ctl)
    return _polylog_log_expansion(n, z, ctl)


def bloch_wigner(z: complex) -> float:
    """Bloch-Wigner dilogarithm D(z) = Im Li_2(z) + log|z| arg(1 - z).

    Total on the closed disk via the conventions D(0) = D(1) = 0; principal
    branch for arg.
    """
    z = complex(z)
    if z == 0 or z == 1:
        return 0.0
    return polylog(2, z).imag + math.log(abs(z)) * cmath.phase(1.0 - z)


# ---------------------------------------------------------------------------
# Length-2 sums and their reduction


def _require_unit_circle(name: str, w: complex):
    if abs(abs(w) - 1.0) > DISK_SLACK:
        raise ValueError(f"{name} must lie on the unit circle, got |{name}| = {abs(w)!r}")


def multiple_polylog_1s(
    s: int, u: complex, v: complex, ctl: SeriesControl = DEFAULT_CONTROL
) -> complex:
    """Li_{1,s}(u, v) = sum_{b>1} v^b/b^s sum_{a=1}^{b-1} u^a/a on the torus.

    s >= 2 guarantees convergence; the inner partial sums are bounded by
    harmonic numbers, giving the tail bound
    sum_{b>B} (1+log b)/b^s <= ((1+log B)/(s-1) + 1/(s-1)^2) B^(1-s).
    """
    if s < 2:
        raise ValueError("multiple_polylog_1s requires s >= 2")
    u = complex(u)
    v = complex(v)
    _require_unit_circle("u", u)
    _require_unit_circle("v", v)

    cutoff = 2048
    while True:
        bound = ((1.0 + math.log(cutoff)) / (s - 1) + (s - 1.0) ** -2) * cutoff ** (1 - s)
        if bound <= ctl.tol:
            break
        if cutoff >= ctl.max_terms:
            raise SeriesBudgetError(
                f"need more than {ctl.max_terms} terms for tolerance {ctl.tol}"
            )
        cutoff *= 2

    theta_u = cmath.phase(u)
    theta_v = cmath.phase(v)
    total = 0j
    carry = 0j  # sum of u^a/a over all indices already processed
    block = 1 << 18
    for lo in range(1, cutoff + 1, block):
        hi = min(cutoff, lo + block - 1)
        ks = np.arange(lo, hi + 1)
        inner = np.exp(1j * theta_u * ks) / ks
        running = np.cumsum(inner) + carry
        shifted = np.empty_like(running)
        shifted[0] = carry
        shifted[1:] = running[:-1]
        outer = np.exp(1j * theta_v * ks) / ks.astype(float) ** s
        total += complex(np.sum(outer * shifted))
        carry = complex(running[-1])
    return total


def _clean(w: complex) -> complex:
    # normalize signed zeros so conjugate symmetry gives exact cancellations
    return complex(w.real + 0.0, w.imag + 0.0)


def nakamura_reduce(
    r: int, s: int, u: complex, v: complex, ctl: SeriesControl = DEFAULT_CONTROL
) -> complex:
    """2 Re_k Li_{r,s}(u,v) from length-1 polylogarithms only, k = r + s.

    Re_k takes the real part for odd k and i times the imaginary part for
    even k.  Requires |u| = |v| = 1 and v != 1 when s = 1.  Pairs of
    divergent Li_1(1) factors whose coefficients cancel exactly are skipped;
    any divergence that survives with a nonzero coefficient raises.
    """
    if r < 1 or s < 1:
        raise ValueError("r and s must be positive integers")
    u = _clean(complex(u))
    v = _clean(complex(v))
    _require_unit_circle("u", u)
    _require_unit_circle("v", v)
    if s == 1 and v == 1:
        raise ValueError("v = 1 is excluded when s = 1")

    k = r + s
    w = _clean(u * v)
    uc = _clean(u.conjugate())
    vc = _clean(v.conjugate())
    wc = _clean(w.conjugate())

    def li(n: int, arg: complex) -> complex:
        return polylog(n, arg, ctl)

    total = (-1.0) ** k * li(k, wc)

    # Li_r(conj u) multiplies a combination of Li_s values; when u = 1 and
    # r = 1 that factor diverges and is admissible only if the combination
    # vanishes identically (even weight, real v).
    combo = (-1.0) ** (k + 1) * li(s, vc) + (-1.0) ** (r - 1) * li(s, v)
    if r == 1 and u == 1:
        if combo != 0:
            raise ValueError("Li_1(1) appears with a nonvanishing cofactor")
    else:
        total += li(r, uc) * combo

    total += (-1.0) ** (r - 1) * (
        comb(k - 1, r - 1) * li(k, uc) + comb(k - 1, s - 1) * li(k, v)
    )

    for m in range(1, k):
        if m == k - 1 and w == 1:
            # the coefficients of the divergent Li_1(uv), Li_1(conj uv)
            # pair are opposite, so the factor is identically zero
            continue
        second = (-1.0) ** r * li(k - m, w) + (-1.0) ** (s + m) * li(k - m, wc)
        if second == 0:
            continue
        first = 0j
        c_u = comb(m - 1, r - 1)
        if c_u:
            if m == 1 and u == 1:
                raise ValueError("Li_1(1) appears with a nonvanishing cofactor")
            first += c_u * li(m, uc)
        c_v = comb(m - 1, s - 1)
        if c_v:
            if m == 1 and v == 1:
                raise ValueError("Li_1(1) appears with a nonvanishing cofactor")
            first += c_v * (-1.0) ** (k + m) * li(m, v)
        total += first * second
    return total


def lemma_length1(
    alpha: complex, beta: complex, h: int, ctl: SeriesControl = DEFAULT_CONTROL
) -> complex:
    """sum_{b>1} beta^b/b^(h+1) sum_{a=1}^{b-1} a alpha^a, via the closed form

    (alpha Li_h(ab) - alpha Li_{h+1}(ab) - Li_h(ab) + alpha Li_{h+1}(beta))
    / (alpha - 1)^2   with ab = alpha beta, valid for alpha != 1.
    """
    if h < 2:
        raise ValueError("lemma_length1 requires h >= 2")
    alpha = complex(alpha)
    beta = complex(beta)
    if alpha == 1:
        raise ValueError("alpha = 1 is excluded")
    if abs(alpha) > 1.0 + DISK_SLACK or abs(beta) > 1.0 + DISK_SLACK:
        raise ValueError("alpha and beta must lie in the closed unit disk")
    ab = alpha * beta
    value = (
        alpha * polylog(h, ab, ctl)
        - alpha * polylog(h + 1, ab, ctl)
        - polylog(h, ab, ctl)
        + alpha * polylog(h + 1, beta, ctl)
    )
    return value / (alpha - 1.0) ** 2
