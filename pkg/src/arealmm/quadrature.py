"""Deterministic polar quadrature for the two-variable areal measures.

For expressions of the form  inner + g(x)  the inner disk variable is
integrated out exactly: its contribution at a fixed x is f(|g(x)|) with
f(t) = log t for t >= 1 and (t^2 - 1)/2 otherwise.  What remains is a 2-D
polar integral of f(|g|) over the disk, evaluated as nested adaptive
quadratures.  f has a curvature jump across |g| = 1, which adaptive
refinement alone crosses slowly, so the radial kinks are located by
bracketing and the angular boundaries of the kink structure are detected
and passed to the outer integrator as subdivision points.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

from scipy.integrate import IntegrationWarning, quad
from scipy.optimize import brentq

from .core import DEFAULT_CONTROL, SeriesControl
from .expr import Expr, POLE, Sum, Var, evaluate, variables
from .hyper import hyper_pfq

__all__ = [
    "QuadratureSettings", "semi_analytic_mm", "radial_zeta_factor",
    "zeta_mm_by_radial", "log_2sin_integral", "sqrt2_constant_by_quadrature",
]


@dataclass(frozen=True)
class QuadratureSettings:
    """Absolute tolerance, subdivision budget, and extra angular split points."""

    tol: float = 1e-8
    limit: int = 200
    singularity_angles: tuple = ()

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")


DEFAULT_SETTINGS = QuadratureSettings()


def _inner_profile(t: float) -> float:
    """Exact disk average of log|y + c| over y for |c| = t."""
    if t >= 1.0:
        return math.log(t)
    return (t * t - 1.0) / 2.0


def _split_linear(expr: Expr, inner_var: str):
    """Decompose expr as inner_var + g(other); raises if not of that shape."""
    terms = expr.terms if isinstance(expr, Sum) else (expr,)
    inner_terms = [t for t in terms if t == Var(inner_var)]
    rest = [t for t in terms if t != Var(inner_var)]
    if len(inner_terms) != 1:
        raise ValueError(
            f"expression must contain the inner variable '{inner_var}' exactly "
            "once as a bare linear term"
        )
    if any(inner_var in variables(t) for t in rest):
        raise ValueError(f"expression is not linear in '{inner_var}'")
    if not rest:
        raise ValueError("nothing remains after removing the inner variable")
    g = rest[0] if len(rest) == 1 else Sum(tuple(rest))
    outer = variables(g)
    if len(outer) != 1:
        raise ValueError(
            f"one outer variable is required, found {list(outer) or 'none'}"
        )
    return g, outer[0]


def _abs_g(g: Expr, name: str):
    def value(rho: float, theta: float) -> float:
        z = rho * cmath.exp(1j * theta)
        v = evaluate(g, {name: z})
        if v is POLE:
            return math.inf
        return abs(v)

    return value


_KINK_SCAN = 65


def _kink_radii(absg, theta: float) -> list:
    """Radii in (0, 1) where |g(rho e^{i theta})| crosses 1."""
    out = []
    prev_r = 0.0
    prev_s = absg(prev_r, theta) - 1.0
    for i in range(1, _KINK_SCAN + 1):
        r = i / _KINK_SCAN
        s = absg(r, theta) - 1.0
        if s == 0.0:
            out.append(r)
        elif prev_s < 0.0 < s or s < 0.0 < prev_s:
            out.append(brentq(lambda rr: absg(rr, theta) - 1.0, prev_r, r,
                              xtol=1e-13))
        prev_r, prev_s = r, s
    return [r for r in out if 1e-12 < r < 1.0 - 1e-12]


def _detect_split_angles(absg, settings: QuadratureSettings) -> list:
    """Angles where the radial kink structure changes, by scan + bisection."""
    n = 720
    thetas = [-math.pi + 2.0 * math.pi * i / n for i in range(n + 1)]
    counts = [len(_kink_radii(absg, th)) for th in thetas]
    splits = set(settings.singularity_angles)
    for i in range(n):
        if counts[i] != counts[i + 1]:
            lo, hi = thetas[i], thetas[i + 1]
            c_lo = counts[i]
            for _ in range(50):
                mid = 0.5 * (lo + hi)
                if len(_kink_radii(absg, mid)) == c_lo:
                    lo = mid
                else:
                    hi = mid
            splits.add(0.5 * (lo + hi))
    # angles where the kink curve is ray-aligned (no radial crossing to count)
    for probe in (0.25, 0.5, 0.75):
        prev = absg(probe, thetas[0]) - 1.0
        for i in range(1, n + 1):
            cur = absg(probe, thetas[i]) - 1.0
            if prev < 0.0 < cur or cur < 0.0 < prev:
                splits.add(brentq(lambda th: absg(probe, th) - 1.0,
                                  thetas[i - 1], thetas[i], xtol=1e-13))
            prev = cur
    merged: list = []
    for th in sorted(th for th in splits if -math.pi < th < math.pi):
        if not merged or th - merged[-1] > 1e-9:
            merged.append(th)
    return merged


def semi_analytic_mm(expr: Expr, inner_var: str,
                     settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """Areal measure of inner_var + g(x) by exact inner integration + 2-D quadrature."""
    g, name = _split_linear(expr, inner_var)
    absg = _abs_g(g, name)
    inner_tol = settings.tol * 1e-2

    def radial(theta: float) -> float:
        kinks = _kink_radii(absg, theta)
        val, _ = quad(
            lambda rho: _inner_profile(absg(rho, theta)) * rho,
            0.0, 1.0, points=kinks or None,
            epsabs=inner_tol, epsrel=0.0, limit=settings.limit,
        )
        return val

    splits = _detect_split_angles(absg, settings)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        outer, abserr = quad(
            radial, -math.pi, math.pi, points=splits or None,
            epsabs=settings.tol * math.pi * 0.5, epsrel=0.0,
            limit=max(settings.limit, 10 * (len(splits) + 1)),
        )
    if abserr / math.pi > settings.tol:
        raise ArithmeticError(
            f"quadrature did not converge: error estimate {abserr / math.pi:.2e} "
            f"exceeds tolerance {settings.tol}"
        )
    return outer / math.pi


def radial_zeta_factor(s: float, rho: float,
                       ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Circle average of |rho e^{i theta} + 1|^s: the 2F1(-s/2,-s/2;1;rho^2) factor."""
    if not 0.0 <= rho < 1.0:
        raise ValueError("radial_zeta_factor requires 0 <= rho < 1")
    return hyper_pfq([-s / 2.0, -s / 2.0], [1.0], rho * rho, ctl)


def zeta_mm_by_radial(s: float, settings: QuadratureSettings = DEFAULT_SETTINGS,
                      ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Zeta areal measure of x + 1 assembled from the radial factor."""
    val, _ = quad(lambda rho: radial_zeta_factor(s, rho, ctl) * rho, 0.0, 1.0,
                  epsabs=settings.tol * 0.25, epsrel=0.0, limit=settings.limit)
    return 2.0 * val


def log_2sin_integral(theta: float,
                      settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """Integral of log|2 sin t| from 0 to theta (log-singular endpoint)."""
    val, _ = quad(lambda t: math.log(abs(2.0 * math.sin(t))), 0.0, theta,
                  epsabs=min(settings.tol, 1e-11), epsrel=0.0,
                  limit=settings.limit)
    return val


def sqrt2_constant_by_quadrature(
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> float:
    """Quadrature route to the sqrt(2) hypergeometric constant.

    Integrates arcsinh(sqrt(u))/sqrt(1-u^2) over [0, 1] (inverse-sqrt
    endpoint singularity split off by substituting u = 1 - w^2) and divides
    by 2 pi.
    """
    def integrand(w: float) -> float:
        u = 1.0 - w * w
        return 2.0 * math.asinh(math.sqrt(u)) / math.sqrt(2.0 - w * w)

    val, _ = quad(integrand, 0.0, 1.0, epsabs=min(settings.tol, 1e-11),
                  epsrel=0.0, limit=settings.limit)
    return val / (2.0 * math.pi)
