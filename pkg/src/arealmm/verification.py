"""The cross-verification suite: every closed form against an independent estimate.

Each case pairs a closed-form value with a numeric route (Monte Carlo,
quadrature, or an exact identity sweep) and produces one
:class:`VerificationRecord`.  Monte Carlo comparisons pass when the
z-score is within 4 (about a 1-in-16,000 false-failure rate per check);
deterministic comparisons pass at their stated tolerance.

The higher-coordinate-measure case is special: the printed statement and
its own derivation chain disagree by a factor of 2^n, so that record is
tagged ``prop5.2-discrepancy`` and passes only when the sampler confirms
the derivation-forced value AND rejects the printed one.
"""

from __future__ import annotations

import cmath
import json
import math
import time
from dataclasses import dataclass
from io import StringIO
from typing import Callable, Sequence

import numpy as np

from .closedforms import (
    higher_mm_x_plus_1,
    mm_higher_coords,
    mm_higher_moebius,
    mm_moebius_areal,
    mm_monomial_sum,
    mm_smyth_areal,
    mm_sqrt2_areal,
    sqrt2_hypergeometric_constant,
    zeta_mm_x_plus_1,
)
from .core import DEFAULT_CONTROL, SeriesControl
from .expr import parse
from .montecarlo import mc_areal_mm, mc_higher_mm, mc_max_mm, mc_zeta_mm
from .polylog import bloch_wigner, multiple_polylog_1s, nakamura_reduce
from .quadrature import (
    QuadratureSettings,
    log_2sin_integral,
    radial_zeta_factor,
    semi_analytic_mm,
    sqrt2_constant_by_quadrature,
)
from .zeta import dirichlet_L

__all__ = [
    "VerificationRecord", "VerificationCase", "SuiteReport",
    "standard_cases", "run_cases", "run_suite",
    "records_to_json", "records_to_csv", "records_to_text",
    "zeta_mm_taylor_estimate",
]

Z_LIMIT = 4.0


@dataclass(frozen=True)
class VerificationRecord:
    case: str
    theorem: str
    closed: float
    numeric: float
    stderr: float | None
    discrepancy: float
    z: float | None
    status: str
    ms: float


@dataclass(frozen=True)
class VerificationCase:
    """One closed-vs-numeric comparison.

    ``numeric`` receives (samples, seed, quad_settings) and returns
    (value, stderr-or-None).  ``tolerance`` applies when no stderr comes
    back; ``extra`` may veto a pass (value, stderr) -> bool.
    """

    case: str
    theorem: str
    closed: Callable[[], float]
    numeric: Callable[[int, int, QuadratureSettings], tuple]
    tolerance: float | None = None
    extra: Callable[[float, float | None], bool] | None = None


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    seed: int
    records: tuple

    @property
    def failed(self) -> int:
        return sum(1 for r in self.records if r.status == "fail")


def zeta_mm_taylor_estimate(k: int, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """k-th Taylor coefficient (times k!) of the zeta measure, by differencing.

    Symmetrized divided differences: the even and odd parts of the
    product-form values at +-s are fitted separately as polynomials in
    s^2, which is the stable way to reach the 5th derivative at the
    1e-6 level in doubles.
    """
    if not 1 <= k <= 5:
        raise ValueError("k must be between 1 and 5")
    ss = np.linspace(0.6 / 16, 0.6, 16)
    zp = np.array([zeta_mm_x_plus_1(s, "product", ctl) for s in ss])
    zm = np.array([zeta_mm_x_plus_1(-s, "product", ctl) for s in ss])
    u = ss * ss
    even = (zp + zm) / 2.0 - zeta_mm_x_plus_1(0.0, "product", ctl)
    odd = (zp - zm) / (2.0 * ss)
    if k % 2 == 0:
        coeffs = np.polynomial.polynomial.polyfit(u, even, 8)
        return float(coeffs[k // 2] * math.factorial(k))
    coeffs = np.polynomial.polynomial.polyfit(u, odd, 8)
    return float(coeffs[(k - 1) // 2] * math.factorial(k))


def _chu_vandermonde_max_defect(limit: int = 25) -> float:
    """Max |LHS - RHS| of the binomial-sum identity over 1 <= a, b <= limit."""
    worst = 0
    for a in range(1, limit + 1):
        for b in range(1, limit + 1):
            lhs = sum(math.comb(a + b - r, b) * 2 ** r for r in range(a + 1))
            lhs += sum(math.comb(a + b - r, a) * 2 ** r for r in range(b + 1))
            worst = max(worst, abs(lhs - 2 ** (a + b + 1)))
    return float(worst)


def _dilog_integral_max_defect(settings: QuadratureSettings) -> float:
    worst = 0.0
    for theta in (math.pi / 6, math.pi / 4, math.pi / 3):
        lhs = bloch_wigner(cmath.exp(2j * theta))
        rhs = -2.0 * log_2sin_integral(theta, settings)
        worst = max(worst, abs(lhs - rhs))
    return worst


def _nakamura_max_defect(s: int, ctl: SeriesControl) -> float:
    worst = 0.0
    for u in (1j, -1j):
        for v in (1, -1):
            reduced = nakamura_reduce(1, s, u, v, ctl)
            direct = multiple_polylog_1s(s, u, v, ctl)
            k = 1 + s
            projected = 2j * direct.imag if k % 2 == 0 else complex(2.0 * direct.real)
            worst = max(worst, abs(reduced - projected))
    return worst


def _radial_factor_max_defect(settings: QuadratureSettings) -> float:
    from scipy.integrate import quad

    worst = 0.0
    for s, rho in ((1.0, 0.7), (2.0, 0.5), (0.5, 0.9)):
        direct, _ = quad(
            lambda th: abs(rho * cmath.exp(1j * th) + 1.0) ** s,
            -math.pi, math.pi, epsabs=1e-12, epsrel=0.0, limit=200,
        )
        worst = max(worst, abs(radial_zeta_factor(s, rho) - direct / (2.0 * math.pi)))
    return worst


def _taylor_max_defect(ctl: SeriesControl) -> float:
    return max(
        abs(zeta_mm_taylor_estimate(k, ctl) - higher_mm_x_plus_1(k, ctl))
        for k in range(1, 6)
    )


def _zeta_forms_max_defect(ctl: SeriesControl) -> float:
    return max(
        abs(zeta_mm_x_plus_1(s, "gamma") - zeta_mm_x_plus_1(s, "product", ctl))
        for s in (-0.5, -0.25, 0.25, 0.5)
    )


def standard_cases(ctl: SeriesControl = DEFAULT_CONTROL) -> list:
    """The full verification case list, in stable order."""
    series_tol = SeriesControl(tol=1e-10)

    def mc(expr_text):
        expr = parse(expr_text)
        return lambda samples, seed, _q: _as_pair(mc_areal_mm(expr, samples, seed))

    def _as_pair(est):
        return est.mean, est.stderr

    cases = [
        VerificationCase(
            "xy-quarter", "monomial-sum",
            lambda: -0.25, mc("x+y"),
        ),
        VerificationCase(
            "monomial-2-2", "monomial-sum",
            lambda: float(mm_monomial_sum(2, 2)), mc("x1*x2+y1*y2"),
        ),
        VerificationCase(
            "monomial-3-2", "monomial-sum",
            lambda: float(mm_monomial_sum(3, 2)), mc("x1*x2*x3+y1*y2"),
        ),
        VerificationCase(
            "monomial-4-1", "monomial-sum",
            lambda: float(mm_monomial_sum(4, 1)), mc("x1*x2*x3*x4+y"),
        ),
        VerificationCase(
            "chu-vandermonde", "chu-vandermonde",
            lambda: 0.0,
            lambda _s, _seed, _q: (_chu_vandermonde_max_defect(), None),
            tolerance=0.0,
        ),
        VerificationCase(
            "smyth-quad", "smyth-areal",
            lambda: mm_smyth_areal().value,
            lambda _s, _seed, q: (semi_analytic_mm(parse("1+x+y"), "y", q), None),
            tolerance=1e-6,
        ),
        VerificationCase(
            "smyth-mc", "smyth-areal",
            lambda: mm_smyth_areal().value, mc("1+x+y"),
        ),
        VerificationCase(
            "sqrt2-quad", "sqrt2-areal",
            lambda: mm_sqrt2_areal().value,
            lambda _s, _seed, q: (semi_analytic_mm(parse("sqrt(2)+x+y"), "y", q), None),
            tolerance=1e-6,
        ),
        VerificationCase(
            "sqrt2-constant", "sqrt2-areal",
            lambda: sqrt2_hypergeometric_constant(series_tol),
            lambda _s, _seed, q: (sqrt2_constant_by_quadrature(q), None),
            tolerance=1e-8,
        ),
        VerificationCase(
            "moebius-quad", "moebius-areal",
            lambda: mm_moebius_areal().value,
            lambda _s, _seed, q: (semi_analytic_mm(parse("y+(1-x)/(1+x)"), "y", q), None),
            tolerance=1e-6,
        ),
        VerificationCase(
            "moebius-mc", "moebius-areal",
            lambda: mm_moebius_areal().value, mc("y+(1-x)/(1+x)"),
        ),
        VerificationCase(
            "dilog-integral", "dilog-identities",
            lambda: 0.0,
            lambda _s, _seed, q: (_dilog_integral_max_defect(q), None),
            tolerance=1e-9,
        ),
        VerificationCase(
            "dilog-at-i", "dilog-identities",
            lambda: dirichlet_L(4, 2),
            lambda _s, _seed, _q: (bloch_wigner(1j), None),
            tolerance=1e-10,
        ),
        VerificationCase(
            "dilog-sixth-root", "dilog-identities",
            lambda: 3.0 * math.sqrt(3.0) / 4.0 * dirichlet_L(3, 2),
            lambda _s, _seed, _q: (bloch_wigner(cmath.exp(1j * math.pi / 3)), None),
            tolerance=1e-10,
        ),
        VerificationCase(
            "nakamura-1-3", "double-polylog-reduction",
            lambda: 0.0,
            lambda _s, _seed, _q: (_nakamura_max_defect(3, SeriesControl(tol=1e-10)), None),
            tolerance=1e-8,
        ),
        VerificationCase(
            "nakamura-1-5", "double-polylog-reduction",
            lambda: 0.0,
            lambda _s, _seed, _q: (_nakamura_max_defect(5, SeriesControl(tol=1e-10)), None),
            tolerance=1e-8,
        ),
        VerificationCase(
            "max-coords-2", "max-coords",
            lambda: -0.25,
            lambda samples, seed, _q: _as_pair(
                mc_max_mm([parse("x1"), parse("x2")], samples, seed)
            ),
        ),
        VerificationCase(
            "max-coords-3", "max-coords",
            lambda: -1.0 / 6.0,
            lambda samples, seed, _q: _as_pair(
                mc_max_mm([parse("x1"), parse("x2"), parse("x3")], samples, seed)
            ),
        ),
        VerificationCase(
            "higher-coords-discrepancy", "prop5.2-discrepancy",
            lambda: float(mm_higher_coords([2])),
            lambda samples, seed, _q: _as_pair(
                mc_higher_mm([parse("x")], [2], samples, seed)
            ),
            # documented outcome: consistent with the derivation-forced 1/2
            # AND at least 4 sigma away from the printed 1/4
            extra=lambda value, stderr: abs(value - 0.25) > Z_LIMIT * stderr,
        ),
        VerificationCase(
            "higher-coords-pair", "higher-coords",
            lambda: float(mm_higher_coords([1, 1])),
            lambda samples, seed, _q: _as_pair(
                mc_higher_mm([parse("x1"), parse("x2")], [1, 1], samples, seed)
            ),
        ),
        VerificationCase(
            "higher-moebius-2", "higher-moebius",
            lambda: math.pi ** 2 / 4.0 - 2.0 * math.log(2.0),
            lambda _s, _seed, _q: (mm_higher_moebius(2).value, None),
            tolerance=1e-10,
        ),
        VerificationCase(
            "higher-moebius-residuals", "higher-moebius",
            lambda: 0.0,
            lambda _s, _seed, _q: (
                max(mm_higher_moebius(h).imag_residual for h in (2, 4, 6, 8)), None,
            ),
            tolerance=1e-9,
        ),
        VerificationCase(
            "higher-moebius-4-mc", "higher-moebius",
            lambda: mm_higher_moebius(4).value,
            lambda samples, seed, _q: _as_pair(
                mc_higher_mm([parse("(1-x)/(1+x)")], [4], samples, seed)
            ),
        ),
        VerificationCase(
            "zeta-x1-forms", "zeta-x1",
            lambda: 0.0,
            lambda _s, _seed, _q: (_zeta_forms_max_defect(ctl), None),
            tolerance=1e-10,
        ),
        VerificationCase(
            "zeta-x1-s2", "zeta-x1",
            lambda: 1.5,
            lambda _s, _seed, _q: (zeta_mm_x_plus_1(2.0, "gamma"), None),
            tolerance=1e-12,
        ),
        VerificationCase(
            "zeta-x1-s2-mc", "zeta-x1",
            lambda: 1.5,
            lambda samples, seed, _q: _as_pair(
                mc_zeta_mm(parse("x+1"), 2.0, samples, seed)
            ),
        ),
        VerificationCase(
            "zeta-x1-radial", "zeta-x1",
            lambda: 0.0,
            lambda _s, _seed, q: (_radial_factor_max_defect(q), None),
            tolerance=1e-9,
        ),
        VerificationCase(
            "zeta-x1-taylor", "zeta-x1",
            lambda: 0.0,
            lambda _s, _seed, _q: (_taylor_max_defect(ctl), None),
            tolerance=1e-6,
        ),
        VerificationCase(
            "pritsker-vanishing", "pritsker-vanishing",
            lambda: 0.0, mc("1+x^2*y^3"),
        ),
        VerificationCase(
            "homogeneity-gap", "monomial-sum",
            lambda: -0.25,
            lambda samples, seed, _q: _difference_pair(
                mc_areal_mm(parse("x+y"), samples, seed),
                mc_areal_mm(parse("x+1"), samples, seed + 1),
            ),
        ),
    ]
    return cases


def _difference_pair(a, b):
    return a.mean - b.mean, math.hypot(a.stderr, b.stderr)


_SEED_STRIDE = 7919  # per-case seeds stay stable and distinct


def run_cases(cases: Sequence[VerificationCase], samples: int, seed: int,
              quad_settings: QuadratureSettings | None = None) -> tuple:
    quad_settings = quad_settings or QuadratureSettings()
    records = []
    for index, case in enumerate(cases):
        start = time.perf_counter()
        closed = case.closed()
        numeric, stderr = case.numeric(samples, seed + _SEED_STRIDE * index,
                                       quad_settings)
        discrepancy = abs(closed - numeric)
        z = None
        if stderr is not None:
            z = discrepancy / stderr if stderr > 0 else (0.0 if discrepancy == 0 else math.inf)
        if z is not None:
            ok = z <= Z_LIMIT
        else:
            ok = discrepancy <= case.tolerance
        if ok and case.extra is not None:
            ok = case.extra(numeric, stderr)
        records.append(VerificationRecord(
            case=case.case,
            theorem=case.theorem,
            closed=closed,
            numeric=numeric,
            stderr=stderr,
            discrepancy=discrepancy,
            z=z,
            status="pass" if ok else "fail",
            ms=(time.perf_counter() - start) * 1000.0,
        ))
    return tuple(records)


def run_suite(suite: str = "fast", seed: int = 1,
              cases: Sequence[VerificationCase] | None = None) -> SuiteReport:
    """Run the verification suite: fast (1e6 MC samples) or full (1e8)."""
    if suite == "fast":
        samples = 10 ** 6
    elif suite == "full":
        samples = 10 ** 8
    else:
        raise ValueError("suite must be 'fast' or 'full'")
    quad_settings = QuadratureSettings(tol=1e-8)
    if cases is None:
        cases = standard_cases()
    records = run_cases(cases, samples, seed, quad_settings)
    return SuiteReport(suite=suite, seed=seed, records=records)


# ---------------------------------------------------------------------------
# Output encodings

_FIELDS = ("case", "theorem", "closed", "numeric", "stderr", "z", "status", "ms")


def records_to_json(records: Sequence[VerificationRecord]) -> str:
    payload = [
        {
            "case": r.case,
            "theorem": r.theorem,
            "closed": r.closed,
            "numeric": r.numeric,
            "stderr": r.stderr,
            "discrepancy": r.discrepancy,
            "z": r.z,
            "status": r.status,
            "ms": r.ms,
        }
        for r in records
    ]
    return json.dumps(payload, indent=2)


def records_to_csv(records: Sequence[VerificationRecord]) -> str:
    import csv

    buf = StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_FIELDS)
    for r in records:
        writer.writerow([
            r.case, r.theorem, repr(r.closed), repr(r.numeric),
            "" if r.stderr is None else repr(r.stderr),
            "" if r.z is None else repr(r.z),
            r.status, f"{r.ms:.1f}",
        ])
    return buf.getvalue()


def records_to_text(report: SuiteReport) -> str:
    lines = [
        f"verification suite '{report.suite}' (seed {report.seed})",
        f"{'case':28} {'theorem':24} {'closed':>14} {'numeric':>14} "
        f"{'z':>7} {'status':>6} {'ms':>9}",
    ]
    for r in report.records:
        z = f"{r.z:7.2f}" if r.z is not None else "      -"
        lines.append(
            f"{r.case:28} {r.theorem:24} {r.closed:14.8f} {r.numeric:14.8f} "
            f"{z} {r.status:>6} {r.ms:9.1f}"
        )
    passed = len(report.records) - report.failed
    lines.append(f"{passed}/{len(report.records)} records passed")
    return "\n".join(lines)
