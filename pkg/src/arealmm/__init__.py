"""Areal (unit-disk) Mahler measures: closed forms and numerical estimators.

The toolkit evaluates the known closed forms for averages of log|P| over
products of unit disks, together with the special functions they need
(zeta and Dirichlet L values, polylogarithms, the Bloch-Wigner function,
generalized hypergeometric series, Bernoulli/Euler numbers), and provides
independent Monte Carlo and quadrature estimators that cross-check every
formula at desk scale.
"""

from .closedforms import (
    ClosedFormResult,
    closed_form_for_expression,
    higher_mm_x_plus_1,
    mm_higher_coords,
    mm_higher_moebius,
    mm_linear,
    mm_max_coords,
    mm_moebius_areal,
    mm_monomial_sum,
    mm_smyth_areal,
    mm_sqrt2_areal,
    sqrt2_hypergeometric_constant,
    zeta_mm_x_plus_1,
)
from .core import (
    DegenerateExpressionError,
    ParseError,
    SeriesBudgetError,
    SeriesControl,
)
from .exact import bernoulli, euler_number, xj_logk_integral
from .expr import (
    POLE,
    EvaluationPoint,
    evaluate,
    log_abs,
    parse,
    to_text,
    variables,
)
from .hyper import gamma_real, hyper_pfq
from .montecarlo import (
    MCEstimate,
    mc_areal_mm,
    mc_higher_mm,
    mc_max_mm,
    mc_zeta_mm,
    sample_disk,
)
from .polylog import (
    bloch_wigner,
    lemma_length1,
    multiple_polylog_1s,
    nakamura_reduce,
    polylog,
)
from .quadrature import (
    QuadratureSettings,
    radial_zeta_factor,
    semi_analytic_mm,
    zeta_mm_by_radial,
)
from .verification import VerificationRecord, run_suite
from .zeta import catalan, dirichlet_L, zeta_int

__version__ = "0.1.0"
