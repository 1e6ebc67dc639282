"""Basic hypergeometric series at configurable precision, and numerical checks
of closed-form evaluations of 2phi1 at the roots of a terminating 2phi1."""

from .errors import (
    AssumptionError,
    DivergenceGuard,
    MaxTermsExceeded,
    NoConvergence,
    NotEvaluable,
    PoleError,
    QSeriesError,
)
from .qcore import (
    EvalConfig,
    QBase,
    SeriesSpec,
    connection_terms,
    heine_first_form,
    heine_transform,
    phi21_continued,
    phi_eval,
    phi_sum,
    qpoch_finite,
    qpoch_infinite,
)
from .qpoly import Poly, RootSet, build_f, find_roots, theorem1_poly
from .report import VerificationReport
from .threeterm import (
    RelationParams,
    ShiftVector,
    check_assumptions,
    coeff_Q,
    coeff_R,
    verify_relation,
)
from .gosperq import (
    ClassicalParams,
    Theorem1Case,
    classical_2f1,
    theorem1_cases,
    verify_eq_1_2,
    verify_eq_1_3,
    verify_gosper_classical,
    verify_m2_closed_forms,
    verify_q_limit,
    verify_remark5,
)

__version__ = "0.1.0"
