"""Validated computations for twisted Thue equations over the simplest cubic fields."""

from .analysis import (
    BetaDecomposition,
    Epsilon,
    LinearFormKind,
    LinearFormReport,
    SolutionRecord,
    approx_log_y,
    case_check,
    check_condition,
    classify_solution,
    compute_c1,
    decompose_beta,
    decompose_unit,
    linear_form,
    log_alpha_quotient,
    synthetic_record,
    verify_lemma,
)
from .bounds import (
    BakerInputs,
    BoundConstants,
    HeightValue,
    absolute_log_height,
    baker_constant,
    baker_lower_bound,
    derived_bounds,
    mahler_measure,
)
from .cubic_field import compute_root_logs, compute_roots, verify_root_brackets, verify_root_log_brackets
from .numerics import DEFAULT_POLICY, Dyadic, PrecisionPolicy, RealEnclosure, Status, VerificationReport
from .order import OrderElement, UnitWord, conjugate, norm, siegel_residual, unit_word_to_element
from .search import SearchGrid, SearchResult, compare_strategies, enumerate_solutions, exhaustive_scan
from .twisted_form import NormFormCoeffs, TwistExponents, evaluate_form, form_coeffs

__version__ = "0.1.0"

__all__ = [
    "BetaDecomposition",
    "Epsilon",
    "LinearFormKind",
    "LinearFormReport",
    "SolutionRecord",
    "approx_log_y",
    "case_check",
    "check_condition",
    "classify_solution",
    "compute_c1",
    "decompose_beta",
    "decompose_unit",
    "linear_form",
    "log_alpha_quotient",
    "synthetic_record",
    "verify_lemma",
    "BakerInputs",
    "BoundConstants",
    "HeightValue",
    "absolute_log_height",
    "baker_constant",
    "baker_lower_bound",
    "derived_bounds",
    "mahler_measure",
    "compute_root_logs",
    "compute_roots",
    "verify_root_brackets",
    "verify_root_log_brackets",
    "DEFAULT_POLICY",
    "Dyadic",
    "PrecisionPolicy",
    "RealEnclosure",
    "Status",
    "VerificationReport",
    "OrderElement",
    "UnitWord",
    "conjugate",
    "norm",
    "siegel_residual",
    "unit_word_to_element",
    "SearchGrid",
    "SearchResult",
    "compare_strategies",
    "enumerate_solutions",
    "exhaustive_scan",
    "NormFormCoeffs",
    "TwistExponents",
    "evaluate_form",
    "form_coeffs",
]
