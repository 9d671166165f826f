"""Spectral bounds and growth-rate checks for differentiable semigroups.

The package evaluates derivative-norm growth and resolvent decay for
semigroups whose norms are exact spectral suprema, fits the monotone
envelopes that link the two, and issues per-theorem verdicts at desk
scale with certified truncation control.
"""

from .errors import (
    ConfigError,
    DomainError,
    HypothesisUnmetError,
    ModelUnsuitableError,
    RangeError,
    SingularityError,
)
from .monotone import (
    AsympReport,
    MonotoneFn,
    asymp_compare,
    evaluate,
    left_inverse,
    log_uniform_grid,
    m_inf_transform,
    m_log_transform,
    right_inverse,
    sample_function,
)
from .spectrum import (
    FinitePoints,
    LatticeFamily,
    SampledCurve,
    ThetaParams,
    UnionModel,
    dist_to_imag,
    dist_to_point,
    envelope_witness,
    liminf_axis_growth,
    log_resolvent_criterion,
    resolvent_envelope,
    resolvent_norm_on_axis,
    semigroup_derivative_norm,
    theta_region_check,
)
from .increase import (
    ConditionReport,
    PositiveIncreaseCert,
    check_c_conditions,
    find_certificate,
    integral_estimate_check,
    necessity_sandwich_check,
    polynomial_floor_check,
    prop33_check,
    verify_certificate,
)
from .bounds import (
    THEOREM_IDS,
    BoundReport,
    GrowthCurve,
    check_banach_upper,
    check_classical,
    check_hilbert_upper,
    check_lower_41b,
    check_resolvent_41a,
    check_sandwich_62,
    check_yosida_log,
    classical_envelopes,
    classify_regularity,
    growth_curve,
    k_epsilon,
    k_function,
    model_ref,
)

__version__ = "0.1.0"

__all__ = [
    "AsympReport",
    "BoundReport",
    "ConditionReport",
    "ConfigError",
    "DomainError",
    "FinitePoints",
    "GrowthCurve",
    "HypothesisUnmetError",
    "LatticeFamily",
    "ModelUnsuitableError",
    "MonotoneFn",
    "PositiveIncreaseCert",
    "RangeError",
    "SampledCurve",
    "SingularityError",
    "THEOREM_IDS",
    "ThetaParams",
    "UnionModel",
    "asymp_compare",
    "check_banach_upper",
    "check_c_conditions",
    "check_classical",
    "check_hilbert_upper",
    "check_lower_41b",
    "check_resolvent_41a",
    "check_sandwich_62",
    "check_yosida_log",
    "classical_envelopes",
    "classify_regularity",
    "dist_to_imag",
    "dist_to_point",
    "envelope_witness",
    "evaluate",
    "find_certificate",
    "growth_curve",
    "integral_estimate_check",
    "k_epsilon",
    "k_function",
    "left_inverse",
    "liminf_axis_growth",
    "log_resolvent_criterion",
    "log_uniform_grid",
    "m_inf_transform",
    "m_log_transform",
    "model_ref",
    "necessity_sandwich_check",
    "polynomial_floor_check",
    "prop33_check",
    "resolvent_envelope",
    "resolvent_norm_on_axis",
    "right_inverse",
    "sample_function",
    "semigroup_derivative_norm",
    "theta_region_check",
    "verify_certificate",
]
