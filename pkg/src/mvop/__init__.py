"""Exact construction and verification of matrix-valued discrete orthogonal
polynomials: coupled Charlier/Meixner/Krawtchouk/Hahn weights, their
difference operators, three-term recurrences, and the limit transitions
between families."""

from .construction import (
    A_PROBES,
    TAU_PROBES,
    FamilySpec,
    GramMatrix,
    family_spec_from_json,
    gram_schmidt_oracle,
    inner_product,
    needs_mass_probe,
    nilpotent_matrix,
    norm_ratio,
    orthogonal_polynomial,
    relative_gram_bound,
    unipotent_factor,
    weight_matrix,
)
from .errors import ProbeError, SpecError, TruncationError
from .families import (
    Charlier,
    CustomWeight,
    Hahn,
    Krawtchouk,
    Mass,
    Meixner,
    NormValue,
    ScalarOperator,
    extended_polynomial,
    monic_polynomial,
    rodrigues_polynomial,
    scalar_operator,
    squared_norm,
    weight_spec_from_json,
    weight_value,
)
from .limits import (
    AgreementReport,
    ConvergenceReport,
    TransitionSpec,
    continuous_target,
    hermite_limit_agreement,
    monic_hermite,
    monic_laguerre,
    ode_residual,
    run_transition,
    transition_spec_from_json,
)
from .operators import (
    DifferenceOperator,
    EigenvalueMap,
    RecurrenceTriple,
    VerificationReport,
    apply_operator,
    canonical_operator,
    conjugated_operator,
    extract_recurrence,
    verify_eigenfunction,
)
from .poly import MatrixPoly, ScalarPoly, lagrange_interpolate
from .quadext import QuadExt
from .rational import format_rational, rational
from .verification import run_verification

__version__ = "0.1.0"

__all__ = [
    "A_PROBES",
    "TAU_PROBES",
    "AgreementReport",
    "Charlier",
    "ConvergenceReport",
    "CustomWeight",
    "DifferenceOperator",
    "EigenvalueMap",
    "FamilySpec",
    "GramMatrix",
    "Hahn",
    "Krawtchouk",
    "Mass",
    "MatrixPoly",
    "Meixner",
    "NormValue",
    "ProbeError",
    "QuadExt",
    "RecurrenceTriple",
    "ScalarOperator",
    "ScalarPoly",
    "SpecError",
    "TransitionSpec",
    "TruncationError",
    "VerificationReport",
    "apply_operator",
    "canonical_operator",
    "conjugated_operator",
    "continuous_target",
    "extended_polynomial",
    "extract_recurrence",
    "family_spec_from_json",
    "format_rational",
    "gram_schmidt_oracle",
    "hermite_limit_agreement",
    "inner_product",
    "lagrange_interpolate",
    "monic_hermite",
    "monic_laguerre",
    "monic_polynomial",
    "needs_mass_probe",
    "nilpotent_matrix",
    "norm_ratio",
    "ode_residual",
    "orthogonal_polynomial",
    "rational",
    "relative_gram_bound",
    "rodrigues_polynomial",
    "run_transition",
    "run_verification",
    "scalar_operator",
    "squared_norm",
    "transition_spec_from_json",
    "unipotent_factor",
    "verify_eigenfunction",
    "weight_matrix",
    "weight_spec_from_json",
    "weight_value",
]
