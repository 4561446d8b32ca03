"""Convex-cyclicity of matrices: classification, construction, certification.

The package decides from eigenstructure whether a real or complex matrix
admits a vector whose images under polynomials with nonnegative,
unit-sum coefficients are dense, constructs the peaking and interpolating
polynomials behind that theory, and certifies orbit-hull density
empirically through growth witnesses and hull-membership scans.
"""

from .convex_poly import (
    ConvexPolynomial,
    GrowthQuery,
    PeakingCertificate,
    compose,
    derivative,
    evaluate,
    find_growth_index,
    growth_indices,
    multiply,
    multivariable_growth_index,
    peaking_polynomial,
    validate,
)
from .dynamics import (
    Bounded,
    DensityReport,
    GrowthWitness,
    HullQuery,
    HullResult,
    OrbitTrace,
    direct_sum_vector,
    empirical_density_scan,
    growth_witness,
    hull_contains,
    orbit,
)
from .errors import (
    AlphaGridExhausted,
    ConvexCyclicError,
    DimensionMismatch,
    NegativeCoefficient,
    NonSquare,
    NoPeakWithinCap,
    NotCanonicalForm,
    NotFoundWithinCap,
    OddLength,
    OverflowReached,
    ParseError,
    PreconditionViolated,
    PremiseViolated,
    SumNotOne,
    ThetaMultipleOfPi,
    ZeroCoefficient,
    ZeroFunctional,
)
from .interpolation import (
    AdmissibilityReport,
    AdmissibilityViolation,
    ComplexNode,
    InterpolationCertificate,
    InterpolationProblem,
    NecessaryViolation,
    RealNode,
    check_admissibility,
    necessary_target_check,
    solve,
    solve_at_degree,
    vanishing_annihilator,
)
from .jordan_forms import (
    DiagonalEntrySpec,
    DirectSumSpec,
    JordanBlockSpec,
    RealJordanBlockSpec,
    build,
    complexify,
    matrix_polynomial,
    poly_on_jordan_block,
    real_block_power,
    rotation,
)
from .spectral import (
    ConvexCyclicVerdict,
    Eigenstructure,
    EigenvalueInfo,
    FailedCondition,
    MatrixSpec,
    classify,
    convex_cyclic_vector_test,
    default_tolerance,
    eigenstructure,
    is_cyclic,
)
from .suite import SuiteEntry, convex_cyclic_entries, failure_entries, golden_suite

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # polynomial algebra
    "ConvexPolynomial",
    "PeakingCertificate",
    "GrowthQuery",
    "validate",
    "evaluate",
    "derivative",
    "multiply",
    "compose",
    "peaking_polynomial",
    "find_growth_index",
    "growth_indices",
    "multivariable_growth_index",
    # spectral classification
    "MatrixSpec",
    "EigenvalueInfo",
    "Eigenstructure",
    "FailedCondition",
    "ConvexCyclicVerdict",
    "default_tolerance",
    "eigenstructure",
    "is_cyclic",
    "classify",
    "convex_cyclic_vector_test",
    # canonical forms
    "JordanBlockSpec",
    "RealJordanBlockSpec",
    "DiagonalEntrySpec",
    "DirectSumSpec",
    "build",
    "poly_on_jordan_block",
    "matrix_polynomial",
    "complexify",
    "real_block_power",
    "rotation",
    # interpolation
    "RealNode",
    "ComplexNode",
    "InterpolationProblem",
    "AdmissibilityViolation",
    "AdmissibilityReport",
    "NecessaryViolation",
    "InterpolationCertificate",
    "check_admissibility",
    "necessary_target_check",
    "solve",
    "solve_at_degree",
    "vanishing_annihilator",
    # dynamics
    "OrbitTrace",
    "GrowthWitness",
    "Bounded",
    "HullQuery",
    "HullResult",
    "DensityReport",
    "orbit",
    "growth_witness",
    "hull_contains",
    "empirical_density_scan",
    "direct_sum_vector",
    # golden suite
    "SuiteEntry",
    "golden_suite",
    "convex_cyclic_entries",
    "failure_entries",
    # errors
    "ConvexCyclicError",
    "ParseError",
    "PreconditionViolated",
    "NegativeCoefficient",
    "SumNotOne",
    "NoPeakWithinCap",
    "AlphaGridExhausted",
    "ThetaMultipleOfPi",
    "ZeroCoefficient",
    "NotFoundWithinCap",
    "NonSquare",
    "DimensionMismatch",
    "OddLength",
    "NotCanonicalForm",
    "ZeroFunctional",
    "OverflowReached",
    "PremiseViolated",
]
