"""Exact multiplicities and mixed multiplicities of filtrations of monomial
ideals in a power-series ring, with verification suites for the structural
inequalities and identities they satisfy."""

from .errors import (
    BudgetExceeded,
    DegreeMismatch,
    DimensionMismatch,
    DimensionUnsupported,
    ExhaustedRetries,
    FiltmultError,
    IndexOutOfTable,
    NotMPrimary,
    NotNoetherian,
    SpecValidationError,
    TopCoefficientDrift,
)
from .filtrations import (
    CeilingNormMultiFiltration,
    DiagonalFiltration,
    Filtration,
    MonomialValuationFiltration,
    MultiFiltration,
    PowerFiltration,
    ProductMultiFiltration,
    ShiftedPowerFiltration,
    TableFiltration,
    TruncatedFiltration,
    TruncatedMultiFiltration,
    detect_noetherian_scale,
    filtration_from_json,
    multi_ideal_at,
    multifiltration_from_json,
    truncate,
    verify_filtration,
)
from .multiplicity import (
    ExactStrategy,
    LimitEstimate,
    MixedMultiplicityTable,
    NumericStrategy,
    PointwiseProductFiltration,
    QuasiPolynomial,
    filtration_multiplicity,
    fit_quasi_polynomial,
    hilbert_samuel_multiplicity,
    ideal_multiplicity,
    limit_normalized_colength,
    mixed_multiplicity_table,
    sample_points,
    truncation_convergence,
)
from .okounkov import (
    BodyApproximation,
    SemigroupSample,
    admissible_beta,
    ambient_body_volume,
    ambient_count,
    body_volume,
    semigroup_points,
    volume_limit_check,
)
from .quadratic import SQRT2, QuadraticIrrational
from .staircase import (
    MonomialIdeal,
    NewtonRegion,
    colength,
    colength_bruteforce,
    contains,
    covolume,
    ideal_sum,
    integral_closure,
    is_m_primary,
    maximal_ideal,
    minimalize,
    newton_region,
    power,
    product,
    unit_ideal,
)
from .verifier import (
    integrality_check,
    integrality_suite,
    minkowski_report,
    minkowski_suite,
    non_polynomial_witness,
    random_m_primary_ideal,
    rees_identity_check,
    root_sum_compare,
)

__version__ = "0.1.0"
