"""Flat-spectrum ("negabent") analysis of functions Z_q^n -> Z_2q.

The toolkit evaluates the twisted transform N_f, its q-valued and
binary relatives, nega-correlations, known flat families, and an
exhaustive search harness — each quantity both in floating point and
exactly, as integer combinations of roots of unity.
"""
from .constructions import (
    Q4ConditionsReport,
    Q4PointRecord,
    affine_qary,
    bilinear_negabent,
    direct_sum,
    h_from_fg,
    q4_conditions,
    quadratic_negabent,
    restrict_last,
    squares_shift_sums,
)
from .core import (
    GenFunction,
    QaryFunction,
    ZqPoint,
    add_points,
    all_points,
    carry_count,
    concat,
    index_of,
    lift,
    lift_sum,
    point_of,
    restrict,
)
from .correlation import (
    ComplementVerdict,
    CorrelationTable,
    DecompositionResult,
    DualityReport,
    complementary_nac,
    correlation_table,
    duality_check,
    is_negabent_via_nac,
    nac,
    nac_restriction_decomposition,
    nac_spectral_form,
    ncc,
    spectral_complement,
)
from .cyclotomic import (
    CycloElement,
    CycloPolynomial,
    cyclotomic_poly,
    root_power,
)
from .polyspec import (
    PolySyntaxError,
    eval_to_function,
    format_poly,
    parse_poly,
    poly_function,
)
from .search import (
    CatalogRecord,
    InfeasibleSpaceError,
    SearchSpace,
    VerifyRow,
    candidate_function,
    enumerate_space,
    merge_catalog_files,
    search_negabent,
    verify_examples,
)
from .transforms import (
    BackendDisagreementError,
    ClosedFormValue,
    InverseResult,
    NegabentVerdict,
    Spectrum,
    binary_nht,
    closed_form_sum,
    full_spectrum,
    inverse_nht,
    is_negabent,
    nht,
    nht_exact,
    qary_nht,
    qary_nht_exact,
    qary_spectrum,
)

__version__ = "1.0.0"
