"""Additive-combinatorics laboratory over prime fields.

Subsets of F_p are bitmask-backed (`FpSet`), characters come from precomputed
discrete-log tables (`Character`), and every counting quantity has both a fast
path and an independent brute-force oracle (`fplab.oracles`). The `fplab.lab`
subpackage holds the generators, sweep driver, verification suite, and CLI.
"""

from fplab._kernels import BACKEND
from fplab.balog import (
    BalogCheck,
    CoverageResult,
    balog_iterated,
    balog_new_check,
    coverage,
    qr_decomposition_check,
    redei_check,
)
from fplab.charsum import (
    BoundParams,
    CharSumResult,
    MomentResult,
    bound_eval,
    character_sum,
    interval_bounds,
    moment_sum,
    paley_profile,
)
from fplab.errors import (
    BadConfig,
    BadFamily,
    BadParams,
    EmptySet,
    FieldMismatch,
    FormatError,
    FplabError,
    MissingParam,
    NotInterval,
    NotPrime,
    SpectralMismatch,
    TooLarge,
    TooSmall,
    TrivialCharacter,
    UnboundVariable,
    ZeroDilation,
    ZeroInA,
)
from fplab.field import (
    Character,
    PrimeField,
    UnitValue,
    char_eval,
    character,
    is_prime,
    least_primitive_root,
    legendre_character,
    make_field,
)
from fplab.incidence import (
    PlaneSet,
    PointSet3,
    canonical_plane,
    count_incidences,
    max_collinear,
    random_plane_set,
    random_point_set,
    read_point_plane_file,
    rudnev_gap,
    skew_family,
    skew_solution_count,
    write_point_plane_file,
)
from fplab.report import (
    Report,
    reports_from_json,
    reports_to_csv,
    reports_to_json,
    write_reports_csv,
    write_reports_json,
)
from fplab.setalg import (
    DoublingStats,
    FpSet,
    difference_set,
    dilate,
    dilated_sumset,
    doubling,
    fold_prod,
    fold_sum,
    negate,
    product_set,
    quotient_set,
    read_set_file,
    sumset,
    translate,
    write_set_file,
)
from fplab.setexpr import eval_expr, expr_to_str, parse_expr
from fplab.spectral import (
    DenseFunction,
    EnergyReport,
    additive_energy,
    count_dilate_eq,
    count_system,
    cyclic_convolve,
    dft_direct,
    mult_energy,
)
from fplab.structure import (
    BsgResult,
    InclusionCert,
    SandersResult,
    bsg_extract,
    extract_z,
    sanders_greedy,
    structure_pipeline,
    verify_inclusion,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "__version__",
    # errors
    "FplabError",
    "NotPrime",
    "TooLarge",
    "TrivialCharacter",
    "FieldMismatch",
    "EmptySet",
    "ZeroDilation",
    "UnboundVariable",
    "NotInterval",
    "MissingParam",
    "ZeroInA",
    "TooSmall",
    "BadParams",
    "BadFamily",
    "BadConfig",
    "SpectralMismatch",
    "FormatError",
    # field
    "is_prime",
    "least_primitive_root",
    "PrimeField",
    "make_field",
    "UnitValue",
    "Character",
    "character",
    "legendre_character",
    "char_eval",
    # sets
    "FpSet",
    "DoublingStats",
    "sumset",
    "negate",
    "difference_set",
    "translate",
    "dilate",
    "product_set",
    "quotient_set",
    "fold_sum",
    "fold_prod",
    "dilated_sumset",
    "doubling",
    "read_set_file",
    "write_set_file",
    "parse_expr",
    "eval_expr",
    "expr_to_str",
    # spectral
    "dft_direct",
    "cyclic_convolve",
    "DenseFunction",
    "EnergyReport",
    "additive_energy",
    "mult_energy",
    "count_system",
    "count_dilate_eq",
    # character sums
    "CharSumResult",
    "character_sum",
    "MomentResult",
    "interval_bounds",
    "moment_sum",
    "BoundParams",
    "bound_eval",
    "paley_profile",
    # incidence
    "PointSet3",
    "PlaneSet",
    "canonical_plane",
    "count_incidences",
    "max_collinear",
    "rudnev_gap",
    "skew_family",
    "skew_solution_count",
    "random_point_set",
    "random_plane_set",
    "read_point_plane_file",
    "write_point_plane_file",
    # structure
    "BsgResult",
    "bsg_extract",
    "SandersResult",
    "sanders_greedy",
    "extract_z",
    "InclusionCert",
    "verify_inclusion",
    "structure_pipeline",
    # coverage checks
    "CoverageResult",
    "coverage",
    "BalogCheck",
    "balog_new_check",
    "balog_iterated",
    "redei_check",
    "qr_decomposition_check",
    # reports
    "Report",
    "reports_to_json",
    "reports_from_json",
    "write_reports_json",
    "reports_to_csv",
    "write_reports_csv",
]
