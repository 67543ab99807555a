"""leibniz-nf - exact analysis of Leibniz algebras given by structure constants.

This package computes series, nilradicals and derivation algebras over the
rationals, builds the solvable algebras whose nilradical is a sum of
null-filiform ideals, and classifies scrambled instances back to canonical
tables with an explicit basis change.

Example:
    # Build, scramble and classify
    from leibniz_nf import change_basis, classify, make_solvable_nf
    A = change_basis(make_solvable_nf(4), P)
    classify(A)  # SolvableNF(n=4) with a verified witness

    # Or use the command line
    leibniz-nf make solvable-nf --n 4 | leibniz-nf classify -
"""

from leibniz_nf.analysis import (
    derivation_space,
    derived_series,
    ideal_generated_by,
    is_derivation,
    is_ideal,
    is_null_filiform,
    lower_central_series,
    max_nil_independent,
    nilradical,
    product_space,
    right_annihilator,
)
from leibniz_nf.catalog import (
    canonical_r_alpha_param,
    canonical_table,
    make_nf,
    make_r_alpha,
    make_r_beta,
    make_r_general,
    make_solvable_nf,
    make_zero,
    normalize_beta_family,
)
from leibniz_nf.config import LeibnizSettings, get_settings
from leibniz_nf.core import (
    AlgebraTable,
    Subspace,
    bracket,
    change_basis,
    check_leibniz,
    direct_sum,
    mat_inverse,
    mat_nilpotent,
    span,
)
from leibniz_nf.errors import (
    LeibnizError,
    LeibnizViolationError,
    NotThisFamilyError,
    ParameterError,
    TableParseError,
)
from leibniz_nf.models import BetaParams, ClassLabel, Family, Fingerprint, GeneralParams
from leibniz_nf.recognition import (
    canonicalize_solvable_nf,
    classify,
    fingerprint,
    fuzz_roundtrip,
    isomorphic_in_catalog,
)

__version__ = "0.1.0"

__all__ = [
    # Core
    "AlgebraTable",
    "Subspace",
    "span",
    "mat_inverse",
    "mat_nilpotent",
    "bracket",
    "check_leibniz",
    "change_basis",
    "direct_sum",
    # Analysis
    "product_space",
    "lower_central_series",
    "derived_series",
    "is_null_filiform",
    "right_annihilator",
    "is_ideal",
    "ideal_generated_by",
    "nilradical",
    "is_derivation",
    "derivation_space",
    "max_nil_independent",
    # Catalog
    "make_zero",
    "make_nf",
    "make_solvable_nf",
    "make_r_alpha",
    "make_r_beta",
    "make_r_general",
    "normalize_beta_family",
    "canonical_r_alpha_param",
    "canonical_table",
    # Recognition
    "fingerprint",
    "canonicalize_solvable_nf",
    "classify",
    "isomorphic_in_catalog",
    "fuzz_roundtrip",
    # Models
    "BetaParams",
    "GeneralParams",
    "Fingerprint",
    "Family",
    "ClassLabel",
    # Settings
    "LeibnizSettings",
    "get_settings",
    # Exceptions
    "LeibnizError",
    "LeibnizViolationError",
    "NotThisFamilyError",
    "ParameterError",
    "TableParseError",
]
