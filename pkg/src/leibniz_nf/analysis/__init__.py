"""Structural analysis of Leibniz algebras.

This package contains the basis-free computations:
- series: lower central and derived series, ideals, annihilators, nilradical
- derivations: derivation algebras and nil-independence counts
"""

from leibniz_nf.analysis.derivations import (
    NOT_LINEAR,
    DerivationBasis,
    NilIndependence,
    complement_bound_check,
    derivation_space,
    flag_invariance,
    is_derivation,
    max_nil_independent,
    nilpotent_derivation_subspace,
)
from leibniz_nf.analysis.series import (
    NilradicalReport,
    SeriesKind,
    SeriesReport,
    derived_series,
    ideal_generated_by,
    is_ideal,
    is_nilpotent,
    is_null_filiform,
    is_solvable,
    lower_central_series,
    nilpotency_check_on_subspace,
    nilradical,
    nilradical_report,
    product_space,
    right_annihilator,
    square,
)

__all__ = [
    # Series and radicals
    "SeriesKind",
    "SeriesReport",
    "NilradicalReport",
    "product_space",
    "square",
    "lower_central_series",
    "derived_series",
    "is_nilpotent",
    "is_solvable",
    "is_null_filiform",
    "right_annihilator",
    "is_ideal",
    "ideal_generated_by",
    "nilpotency_check_on_subspace",
    "nilradical",
    "nilradical_report",
    # Derivations
    "NOT_LINEAR",
    "DerivationBasis",
    "NilIndependence",
    "is_derivation",
    "derivation_space",
    "flag_invariance",
    "nilpotent_derivation_subspace",
    "max_nil_independent",
    "complement_bound_check",
]
