"""Arithmetic core: exact linear algebra and structure-constant tables."""

from leibniz_nf.core.algebra import (
    AlgebraTable,
    bracket,
    change_basis,
    check_leibniz,
    direct_sum,
    left_mult_matrix,
    require_leibniz,
    right_mult_matrix,
    subalgebra_table,
)
from leibniz_nf.core.exactlin import (
    Matrix,
    Subspace,
    Vector,
    format_rational,
    identity,
    mat_inverse,
    mat_nilpotent,
    parse_rational,
    span,
    to_rational,
)

__all__ = [
    "AlgebraTable",
    "Matrix",
    "Subspace",
    "Vector",
    "bracket",
    "change_basis",
    "check_leibniz",
    "direct_sum",
    "format_rational",
    "identity",
    "left_mult_matrix",
    "mat_inverse",
    "mat_nilpotent",
    "parse_rational",
    "require_leibniz",
    "right_mult_matrix",
    "span",
    "subalgebra_table",
    "to_rational",
]
