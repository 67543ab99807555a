"""Exact rational scalars, matrices and canonical subspaces.

Scalars are sympy ``Rational`` values and matrices are sympy
``ImmutableMatrix`` values, so every object here is immutable and hashable.
Echelon forms, kernels and inverses go through ``DomainMatrix`` over ``QQ``,
which keeps the heavy elimination work in sympy's polys domain machinery.

Vectors are plain tuples of rationals. A matrix acts on row vectors: row ``i``
of a linear map's matrix holds the image of the ``i``-th basis vector.
"""

import logging
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, TypeAlias

import sympy
from sympy import ImmutableMatrix, Rational
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from leibniz_nf.errors import (
    DimensionError,
    DomainError,
    RationalSyntaxError,
    ShapeError,
    SingularMatrixError,
)

logger = logging.getLogger(__name__)

Matrix: TypeAlias = ImmutableMatrix
Vector: TypeAlias = tuple[Rational, ...]

ZERO = Rational(0)
ONE = Rational(1)

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/([+-]?\d+))?$")


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------


def parse_rational(text: str) -> Rational:
    """Parse ``p/q`` or ``p`` into a reduced rational.

    Non-canonical spellings (``2/4``, ``+3``, ``1/-2``, ``5/1``) are accepted
    and normalized; use :func:`is_canonical_rational` to detect them.

    Raises:
        RationalSyntaxError: If the text is not an integer ratio or the
            denominator is zero.
    """
    match = _RATIONAL_RE.match(text.strip())
    if match is None:
        raise RationalSyntaxError(f"malformed rational: {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise RationalSyntaxError(f"zero denominator: {text!r}")
    return Rational(numerator, denominator)


def format_rational(value: Rational) -> str:
    """Canonical text form: ``p`` when integral, otherwise ``p/q`` with q > 0."""
    value = to_rational(value)
    if value.q == 1:
        return str(value.p)
    return f"{value.p}/{value.q}"


def is_canonical_rational(text: str) -> bool:
    """Whether ``text`` is already in canonical reduced form."""
    return format_rational(parse_rational(text)) == text


def to_rational(value: Any) -> Rational:
    """Coerce ints, fractions, sympy numbers and rational text to ``Rational``.

    Floats are refused; they carry binary rounding that would leak into exact
    computations.
    """
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"cannot use {type(value).__name__} as an exact rational")
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, int | Fraction):
        return Rational(value)
    converted = sympy.sympify(value)
    if not isinstance(converted, Rational):
        raise TypeError(f"not a rational number: {value!r}")
    return converted


# ---------------------------------------------------------------------------
# Vectors and matrices
# ---------------------------------------------------------------------------


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def as_vector(values: Iterable[Any]) -> Vector:
    return tuple(to_rational(v) for v in values)


def is_zero_vector(v: Sequence[Rational]) -> bool:
    return all(x == 0 for x in v)


def linear_combination(coeffs: Sequence[Rational], vectors: Sequence[Vector], n: int) -> Vector:
    """Return ``sum(c * v)`` over paired coefficients and vectors of length ``n``."""
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors, strict=True):
        if c == 0:
            continue
        for k, x in enumerate(v):
            if x != 0:
                out[k] += c * x
    return tuple(out)


def vector_times_matrix(v: Sequence[Rational], M: Matrix) -> Vector:
    """Row vector ``v`` multiplied by ``M``."""
    if len(v) != M.rows:
        raise DimensionError(f"vector of length {len(v)} against {M.rows}x{M.cols} matrix")
    out = [ZERO] * M.cols
    for i, x in enumerate(v):
        if x == 0:
            continue
        for j in range(M.cols):
            entry = M[i, j]
            if entry != 0:
                out[j] += x * entry
    return tuple(out)


def matrix_from_rows(rows: Sequence[Sequence[Any]], ncols: int) -> Matrix:
    """Build an immutable matrix; an empty row list gives a ``0 x ncols`` matrix."""
    if not rows:
        return ImmutableMatrix.zeros(0, ncols)
    for row in rows:
        if len(row) != ncols:
            raise DimensionError(f"row of length {len(row)} in a matrix with {ncols} columns")
    return ImmutableMatrix([[to_rational(x) for x in row] for row in rows])


def matrix_rows(M: Matrix) -> list[Vector]:
    return [tuple(M.row(i)) for i in range(M.rows)]


def identity(n: int) -> Matrix:
    return ImmutableMatrix.eye(n)


def _square_size(M: Matrix) -> int:
    if M.rows != M.cols:
        raise ShapeError(f"expected a square matrix, got {M.rows}x{M.cols}")
    return int(M.rows)


def _domain_matrix(rows: Sequence[Sequence[Rational]], ncols: int) -> DomainMatrix:
    elements = [[QQ.convert(x) for x in row] for row in rows]
    return DomainMatrix(elements, (len(rows), ncols), QQ)


def _domain_rows(dm: DomainMatrix) -> list[Vector]:
    return matrix_rows(ImmutableMatrix(dm.to_Matrix()))


def echelon(rows: Sequence[Sequence[Rational]], ncols: int) -> tuple[list[Vector], tuple[int, ...]]:
    """Reduced row-echelon basis of the row span and its pivot columns."""
    if ncols == 0 or not rows:
        return [], ()
    reduced, pivots = _domain_matrix(rows, ncols).rref()
    basis = _domain_rows(reduced)[: len(pivots)]
    return basis, tuple(int(p) for p in pivots)


def rank(rows: Sequence[Sequence[Rational]], ncols: int) -> int:
    return len(echelon(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence[Rational]], ncols: int) -> list[Vector]:
    """Basis of ``{v : row . v = 0 for every row}``."""
    if ncols == 0:
        return []
    if not rows:
        return [unit_vector(ncols, i) for i in range(ncols)]
    dm = _domain_matrix(rows, ncols)
    if dm.rank() == ncols:
        return []
    return _domain_rows(dm.nullspace())


def mat_inverse(P: Matrix) -> Matrix:
    """Exact inverse of a square matrix.

    Raises:
        ShapeError: If ``P`` is not square.
        SingularMatrixError: If ``P`` is singular; carries the rank found.
    """
    n = _square_size(P)
    if n == 0:
        return P
    dm = DomainMatrix.from_Matrix(P).convert_to(QQ)
    found = int(dm.rank())
    if found < n:
        raise SingularMatrixError(f"singular {n}x{n} matrix (rank {found})", rank=found)
    return ImmutableMatrix(dm.inv().to_Matrix())


def mat_nilpotent(M: Matrix) -> bool:
    """Whether ``M**n == 0`` for the ``n x n`` matrix ``M``.

    Raises:
        ShapeError: If ``M`` is not square.
    """
    n = _square_size(M)
    if n == 0:
        return True
    dm = DomainMatrix.from_Matrix(M).convert_to(QQ)
    return bool((dm**n).is_zero_matrix)


def conjugate(M: Matrix, P: Matrix) -> Matrix:
    """Express the row-convention map ``M`` in the basis given by the rows of ``P``."""
    return ImmutableMatrix(P * M * mat_inverse(P))


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A linear subspace stored by its reduced row-echelon basis.

    Two subspaces of the same ambient space are equal exactly when their
    stored bases agree entrywise. Build instances with :func:`span`,
    :meth:`zero` or :meth:`full`.

    Attributes:
        ambient_dim: Dimension of the coordinate space.
        basis: RREF basis, one row per basis vector.
        pivots: Pivot column of each basis row.
    """

    ambient_dim: int
    basis: Matrix
    pivots: tuple[int, ...] = field(compare=False)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ImmutableMatrix.zeros(0, ambient_dim), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, identity(ambient_dim), tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @cached_property
    def vectors(self) -> tuple[Vector, ...]:
        return tuple(matrix_rows(self.basis))

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def _check(self, v: Sequence[Rational]) -> None:
        if len(v) != self.ambient_dim:
            raise DimensionError(
                f"vector of length {len(v)} in ambient space of dim {self.ambient_dim}"
            )

    def contains(self, v: Sequence[Rational]) -> bool:
        """Membership test by reading coordinates off the pivot columns."""
        self._check(v)
        coeffs = [v[p] for p in self.pivots]
        return linear_combination(coeffs, self.vectors, self.ambient_dim) == tuple(v)

    def coordinates(self, v: Sequence[Rational]) -> Vector:
        """Coordinates of ``v`` with respect to the echelon basis.

        Raises:
            DomainError: If ``v`` is not in the subspace.
        """
        if not self.contains(v):
            raise DomainError("vector does not lie in the subspace")
        return tuple(to_rational(v[p]) for p in self.pivots)

    def includes(self, other: "Subspace") -> bool:
        """Whether ``other`` is a subspace of ``self``."""
        if other.ambient_dim != self.ambient_dim:
            raise DimensionError("subspaces live in different ambient spaces")
        return all(self.contains(v) for v in other.vectors)

    def __add__(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise DimensionError("subspaces live in different ambient spaces")
        return span(self.vectors + other.vectors, self.ambient_dim)

    def complement_vectors(self) -> list[Vector]:
        """Standard unit vectors at the non-pivot columns; they span a complement."""
        taken = set(self.pivots)
        return [unit_vector(self.ambient_dim, i) for i in range(self.ambient_dim) if i not in taken]


def span(vectors: Iterable[Sequence[Any]], ambient_dim: int) -> Subspace:
    """Canonical echelon basis of the span of ``vectors``.

    Raises:
        DimensionError: If some vector does not have length ``ambient_dim``.
    """
    rows: list[Vector] = []
    for v in vectors:
        if len(v) != ambient_dim:
            raise DimensionError(f"vector of length {len(v)} in ambient space of dim {ambient_dim}")
        row = as_vector(v)
        if not is_zero_vector(row):
            rows.append(row)
    basis, pivots = echelon(rows, ambient_dim)
    return Subspace(ambient_dim, matrix_from_rows(basis, ambient_dim), pivots)


def kernel(rows: Sequence[Sequence[Rational]], ncols: int) -> Subspace:
    """Solution space of the homogeneous system given by ``rows``."""
    return span(nullspace(rows, ncols), ncols)
