"""Structure-constant tables and the operations defined directly on them.

An ``AlgebraTable`` of dimension ``n`` stores the nonzero constants
``c[i][j][k]`` with ``[b_i, b_j] = sum_k c[i][j][k] b_k``. Indices are 0-based
in the library; the table file format and CLI reports are 1-based.
"""

import logging
from collections import defaultdict
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

from sympy import Rational

from leibniz_nf.core.exactlin import (
    ZERO,
    Matrix,
    Subspace,
    Vector,
    matrix_from_rows,
    mat_inverse,
    to_rational,
    unit_vector,
    vector_times_matrix,
)
from leibniz_nf.errors import (
    ClosureError,
    DimensionError,
    InvarianceError,
    LeibnizViolationError,
    ShapeError,
)

logger = logging.getLogger(__name__)

Entry = tuple[int, int, int, Rational]


@dataclass(frozen=True)
class AlgebraTable:
    """Immutable multiplication table of a finite-dimensional algebra.

    Omitted constants are zero. Equality compares dimension and constants;
    basis names are presentation only.

    Attributes:
        dim: Dimension of the algebra.
        entries: Sorted ``(i, j, k, c)`` tuples with ``c != 0``.
        basis_names: Optional labels, one per basis vector.
    """

    dim: int
    entries: tuple[Entry, ...] = ()
    basis_names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise DimensionError(f"negative dimension {self.dim}")
        cleaned: dict[tuple[int, int, int], Rational] = {}
        for i, j, k, c in self.entries:
            for index in (i, j, k):
                if not 0 <= index < self.dim:
                    raise DimensionError(f"index {index} out of range for dim {self.dim}")
            value = to_rational(c)
            if value != 0:
                cleaned[(i, j, k)] = value
        object.__setattr__(
            self, "entries", tuple((i, j, k, c) for (i, j, k), c in sorted(cleaned.items()))
        )
        if self.basis_names is not None:
            names = tuple(self.basis_names)
            if len(names) != self.dim:
                raise DimensionError(f"{len(names)} basis names for dim {self.dim}")
            object.__setattr__(self, "basis_names", names)

    @classmethod
    def from_constants(
        cls,
        dim: int,
        constants: Mapping[tuple[int, int, int], Any],
        basis_names: Sequence[str] | None = None,
    ) -> "AlgebraTable":
        """Build a table from a ``{(i, j, k): c}`` mapping."""
        return cls(
            dim,
            tuple((i, j, k, to_rational(c)) for (i, j, k), c in constants.items()),
            tuple(basis_names) if basis_names is not None else None,
        )

    @classmethod
    def zero(cls, dim: int) -> "AlgebraTable":
        return cls(dim)

    @cached_property
    def constants(self) -> dict[tuple[int, int, int], Rational]:
        return {(i, j, k): c for i, j, k, c in self.entries}

    @cached_property
    def products(self) -> dict[tuple[int, int], tuple[tuple[int, Rational], ...]]:
        """Nonzero products grouped by operand pair."""
        grouped: dict[tuple[int, int], list[tuple[int, Rational]]] = defaultdict(list)
        for i, j, k, c in self.entries:
            grouped[(i, j)].append((k, c))
        return {pair: tuple(terms) for pair, terms in grouped.items()}

    def constant(self, i: int, j: int, k: int) -> Rational:
        return self.constants.get((i, j, k), ZERO)

    def basis_vector(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    def names(self) -> tuple[str, ...]:
        """Basis labels, defaulting to ``b1 .. bn``."""
        if self.basis_names is not None:
            return self.basis_names
        return tuple(f"b{i + 1}" for i in range(self.dim))

    def with_names(self, names: Iterable[str] | None) -> "AlgebraTable":
        return AlgebraTable(self.dim, self.entries, tuple(names) if names is not None else None)


def _check_element(A: AlgebraTable, v: Sequence[Rational]) -> None:
    if len(v) != A.dim:
        raise DimensionError(f"element of length {len(v)} in an algebra of dim {A.dim}")


def bracket(A: AlgebraTable, x: Sequence[Rational], y: Sequence[Rational]) -> Vector:
    """Bilinear product ``[x, y]`` in coordinates.

    Raises:
        DimensionError: If an element does not match ``A.dim``.
    """
    _check_element(A, x)
    _check_element(A, y)
    out = [ZERO] * A.dim
    for (i, j), terms in A.products.items():
        xi = x[i]
        if xi == 0:
            continue
        yj = y[j]
        if yj == 0:
            continue
        scale = xi * yj
        for k, c in terms:
            out[k] += scale * c
    return tuple(out)


def basis_bracket(A: AlgebraTable, i: int, j: int) -> Vector:
    out = [ZERO] * A.dim
    for k, c in A.products.get((i, j), ()):
        out[k] = c
    return tuple(out)


def check_leibniz(A: AlgebraTable) -> list[tuple[int, int, int]]:
    """All basis triples violating ``[x,[y,z]] = [[x,y],z] - [[x,z],y]``.

    Trilinearity makes the basis triples sufficient. Triples are reported
    exhaustively in lexicographic order and are 0-based: the 1-dim table
    ``[b_1, b_1] = b_1`` gives ``[(0, 0, 0)]``. The ``verify`` command and the
    LeibnizViolationError message shift them to 1-based.
    """
    n = A.dim
    squares = [[basis_bracket(A, i, j) for j in range(n)] for i in range(n)]
    violations: list[tuple[int, int, int]] = []
    for i in range(n):
        bi = A.basis_vector(i)
        for j in range(n):
            for k in range(n):
                bk = A.basis_vector(k)
                bj = A.basis_vector(j)
                left = bracket(A, bi, squares[j][k])
                first = bracket(A, squares[i][j], bk)
                second = bracket(A, squares[i][k], bj)
                if any(a != f - s for a, f, s in zip(left, first, second, strict=True)):
                    violations.append((i, j, k))
    if violations:
        logger.debug("Leibniz identity fails on %d basis triples", len(violations))
    return violations


def require_leibniz(A: AlgebraTable) -> None:
    """Raise LeibnizViolationError unless ``A`` satisfies the Leibniz identity."""
    violations = check_leibniz(A)
    if violations:
        first = ", ".join(str(tuple(t + 1 for t in v)) for v in violations[:3])
        raise LeibnizViolationError(
            f"Leibniz identity fails on {len(violations)} basis triple(s), e.g. {first}",
            violations=violations,
        )


def change_basis(A: AlgebraTable, P: Matrix) -> AlgebraTable:
    """Rewrite ``A`` in the basis whose vectors are the rows of ``P``.

    ``c'[i][j][m] = sum P[i][a] P[j][b] c[a][b][k] Pinv[k][m]``. Composition
    follows ``change_basis(change_basis(A, P1), P2) == change_basis(A, P2 * P1)``.

    Raises:
        ShapeError: If ``P`` is not ``dim x dim``.
        SingularMatrixError: If ``P`` is singular.
    """
    if P.rows != A.dim or P.cols != A.dim:
        raise ShapeError(f"basis change must be {A.dim}x{A.dim}, got {P.rows}x{P.cols}")
    P_inv = mat_inverse(P)
    rows = [tuple(P.row(i)) for i in range(A.dim)]
    constants: dict[tuple[int, int, int], Rational] = {}
    for i, u in enumerate(rows):
        for j, v in enumerate(rows):
            product = bracket(A, u, v)
            if all(x == 0 for x in product):
                continue
            for m, c in enumerate(vector_times_matrix(product, P_inv)):
                if c != 0:
                    constants[(i, j, m)] = c
    return AlgebraTable.from_constants(A.dim, constants)


def direct_sum(A: AlgebraTable, B: AlgebraTable) -> AlgebraTable:
    """Block table with ``A`` on the first ``A.dim`` vectors and zero cross products."""
    shift = A.dim
    entries = A.entries + tuple((i + shift, j + shift, k + shift, c) for i, j, k, c in B.entries)
    names = None
    if A.basis_names is not None and B.basis_names is not None:
        names = A.basis_names + B.basis_names
    return AlgebraTable(A.dim + B.dim, entries, names)


def right_mult_matrix(
    A: AlgebraTable, x: Sequence[Rational], restrict_to: Subspace | None = None
) -> Matrix:
    """Matrix of ``R_x: y -> [y, x]``.

    Without ``restrict_to`` the matrix is in the standard basis; otherwise it
    is in the echelon basis of ``restrict_to``.

    Raises:
        InvarianceError: If ``restrict_to`` is not mapped into itself by ``R_x``.
    """
    _check_element(A, x)
    if restrict_to is None:
        rows = [bracket(A, A.basis_vector(i), x) for i in range(A.dim)]
        return matrix_from_rows(rows, A.dim)
    if restrict_to.ambient_dim != A.dim:
        raise DimensionError("restriction subspace lives in a different ambient space")
    rows = []
    for u in restrict_to.vectors:
        image = bracket(A, u, x)
        if not restrict_to.contains(image):
            raise InvarianceError("subspace is not invariant under right multiplication")
        rows.append(restrict_to.coordinates(image))
    return matrix_from_rows(rows, restrict_to.dim)


def left_mult_matrix(A: AlgebraTable, x: Sequence[Rational]) -> Matrix:
    """Matrix of ``L_x: y -> [x, y]`` in the standard basis."""
    _check_element(A, x)
    rows = [bracket(A, x, A.basis_vector(i)) for i in range(A.dim)]
    return matrix_from_rows(rows, A.dim)


def subalgebra_table(A: AlgebraTable, U: Subspace) -> AlgebraTable:
    """Structure constants of the subalgebra ``U`` in its echelon basis.

    Raises:
        ClosureError: If ``[U, U]`` is not contained in ``U``.
    """
    if U.ambient_dim != A.dim:
        raise DimensionError("subspace lives in a different ambient space")
    constants: dict[tuple[int, int, int], Rational] = {}
    for a, u in enumerate(U.vectors):
        for b, v in enumerate(U.vectors):
            product = bracket(A, u, v)
            if not U.contains(product):
                raise ClosureError("subspace is not closed under the bracket")
            for m, c in enumerate(U.coordinates(product)):
                if c != 0:
                    constants[(a, b, m)] = c
    return AlgebraTable.from_constants(U.dim, constants)
