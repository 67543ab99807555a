"""Derivations, nilpotent derivations and nil-independence counts.

A derivation ``D`` is stored in the row convention: row ``i`` holds the
coordinates of ``D(b_i)``. Spaces of derivations are echelonized as flattened
``n*n`` vectors.
"""

import logging
import random
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Literal

from sympy import ImmutableMatrix, Rational

from leibniz_nf.analysis.series import lower_central_series, nilradical
from leibniz_nf.config import get_settings
from leibniz_nf.core.algebra import AlgebraTable, bracket, subalgebra_table
from leibniz_nf.core.exactlin import (
    ZERO,
    Matrix,
    Subspace,
    Vector,
    conjugate,
    kernel,
    linear_combination,
    mat_nilpotent,
    matrix_from_rows,
    rank,
    span,
    vector_times_matrix,
)
from leibniz_nf.errors import ShapeError

logger = logging.getLogger(__name__)


class Marker(Enum):
    NOT_LINEAR = "not-linear"


NOT_LINEAR = Marker.NOT_LINEAR


@dataclass(frozen=True)
class DerivationBasis:
    """Echelonized basis of the derivation algebra.

    Attributes:
        algebra_dim: Dimension ``n`` of the algebra.
        space: Span of the flattened derivation matrices in ``Q^(n*n)``.
    """

    algebra_dim: int
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    @cached_property
    def basis(self) -> tuple[Matrix, ...]:
        return tuple(unflatten(v, self.algebra_dim) for v in self.space.vectors)

    def contains(self, D: Matrix) -> bool:
        return self.space.contains(flatten(D))


@dataclass(frozen=True)
class NilIndependence:
    """Maximal number of nil-independent derivations.

    ``exact`` is False when ``count`` is only a sampled lower bound.
    """

    count: int
    exact: bool


def flatten(D: Matrix) -> Vector:
    return tuple(D[i, j] for i in range(D.rows) for j in range(D.cols))


def unflatten(v: Vector, n: int) -> Matrix:
    return matrix_from_rows([v[i * n : (i + 1) * n] for i in range(n)], n)


def _apply(D: Matrix, v: Vector) -> Vector:
    return vector_times_matrix(v, D)


def is_derivation(A: AlgebraTable, D: Matrix) -> bool:
    """Whether ``D[x, y] = [Dx, y] + [x, Dy]`` on all basis pairs.

    Raises:
        ShapeError: If ``D`` is not ``dim x dim``.
    """
    n = A.dim
    if D.rows != n or D.cols != n:
        raise ShapeError(f"derivation must be {n}x{n}, got {D.rows}x{D.cols}")
    images = [tuple(D.row(i)) for i in range(n)]
    for i in range(n):
        for j in range(n):
            product = bracket(A, A.basis_vector(i), A.basis_vector(j))
            left = _apply(D, product)
            right_a = bracket(A, images[i], A.basis_vector(j))
            right_b = bracket(A, A.basis_vector(i), images[j])
            if any(x != a + b for x, a, b in zip(left, right_a, right_b, strict=True)):
                return False
    return True


def derivation_space(A: AlgebraTable) -> DerivationBasis:
    """Kernel of ``D -> D[b_i, b_j] - [D b_i, b_j] - [b_i, D b_j]``.

    The unknown ``D[p][q]`` sits at flattened position ``p*n + q``.
    """
    n = A.dim
    rows: list[list[Rational]] = []
    for i in range(n):
        for j in range(n):
            for m in range(n):
                coeffs: dict[int, Rational] = {}
                for k in range(n):
                    c = A.constant(i, j, k)
                    if c != 0:
                        coeffs[k * n + m] = coeffs.get(k * n + m, ZERO) + c
                for p in range(n):
                    c = A.constant(p, j, m)
                    if c != 0:
                        coeffs[i * n + p] = coeffs.get(i * n + p, ZERO) - c
                    c = A.constant(i, p, m)
                    if c != 0:
                        coeffs[j * n + p] = coeffs.get(j * n + p, ZERO) - c
                if any(v != 0 for v in coeffs.values()):
                    row = [ZERO] * (n * n)
                    for index, value in coeffs.items():
                        row[index] = value
                    rows.append(row)
    space = kernel(rows, n * n)
    logger.debug("Derivation algebra of a dim-%d algebra has dim %d", n, space.dim)
    return DerivationBasis(n, space)


def flag_invariance(A: AlgebraTable, D: Matrix) -> bool:
    """Whether ``D`` maps every lower central term into itself."""
    for term in lower_central_series(A).terms:
        if not all(term.contains(_apply(D, u)) for u in term.vectors):
            return False
    return True


def adapted_flag_basis(A: AlgebraTable) -> tuple[Matrix, list[range]]:
    """Basis adapted to the lower central flag, with the index range of each step.

    Each step contributes the echelon rows of ``L^i`` whose pivots are not
    pivots of ``L^(i+1)``; a nonzero stable term forms the last block.
    """
    terms = lower_central_series(A).terms
    rows: list[Vector] = []
    blocks: list[range] = []
    for upper, lower in zip(terms, terms[1:], strict=False):
        lower_pivots = set(lower.pivots)
        start = len(rows)
        for vector, pivot in zip(upper.vectors, upper.pivots, strict=True):
            if pivot not in lower_pivots:
                rows.append(vector)
        if len(rows) > start:
            blocks.append(range(start, len(rows)))
    if not terms[-1].is_zero:
        start = len(rows)
        rows.extend(terms[-1].vectors)
        blocks.append(range(start, len(rows)))
    return matrix_from_rows(rows, A.dim), blocks


def _is_upper_triangular(M: Matrix) -> bool:
    return all(M[r, c] == 0 for r in range(M.rows) for c in range(r))


def _diagonal(M: Matrix) -> Vector:
    return tuple(M[i, i] for i in range(M.rows))


def nilpotent_derivation_subspace(
    A: AlgebraTable, ders: DerivationBasis
) -> Subspace | Literal[Marker.NOT_LINEAR]:
    """Nilpotent members of ``span(ders)`` when they form a subspace.

    When every derivation is upper triangular in the flag-adapted basis,
    a member is nilpotent exactly when its diagonal vanishes, and the result
    is that subspace (flattened). Otherwise returns ``NOT_LINEAR``.
    """
    n = A.dim
    if ders.dim == 0:
        return Subspace.zero(n * n)
    P, _ = adapted_flag_basis(A)
    conjugated = [conjugate(D, P) for D in ders.basis]
    if not all(_is_upper_triangular(M) for M in conjugated):
        logger.debug("Derivations are not triangular in the flag-adapted basis")
        return NOT_LINEAR
    diagonals = [_diagonal(M) for M in conjugated]
    conditions = [[d[i] for d in diagonals] for i in range(n)]
    nil_coeffs = kernel(conditions, ders.dim)
    flat = ders.space.vectors
    return span([linear_combination(t, flat, n * n) for t in nil_coeffs.vectors], n * n)


def _sampled_lower_bound(
    ders: DerivationBasis, P: Matrix, samples: int, seed: int, bound: int
) -> int:
    n = ders.algebra_dim
    conjugated = [conjugate(D, P) for D in ders.basis]
    # Triangular members of the span; on them nilpotency is a diagonal condition.
    lower_entries = [
        [M[r, c] for M in conjugated] for r in range(n) for c in range(r)
    ]
    triangular = kernel(lower_entries, ders.dim)
    diagonals = [_diagonal(M) for M in conjugated]
    restricted = [linear_combination(t, diagonals, n) for t in triangular.vectors]
    count = rank(restricted, n)
    if count > 0:
        return count
    rng = random.Random(seed)
    for _ in range(samples):
        coeffs = [Rational(rng.randint(-bound, bound)) for _ in range(ders.dim)]
        if all(c == 0 for c in coeffs):
            continue
        D = ImmutableMatrix.zeros(n, n)
        for c, M in zip(coeffs, ders.basis, strict=True):
            D = D + c * M
        if not mat_nilpotent(D):
            return 1
    return 0


def max_nil_independent(
    A: AlgebraTable,
    *,
    samples: int | None = None,
    seed: int = 0,
) -> NilIndependence:
    """Maximal number of nil-independent derivations of ``A``.

    Exact (the rank of the diagonal map) when the nilpotent derivations form
    a subspace; otherwise a lower bound from the triangular members and
    ``samples`` random combinations, flagged ``exact=False``.
    """
    settings = get_settings()
    samples = settings.nil_independence_samples if samples is None else samples
    ders = derivation_space(A)
    nil = nilpotent_derivation_subspace(A, ders)
    if nil is not NOT_LINEAR:
        return NilIndependence(ders.dim - nil.dim, exact=True)
    P, _ = adapted_flag_basis(A)
    bound = _sampled_lower_bound(ders, P, samples, seed, settings.sample_entry_bound)
    logger.info("Nil-independence count is a lower bound (%d)", bound)
    return NilIndependence(bound, exact=False)


def complement_bound_check(A: AlgebraTable, N: Subspace | None = None) -> bool | None:
    """Check ``dim A - dim N <= max nil-independent derivations of N``.

    Also requires ``dim N >= dim A / 2``. Returns None when only a lower
    bound is known and it does not settle the inequality.
    """
    if N is None:
        N = nilradical(A)
    if 2 * N.dim < A.dim:
        return False
    codim = A.dim - N.dim
    result = max_nil_independent(subalgebra_table(A, N))
    if codim <= result.count:
        return True
    return False if result.exact else None
