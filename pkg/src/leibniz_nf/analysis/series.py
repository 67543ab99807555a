"""Series, ideals, annihilators and the nilradical of a solvable algebra.

Series stop at the first repeated term, which is kept so reports can show
where a series stabilizes. A series that reaches zero ends with the zero
term and its index is the number of terms.
"""

import logging
import random
from collections.abc import Iterator
from dataclasses import dataclass
from enum import StrEnum

from sympy import Rational

from leibniz_nf.config import get_settings
from leibniz_nf.core.algebra import (
    AlgebraTable,
    bracket,
    require_leibniz,
    right_mult_matrix,
    subalgebra_table,
)
from leibniz_nf.core.exactlin import Subspace, kernel, mat_nilpotent, span
from leibniz_nf.errors import DimensionError, DomainError, NilradicalInconsistencyError

logger = logging.getLogger(__name__)


class SeriesKind(StrEnum):
    LOWER_CENTRAL = "lower-central"
    DERIVED = "derived"


@dataclass(frozen=True)
class SeriesReport:
    """Terms of a lower central or derived series.

    Attributes:
        kind: Which series the terms belong to.
        terms: ``terms[0]`` is the whole space; each term contains the next.
    """

    kind: SeriesKind
    terms: tuple[Subspace, ...]

    @property
    def dims(self) -> list[int]:
        return [t.dim for t in self.terms]

    @property
    def stabilized_at_zero(self) -> bool:
        return self.terms[-1].is_zero

    @property
    def index(self) -> int | None:
        """Index of nilpotency or solvability, when the series reaches zero."""
        return len(self.terms) if self.stabilized_at_zero else None

    @property
    def repeated(self) -> bool:
        """Whether the last term repeats the previous one (stable, nonzero)."""
        return not self.stabilized_at_zero and len(self.terms) >= 2


@dataclass(frozen=True)
class NilradicalReport:
    """Result of the nilradical search.

    Attributes:
        subspace: The nilpotent ideal found.
        certified: True when the complement has dimension at most 1, where the
            restricted right-multiplication certificate proves maximality.
    """

    subspace: Subspace
    certified: bool

    @property
    def codim(self) -> int:
        return self.subspace.ambient_dim - self.subspace.dim


def _check_ambient(A: AlgebraTable, *spaces: Subspace) -> None:
    for U in spaces:
        if U.ambient_dim != A.dim:
            raise DimensionError(
                f"subspace of ambient dim {U.ambient_dim} used with an algebra of dim {A.dim}"
            )


def product_space(A: AlgebraTable, U: Subspace, V: Subspace) -> Subspace:
    """Span of ``[u, v]`` over basis pairs of ``U x V``."""
    _check_ambient(A, U, V)
    products = [bracket(A, u, v) for u in U.vectors for v in V.vectors]
    return span(products, A.dim)


def square(A: AlgebraTable) -> Subspace:
    full = Subspace.full(A.dim)
    return product_space(A, full, full)


def _series(A: AlgebraTable, kind: SeriesKind) -> SeriesReport:
    full = Subspace.full(A.dim)
    terms = [full]
    current = full
    while not current.is_zero:
        right = full if kind is SeriesKind.LOWER_CENTRAL else current
        following = product_space(A, current, right)
        terms.append(following)
        if following == current:
            break
        current = following
    logger.debug("%s series dims: %s", kind, [t.dim for t in terms])
    return SeriesReport(kind, tuple(terms))


def lower_central_series(A: AlgebraTable) -> SeriesReport:
    """``L^1 = L``, ``L^(k+1) = [L^k, L]``."""
    return _series(A, SeriesKind.LOWER_CENTRAL)


def derived_series(A: AlgebraTable) -> SeriesReport:
    """``L^[1] = L``, ``L^[s+1] = [L^[s], L^[s]]``."""
    return _series(A, SeriesKind.DERIVED)


def is_nilpotent(A: AlgebraTable) -> bool:
    return lower_central_series(A).stabilized_at_zero


def is_solvable(A: AlgebraTable) -> bool:
    return derived_series(A).stabilized_at_zero


def is_null_filiform(A: AlgebraTable) -> bool:
    """Whether the lower central dims are exactly ``n, n-1, ..., 1, 0``."""
    return lower_central_series(A).dims == list(range(A.dim, -1, -1))


def right_annihilator(A: AlgebraTable) -> Subspace:
    """``{x : [y, x] = 0 for all y}``, the joint kernel of all left multiplications."""
    n = A.dim
    rows = [[A.constant(j, i, k) for i in range(n)] for j in range(n) for k in range(n)]
    return kernel(rows, n)


def is_ideal(A: AlgebraTable, U: Subspace) -> bool:
    """Two-sided ideal test: ``[U, A] ⊆ U`` and ``[A, U] ⊆ U``."""
    full = Subspace.full(A.dim)
    return U.includes(product_space(A, U, full)) and U.includes(product_space(A, full, U))


def ideal_generated_by(A: AlgebraTable, S: Subspace) -> Subspace:
    """Least two-sided ideal containing ``S``."""
    _check_ambient(A, S)
    full = Subspace.full(A.dim)
    current = S
    while True:
        grown = current + product_space(A, current, full) + product_space(A, full, current)
        if grown == current:
            return current
        current = grown


def nilpotency_check_on_subspace(A: AlgebraTable, U: Subspace) -> bool:
    """Whether the subalgebra ``U`` is nilpotent.

    Raises:
        ClosureError: If ``U`` is not closed under the bracket.
    """
    _check_ambient(A, U)
    return is_nilpotent(subalgebra_table(A, U))


def _trace_form_radical(A: AlgebraTable, N: Subspace) -> Subspace:
    # Elements acting nilpotently on N are isotropic for every other element.
    ops = [right_mult_matrix(A, A.basis_vector(i), restrict_to=N) for i in range(A.dim)]
    gram = [[(a * b).trace() for b in ops] for a in ops]
    return kernel(gram, A.dim)


def _candidates(
    A: AlgebraTable, N: Subspace, rng: random.Random, trials: int, bound: int
) -> Iterator[Subspace]:
    for v in N.complement_vectors():
        yield span([v], A.dim)
    radical = _trace_form_radical(A, N)
    if not N.includes(radical):
        yield radical
        for v in radical.vectors:
            yield span([v], A.dim)
    for _ in range(trials):
        v = [Rational(rng.randint(-bound, bound)) for _ in range(A.dim)]
        yield span([v], A.dim)


def nilradical_report(
    A: AlgebraTable,
    *,
    seed: int | None = None,
    trials: int | None = None,
    entry_bound: int | None = None,
) -> NilradicalReport:
    """Maximal nilpotent ideal of a solvable Leibniz algebra.

    Starts from ``[A, A]`` and greedily adds candidate directions whose
    generated ideal stays nilpotent, pass after pass until nothing grows.
    Candidates are the complement unit vectors, the radical of the trace
    form of right multiplications on the current ideal, and ``trials``
    seeded random vectors.

    Args:
        A: A solvable Leibniz algebra.
        seed: Seed for random candidates (settings default when None).
        trials: Random candidates per pass (settings default when None).
        entry_bound: Random entries are drawn from ``-bound..bound``.

    Returns:
        The ideal and whether its maximality is certified.

    Raises:
        LeibnizViolationError: If ``A`` violates the Leibniz identity.
        DomainError: If ``A`` is not solvable.
        NilradicalInconsistencyError: If a complement vector acts nilpotently
            on the final ideal.
    """
    settings = get_settings()
    seed = settings.nilradical_seed if seed is None else seed
    trials = settings.nilradical_trials if trials is None else trials
    bound = settings.sample_entry_bound if entry_bound is None else entry_bound

    require_leibniz(A)
    if not is_solvable(A):
        raise DomainError("nilradical requested for a non-solvable algebra")
    if is_nilpotent(A):
        return NilradicalReport(Subspace.full(A.dim), certified=True)

    rng = random.Random(seed)
    N = square(A)
    logger.debug("Nilradical search starts from [A, A] of dim %d", N.dim)
    # N always contains [A, A], so every subspace containing N is an ideal and
    # the whole algebra is the only extension of a codimension-1 N.
    while A.dim - N.dim > 1:
        grew = False
        tested: set[Subspace] = set()
        for S in _candidates(A, N, rng, trials, bound):
            if N.includes(S):
                continue
            U = N + S
            if U.is_full or U in tested:
                continue
            tested.add(U)
            if nilpotency_check_on_subspace(A, U):
                logger.debug("Nilradical grows from dim %d to %d", N.dim, U.dim)
                N = U
                grew = True
                tested.clear()
        if not grew:
            break

    for w in N.complement_vectors():
        if mat_nilpotent(right_mult_matrix(A, w, restrict_to=N)):
            raise NilradicalInconsistencyError(
                "a complement vector acts nilpotently on the computed nilradical"
            )

    certified = A.dim - N.dim <= 1
    if not certified:
        logger.warning(
            "Nilradical has codimension %d; maximality is heuristic", A.dim - N.dim
        )
    return NilradicalReport(N, certified)


def nilradical(
    A: AlgebraTable,
    *,
    seed: int | None = None,
    trials: int | None = None,
) -> Subspace:
    """The nilradical subspace; see :func:`nilradical_report`."""
    return nilradical_report(A, seed=seed, trials=trials).subspace
