"""Canonicalizing basis changes for the null-filiform based families.

Every routine builds an explicit basis of the input (rows in the input's
coordinates), reads structure constants off it, corrects it, and finally
compares ``change_basis(A, witness)`` with the constructor output entrywise.
A label is only returned after that comparison succeeds.
"""

import logging
import random
from collections.abc import Sequence
from dataclasses import dataclass, field

from sympy import Rational

from leibniz_nf.analysis.series import is_null_filiform, nilradical
from leibniz_nf.catalog import (
    canonicalize_general_params,
    label_for_params,
    make_nf,
    make_r_general,
)
from leibniz_nf.config import get_settings
from leibniz_nf.core.algebra import (
    AlgebraTable,
    bracket,
    change_basis,
    right_mult_matrix,
    subalgebra_table,
)
from leibniz_nf.core.exactlin import (
    ZERO,
    Matrix,
    Subspace,
    Vector,
    identity,
    is_zero_vector,
    linear_combination,
    mat_inverse,
    matrix_from_rows,
    matrix_rows,
    nullspace,
    rank,
    span,
    vector_times_matrix,
)
from leibniz_nf.errors import DomainError, NotThisFamilyError
from leibniz_nf.models import BetaParams, ClassLabel, GeneralParams
from leibniz_nf.recognition.decomposition import chain, decompose_nilradical, generator

logger = logging.getLogger(__name__)


def _add(u: Sequence[Rational], v: Sequence[Rational], scale: Rational = Rational(1)) -> Vector:
    return tuple(a + scale * b for a, b in zip(u, v, strict=True))


def solvable_recurrences(
    beta: dict[int, Rational], gamma: Rational, n: int
) -> tuple[dict[int, Rational], Rational]:
    """Coefficients removing ``beta_3..beta_n`` and ``gamma`` from a one-block table.

    ``A_m = (beta_m + sum_{i=3}^{m-2} A_i beta_{m-i+1}) / (m-1)`` for ``m >= 3``
    and ``B_n = (gamma + sum_{i=3}^{n-1} A_i beta_{n-i+2}) / n``.
    """
    coeffs: dict[int, Rational] = {}
    for m in range(3, n + 1):
        total = beta.get(m, ZERO)
        for i in range(3, m - 1):
            total += coeffs[i] * beta.get(m - i + 1, ZERO)
        coeffs[m] = total / (m - 1)
    total = gamma
    for i in range(3, n):
        total += coeffs[i] * beta.get(n - i + 2, ZERO)
    return coeffs, total / n


@dataclass
class _Frame:
    """A working basis: block chains followed by ``x``, in input coordinates."""

    A: AlgebraTable
    blocks: list[list[Vector]]
    x: Vector
    offsets: list[int] = field(init=False)
    matrix: Matrix = field(init=False)
    _inverse: Matrix = field(init=False)

    def __post_init__(self) -> None:
        self.offsets = []
        start = 0
        for block in self.blocks:
            self.offsets.append(start)
            start += len(block)
        rows = [v for block in self.blocks for v in block] + [self.x]
        self.matrix = matrix_from_rows(rows, self.A.dim)
        self._inverse = mat_inverse(self.matrix)

    def coords(self, v: Vector) -> Vector:
        return vector_times_matrix(v, self._inverse)

    def block_coords(self, v: Vector, m: int) -> Vector:
        start = self.offsets[m]
        return self.coords(v)[start : start + len(self.blocks[m])]

    def product(self, u: Vector, w: Vector) -> Vector:
        return bracket(self.A, u, w)


def _rebuild(
    A: AlgebraTable, generators: Sequence[Vector], dims: Sequence[int], x: Vector
) -> _Frame:
    return _Frame(A, [chain(A, g, n) for g, n in zip(generators, dims, strict=True)], x)


def _chain_length(A: AlgebraTable, v: Vector, limit: int) -> int:
    """Count of nonzero leading terms of ``v, [v, v], [[v, v], v], ...`` up to ``limit``."""
    length = 0
    term = v
    while length < limit and not is_zero_vector(term):
        length += 1
        term = bracket(A, term, v)
    return length


def _fitting_parts(A: AlgebraTable, N: Subspace, x: Vector) -> tuple[Subspace, Subspace]:
    """``N = E + F`` with ``R_x`` invertible on ``E`` and nilpotent on ``F``.

    Both parts are ideals. ``E`` is the sum of the e-blocks and ``F`` the sum
    of the f-blocks of any catalog basis, whatever basis ``N`` came in.
    """
    power = right_mult_matrix(A, x, restrict_to=N) ** N.dim
    image = [linear_combination(r, N.vectors, A.dim) for r in matrix_rows(power)]
    stable = nullspace(matrix_rows(power.T), N.dim)
    nil = [linear_combination(v, N.vectors, A.dim) for v in stable]
    return span(image, A.dim), span(nil, A.dim)


def _eigenprojectors(A: AlgebraTable, E: Subspace, x: Vector) -> dict[Rational, Matrix]:
    """Spectral projectors of ``L_x`` on ``E`` for its nonzero eigenvalues.

    ``L_x`` kills ``[N, N]`` and sends an e-generator to ``delta`` times itself
    plus a square term, so on ``E`` it is diagonalizable with one nonzero
    eigenvalue per e-block.

    Raises:
        NotThisFamilyError: If the eigenvalues are not all rational.
    """
    if E.dim == 0:
        return {}
    M = matrix_from_rows([E.coordinates(bracket(A, x, u)) for u in E.vectors], E.dim)
    spectrum = M.eigenvals(error_when_incomplete=False)
    if sum(spectrum.values()) != E.dim or not all(value.is_Rational for value in spectrum):
        raise NotThisFamilyError("left multiplication by the complement has irrational eigenvalues")
    values = sorted(Rational(value) for value in spectrum)
    eye = identity(E.dim)
    projectors: dict[Rational, Matrix] = {}
    for lam in values:
        if lam == 0:
            continue
        P = eye
        for mu in values:
            if mu != lam:
                P = P * (M - mu * eye) / (lam - mu)
        projectors[lam] = P
    return projectors


def _dot(u: Sequence[Rational], v: Sequence[Rational]) -> Rational:
    return sum((a * b for a, b in zip(u, v, strict=True)), ZERO)


def _separate(A: AlgebraTable, vectors: Sequence[Vector]) -> list[Vector] | None:
    """Basis of ``span(vectors)`` whose members bracket to zero pairwise.

    On a sum of e-blocks sharing one eigenvalue the bracket is a diagonal
    form. Its radical gives the one-dimensional blocks; the eigenvectors of
    ``G_1^-1 G_2``, for two random functionals ``G_1``, ``G_2`` of the form on a
    complement of the radical, give generators of the longer blocks. Returns
    None when every seeded attempt produces repeated or irrational
    eigenvalues.
    """
    r = len(vectors)
    products = [[bracket(A, u, w) for w in vectors] for u in vectors]
    rows = [[products[i][j][k] for i in range(r)] for j in range(r) for k in range(A.dim)]
    radical = span(nullspace(rows, r), r)
    singles = [linear_combination(c, vectors, A.dim) for c in radical.vectors]
    pivots = set(radical.pivots)
    idx = [i for i in range(r) if i not in pivots]
    t = len(idx)
    if t == 0:
        return singles

    settings = get_settings()
    rng = random.Random(settings.nilradical_seed)
    bound = settings.sample_entry_bound

    def form(weights: list[Rational]) -> Matrix:
        entries = [[_dot(weights, products[i][j]) for j in idx] for i in idx]
        return matrix_from_rows(entries, t)

    for _ in range(settings.nilradical_trials):
        G1 = form([Rational(rng.randint(-bound, bound)) for _ in range(A.dim)])
        G2 = form([Rational(rng.randint(-bound, bound)) for _ in range(A.dim)])
        if rank(matrix_rows(G1), t) < t:
            continue
        eigen = (mat_inverse(G1) * G2).eigenvects()
        if len(eigen) != t or not all(value.is_Rational for value, _, _ in eigen):
            continue
        gens = []
        for _, _, basis in eigen:
            column = basis[0]
            coeffs = [ZERO] * r
            for a, i in enumerate(idx):
                coeffs[i] = Rational(column[a])
            gens.append(linear_combination(coeffs, vectors, A.dim))
        if all(
            is_zero_vector(bracket(A, g, h))
            for a, g in enumerate(gens)
            for b, h in enumerate(gens)
            if a != b
        ):
            return gens + singles
    return None


def _adapted_generators(
    A: AlgebraTable, N: Subspace, x: Vector
) -> tuple[list[tuple[Vector, int]], list[tuple[Vector, int]]]:
    """Generators whose chains are ideals of ``A``, with their chain lengths.

    e-generators are the eigenvectors of ``L_x`` on ``E`` for nonzero
    eigenvalues; an eigenspace shared by several blocks is split with
    :func:`_separate`. f-blocks are the null-filiform ideals of ``F``, which
    are invariant under ``x`` in any splitting.

    Raises:
        NotThisFamilyError: If an eigenspace or ``F`` does not split into
            blocks, or the chains do not fill ``N``.
    """
    E, F = _fitting_parts(A, N, x)
    e_gens: list[tuple[Vector, int]] = []
    for lam, P in _eigenprojectors(A, E, x).items():
        image = [linear_combination(row, E.vectors, A.dim) for row in matrix_rows(P)]
        vectors = list(span(image, A.dim).vectors)
        if len(vectors) > 1:
            separated = _separate(A, vectors)
            if separated is None:
                raise NotThisFamilyError(f"eigenspace for {lam} does not split into blocks")
            vectors = separated
        e_gens.extend((v, _chain_length(A, v, N.dim + 1)) for v in vectors)

    f_gens: list[tuple[Vector, int]] = []
    if F.dim:
        f_blocks = [F] if is_null_filiform(subalgebra_table(A, F)) else decompose_nilradical(A, F)
        if f_blocks is None:
            raise NotThisFamilyError("nilpotent part does not split into null-filiform ideals")
        f_gens = [(generator(A, B), B.dim) for B in f_blocks]

    if sum(n for _, n in e_gens + f_gens) != N.dim:
        raise NotThisFamilyError("generator chains do not fill the nilradical")
    return e_gens, f_gens


def _reduce_blocks(A: AlgebraTable, N: Subspace) -> tuple[_Frame, int]:
    """Bring ``A`` to the general form with raw deltas.

    Returns the final frame (e-blocks first) and the number of e-blocks.
    """
    x = N.complement_vectors()[0]
    e_gens, f_gens = _adapted_generators(A, N, x)
    generators = [g for g, _ in e_gens + f_gens]
    dims = [n for _, n in e_gens + f_gens]
    e_count = len(e_gens)
    frame = _rebuild(A, generators, dims, x)

    # Scale e-generators by [x, e_1] and clear [x, f_1] by shifting x.
    deltas: list[Rational] = []
    for m, block in enumerate(frame.blocks):
        a = frame.block_coords(frame.product(frame.x, block[0]), m)
        if m < e_count:
            if a[0] == 0:
                raise NotThisFamilyError("the complement does not scale an e-generator")
            deltas.append(a[0])
            generators[m] = linear_combination([c / a[0] for c in a], block, A.dim)
        else:
            for i in range(1, len(block)):
                x = _add(x, block[i - 1], -a[i])
    frame = _rebuild(A, generators, dims, x)
    logger.debug("Blocks: %d e-type with deltas %s, %d f-type", e_count, deltas, len(f_gens))

    # Remove beta and gamma coefficients from each e-block.
    x_next = frame.x
    for m, delta in enumerate(deltas):
        block = frame.blocks[m]
        n = len(block)
        right = frame.block_coords(frame.product(block[0], frame.x), m)
        square = frame.block_coords(frame.product(frame.x, frame.x), m)
        beta = {i: right[i - 1] / delta for i in range(3, n + 1)}
        coeffs, b_n = solvable_recurrences(beta, square[n - 1] / delta**2, n)
        generators[m] = block[0]
        for i, value in coeffs.items():
            generators[m] = _add(generators[m], block[i - 1], value)
        for i in range(2, n):
            x_next = _add(x_next, block[i - 1], delta * coeffs[i + 1])
        x_next = _add(x_next, block[n - 1], delta * b_n)
    return _rebuild(A, generators, dims, x_next), e_count


def _raw_params(frame: _Frame, e_count: int) -> GeneralParams:
    deltas = []
    for m in range(e_count):
        e_1 = frame.blocks[m][0]
        deltas.append(frame.block_coords(frame.product(frame.x, e_1), m)[0])
    f_params = []
    for m in range(e_count, len(frame.blocks)):
        block = frame.blocks[m]
        right = frame.block_coords(frame.product(block[0], frame.x), m)
        square = frame.block_coords(frame.product(frame.x, frame.x), m)
        f_params.append(BetaParams(s=len(block), beta=tuple(right[1:]), gamma=square[-1]))
    return GeneralParams(
        block_dims_e=tuple(len(b) for b in frame.blocks[:e_count]),
        deltas=tuple(deltas),
        f_blocks=tuple(f_params),
    )


def canonicalize_blocks(A: AlgebraTable, N: Subspace) -> ClassLabel:
    """Canonical label and witness for a codimension-1 nilradical ``N``.

    ``N`` must be a sum of null-filiform ideals of ``A``. The blocks are
    recovered from the action of a complement vector, so the input basis may
    mix them freely.

    Raises:
        NotThisFamilyError: If no block is acted on invertibly by the
            complement, ``N`` does not split into blocks, or the corrected
            basis does not reproduce the canonical table.
    """
    frame, e_count = _reduce_blocks(A, N)
    if e_count == 0:
        raise NotThisFamilyError("the complement acts nilpotently on every block")
    raw = _raw_params(frame, e_count)
    normalization = canonicalize_general_params(raw)
    witness = normalization.basis_change(raw) * frame.matrix
    params = normalization.params
    if change_basis(A, witness) != make_r_general(params):
        raise NotThisFamilyError(f"canonical basis does not reproduce the table for {params}")
    return label_for_params(params).with_witness(witness)


def canonicalize_solvable_nf(A: AlgebraTable, N: Subspace | None = None) -> ClassLabel:
    """Canonical form of a solvable algebra whose nilradical is ``NF_n`` of codimension 1.

    Raises:
        DomainError: If the nilradical is not null-filiform of codimension 1.
        NotThisFamilyError: If the complement acts nilpotently on ``N``.
    """
    if N is None:
        N = nilradical(A)
    if A.dim - N.dim != 1 or not is_null_filiform(subalgebra_table(A, N)):
        raise DomainError("nilradical is not null-filiform of codimension 1")
    return canonicalize_blocks(A, N)


def canonicalize_null_filiform(A: AlgebraTable) -> ClassLabel:
    """Canonical basis ``e_{i+1} = [e_i, e_1]`` of a null-filiform algebra.

    Raises:
        DomainError: If ``A`` is not null-filiform.
    """
    if not is_null_filiform(A):
        raise DomainError("algebra is not null-filiform")
    n = A.dim
    if n == 0:
        return ClassLabel.null_filiform(0).with_witness(matrix_from_rows([], 0))
    full = Subspace.full(n)
    witness = matrix_from_rows(chain(A, generator(A, full), n), n)
    if change_basis(A, witness) != make_nf(n):
        raise NotThisFamilyError("generator chain does not reproduce the null-filiform table")
    return ClassLabel.null_filiform(n).with_witness(witness)

