"""Constructors for the classified families and their parameter normal forms.

Every solvable family is assembled from e-blocks (null-filiform chains on
which ``x`` acts by ``[x, e_1] = delta e_1``, ``[e_i, x] = -i delta e_i``) and
f-blocks (chains on which ``x`` acts nilpotently through the beta
parameters, with ``[x, x]`` landing on the top vectors). The basis is ordered
e-blocks, f-blocks, then ``x``.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

from sympy import Rational, factorint

from leibniz_nf.core.algebra import AlgebraTable
from leibniz_nf.core.exactlin import ONE, Matrix, matrix_from_rows, unit_vector
from leibniz_nf.errors import ParameterError
from leibniz_nf.models import BetaParams, ClassLabel, Family, GeneralParams

logger = logging.getLogger(__name__)


def make_zero(n: int) -> AlgebraTable:
    """Abelian algebra of dimension ``n``."""
    if n < 0:
        raise ParameterError(f"dimension must be non-negative, got {n}")
    return AlgebraTable.zero(n)


def make_nf(n: int) -> AlgebraTable:
    """Null-filiform algebra ``NF_n``: ``[e_i, e_1] = e_{i+1}``.

    ``n = 0`` gives the empty algebra.
    """
    if n < 0:
        raise ParameterError(f"dimension must be non-negative, got {n}")
    constants = {(i, 0, i + 1): ONE for i in range(n - 1)}
    return AlgebraTable.from_constants(n, constants, [f"e{i + 1}" for i in range(n)])


def _assemble(
    e_blocks: Sequence[tuple[int, Rational]],
    f_blocks: Sequence[BetaParams],
    names: Sequence[str],
) -> AlgebraTable:
    dim = sum(n for n, _ in e_blocks) + sum(b.s for b in f_blocks) + 1
    x = dim - 1
    constants: dict[tuple[int, int, int], Rational] = {}
    offset = 0
    for n, delta in e_blocks:
        for i in range(n - 1):
            constants[(offset + i, offset, offset + i + 1)] = ONE
        constants[(x, offset, offset)] = delta
        for i in range(n):
            constants[(offset + i, x, offset + i)] = -(i + 1) * delta
        offset += n
    for block in f_blocks:
        s = block.s
        for i in range(s - 1):
            constants[(offset + i, offset, offset + i + 1)] = ONE
        for i in range(1, s + 1):
            for j in range(i + 1, s + 1):
                value = block.beta_at(j - i + 1)
                if value != 0:
                    constants[(offset + i - 1, x, offset + j - 1)] = value
        if block.gamma != 0:
            constants[(x, x, offset + s - 1)] = block.gamma
        offset += s
    return AlgebraTable.from_constants(dim, constants, names)


def _chain_names(prefix: str, n: int) -> list[str]:
    return [f"{prefix}{i + 1}" for i in range(n)]


def make_solvable_nf(n: int) -> AlgebraTable:
    """Solvable extension of ``NF_n`` by one vector ``x``, basis ``(e_1..e_n, x)``."""
    if n < 1:
        raise ParameterError(f"n must be at least 1, got {n}")
    return _assemble([(n, ONE)], [], [*_chain_names("e", n), "x"])


def make_r_alpha(k: int, s: int, alpha: Rational) -> AlgebraTable:
    """Two e-blocks of dims ``k >= s`` with ``[x, f_1] = alpha f_1``.

    Raises:
        ParameterError: If ``alpha == 0`` (that algebra belongs to the beta
            family) or the dimensions are out of range.
    """
    alpha = Rational(alpha)
    if alpha == 0:
        raise ParameterError("alpha must be nonzero")
    if not k >= s >= 1:
        raise ParameterError(f"require k >= s >= 1, got k={k}, s={s}")
    names = [*_chain_names("e", k), *_chain_names("f", s), "x"]
    return _assemble([(k, ONE), (s, alpha)], [], names)


def make_r_beta(k: int, params: BetaParams) -> AlgebraTable:
    """One e-block of dim ``k`` and one f-block with the given beta parameters.

    All-zero parameters give the split algebra.
    """
    if k < 1:
        raise ParameterError(f"k must be at least 1, got {k}")
    names = [*_chain_names("e", k), *_chain_names("f", params.s), "x"]
    return _assemble([(k, ONE)], [params], names)


def make_r_general(params: GeneralParams) -> AlgebraTable:
    """General family with ``j'`` e-blocks and ``k'`` f-blocks.

    Raises:
        ParameterError: If ``delta^1 != 1`` or some ``delta`` is zero.
    """
    if params.deltas[0] != 1:
        raise ParameterError(f"delta^1 must be 1, got {params.deltas[0]}")
    if any(d == 0 for d in params.deltas):
        raise ParameterError("every delta must be nonzero")
    names: list[str] = []
    for j, n in enumerate(params.block_dims_e):
        names.extend(f"e{j + 1}_{i + 1}" for i in range(n))
    for m, s in enumerate(params.block_dims_f):
        names.extend(f"f{m + 1}_{i + 1}" for i in range(s))
    names.append("x")
    e_blocks = list(zip(params.block_dims_e, params.deltas, strict=True))
    return _assemble(e_blocks, params.f_blocks, names)


# ---------------------------------------------------------------------------
# Parameter normal forms
# ---------------------------------------------------------------------------


def _power_split(value: Rational, exponent: int) -> tuple[Rational, Rational]:
    """Write ``|value| = residual * root**exponent`` with an integer power-free residual."""
    root = ONE
    residual = ONE
    factors = dict(factorint(abs(value.p)))
    for prime, power in factorint(value.q).items():
        factors[prime] = factors.get(prime, 0) - power
    for prime, power in factors.items():
        root *= Rational(prime) ** (power // exponent)
        residual *= Rational(prime) ** (power % exponent)
    return residual, root


def _scaled(params: BetaParams, scale: Rational) -> BetaParams:
    beta = tuple(params.beta_at(m) / scale ** (m - 1) for m in range(2, params.s + 1))
    return BetaParams(s=params.s, beta=beta, gamma=params.gamma / scale**params.s)


def _x_scaled(params: BetaParams, c: Rational) -> BetaParams:
    """Parameters after replacing ``x`` by ``x / c``."""
    return BetaParams(s=params.s, beta=tuple(b / c for b in params.beta), gamma=params.gamma / c**2)


def normalize_beta_family(params: BetaParams) -> tuple[BetaParams, Rational]:
    """Rescale the f-block so the leading nonzero coefficient is canonical.

    ``f_i -> A^i f_i`` sends ``beta_m`` to ``beta_m / A^(m-1)`` and ``gamma``
    to ``gamma / A^s``. The leading nonzero coefficient becomes 1 when it has a
    rational root of the required order; otherwise it becomes the power-free
    integer left over after extracting the largest rational power. For even
    exponents the sign of ``A`` makes the next odd-exponent coefficient
    positive.

    Returns:
        The normalized parameters and the scale ``A``.
    """
    exponents = [*range(1, params.s), params.s]
    entries = list(zip(params.coefficients, exponents, strict=True))
    leading = next((i for i, (v, _) in enumerate(entries) if v != 0), None)
    if leading is None:
        return params, ONE
    value, exponent = entries[leading]
    _, root = _power_split(value, exponent)
    if exponent % 2 == 1:
        scale = root if value > 0 else -root
    else:
        following = next(
            (v for v, e in entries[leading + 1 :] if v != 0 and e % 2 == 1), None
        )
        scale = -root if following is not None and following < 0 else root
    normalized = _scaled(params, scale)
    logger.debug("Normalized %s with scale %s to %s", params, scale, normalized)
    return normalized, scale


def beta_scaling_witness(k: int, params: BetaParams, scale: Rational) -> Matrix:
    """Basis change ``f_i -> scale^i f_i`` taking ``make_r_beta(k, params)`` to its rescaling."""
    dim = k + params.s + 1
    rows = [list(unit_vector(dim, i)) for i in range(dim)]
    for i in range(params.s):
        rows[k + i][k + i] = Rational(scale) ** (i + 1)
    return matrix_from_rows(rows, dim)


def canonical_r_alpha_param(k: int, s: int, alpha: Rational) -> Rational:
    """Representative of ``alpha`` up to the block swap available when ``k == s``.

    For equal block sizes ``R(alpha)`` and ``R(1/alpha)`` are isomorphic; the
    representative with ``|alpha| >= 1`` is returned.
    """
    alpha = Rational(alpha)
    if alpha == 0:
        raise ParameterError("alpha must be nonzero")
    if k != s or abs(alpha) >= 1:
        return alpha
    return 1 / alpha


def r_alpha_swap_witness(k: int, alpha: Rational) -> Matrix:
    """Basis change taking ``make_r_alpha(k, k, alpha)`` to ``make_r_alpha(k, k, 1/alpha)``.

    Swaps the two blocks and replaces ``x`` by ``x / alpha``.
    """
    alpha = Rational(alpha)
    if alpha == 0:
        raise ParameterError("alpha must be nonzero")
    dim = 2 * k + 1
    rows = [unit_vector(dim, k + i) for i in range(k)]
    rows += [unit_vector(dim, i) for i in range(k)]
    rows.append(tuple(c / alpha for c in unit_vector(dim, dim - 1)))
    return matrix_from_rows(rows, dim)


@dataclass(frozen=True)
class GeneralNormalization:
    """Canonical parameters of a general-form table and how to reach them.

    Attributes:
        params: Canonical parameters.
        e_order: Source e-block index placed at each canonical position.
        f_order: Source f-block index placed at each canonical position.
        x_scale: ``x`` is replaced by ``x_scale * x``.
        f_scales: Per source f-block scale ``A`` with ``f_i -> A^i f_i``.
    """

    params: GeneralParams
    e_order: tuple[int, ...]
    f_order: tuple[int, ...]
    x_scale: Rational
    f_scales: tuple[Rational, ...]

    def basis_change(self, source: GeneralParams) -> Matrix:
        """Rows of the canonical basis in the coordinates of the source table."""
        dim = source.dim
        e_offsets = _offsets(source.block_dims_e, 0)
        f_offsets = _offsets(source.block_dims_f, sum(source.block_dims_e))
        rows = []
        for j in self.e_order:
            for i in range(source.block_dims_e[j]):
                rows.append(unit_vector(dim, e_offsets[j] + i))
        for m in self.f_order:
            scale = self.f_scales[m]
            for i in range(source.block_dims_f[m]):
                rows.append(tuple(c * scale ** (i + 1) for c in unit_vector(dim, f_offsets[m] + i)))
        rows.append(tuple(c * self.x_scale for c in unit_vector(dim, dim - 1)))
        return matrix_from_rows(rows, dim)


def _offsets(dims: Sequence[int], start: int) -> list[int]:
    out = []
    for n in dims:
        out.append(start)
        start += n
    return out


def canonicalize_general_params(raw: GeneralParams) -> GeneralNormalization:
    """Canonical form of a general-form table with arbitrary nonzero deltas.

    A reference e-block of maximal dimension is given ``delta = 1`` by
    rescaling ``x``; every f-block is then normalized on its own, and the
    remaining blocks are sorted. Among the admissible reference blocks the
    one with the smallest sort key wins, which keeps ``|alpha| >= 1`` for two
    equal e-blocks.

    Raises:
        ParameterError: If some delta is zero.
    """
    if any(d == 0 for d in raw.deltas):
        raise ParameterError("every delta must be nonzero")
    top = max(raw.block_dims_e)
    best: tuple[tuple, GeneralNormalization] | None = None
    for ref, n in enumerate(raw.block_dims_e):
        if n != top:
            continue
        c = raw.deltas[ref]
        others = sorted(
            (j for j in range(len(raw.block_dims_e)) if j != ref),
            key=lambda j: _e_key(raw.block_dims_e[j], raw.deltas[j] / c),
        )
        normalized = [normalize_beta_family(_x_scaled(b, c)) for b in raw.f_blocks]
        f_order = sorted(
            range(len(raw.f_blocks)), key=lambda m: _f_key(normalized[m][0])
        )
        params = GeneralParams(
            block_dims_e=(n, *(raw.block_dims_e[j] for j in others)),
            deltas=(ONE, *(raw.deltas[j] / c for j in others)),
            f_blocks=tuple(normalized[m][0] for m in f_order),
        )
        key = (
            tuple(
                _e_key(n2, d)
                for n2, d in zip(params.block_dims_e[1:], params.deltas[1:], strict=True)
            ),
            tuple(_f_key(b) for b in params.f_blocks),
        )
        candidate = GeneralNormalization(
            params=params,
            e_order=(ref, *others),
            f_order=tuple(f_order),
            x_scale=1 / c,
            f_scales=tuple(scale for _, scale in normalized),
        )
        if best is None or key < best[0]:
            best = (key, candidate)
    assert best is not None
    return best[1]


def _e_key(n: int, delta: Rational) -> tuple:
    return (-n, -abs(delta), -delta)


def _f_key(block: BetaParams) -> tuple:
    return (-block.s, block.coefficients)


def label_for_params(params: GeneralParams) -> ClassLabel:
    """Label of canonical general parameters, using the named subfamilies when they apply."""
    shape = params.shape
    if shape == (1, 0):
        return ClassLabel.solvable_nf(params.block_dims_e[0])
    if shape == (2, 0):
        return ClassLabel(family=Family.R_ALPHA, params=params)
    if shape == (1, 1):
        return ClassLabel(family=Family.R_BETA, params=params)
    return ClassLabel.r_general(params)


def canonical_label(label: ClassLabel) -> ClassLabel:
    """Canonical representative of a possibly non-normalized catalog label."""
    if label.family in (Family.NULL_FILIFORM, Family.SOLVABLE_NF, Family.UNKNOWN):
        return label.model_copy(update={"witness": None})
    assert label.params is not None
    return label_for_params(canonicalize_general_params(label.params).params)


def canonical_table(label: ClassLabel) -> AlgebraTable:
    """Table of a catalog label as its constructor builds it.

    Raises:
        ParameterError: For ``Unknown`` labels.
    """
    if label.family is Family.NULL_FILIFORM:
        assert label.n is not None
        return make_nf(label.n)
    if label.family is Family.SOLVABLE_NF:
        assert label.n is not None
        return make_solvable_nf(label.n)
    if label.family is Family.R_ALPHA:
        return make_r_alpha(label.k, label.s, label.alpha)
    if label.family is Family.R_BETA:
        return make_r_beta(label.k, label.beta_params)
    if label.family is Family.R_GENERAL:
        assert label.params is not None
        return make_r_general(label.params)
    raise ParameterError("Unknown has no catalog table")

