"""Unit tests for the family constructors and parameter normal forms."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError
from sympy import Rational

from leibniz_nf.analysis.series import is_ideal, nilradical, square
from leibniz_nf.catalog import (
    beta_scaling_witness,
    canonical_label,
    canonical_r_alpha_param,
    canonical_table,
    canonicalize_general_params,
    make_nf,
    make_r_alpha,
    make_r_beta,
    make_r_general,
    make_solvable_nf,
    make_zero,
    normalize_beta_family,
    r_alpha_swap_witness,
)
from leibniz_nf.core.algebra import change_basis, check_leibniz
from leibniz_nf.core.exactlin import span
from leibniz_nf.errors import ParameterError
from leibniz_nf.models import BetaParams, ClassLabel, Family, GeneralParams

ALPHAS = [Rational(1), Rational(-1), Rational(1, 2), Rational(-1, 2), Rational(3)]
COEFFS = [-2, -1, 0, 1, 2, 3]

small_rationals = st.builds(
    Rational, st.integers(-6, 6), st.sampled_from([1, 1, 1, 2, 3, 4])
)


@st.composite
def beta_params(draw: st.DrawFn) -> BetaParams:
    s = draw(st.integers(1, 4))
    beta = tuple(draw(small_rationals) for _ in range(s - 1))
    return BetaParams(s=s, beta=beta, gamma=draw(small_rationals))


class TestConstructors:
    """Tests for the family constructors."""

    def test_make_nf(self) -> None:
        """NF_3 has exactly c[1][1][2] = c[2][1][3] = 1."""
        A = make_nf(3)
        assert A.constants == {(0, 0, 1): 1, (1, 0, 2): 1}
        assert make_nf(1) == make_zero(1)
        assert make_nf(0).dim == 0

    def test_negative_dimension(self) -> None:
        """Negative sizes are parameter errors."""
        with pytest.raises(ParameterError):
            make_nf(-1)
        with pytest.raises(ParameterError):
            make_solvable_nf(0)

    @pytest.mark.parametrize("n", range(2, 9))
    def test_solvable_extension(self, n: int) -> None:
        """The extension has dim n + 1 and its nilradical restricts to NF_n."""
        A = make_solvable_nf(n)
        assert A.dim == n + 1
        assert check_leibniz(A) == []
        assert A.constant(n, 0, 0) == 1
        assert A.constant(n - 1, n, n - 1) == -n

    def test_r_alpha_parameter_errors(self) -> None:
        """alpha = 0 and k < s are rejected."""
        with pytest.raises(ParameterError):
            make_r_alpha(2, 2, Rational(0))
        with pytest.raises(ParameterError):
            make_r_alpha(1, 2, Rational(1))

    def test_r_general_parameter_errors(self) -> None:
        """delta^1 must be 1 and no delta may vanish."""
        with pytest.raises(ParameterError):
            make_r_general(GeneralParams(block_dims_e=(2,), deltas=(2,)))
        with pytest.raises(ParameterError):
            make_r_general(GeneralParams(block_dims_e=(2, 1), deltas=(1, 0)))

    @pytest.mark.parametrize(
        ("k", "s", "alpha"),
        [(k, s, a) for k in range(1, 5) for s in range(1, k + 1) for a in ALPHAS],
    )
    def test_r_alpha_grid(self, k: int, s: int, alpha: Rational) -> None:
        """Leibniz, dim R^2 = k + s, and both blocks are ideals."""
        A = make_r_alpha(k, s, alpha)
        assert check_leibniz(A) == []
        assert square(A).dim == k + s
        assert is_ideal(A, span([A.basis_vector(i) for i in range(k)], A.dim))
        assert is_ideal(A, span([A.basis_vector(k + i) for i in range(s)], A.dim))

    @pytest.mark.parametrize(
        ("k", "s", "coeffs"),
        [
            (k, s, coeffs)
            for k in (1, 2, 3)
            for s in (1, 2, 3)
            for coeffs in itertools.islice(itertools.product(COEFFS, repeat=s), 0, None, 7)
        ],
    )
    def test_r_beta_grid(self, k: int, s: int, coeffs: tuple[int, ...]) -> None:
        """Leibniz, dim R^2 = k + s - 1 for s >= 2, and both blocks are ideals."""
        params = BetaParams(s=s, beta=coeffs[:-1], gamma=coeffs[-1])
        A = make_r_beta(k, params)
        assert check_leibniz(A) == []
        if s > 1:
            assert square(A).dim == k + s - 1
        else:
            assert square(A).dim == k + (0 if params.is_split else 1)
        assert is_ideal(A, span([A.basis_vector(i) for i in range(k)], A.dim))
        assert is_ideal(A, span([A.basis_vector(k + i) for i in range(s)], A.dim))

    def test_general_degenerations(self) -> None:
        """The general constructor reproduces the named families."""
        one = GeneralParams(block_dims_e=(3,), deltas=(1,))
        assert make_r_general(one) == make_solvable_nf(3)
        two = GeneralParams(block_dims_e=(3, 2), deltas=(1, Rational(-1, 2)))
        assert make_r_general(two) == make_r_alpha(3, 2, Rational(-1, 2))
        beta = BetaParams(s=2, beta=(1,), gamma=2)
        mixed = GeneralParams(block_dims_e=(2,), deltas=(1,), f_blocks=(beta,))
        assert make_r_general(mixed) == make_r_beta(2, beta)

    @pytest.mark.parametrize(
        ("e_dims", "f_dims"),
        [
            (e, f)
            for j in (1, 2, 3)
            for k in range(0, 4 - j)
            for e in itertools.product((1, 2, 3), repeat=j)
            for f in itertools.product((1, 2, 3), repeat=k)
        ][::5],
    )
    def test_general_grid(self, e_dims: tuple[int, ...], f_dims: tuple[int, ...]) -> None:
        """Small general tables are Leibniz with the blocks as nilradical."""
        deltas = (1, *(Rational(j + 2) for j in range(len(e_dims) - 1)))
        f_blocks = tuple(
            BetaParams(s=s, beta=tuple(Rational(1) for _ in range(s - 1)), gamma=1)
            for s in f_dims
        )
        params = GeneralParams(block_dims_e=e_dims, deltas=deltas, f_blocks=f_blocks)
        A = make_r_general(params)
        assert check_leibniz(A) == []
        assert nilradical(A).dim == A.dim - 1

    def test_names(self) -> None:
        """Constructors label the basis by block."""
        assert make_r_alpha(2, 1, Rational(2)).names() == ("e1", "e2", "f1", "x")
        params = GeneralParams(
            block_dims_e=(1, 1), deltas=(1, 2), f_blocks=(BetaParams(s=1, gamma=1),)
        )
        assert make_r_general(params).names() == ("e1_1", "e2_1", "f1_1", "x")


class TestModels:
    """Tests for parameter validation."""

    def test_beta_length(self) -> None:
        """BetaParams needs s - 1 beta values."""
        with pytest.raises(ValidationError):
            BetaParams(s=3, beta=(1,))

    def test_delta_count(self) -> None:
        """GeneralParams needs one delta per e-block."""
        with pytest.raises(ValidationError):
            GeneralParams(block_dims_e=(2, 1), deltas=(1,))

    def test_rational_coercion(self) -> None:
        """Text and ints are coerced to rationals."""
        params = BetaParams(s=2, beta=("1/2",), gamma=3)
        assert params.beta == (Rational(1, 2),)
        assert params.gamma == Rational(3)

    def test_label_strings(self) -> None:
        """Labels render in the report format."""
        assert str(ClassLabel.null_filiform(6)) == "NullFiliform(n=6)"
        assert str(ClassLabel.r_alpha(3, 2, Rational(1, 2))) == "RAlpha(k=3, s=2, alpha=1/2)"
        beta = BetaParams(s=3, beta=(1, Rational(3, 2)), gamma=1)
        assert str(ClassLabel.r_beta(2, beta)) == "RBeta(k=2, s=3, beta=(1, 3/2), gamma=1)"
        assert str(ClassLabel.unknown()) == "Unknown"


class TestNormalization:
    """Tests for the beta family normal form."""

    def test_leading_beta_scaled_to_one(self) -> None:
        """(2, 6, 8) with s = 3 becomes (1, 3/2, 1) with scale 2."""
        params = BetaParams(s=3, beta=(2, 6), gamma=8)
        normalized, scale = normalize_beta_family(params)
        assert normalized == BetaParams(s=3, beta=(1, Rational(3, 2)), gamma=1)
        assert scale == 2

    def test_gamma_square_root(self) -> None:
        """gamma = 9 with s = 2 has a rational square root."""
        normalized, scale = normalize_beta_family(BetaParams(s=2, beta=(0,), gamma=9))
        assert normalized.gamma == 1
        assert scale == 3

    def test_even_exponent_keeps_sign(self) -> None:
        """-4 = -(2^2): the sign of an even power cannot change."""
        normalized, _ = normalize_beta_family(BetaParams(s=2, beta=(0,), gamma=-4))
        assert normalized.gamma == -1

    def test_power_free_residual(self) -> None:
        """gamma = 8 with s = 2 keeps the residual 2."""
        normalized, scale = normalize_beta_family(BetaParams(s=2, beta=(0,), gamma=8))
        assert normalized.gamma == 2
        assert scale == 2

    def test_split_unchanged(self) -> None:
        """All-zero parameters are already normal."""
        params = BetaParams(s=3, beta=(0, 0), gamma=0)
        assert normalize_beta_family(params) == (params, 1)

    def test_witness_reproduces_normal_form(self) -> None:
        """The scaling witness maps the raw table onto the normalized one."""
        params = BetaParams(s=3, beta=(2, 6), gamma=8)
        normalized, scale = normalize_beta_family(params)
        W = beta_scaling_witness(2, params, scale)
        assert change_basis(make_r_beta(2, params), W) == make_r_beta(2, normalized)

    @settings(max_examples=200, deadline=None)
    @given(beta_params())
    def test_idempotent(self, params: BetaParams) -> None:
        """Normalizing twice changes nothing."""
        normalized, _ = normalize_beta_family(params)
        again, scale = normalize_beta_family(normalized)
        assert again == normalized
        assert abs(scale) == 1

    @settings(max_examples=50, deadline=None)
    @given(beta_params())
    def test_witness_property(self, params: BetaParams) -> None:
        """The witness reproduces the normalized table entrywise."""
        normalized, scale = normalize_beta_family(params)
        W = beta_scaling_witness(1, params, scale)
        assert change_basis(make_r_beta(1, params), W) == make_r_beta(1, normalized)


class TestAlphaAndGeneralForms:
    """Tests for the alpha representative and general canonical parameters."""

    def test_canonical_alpha(self) -> None:
        """Only equal block sizes allow alpha -> 1/alpha."""
        assert canonical_r_alpha_param(2, 2, Rational(1, 2)) == 2
        assert canonical_r_alpha_param(2, 2, Rational(-1, 3)) == -3
        assert canonical_r_alpha_param(3, 2, Rational(1, 2)) == Rational(1, 2)
        assert canonical_r_alpha_param(2, 2, Rational(3)) == 3

    def test_swap_witness(self) -> None:
        """Swapping equal blocks and rescaling x inverts alpha."""
        alpha = Rational(2, 3)
        W = r_alpha_swap_witness(2, alpha)
        assert change_basis(make_r_alpha(2, 2, alpha), W) == make_r_alpha(2, 2, 1 / alpha)

    def test_canonical_label(self) -> None:
        """Labels normalize through the general form."""
        label = canonical_label(ClassLabel.r_alpha(2, 2, Rational(1, 2)))
        assert label.family is Family.R_ALPHA
        assert label.alpha == 2
        beta = canonical_label(ClassLabel.r_beta(1, BetaParams(s=2, beta=(3,), gamma=0)))
        assert beta.beta_params.beta == (1,)

    def test_general_with_negative_delta(self) -> None:
        """Replacing x by -x divides every beta by -1 and leaves gamma alone."""
        raw = GeneralParams(
            block_dims_e=(2,),
            deltas=(-1,),
            f_blocks=(BetaParams(s=3, beta=(-1, -1), gamma=5),),
        )
        normalization = canonicalize_general_params(raw)
        assert normalization.x_scale == -1
        assert normalization.params.f_blocks[0].beta == (1, 1)

    def test_general_sorts_blocks(self) -> None:
        """Larger e-blocks come first and the reference block gets delta 1."""
        raw = GeneralParams(block_dims_e=(1, 3), deltas=(5, 2))
        normalization = canonicalize_general_params(raw)
        assert normalization.params.block_dims_e == (3, 1)
        assert normalization.params.deltas == (1, Rational(5, 2))
        assert normalization.e_order == (1, 0)

    def test_canonical_table_unknown(self) -> None:
        """Unknown labels have no table."""
        with pytest.raises(ParameterError):
            canonical_table(ClassLabel.unknown())
