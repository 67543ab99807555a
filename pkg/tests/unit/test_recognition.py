"""Unit tests for decomposition, canonicalization and classification."""

import random

import pytest
from sympy import Rational

from leibniz_nf.catalog import (
    canonical_table,
    make_nf,
    make_r_alpha,
    make_r_beta,
    make_r_general,
    make_solvable_nf,
    make_zero,
)
from leibniz_nf.core.algebra import AlgebraTable, change_basis, direct_sum
from leibniz_nf.core.exactlin import matrix_from_rows, span
from leibniz_nf.errors import DomainError, LeibnizViolationError
from leibniz_nf.models import BetaParams, ClassLabel, Family, GeneralParams
from leibniz_nf.recognition.canonical import (
    canonicalize_null_filiform,
    canonicalize_solvable_nf,
    solvable_recurrences,
)
from leibniz_nf.recognition.classify import (
    classify,
    fingerprint,
    fingerprint_cache,
    isomorphic_in_catalog,
)
from leibniz_nf.recognition.decomposition import chain, decompose_nilradical, generator
from leibniz_nf.recognition.fuzz import random_unimodular

SCRAMBLE_5 = matrix_from_rows(
    [
        [1, 1, 0, 0, 0],
        [0, 1, 2, 0, 0],
        [0, 0, 1, 0, -1],
        [1, 0, 0, 1, 0],
        [0, 0, 0, 0, 1],
    ],
    5,
)


def _swap_x_sign(dim: int) -> list[list[int]]:
    rows = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    rows[-1][-1] = -1
    return rows


def _shift_basis_vector(A: AlgebraTable, row: int, *extra: int) -> AlgebraTable:
    """Replace basis vector ``row`` by itself plus the basis vectors ``extra``."""
    rows = [[1 if i == j else 0 for j in range(A.dim)] for i in range(A.dim)]
    for j in extra:
        rows[row][j] = 1
    return change_basis(A, matrix_from_rows(rows, A.dim))


class TestDecomposition:
    """Tests for generators, chains and block splitting."""

    def test_generator_and_chain(self, nf4: AlgebraTable) -> None:
        """e1 generates NF_4 and its chain is the standard basis."""
        g = generator(nf4, span([nf4.basis_vector(i) for i in range(4)], 4))
        assert g == nf4.basis_vector(0)
        assert chain(nf4, g, 4) == [nf4.basis_vector(i) for i in range(4)]

    def test_split_two_blocks(self) -> None:
        """The alpha family nilradical splits into its two chains."""
        A = make_r_alpha(3, 2, Rational(2))
        N = span([A.basis_vector(i) for i in range(5)], 6)
        blocks = decompose_nilradical(A, N)
        assert blocks is not None
        assert sorted(B.dim for B in blocks) == [2, 3]

    def test_no_split_for_heisenberg(self, heisenberg: AlgebraTable) -> None:
        """h_3 is not a sum of null-filiform ideals."""
        N = span([heisenberg.basis_vector(i) for i in range(3)], 3)
        assert decompose_nilradical(heisenberg, N) is None


class TestCanonicalization:
    """Tests for the canonicalizing basis changes."""

    def test_recurrences(self) -> None:
        """A_3 = beta_3 / 2 and B_3 = gamma / 3 for n = 3."""
        coeffs, b_n = solvable_recurrences({3: Rational(4)}, Rational(6), 3)
        assert coeffs == {3: 2}
        assert b_n == 2

    def test_recurrences_feed_forward(self) -> None:
        """A_5 picks up A_3 * beta_3."""
        beta = {3: Rational(2), 4: Rational(0), 5: Rational(1)}
        coeffs, _ = solvable_recurrences(beta, Rational(0), 5)
        assert coeffs[3] == 1
        assert coeffs[5] == (1 + coeffs[3] * beta[3]) / 4

    def test_null_filiform_witness(self) -> None:
        """A scrambled NF_4 is mapped back onto the canonical table."""
        P = matrix_from_rows([[1, 2, 0, 1], [0, 1, 0, 0], [0, 0, 1, 3], [0, 0, 0, 1]], 4)
        A = change_basis(make_nf(4), P)
        label = canonicalize_null_filiform(A)
        assert label.key() == ClassLabel.null_filiform(4).key()
        assert label.witness is not None
        assert change_basis(A, label.witness) == make_nf(4)

    def test_not_null_filiform(self, heisenberg: AlgebraTable) -> None:
        """Other nilpotent algebras are outside the domain."""
        with pytest.raises(DomainError):
            canonicalize_null_filiform(heisenberg)

    def test_solvable_with_corrections(self) -> None:
        """beta_3 and gamma terms are absorbed by the recurrences."""
        base = make_solvable_nf(4)
        P = matrix_from_rows(
            [
                [1, 0, 1, 0, 0],
                [0, 1, 0, 0, 0],
                [0, 0, 1, 0, 0],
                [0, 0, 0, 1, 0],
                [0, 1, 2, 3, 1],
            ],
            5,
        )
        A = change_basis(base, P)
        label = canonicalize_solvable_nf(A)
        assert label.family is Family.SOLVABLE_NF
        assert label.witness is not None
        assert change_basis(A, label.witness) == base

    def test_solvable_domain(self) -> None:
        """A two-block nilradical is not null-filiform."""
        with pytest.raises(DomainError):
            canonicalize_solvable_nf(make_r_alpha(2, 2, Rational(1)))


class TestClassify:
    """Tests for the classifier."""

    def test_null_filiform(self, nf4: AlgebraTable) -> None:
        """NF_4 is recognized with a witness."""
        label = classify(nf4)
        assert str(label) == "NullFiliform(n=4)"
        assert label.fingerprint is not None

    def test_scrambled_solvable(self) -> None:
        """A scrambled solvable extension comes back as SolvableNF(n=4)."""
        A = change_basis(make_solvable_nf(4), SCRAMBLE_5)
        label = classify(A)
        assert str(label) == "SolvableNF(n=4)"
        assert label.witness is not None
        assert change_basis(A, label.witness) == make_solvable_nf(4)

    def test_alpha_inverted(self) -> None:
        """R(1/2) with equal blocks is reported as R(2)."""
        label = classify(make_r_alpha(2, 2, Rational(1, 2)))
        assert str(label) == "RAlpha(k=2, s=2, alpha=2)"
        assert label.witness is not None
        A = make_r_alpha(2, 2, Rational(1, 2))
        assert change_basis(A, label.witness) == make_r_alpha(2, 2, Rational(2))

    def test_beta_normalized(self) -> None:
        """Beta parameters are reported in normal form."""
        label = classify(make_r_beta(2, BetaParams(s=2, beta=(3,), gamma=0)))
        assert str(label) == "RBeta(k=2, s=2, beta=(1), gamma=0)"

    def test_beta_with_negated_x(self) -> None:
        """Replacing x by -x gives the same normal form."""
        params = BetaParams(s=3, beta=(1, 1), gamma=0)
        base = make_r_beta(2, params)
        A = change_basis(base, matrix_from_rows(_swap_x_sign(base.dim), base.dim))
        assert classify(A).key() == classify(base).key()

    def test_general_family(self) -> None:
        """Three blocks are labeled RGeneral."""
        params = GeneralParams(
            block_dims_e=(2, 1),
            deltas=(1, Rational(3)),
            f_blocks=(BetaParams(s=2, beta=(1,), gamma=0),),
        )
        label = classify(make_r_general(params))
        assert label.family is Family.R_GENERAL
        assert label.params == params

    def test_outside_catalog(self, heisenberg: AlgebraTable, sl2: AlgebraTable) -> None:
        """Nilpotent non-null-filiform and non-solvable algebras are Unknown."""
        assert classify(heisenberg).is_unknown
        assert classify(sl2).is_unknown
        two_extensions = direct_sum(make_solvable_nf(1), make_solvable_nf(1))
        assert classify(two_extensions).is_unknown

    def test_rejects_non_leibniz(self) -> None:
        """Classification starts with the identity check."""
        A = AlgebraTable.from_constants(2, {(0, 0, 1): 1, (1, 0, 0): 1})
        with pytest.raises(LeibnizViolationError):
            classify(A)


class TestFingerprint:
    """Tests for fingerprints and catalog isomorphism."""

    def test_zero_algebra(self) -> None:
        """The one-dimensional zero algebra."""
        fp = fingerprint(make_zero(1))
        assert fp.as_tuple() == (1, [1, 0], [1, 0], 0, 1, 1, True, True)

    def test_invariant_under_basis_change(self) -> None:
        """Fingerprints do not see the basis."""
        A = make_solvable_nf(4)
        assert fingerprint(change_basis(A, SCRAMBLE_5)) == fingerprint(A)

    def test_cached(self, nf4: AlgebraTable) -> None:
        """A second request is served from the cache."""
        fingerprint(nf4)
        fingerprint(nf4)
        assert fingerprint_cache.hits >= 1

    def test_isomorphic_alpha_pair(self) -> None:
        """R(1/2) and R(2) on equal blocks are isomorphic with an explicit map."""
        A = make_r_alpha(2, 2, Rational(1, 2))
        B = make_r_alpha(2, 2, Rational(2))
        verdict = isomorphic_in_catalog(A, B)
        assert verdict.result is True
        assert verdict.answer == "yes"
        assert verdict.isomorphism is not None
        assert change_basis(A, verdict.isomorphism) == B

    def test_different_families(self, nf4: AlgebraTable) -> None:
        """Distinct catalog labels are not isomorphic."""
        verdict = isomorphic_in_catalog(nf4, make_solvable_nf(3))
        assert verdict.result is False
        assert verdict.answer == "no"

    def test_unknown_pairs(self, heisenberg: AlgebraTable, sl2: AlgebraTable) -> None:
        """Unknown inputs are separated only by fingerprints."""
        assert isomorphic_in_catalog(heisenberg, heisenberg).result is None
        assert isomorphic_in_catalog(heisenberg, sl2).result is False

    def test_unequal_alpha(self) -> None:
        """Different alpha on unequal blocks are not isomorphic."""
        verdict = isomorphic_in_catalog(
            make_r_alpha(3, 2, Rational(1, 2)), make_r_alpha(3, 2, Rational(2))
        )
        assert verdict.result is False

    def test_not_null_filiform_nilpotent(self) -> None:
        """The fingerprint records nilpotency."""
        fp = fingerprint(direct_sum(make_nf(2), make_nf(3)))
        assert fp.nilpotent
        assert fp.lcs_dims == (5, 3, 1, 0)


class TestMixedBlocks:
    """Tests for basis changes that mix the blocks of the nilradical."""

    def test_alpha_short_block_plus_top(self) -> None:
        """f1 + e3 in place of f1 still classifies as R(1/2) on blocks 3 and 1."""
        base = make_r_alpha(3, 1, Rational(1, 2))
        A = _shift_basis_vector(base, 3, 2)
        label = classify(A)
        assert label.key() == classify(base).key()
        assert label.witness is not None
        assert change_basis(A, label.witness) == canonical_table(label)

    def test_beta_generator_plus_f_top(self) -> None:
        """e1 + f2 in place of e1 keeps the beta normal form."""
        base = make_r_beta(2, BetaParams(s=2, beta=(1,), gamma=0))
        A = _shift_basis_vector(base, 0, 3)
        label = classify(A)
        assert str(label) == "RBeta(k=2, s=2, beta=(1), gamma=0)"
        assert label.witness is not None
        assert change_basis(A, label.witness) == canonical_table(label)

    def test_general_generator_plus_two_blocks(self) -> None:
        """A one-dimensional e-generator picking up tops of the other two blocks."""
        params = GeneralParams(
            block_dims_e=(2, 1),
            deltas=(1, Rational(3)),
            f_blocks=(BetaParams(s=2, beta=(1,), gamma=0),),
        )
        A = _shift_basis_vector(make_r_general(params), 2, 1, 4)
        label = classify(A)
        assert label.params == params
        assert label.witness is not None
        assert change_basis(A, label.witness) == canonical_table(label)

    def test_equal_deltas_separated(self) -> None:
        """Equal blocks with alpha = 1 are told apart under a full scramble."""
        base = make_r_alpha(2, 2, Rational(1))
        A = change_basis(base, random_unimodular(base.dim, random.Random(7)))
        label = classify(A)
        assert str(label) == "RAlpha(k=2, s=2, alpha=1)"
        assert label.witness is not None
        assert change_basis(A, label.witness) == base

    @pytest.mark.parametrize("seed", range(4))
    def test_random_scrambles_isomorphic(self, seed: int) -> None:
        """Every two-block algebra is isomorphic to any scramble of itself."""
        algebras = [
            make_r_alpha(3, 1, Rational(1, 2)),
            make_r_alpha(2, 2, Rational(-1)),
            make_r_beta(2, BetaParams(s=2, beta=(1,), gamma=0)),
            make_r_beta(2, BetaParams(s=1, beta=(), gamma=1)),
        ]
        for A in algebras:
            B = change_basis(A, random_unimodular(A.dim, random.Random(seed)))
            verdict = isomorphic_in_catalog(A, B)
            assert verdict.answer == "yes"
            assert verdict.isomorphism is not None
            assert change_basis(A, verdict.isomorphism) == B

    def test_heisenberg_extension_unknown(self) -> None:
        """A diagonal extension of h_3 has a codim-1 nilradical outside the catalog."""
        A = AlgebraTable.from_constants(
            4,
            {
                (0, 1, 2): 1,
                (1, 0, 2): -1,
                (3, 0, 0): 1,
                (0, 3, 0): -1,
                (3, 1, 1): 1,
                (1, 3, 1): -1,
                (3, 2, 2): 2,
                (2, 3, 2): -2,
            },
        )
        assert classify(A).is_unknown
