"""Fingerprints, classification and catalog-based isomorphism."""

import logging

from leibniz_nf.analysis.derivations import derivation_space
from leibniz_nf.analysis.series import (
    derived_series,
    is_null_filiform,
    lower_central_series,
    nilradical_report,
    right_annihilator,
    square,
)
from leibniz_nf.cache import InvariantCache, table_key
from leibniz_nf.core.algebra import AlgebraTable, require_leibniz, subalgebra_table
from leibniz_nf.core.exactlin import Matrix, mat_inverse
from leibniz_nf.errors import (
    DomainError,
    NilradicalInconsistencyError,
    NotThisFamilyError,
    SingularMatrixError,
)
from leibniz_nf.models import ClassLabel, Family, Fingerprint, IsomorphismVerdict
from leibniz_nf.recognition.canonical import (
    canonicalize_blocks,
    canonicalize_null_filiform,
    canonicalize_solvable_nf,
)

logger = logging.getLogger(__name__)

fingerprint_cache: InvariantCache[Fingerprint] = InvariantCache()


def fingerprint(A: AlgebraTable) -> Fingerprint:
    """Basis-free invariants of ``A`` (cached by table constants)."""
    key = table_key(A)
    cached = fingerprint_cache.get(key)
    if cached is not None:
        return cached
    lcs = lower_central_series(A)
    ds = derived_series(A)
    result = Fingerprint(
        dim=A.dim,
        lcs_dims=tuple(lcs.dims),
        ds_dims=tuple(ds.dims),
        dim_square=square(A).dim,
        dim_der=derivation_space(A).dim,
        dim_ann_r=right_annihilator(A).dim,
        nilpotent=lcs.stabilized_at_zero,
        solvable=ds.stabilized_at_zero,
    )
    fingerprint_cache.set(key, result)
    return result


def _classify_solvable(A: AlgebraTable, fp: Fingerprint) -> ClassLabel:
    try:
        report = nilradical_report(A)
    except (DomainError, NilradicalInconsistencyError) as e:
        logger.warning("Nilradical search failed: %s", e.message)
        return ClassLabel.unknown(fp)
    N = report.subspace
    if report.codim != 1:
        logger.info("Nilradical has codimension %d; outside the catalog", report.codim)
        return ClassLabel.unknown(fp)
    try:
        if is_null_filiform(subalgebra_table(A, N)):
            return canonicalize_solvable_nf(A, N)
        return canonicalize_blocks(A, N)
    except (NotThisFamilyError, DomainError, SingularMatrixError) as e:
        logger.warning("Canonicalization failed, classifying as Unknown: %s", e.message)
        return ClassLabel.unknown(fp)


def classify(A: AlgebraTable) -> ClassLabel:
    """Recognize ``A`` as a catalog family with canonical parameters.

    Nilpotent null-filiform algebras give ``NullFiliform``; solvable algebras
    whose nilradical has codimension 1 and splits into null-filiform ideals
    give ``SolvableNF``, ``RAlpha``, ``RBeta`` or ``RGeneral`` with a
    verified witness. Everything else is ``Unknown``.

    Raises:
        LeibnizViolationError: If ``A`` violates the Leibniz identity.
    """
    require_leibniz(A)
    fp = fingerprint(A)
    if fp.nilpotent:
        if is_null_filiform(A):
            label = canonicalize_null_filiform(A)
        else:
            label = ClassLabel.unknown(fp)
    elif not fp.solvable:
        label = ClassLabel.unknown(fp)
    else:
        label = _classify_solvable(A, fp)
    label = label.model_copy(update={"fingerprint": fp})
    logger.debug("Classified dim-%d algebra as %s", A.dim, label)
    return label


def isomorphic_in_catalog(A: AlgebraTable, B: AlgebraTable) -> IsomorphismVerdict:
    """Decide isomorphism through canonical catalog labels.

    Equal labels give True with ``isomorphism = W_B^-1 W_A`` mapping ``A``
    onto ``B``. Distinct catalog labels give False, except that two general
    family labels with equal fingerprints are left undecided, since block
    permutations there are not canonicalized beyond sorting. Unknown labels
    are undecided unless the fingerprints differ.
    """
    label_a = classify(A)
    label_b = classify(B)
    fp_a, fp_b = label_a.fingerprint, label_b.fingerprint

    def verdict(result: bool | None, isomorphism: Matrix | None = None) -> IsomorphismVerdict:
        return IsomorphismVerdict(
            result=result, label_a=label_a, label_b=label_b, isomorphism=isomorphism
        )

    if label_a.is_unknown or label_b.is_unknown:
        return verdict(False if fp_a != fp_b else None)
    if label_a.key() == label_b.key():
        assert label_a.witness is not None and label_b.witness is not None
        return verdict(True, mat_inverse(label_b.witness) * label_a.witness)
    both_general = label_a.family is Family.R_GENERAL and label_b.family is Family.R_GENERAL
    if both_general and fp_a == fp_b:
        return verdict(None)
    return verdict(False)
