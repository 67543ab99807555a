"""Classification round trips under random unimodular basis changes.

Each trial builds the canonical table of a label, scrambles it with an
integer matrix of determinant +-1, classifies the result and checks both the
label and the witness. Trial ``i`` draws from ``Random(seed * 1000003 + i)``,
so results do not depend on how trials are spread over workers.
"""

import logging
import random
from concurrent.futures import ProcessPoolExecutor

from leibniz_nf.catalog import canonical_label, canonical_table
from leibniz_nf.config import get_settings
from leibniz_nf.core.algebra import change_basis
from leibniz_nf.core.exactlin import Matrix, matrix_from_rows
from leibniz_nf.errors import LeibnizError
from leibniz_nf.models import ClassLabel, Family, FuzzReport, TrialResult
from leibniz_nf.recognition.classify import classify

logger = logging.getLogger(__name__)

SEED_STRIDE = 1_000_003

_MULTIPLIERS = (-2, -1, 1, 2)


def _unimodular_rows(n: int, rng: random.Random, entry_bound: int, max_ops: int) -> list[list[int]]:
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if n == 0:
        return rows
    for _ in range(rng.randint(0, max_ops)):
        kind = rng.choice(("add", "swap", "negate"))
        if kind == "negate" or n < 2:
            i = rng.randrange(n)
            rows[i] = [-v for v in rows[i]]
            continue
        i, j = rng.sample(range(n), 2)
        if kind == "swap":
            rows[i], rows[j] = rows[j], rows[i]
            continue
        t = rng.choice(_MULTIPLIERS)
        candidate = [a + t * b for a, b in zip(rows[i], rows[j], strict=True)]
        if all(abs(v) <= entry_bound for v in candidate):
            rows[i] = candidate
    return rows


def random_unimodular(
    n: int,
    rng: random.Random,
    *,
    entry_bound: int | None = None,
    max_ops: int | None = None,
) -> Matrix:
    """Integer matrix of determinant +-1 from at most ``max_ops`` elementary row operations.

    Row additions that would push an entry past ``entry_bound`` are skipped.
    """
    settings = get_settings()
    bound = settings.scramble_entry_bound if entry_bound is None else entry_bound
    ops = settings.scramble_max_ops if max_ops is None else max_ops
    return matrix_from_rows(_unimodular_rows(n, rng, bound, ops), n)


def _blocks_of(label: ClassLabel) -> tuple[list[int], bool]:
    if label.family is Family.NULL_FILIFORM:
        assert label.n is not None
        return [label.n], False
    if label.family is Family.SOLVABLE_NF:
        assert label.n is not None
        return [label.n], True
    assert label.params is not None
    return [*label.params.block_dims_e, *label.params.block_dims_f], True


def block_respecting_unimodular(
    blocks: list[int],
    with_x: bool,
    rng: random.Random,
    *,
    entry_bound: int | None = None,
    max_ops: int | None = None,
) -> Matrix:
    """Block-diagonal unimodular scramble.

    The ``x`` row is ``+-x`` plus integer block components.
    """
    settings = get_settings()
    bound = settings.scramble_entry_bound if entry_bound is None else entry_bound
    ops = settings.scramble_max_ops if max_ops is None else max_ops
    nil_dim = sum(blocks)
    dim = nil_dim + (1 if with_x else 0)
    rows: list[list[int]] = []
    offset = 0
    for size in blocks:
        for block_row in _unimodular_rows(size, rng, bound, ops):
            row = [0] * dim
            row[offset : offset + size] = block_row
            rows.append(row)
        offset += size
    if with_x:
        x_row = [rng.randint(-bound, bound) for _ in range(nil_dim)]
        x_row.append(rng.choice((-1, 1)))
        rows.append(x_row)
    return matrix_from_rows(rows, dim)


def run_trial(label: ClassLabel, index: int, seed: int, block_respecting: bool) -> TrialResult:
    """One deterministic round trip; never raises for classification failures."""
    rng = random.Random(seed * SEED_STRIDE + index)
    table = canonical_table(label)
    expected = canonical_label(label)
    if block_respecting:
        blocks, with_x = _blocks_of(label)
        scramble = block_respecting_unimodular(blocks, with_x, rng)
    else:
        scramble = random_unimodular(table.dim, rng)
    try:
        scrambled = change_basis(table, scramble)
        got = classify(scrambled)
    except LeibnizError as e:
        detail = f"error: {e.message}"
        return TrialResult(index=index, passed=False, detail=detail, scramble=scramble)
    if got.key() != expected.key():
        return TrialResult(
            index=index, passed=False, detail=f"expected {expected}, got {got}", scramble=scramble
        )
    if got.witness is None or change_basis(scrambled, got.witness) != canonical_table(got):
        return TrialResult(index=index, passed=False, detail="witness mismatch", scramble=scramble)
    return TrialResult(index=index, passed=True, detail=str(got))


def _trial_job(job: tuple[ClassLabel, int, int, bool]) -> TrialResult:
    return run_trial(*job)


def fuzz_roundtrip(
    label: ClassLabel,
    trials: int | None = None,
    seed: int | None = None,
    *,
    block_respecting: bool | None = None,
    workers: int | None = None,
) -> FuzzReport:
    """Scramble, classify and verify ``trials`` times.

    Args:
        label: Catalog label whose canonical table is scrambled.
        trials: Number of trials (settings default when None).
        seed: Base seed (settings default when None).
        block_respecting: Keep the block structure of multi-block families.
            Defaults to True for the two-block and general families and False
            for ``NullFiliform`` and ``SolvableNF``.
        workers: Process pool size; 1 runs in-process.

    Returns:
        Per-trial outcomes with the expected canonical label.
    """
    settings = get_settings()
    trials = settings.fuzz_trials if trials is None else trials
    seed = settings.fuzz_seed if seed is None else seed
    workers = settings.fuzz_workers if workers is None else workers
    if block_respecting is None:
        block_respecting = label.family not in (Family.NULL_FILIFORM, Family.SOLVABLE_NF)

    jobs = [(label, i, seed, block_respecting) for i in range(trials)]
    if workers > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_trial_job, jobs))
    else:
        results = [_trial_job(job) for job in jobs]

    report = FuzzReport(label=str(canonical_label(label)), seed=seed, results=tuple(results))
    logger.info("Fuzz %s: passed %d/%d", report.label, report.passed, report.trials)
    return report
