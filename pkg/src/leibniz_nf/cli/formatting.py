"""Plain-text rendering of reports for stdout."""

from collections.abc import Sequence

from leibniz_nf.analysis.derivations import DerivationBasis, NilIndependence
from leibniz_nf.analysis.series import NilradicalReport, SeriesKind, SeriesReport
from leibniz_nf.core.exactlin import Matrix, Subspace, Vector, format_rational
from leibniz_nf.models import ClassLabel, Fingerprint, FuzzReport, IsomorphismVerdict

_SERIES_TAGS = {
    SeriesKind.LOWER_CENTRAL: ("lcs", "nilpotent"),
    SeriesKind.DERIVED: ("ds", "solvable"),
}


def _format_vector(v: Vector) -> str:
    return " ".join(format_rational(x) for x in v)


def _format_matrix(M: Matrix) -> list[str]:
    return [f"  {_format_vector(tuple(M.row(i)))}" for i in range(M.rows)]


def format_series(report: SeriesReport) -> str:
    """``lcs: 4 3 3*`` or ``ds: 4 3 2 0 (solvable, index 4)``."""
    tag, property_name = _SERIES_TAGS[report.kind]
    dims = [str(d) for d in report.dims]
    if report.repeated:
        dims[-1] += "*"
    line = f"{tag}: {' '.join(dims)}"
    if report.index is not None:
        line += f" ({property_name}, index {report.index})"
    return line


def format_subspace(title: str, U: Subspace) -> str:
    lines = [f"{title}: dim {U.dim}"]
    lines.extend(f"  {_format_vector(v)}" for v in U.vectors)
    return "\n".join(lines)


def format_nilradical(report: NilradicalReport) -> str:
    text = format_subspace("nilradical", report.subspace)
    status = "certified" if report.certified else "heuristic"
    return f"{text}\ncodim {report.codim} ({status})"


def format_violations(violations: Sequence[tuple[int, int, int]]) -> str:
    if not violations:
        return "leibniz: ok"
    lines = [f"leibniz: {len(violations)} violation(s)"]
    lines.extend(f"  {i + 1} {j + 1} {k + 1}" for i, j, k in violations)
    return "\n".join(lines)


def format_derivations(basis: DerivationBasis, nil: NilIndependence | None) -> str:
    lines = [f"derivations: dim {basis.dim}"]
    for index, D in enumerate(basis.basis, start=1):
        lines.append(f"D{index}:")
        lines.extend(_format_matrix(D))
    if nil is not None:
        qualifier = "" if nil.exact else " (lower bound)"
        lines.append(f"nil-independent: {nil.count}{qualifier}")
    return "\n".join(lines)


def format_label(label: ClassLabel, show_witness: bool) -> str:
    lines = [str(label)]
    if show_witness and label.witness is not None:
        lines.append("witness:")
        lines.extend(_format_matrix(label.witness))
    return "\n".join(lines)


def format_fingerprint(fp: Fingerprint) -> str:
    return "\n".join(
        [
            f"dim: {fp.dim}",
            f"lcs: {' '.join(map(str, fp.lcs_dims))}",
            f"ds: {' '.join(map(str, fp.ds_dims))}",
            f"dim_square: {fp.dim_square}",
            f"dim_der: {fp.dim_der}",
            f"dim_ann_r: {fp.dim_ann_r}",
            f"nilpotent: {str(fp.nilpotent).lower()}",
            f"solvable: {str(fp.solvable).lower()}",
        ]
    )


def format_verdict(verdict: IsomorphismVerdict, show_witness: bool) -> str:
    lines = [
        f"isomorphic: {verdict.answer}",
        f"first: {verdict.label_a}",
        f"second: {verdict.label_b}",
    ]
    if show_witness and verdict.isomorphism is not None:
        lines.append("isomorphism:")
        lines.extend(_format_matrix(verdict.isomorphism))
    return "\n".join(lines)


def format_fuzz(report: FuzzReport) -> str:
    lines = []
    for result in report.results:
        status = "PASS" if result.passed else "FAIL"
        lines.append(f"trial {result.index}: {status} {result.detail}".rstrip())
    lines.append(f"passed {report.passed}/{report.trials}")
    return "\n".join(lines)
