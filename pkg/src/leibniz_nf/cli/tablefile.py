"""The ``leibniz v1`` table file format.

    leibniz v1
    dim 3
    names e1 e2 e3
    c 1 1 2 1
    c 2 1 3 1

Indices are 1-based. Missing constants are zero and ``#`` starts a comment
line. Serialization is canonical: constants in lexicographic order, zeros
omitted, rationals in reduced ``p/q`` form.
"""

import logging

from sympy import Rational

from leibniz_nf.core.algebra import AlgebraTable
from leibniz_nf.core.exactlin import format_rational, is_canonical_rational, parse_rational
from leibniz_nf.errors import RationalSyntaxError, TableParseError

logger = logging.getLogger(__name__)

HEADER = "leibniz v1"


def _parse_int(token: str, what: str, line_number: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise TableParseError(f"{what} must be an integer, got {token!r}", line_number) from None


def parse_table(text: str) -> AlgebraTable:
    """Parse table file text.

    Non-canonical rationals (``2/4``, ``+1``) are accepted with a warning and
    normalized.

    Raises:
        TableParseError: For a missing header or ``dim`` line, malformed or
            out-of-range indices, duplicate entries or malformed rationals.
    """
    lines = [
        (number, raw.strip())
        for number, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.strip().startswith("#")
    ]
    if not lines or lines[0][1] != HEADER:
        raise TableParseError(f"missing header {HEADER!r}", lines[0][0] if lines else 1)
    if len(lines) < 2 or not lines[1][1].startswith("dim"):
        raise TableParseError("expected 'dim <n>'", lines[1][0] if len(lines) > 1 else lines[0][0])

    number, line = lines[1]
    parts = line.split()
    if len(parts) != 2:
        raise TableParseError("expected 'dim <n>'", number)
    dim = _parse_int(parts[1], "dim", number)
    if dim < 0:
        raise TableParseError(f"dim must be non-negative, got {dim}", number)

    names: tuple[str, ...] | None = None
    constants: dict[tuple[int, int, int], Rational] = {}
    for number, line in lines[2:]:
        parts = line.split()
        keyword = parts[0]
        if keyword == "names":
            if names is not None:
                raise TableParseError("duplicate names line", number)
            if constants:
                raise TableParseError("names must precede the constants", number)
            if len(parts) - 1 != dim:
                raise TableParseError(f"expected {dim} names, got {len(parts) - 1}", number)
            names = tuple(parts[1:])
        elif keyword == "c":
            if len(parts) != 5:
                raise TableParseError("expected 'c <i> <j> <k> <rational>'", number)
            index = tuple(_parse_int(t, "index", number) for t in parts[1:4])
            for value in index:
                if not 1 <= value <= dim:
                    raise TableParseError(f"index {value} out of range 1..{dim}", number)
            key = (index[0] - 1, index[1] - 1, index[2] - 1)
            if key in constants:
                raise TableParseError(f"duplicate entry c {parts[1]} {parts[2]} {parts[3]}", number)
            try:
                constants[key] = parse_rational(parts[4])
            except RationalSyntaxError as e:
                raise TableParseError(e.message, number) from e
            if not is_canonical_rational(parts[4]):
                logger.warning(
                    "line %d: non-canonical rational %r normalized to %s",
                    number,
                    parts[4],
                    format_rational(constants[key]),
                )
        else:
            raise TableParseError(f"unknown line type {keyword!r}", number)
    return AlgebraTable.from_constants(dim, constants, names)


def serialize_table(A: AlgebraTable) -> str:
    """Canonical file text of ``A`` (ends with a newline)."""
    lines = [HEADER, f"dim {A.dim}"]
    if A.basis_names is not None and A.dim > 0:
        lines.append("names " + " ".join(A.basis_names))
    for i, j, k, c in A.entries:
        lines.append(f"c {i + 1} {j + 1} {k + 1} {format_rational(c)}")
    return "\n".join(lines) + "\n"
