"""Command-line entry point.

Reports go to stdout and logs to stderr. Exit status 0 means success, 1 a
mathematical failure (Leibniz violations, Unknown classification, failed
fuzz trials, non-isomorphic inputs) and 2 a usage or parse error.
"""

import argparse
import logging
import sys
from collections.abc import Callable, Sequence

from pydantic import ValidationError
from sympy import Rational

from leibniz_nf import __version__
from leibniz_nf.analysis.derivations import derivation_space, max_nil_independent
from leibniz_nf.analysis.series import (
    derived_series,
    lower_central_series,
    nilradical_report,
    right_annihilator,
)
from leibniz_nf.catalog import (
    make_nf,
    make_r_alpha,
    make_r_beta,
    make_r_general,
    make_solvable_nf,
)
from leibniz_nf.cli.formatting import (
    format_derivations,
    format_fingerprint,
    format_fuzz,
    format_label,
    format_nilradical,
    format_series,
    format_subspace,
    format_verdict,
    format_violations,
)
from leibniz_nf.cli.tablefile import parse_table, serialize_table
from leibniz_nf.config import get_settings
from leibniz_nf.core.algebra import AlgebraTable, check_leibniz
from leibniz_nf.core.exactlin import parse_rational
from leibniz_nf.errors import (
    LeibnizError,
    ParameterError,
    RationalSyntaxError,
    TableParseError,
)
from leibniz_nf.models import BetaParams, ClassLabel, GeneralParams
from leibniz_nf.recognition.classify import classify, fingerprint, isomorphic_in_catalog
from leibniz_nf.recognition.fuzz import fuzz_roundtrip

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

_USAGE_ERRORS = (TableParseError, RationalSyntaxError, ParameterError)


def _configure_logging(level: str | None) -> None:
    try:
        settings = get_settings()
        log_level = getattr(logging, (level or settings.log_level).upper(), logging.INFO)
    except Exception:
        log_level = logging.INFO
    logging.basicConfig(
        level=log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )


def _read_table(path: str) -> AlgebraTable:
    if path == "-":
        return parse_table(sys.stdin.read())
    with open(path, encoding="utf-8") as handle:
        return parse_table(handle.read())


# ---------------------------------------------------------------------------
# Parameter parsing
# ---------------------------------------------------------------------------


def _rationals(text: str) -> tuple[Rational, ...]:
    return tuple(parse_rational(t) for t in text.split(",") if t.strip())


def _beta_params(s: int, beta: str, gamma: str) -> BetaParams:
    return BetaParams(s=s, beta=_rationals(beta), gamma=parse_rational(gamma))


def _general_params(e_blocks: Sequence[str], f_blocks: Sequence[str]) -> GeneralParams:
    """``N[:DELTA]`` per e-block and ``S:BETAS:GAMMA`` per f-block."""
    dims, deltas = [], []
    for block in e_blocks:
        size, _, delta = block.partition(":")
        dims.append(int(size))
        deltas.append(parse_rational(delta) if delta else parse_rational("1"))
    f_params = []
    for block in f_blocks:
        parts = block.split(":")
        if len(parts) != 3:
            raise ParameterError(f"f-block must look like S:BETAS:GAMMA, got {block!r}")
        f_params.append(_beta_params(int(parts[0]), parts[1], parts[2]))
    return GeneralParams(block_dims_e=tuple(dims), deltas=tuple(deltas), f_blocks=tuple(f_params))


def _label_from_family(family: str, pairs: Sequence[str]) -> ClassLabel:
    values: dict[str, list[str]] = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep:
            raise ParameterError(f"expected key=value, got {pair!r}")
        values.setdefault(key.strip(), []).append(value.strip())

    def one(key: str, default: str | None = None) -> str:
        if key in values:
            return values[key][-1]
        if default is None:
            raise ParameterError(f"family {family} needs parameter {key!r}")
        return default

    name = family.lower().replace("_", "-")
    if name in ("nf", "nullfiliform", "null-filiform"):
        return ClassLabel.null_filiform(int(one("n")))
    if name in ("solvable-nf", "solvablenf"):
        return ClassLabel.solvable_nf(int(one("n")))
    if name in ("r-alpha", "ralpha"):
        k, s, alpha = int(one("k")), int(one("s")), parse_rational(one("alpha"))
        make_r_alpha(k, s, alpha)
        return ClassLabel.r_alpha(k, s, alpha)
    if name in ("r-beta", "rbeta"):
        s = int(one("s"))
        return ClassLabel.r_beta(int(one("k")), _beta_params(s, one("beta", ""), one("gamma", "0")))
    if name in ("r-general", "rgeneral"):
        params = _general_params(values.get("e", []), values.get("f", []))
        make_r_general(params)
        return ClassLabel.r_general(params)
    raise ParameterError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_verify(args: argparse.Namespace) -> int:
    violations = check_leibniz(_read_table(args.file))
    print(format_violations(violations))
    return EXIT_FAILURE if violations else EXIT_OK


def _cmd_series(args: argparse.Namespace) -> int:
    A = _read_table(args.file)
    print(format_series(lower_central_series(A)))
    if args.derived:
        print(format_series(derived_series(A)))
    return EXIT_OK


def _cmd_nilradical(args: argparse.Namespace) -> int:
    report = nilradical_report(_read_table(args.file), seed=args.seed, trials=args.trials)
    print(format_nilradical(report))
    return EXIT_OK


def _cmd_annihilator(args: argparse.Namespace) -> int:
    print(format_subspace("right annihilator", right_annihilator(_read_table(args.file))))
    return EXIT_OK


def _cmd_derivations(args: argparse.Namespace) -> int:
    A = _read_table(args.file)
    nil = max_nil_independent(A) if args.nilindependent else None
    print(format_derivations(derivation_space(A), nil))
    return EXIT_OK


def _cmd_classify(args: argparse.Namespace) -> int:
    label = classify(_read_table(args.file))
    print(format_label(label, args.witness))
    return EXIT_FAILURE if label.is_unknown else EXIT_OK


def _cmd_fingerprint(args: argparse.Namespace) -> int:
    print(format_fingerprint(fingerprint(_read_table(args.file))))
    return EXIT_OK


def _cmd_iso(args: argparse.Namespace) -> int:
    verdict = isomorphic_in_catalog(_read_table(args.first), _read_table(args.second))
    print(format_verdict(verdict, args.witness))
    return EXIT_OK if verdict.result is True else EXIT_FAILURE


def _cmd_make(args: argparse.Namespace) -> int:
    if args.family == "nf":
        table = make_nf(args.n)
    elif args.family == "solvable-nf":
        table = make_solvable_nf(args.n)
    elif args.family == "r-alpha":
        table = make_r_alpha(args.k, args.s, parse_rational(args.alpha))
    elif args.family == "r-beta":
        table = make_r_beta(args.k, _beta_params(args.s, args.beta, args.gamma))
    else:
        table = make_r_general(_general_params(args.e_block, args.f_block or []))
    sys.stdout.write(serialize_table(table))
    return EXIT_OK


def _cmd_fuzz(args: argparse.Namespace) -> int:
    label = _label_from_family(args.family, args.params)
    report = fuzz_roundtrip(
        label,
        args.trials,
        args.seed,
        block_respecting=args.block_respecting,
        workers=args.workers,
    )
    print(format_fuzz(report))
    return EXIT_OK if report.all_passed else EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leibniz-nf",
        description="Exact analysis and classification of Leibniz algebras.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--log-level", help="override LEIBNIZ_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    def file_command(
        name: str, handler: Callable[[argparse.Namespace], int], help_text: str
    ) -> argparse.ArgumentParser:
        command = sub.add_parser(name, help=help_text)
        command.add_argument("file", help="table file, or - for stdin")
        command.set_defaults(handler=handler)
        return command

    file_command("verify", _cmd_verify, "check the Leibniz identity")
    series = file_command("series", _cmd_series, "lower central (and derived) series")
    series.add_argument("--derived", action="store_true", help="also print the derived series")
    nil = file_command("nilradical", _cmd_nilradical, "maximal nilpotent ideal")
    nil.add_argument("--seed", type=int, default=None)
    nil.add_argument("--trials", type=int, default=None)
    file_command("annihilator", _cmd_annihilator, "right annihilator")
    ders = file_command("derivations", _cmd_derivations, "derivation algebra")
    ders.add_argument(
        "--nilindependent", action="store_true", help="also count nil-independent derivations"
    )
    cls = file_command("classify", _cmd_classify, "canonical catalog label")
    cls.add_argument("--witness", action="store_true", help="print the basis change")
    file_command("fingerprint", _cmd_fingerprint, "basis-free invariants")

    iso = sub.add_parser("iso", help="catalog isomorphism test")
    iso.add_argument("first")
    iso.add_argument("second")
    iso.add_argument("--witness", action="store_true", help="print the isomorphism")
    iso.set_defaults(handler=_cmd_iso)

    make = sub.add_parser("make", help="write a catalog table to stdout")
    make.set_defaults(handler=_cmd_make)
    families = make.add_subparsers(dest="family", required=True)
    for name in ("nf", "solvable-nf"):
        fam = families.add_parser(name)
        fam.add_argument("--n", type=int, required=True)
    r_alpha = families.add_parser("r-alpha")
    r_alpha.add_argument("--k", type=int, required=True)
    r_alpha.add_argument("--s", type=int, required=True)
    r_alpha.add_argument("--alpha", required=True)
    r_beta = families.add_parser("r-beta")
    r_beta.add_argument("--k", type=int, required=True)
    r_beta.add_argument("--s", type=int, required=True)
    r_beta.add_argument("--beta", default="", help="comma-separated beta_2..beta_s")
    r_beta.add_argument("--gamma", default="0")
    r_general = families.add_parser("r-general")
    r_general.add_argument("--e-block", action="append", required=True, metavar="N[:DELTA]")
    r_general.add_argument("--f-block", action="append", metavar="S:BETAS:GAMMA")

    fuzz = sub.add_parser("fuzz", help="scramble-and-classify round trips")
    fuzz.add_argument("--family", required=True)
    fuzz.add_argument("--params", nargs="*", default=[], metavar="KEY=VALUE")
    fuzz.add_argument("--trials", type=int, default=None)
    fuzz.add_argument("--seed", type=int, default=None)
    fuzz.add_argument("--workers", type=int, default=None)
    mode = fuzz.add_mutually_exclusive_group()
    mode.add_argument("--unrestricted", dest="block_respecting", action="store_false", default=None)
    mode.add_argument("--block-respecting", dest="block_respecting", action="store_true")
    fuzz.set_defaults(handler=_cmd_fuzz, block_respecting=None)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv``, run the subcommand and return the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE
    _configure_logging(args.log_level)
    try:
        return args.handler(args)
    except _USAGE_ERRORS as e:
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as e:
        print(f"error: invalid parameters: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except LeibnizError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_FAILURE
