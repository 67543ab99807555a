"""Command-line surface and the table file format.

This package contains:
- tablefile: parsing and canonical serialization of ``leibniz v1`` files
- formatting: plain-text report rendering
- main: argparse entry point with exit codes 0/1/2
"""

from leibniz_nf.cli.main import build_parser, run
from leibniz_nf.cli.tablefile import parse_table, serialize_table

__all__ = [
    "build_parser",
    "parse_table",
    "run",
    "serialize_table",
]
