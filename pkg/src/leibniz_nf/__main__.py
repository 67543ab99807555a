"""Entry point for the leibniz-nf command line.

This module allows running the tool with:
    python -m leibniz_nf
"""

import sys

from leibniz_nf.cli.main import run


def main() -> None:
    """Main entry point for the leibniz-nf command line."""
    sys.exit(run())


if __name__ == "__main__":
    main()
