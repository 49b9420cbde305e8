"""Command-line entry point: ``nilgeo {list,show,verify,compute,solve}``."""

import argparse
import sys

from .commands import execute_command, registrations
from .commands.execute_command import EXIT_USAGE
from .settings import configure_logging


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilgeo",
        description="Almost pseudo-Kähler geometry on 6-dimensional nilpotent Lie algebras",
    )
    parser.add_argument("--log-level", default=None, help="Overrides NILGEO_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)
    for register in registrations:
        register(sub)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 on --help
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    configure_logging(args.log_level)
    return execute_command(args)


if __name__ == "__main__":
    sys.exit(main())
