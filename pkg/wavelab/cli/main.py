"""
Command line entry point.

  wavelab run <config> [--out DIR] [--threads N]
  wavelab validate <config>

WAVELAB_THREADS is used when --threads is not given.
"""

import argparse
import os
import sys
from typing import Optional, Sequence

from ..error_tracking import init_sentry
from ..exceptions import ConfigError
from ..logging_config import setup_logging
from ..parallel import resolve_threads
from .config import load_config
from .experiments import EXPERIMENTS
from .runner import EXIT_CONFIG, EXIT_OK, diagnose, run


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wavelab",
        description="Numerical lab for the coupled semi-linear wave system",
    )
    parser.add_argument(
        "--log-level",
        default=os.getenv("WAVELAB_LOG_LEVEL", "INFO"),
        help="Logging level (default: WAVELAB_LOG_LEVEL or INFO)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run_parser = commands.add_parser(
        "run", help=f"Run one experiment ({', '.join(EXPERIMENTS)})"
    )
    run_parser.add_argument("config", help="Path to the experiment config")
    run_parser.add_argument("--out", help="Output directory (default: output.dir of the config)")
    run_parser.add_argument("--threads", type=int, help="Worker threads for ensemble members")

    validate_parser = commands.add_parser("validate", help="Parse and validate a config only")
    validate_parser.add_argument("config", help="Path to the experiment config")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Main entry point for the command line.
    """
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level.upper())

    try:
        config = load_config(args.config)
    except ConfigError as exc:
        diagnose("config error", exc)
        return EXIT_CONFIG

    if args.command == "validate":
        print(f"{args.config}: ok ({config.experiment.name})")
        return EXIT_OK

    init_sentry()
    return run(config, args.out, resolve_threads(args.threads))


if __name__ == "__main__":
    sys.exit(main())
