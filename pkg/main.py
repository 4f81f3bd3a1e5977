"""
Main Application - Command-line front end for the shift-space measure lab
"""
import argparse
import logging
import sys
from typing import List, Optional

from dotenv import load_dotenv

from src.commands import EXIT_USAGE, load_run_config, parse_grid, run_command
from src.config import COMMANDS, ConfigError, VERIFY_SUITES, get_log_level
from src.config.runtime_config import runtime_config
from src.space.alphabet import DomainError

# Load environment variables
load_dotenv()

logger = logging.getLogger("shiftlab")


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors become ConfigError so every bad invocation exits with code 1"""

    def error(self, message):
        raise ConfigError(message)


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="main.py", description="Dimensions, recurrence and genericity on full shifts")
    parser.add_argument("command", choices=list(COMMANDS), help="Command to run")
    parser.add_argument("suite", nargs="?", help=f"Suite for verify: {', '.join(VERIFY_SUITES)}")
    parser.add_argument("--config", help="JSON run config")
    parser.add_argument("--seed", type=int, help="Root seed (unsigned 64-bit)")
    parser.add_argument("--out", help="Output directory")
    parser.add_argument("--workers", type=int, help="Worker processes (default SHIFTLAB_WORKERS or 1)")
    parser.add_argument("--grid", help="Scale grid eps0,q,J,s")
    parser.add_argument("--budget", type=int, help="Monte Carlo samples per estimate")
    parser.add_argument("--horizon", type=int, help="Return-time search horizon")
    parser.add_argument("--tol", type=float, help="Metric tolerance")
    return parser


def setup_logging() -> None:
    """Logs go to stderr; stdout carries only command output"""
    runtime_config.reload()
    logging.basicConfig(level=get_log_level(), stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s", force=True)


def main(argv: Optional[List[str]] = None) -> int:
    setup_logging()
    try:
        args = build_parser().parse_args(argv)
        if args.suite and args.command != "verify":
            raise ConfigError(f"{args.command} takes no positional argument")
        overrides = {
            "seed": args.seed,
            "out": args.out,
            "workers": args.workers,
            "grid": parse_grid(args.grid) if args.grid else None,
            "budget": args.budget,
            "horizon": args.horizon,
            "tol": args.tol,
        }
        config = load_run_config(args.command, args.config, overrides)
        if args.suite:
            config.options = {**config.options, "suite": args.suite}
        return run_command(args.command, config)
    except (ConfigError, DomainError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
