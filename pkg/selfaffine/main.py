"""
selfaffine command line

    python -m selfaffine.main COMMAND [options]

Reports go to stdout (or --output) as JSON or CSV; log lines and status go
to stderr. Exit codes: 0 success, 1 validation error, 2 budget overflow.
"""

import logging
import sys

import colorama
from colorama import Fore, Style

from . import __version__
from .commands.layout import CommandParser, create_layout
from .components import data_utils, ids
from .components.errors import ConfigParse, SelfAffineError, UsageError

logger = logging.getLogger("selfaffine")

LEVEL_COLORS = {
    logging.DEBUG: Fore.CYAN,
    logging.INFO: Fore.GREEN,
    logging.WARNING: Fore.YELLOW,
    logging.ERROR: Fore.RED,
    logging.CRITICAL: Fore.RED + Style.BRIGHT,
}


class ColorFormatter(logging.Formatter):
    def format(self, record):
        color = LEVEL_COLORS.get(record.levelno, "")
        record.levelname_colored = f"{color}{record.levelname}{Style.RESET_ALL}"
        return super().format(record)


def configure_logging(verbose=False, quiet=False):
    colorama.just_fix_windows_console()
    level = logging.DEBUG if verbose else logging.ERROR if quiet else logging.WARNING
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(ColorFormatter("%(levelname_colored)s %(name)s: %(message)s"))
    root = logging.getLogger()
    root.handlers[:] = [handler]
    root.setLevel(level)


def resolve_system(args):
    if args.config:
        return data_utils.load_config(args.config)
    fixture = args.fixture or getattr(args, "default_fixture", None)
    if fixture is None:
        raise ConfigParse("pass --fixture or --config")
    overrides = {"alpha1": args.alpha1, "alpha2": args.alpha2, "theta": args.theta}
    return data_utils.load_fixture(fixture, **{k: v for k, v in overrides.items() if v is not None})


def envelope(args, system, outcome):
    return {
        ids.REPORT_SCHEMA: ids.SCHEMA_VERSION,
        ids.REPORT_LIBRARY: __version__,
        ids.REPORT_CONFIG_HASH: data_utils.config_hash(system),
        ids.REPORT_SEED: args.seed,
        ids.REPORT_LEVEL: outcome.level,
        ids.REPORT_TOLERANCE: outcome.tolerance,
        ids.REPORT_COMMAND: args.command,
        ids.REPORT_SYSTEM: {
            "name": system.name,
            "fixture": system.fixture,
            "alphabet": system.linear.N,
            "dimension": system.linear.d,
        },
        ids.REPORT_RESULT: outcome.result,
    }


def run(argv=None):
    """Parse ``argv``, run one subcommand and return its exit code."""
    parser = create_layout(CommandParser(prog="selfaffine", description=__doc__.strip().splitlines()[0]))
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        configure_logging()
        parser.print_usage(sys.stderr)
        logger.error("%s", e)
        return e.exit_code
    if args.command is None:
        parser.print_help(sys.stderr)
        return ids.EXIT_VALIDATION
    configure_logging(args.verbose, args.quiet)
    try:
        system = resolve_system(args)
        outcome = args.handler(args, system)
        if args.out == ids.OUT_CSV and outcome.frame is not None:
            data_utils.write_frame(outcome.frame, ids.OUT_CSV, args.output)
        else:
            if args.out == ids.OUT_CSV:
                logger.warning("'%s' has no tabular output; writing JSON", args.command)
            data_utils.write_report(envelope(args, system, outcome), args.output)
    except SelfAffineError as e:
        logger.error("%s", e)
        return e.exit_code
    return ids.EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
