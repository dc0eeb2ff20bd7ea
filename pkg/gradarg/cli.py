"""Command-line entry point.

Exit status: 0 ok, 1 semantic failure (violations, no convergence, query does not hold),
2 input, schema or usage error.
"""

import logging
import sys
from argparse import ArgumentParser
from collections.abc import Sequence
from typing import NoReturn

from .commands import (
    CheckLabellingCommand,
    CheckModelCommand,
    CommandCollection,
    EnumerateCommand,
    GradualCommand,
    OracleCommand,
    QueryCommand,
    SolveCommand,
    TranslateCommand,
)
from .commands.base import EXIT_ERROR
from .config import Settings, load_settings
from .errors import GradargError, UsageError
from .schema import dump

log = logging.getLogger(__name__)

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


class _Parser(ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.format_usage().strip()}\n{self.prog}: error: {message}")


def default_commands() -> CommandCollection:
    return CommandCollection(
        SolveCommand(),
        EnumerateCommand(),
        CheckLabellingCommand(),
        CheckModelCommand(),
        GradualCommand(),
        TranslateCommand(),
        QueryCommand(),
        OracleCommand(),
    )


def build_parser(commands: CommandCollection) -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable tables instead of JSON")
    common.add_argument("--log-level", help="DEBUG, INFO, WARNING (default: GRADARG_LOG_LEVEL or WARNING)")

    parser = _Parser(prog="gradarg", description=__doc__.splitlines()[0])
    subparsers = parser.add_subparsers(dest="command", metavar="<command>", required=True)
    commands.register(subparsers, parents=[common])
    return parser


def configure_logging(level: str) -> None:
    logging.basicConfig(level=level.upper(), stream=sys.stderr, format=LOG_FORMAT, force=True)


def main(argv: Sequence[str] | None = None, settings: Settings | None = None) -> int:
    try:
        settings = settings or load_settings()
        commands = default_commands()
        args = build_parser(commands).parse_args(argv)
        configure_logging(args.log_level or settings.log_level)
    except GradargError as e:
        sys.stderr.write(f"{e.message}\n")
        return EXIT_ERROR
    except ValueError as e:
        # unknown --log-level
        sys.stderr.write(f"gradarg: error: {e}\n")
        return EXIT_ERROR

    result = commands.run(name=args.command, args=args, settings=settings)
    if result.error is not None:
        sys.stderr.write(f"gradarg {args.command}: error: {result.error}\n")
    if args.pretty and result.pretty is not None:
        sys.stdout.write(f"{result.pretty}\n")
    elif result.output is not None:
        sys.stdout.write(f"{dump(result.output)}\n")
    log.debug("%s exited with %d", args.command, result.exit_code)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
