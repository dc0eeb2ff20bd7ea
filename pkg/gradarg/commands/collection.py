"""Dispatch of parsed command lines to subcommands."""

import logging
from argparse import ArgumentParser, Namespace, _SubParsersAction
from collections.abc import Sequence

from ..config import Settings
from ..errors import GradargError
from .base import BaseCommand, CommandFailure, CommandResult

log = logging.getLogger(__name__)


class CommandCollection:
    """The subcommands the CLI knows, keyed by name."""

    def __init__(self, *commands: BaseCommand):
        self.commands = commands
        self.command_map = {command.name: command for command in commands}

    def register(self, subparsers: _SubParsersAction, parents: Sequence[ArgumentParser] = ()) -> None:
        for command in self.commands:
            parser = subparsers.add_parser(
                command.name, help=command.help, description=command.help, parents=list(parents)
            )
            command.add_arguments(parser)

    def run(self, *, name: str, args: Namespace, settings: Settings) -> CommandResult:
        command = self.command_map.get(name)
        if not command:
            return CommandFailure(error=f"Command {name} is invalid")
        try:
            return command(args, settings)
        except GradargError as e:
            log.debug("%s failed: %s", name, e.message)
            return CommandFailure(error=e.message)
