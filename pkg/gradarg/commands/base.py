from abc import ABCMeta, abstractmethod
from argparse import ArgumentParser, Namespace
from dataclasses import dataclass
from typing import Any, ClassVar, Literal

from ..config import Settings

CommandName = Literal[
    "solve",
    "enumerate",
    "check-labelling",
    "check-model",
    "gradual",
    "translate",
    "query",
    "oracle",
]

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


class BaseCommand(metaclass=ABCMeta):
    """Abstract base class for gradarg subcommands."""

    name: ClassVar[CommandName]
    help: ClassVar[str]

    @abstractmethod
    def add_arguments(self, parser: ArgumentParser) -> None:
        """Declares the subcommand's flags."""
        ...

    @abstractmethod
    def __call__(self, args: Namespace, settings: Settings) -> "CommandResult":
        """Runs the subcommand on parsed flags."""
        ...


@dataclass(kw_only=True, frozen=True)
class CommandResult:
    """Represents the result of a subcommand.

    `output` is the JSON report, `pretty` its human rendering. `failed` marks a semantic
    failure (violations, non-convergence) as opposed to an input error.
    """

    output: dict[str, Any] | None = None
    pretty: str | None = None
    error: str | None = None
    failed: bool = False

    def __bool__(self):
        return self.error is None and not self.failed

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return EXIT_ERROR
        return EXIT_FAILED if self.failed else EXIT_OK


class CommandFailure(CommandResult):
    """A CommandResult for input, schema or usage errors."""
