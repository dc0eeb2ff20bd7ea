from .base import CommandFailure, CommandResult
from .check import CheckLabellingCommand, CheckModelCommand
from .collection import CommandCollection
from .gradual import GradualCommand
from .query import QueryCommand
from .solve import EnumerateCommand, OracleCommand, SolveCommand
from .translate import TranslateCommand

__all__ = [
    "CheckLabellingCommand",
    "CheckModelCommand",
    "CommandCollection",
    "CommandFailure",
    "CommandResult",
    "EnumerateCommand",
    "GradualCommand",
    "OracleCommand",
    "QueryCommand",
    "SolveCommand",
    "TranslateCommand",
]
