from argparse import ArgumentParser, Namespace

from ..bridge import graph_to_kb, mlp_to_graph, mlp_to_kb
from ..config import Settings
from ..errors import UsageError
from ..kb import WeightedKB
from ..schema import dump_graph, dump_kb, load_graph, load_mlp
from .base import BaseCommand, CommandResult


def _kb_text(kb: WeightedKB) -> str:
    lines = [str(d) for items in kb.conditionals.values() for d in items]
    return "\n".join(lines) or "(no conditionals)"


class TranslateCommand(BaseCommand):
    """graph -> kb, mlp -> graph, mlp -> kb."""

    name = "translate"
    help = "translate between networks, argumentation graphs and weighted conditional KBs"

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--from", dest="source", required=True, choices=["graph", "mlp"])
        parser.add_argument("--to", dest="target", required=True, choices=["graph", "kb"])
        parser.add_argument("--in", dest="path", required=True, help="input file (- for stdin)")

    def __call__(self, args: Namespace, settings: Settings) -> CommandResult:
        match args.source, args.target:
            case "graph", "kb":
                kb = graph_to_kb(load_graph(args.path))
                return CommandResult(output=dump_kb(kb), pretty=_kb_text(kb))
            case "mlp", "kb":
                kb = mlp_to_kb(load_mlp(args.path))
                return CommandResult(output=dump_kb(kb), pretty=_kb_text(kb))
            case "mlp", "graph":
                graph = mlp_to_graph(load_mlp(args.path))
                return CommandResult(
                    output=dump_graph(graph),
                    pretty="\n".join(str(e) for e in graph.edges) or "(no edges)",
                )
            case source, target:
                raise UsageError(f"no translation from {source} to {target}")
