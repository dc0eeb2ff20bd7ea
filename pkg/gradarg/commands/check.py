from argparse import ArgumentParser, Namespace

from ..arggraph import check_labelling
from ..bridge import check_stationary
from ..config import Settings
from ..errors import UsageError
from ..expr import Atom
from ..fuzzy import EPS_DEG, EPS_W
from ..kb import check_model, preference_table
from ..prefmodel import build_model, verify_labelling_model
from ..report import parse_mode
from ..schema import (
    FORMAT,
    load_graph,
    load_interpretation,
    load_kb,
    load_labelling,
    load_labelling_set,
    load_mlp,
    load_state,
)
from .base import BaseCommand, CommandResult
from .common import add_phi_flag, report_text, resolve_phi


def _add_tolerances(parser: ArgumentParser) -> None:
    parser.add_argument("--eps", type=float, default=EPS_DEG, help="degree tolerance")
    parser.add_argument("--eps-w", type=float, default=EPS_W, help="weight tolerance")


class CheckLabellingCommand(BaseCommand):
    """A labelling against a graph, or a network state against its network."""

    name = "check-labelling"
    help = "check a labelling (or a network state) for coherence, faithfulness or phi-coherence"

    def add_arguments(self, parser: ArgumentParser) -> None:
        source = parser.add_mutually_exclusive_group(required=True)
        source.add_argument("--graph", help="graph file")
        source.add_argument("--mlp", help="network file; checks stationarity of --labelling")
        parser.add_argument("--labelling", required=True, help="labelling or network state file (- for stdin)")
        parser.add_argument("--mode", default="phi-coherent", help="coherent | faithful | phi-coherent")
        add_phi_flag(parser)
        _add_tolerances(parser)

    def __call__(self, args: Namespace, settings: Settings) -> CommandResult:
        if args.mlp:
            mlp = load_mlp(args.mlp)
            if args.phi or not args.mode.startswith("phi"):
                raise UsageError("network states are checked for phi-coherence with the network's own activation")
            report = check_stationary(mlp, load_state(args.labelling), args.eps)
        else:
            graph = load_graph(args.graph)
            phi = resolve_phi(args, graph.phi) if args.mode.startswith("phi") else None
            mode = parse_mode(args.mode, phi)
            report = check_labelling(graph, load_labelling(args.labelling), mode, args.eps, args.eps_w)
        return CommandResult(
            output={"format": FORMAT, **report.to_json()},
            pretty=report_text(report),
            failed=not report.ok,
        )


class CheckModelCommand(BaseCommand):
    """A fuzzy interpretation against a weighted KB, or the model of a labelling set against
    the graph's conditionals."""

    name = "check-model"
    help = "check an interpretation against a weighted KB (or a labelling set against its graph)"

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--kb", help="weighted KB file")
        parser.add_argument("--interp", help="interpretation file")
        parser.add_argument("--graph", help="graph file; with --labellings checks the model of the set")
        parser.add_argument("--labellings", help="labelling set or enumerate output")
        parser.add_argument("--mode", default="coherent", help="coherent | faithful | phi-coherent")
        add_phi_flag(parser)
        _add_tolerances(parser)

    def __call__(self, args: Namespace, settings: Settings) -> CommandResult:
        if args.graph and args.labellings:
            return self._labelling_set(args)
        if not (args.kb and args.interp):
            raise UsageError("check-model needs --kb and --interp, or --graph and --labellings")
        kb = load_kb(args.kb)
        interp = load_interpretation(args.interp)
        phi = resolve_phi(args, None) if args.mode.startswith("phi") else None
        report = check_model(interp, kb, parse_mode(args.mode, phi), args.eps, args.eps_w)
        ranks = [
            f"<_{c}\n{preference_table(interp.with_logic(kb.logic), Atom(c), args.eps, kb.definitions)}"
            for c in kb.distinguished
        ]
        return CommandResult(
            output={"format": FORMAT, **report.to_json()},
            pretty="\n\n".join([report_text(report), *ranks]),
            failed=not report.ok,
        )

    def _labelling_set(self, args: Namespace) -> CommandResult:
        graph = load_graph(args.graph)
        ls = load_labelling_set(args.labellings, graph)
        phi = resolve_phi(args, graph.phi)
        result = verify_labelling_model(ls, phi)
        parts = [report_text(result.precondition)]
        for label, report in (("coherent model", result.coherent), ("faithful model", result.faithful)):
            parts.append(f"{label}: not claimed for {phi.spec}" if report is None else report_text(report))
        if result.precondition.ok:
            interp = build_model(ls)
            parts += [f"<_{a}\n{preference_table(interp, Atom(a), args.eps)}" for a in graph.constrained]
        return CommandResult(
            output={"format": FORMAT, **result.to_json()},
            pretty="\n\n".join(parts),
            failed=not result.ok,
        )

