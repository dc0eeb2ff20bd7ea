from argparse import ArgumentParser, Namespace

from ..config import Settings
from ..gradual import GradualProperty, check_gradual_property, degree_of, mk_mphi
from ..schema import FORMAT, load_graph
from .base import BaseCommand, CommandResult
from .common import add_phi_flag, add_solver_flags, degrees_table, resolve_phi, solve_options, table


class GradualCommand(BaseCommand):
    """Deg under M^phi and, optionally, property checks on it."""

    name = "gradual"
    help = "gradual semantics M^phi: degrees and property checks"

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--graph", required=True, help="graph file with atomic edge sources")
        add_phi_flag(parser)
        parser.add_argument(
            "--check",
            default="",
            help="comma-separated properties: " + ",".join(p.value for p in GradualProperty),
        )
        add_solver_flags(parser)

    def __call__(self, args: Namespace, settings: Settings) -> CommandResult:
        graph = load_graph(args.graph)
        method = mk_mphi(resolve_phi(args, graph.phi))
        opts = solve_options(args, settings)
        props = [GradualProperty.parse(p) for p in args.check.split(",") if p.strip()]

        degrees = degree_of(method, graph, opts)
        reports = [check_gradual_property(graph, method, p, opts) for p in props]
        failed = not degrees.converged or any(r.status == "fails" for r in reports)

        pretty = f"{method.name}: {'converged' if degrees.converged else 'did not converge'}\n"
        pretty += degrees_table(degrees.deg, "Deg")
        if reports:
            rows = [(r.property.value, r.status, "yes" if r.reformulated else "", r.detail) for r in reports]
            pretty += "\n\n" + table(["property", "status", "reformulated", "detail"], rows)
        return CommandResult(
            output={
                "format": FORMAT,
                "ok": not failed,
                "method": method.name,
                **degrees.to_json(),
                "properties": [r.to_json() for r in reports],
            },
            pretty=pretty,
            failed=failed,
        )
