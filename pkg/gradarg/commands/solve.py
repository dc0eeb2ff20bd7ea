from argparse import ArgumentParser, Namespace

from ..arggraph import initial_labelling
from ..config import Settings
from ..oracle import GRID_STEPS, grid_oracle
from ..schema import FORMAT, dump_result, dump_results, load_graph, load_labelling
from ..solver import SolveResult, enumerate_labellings, find_cycle, forward_acyclic, solve_fixed_point
from .base import BaseCommand, CommandResult
from .common import add_phi_flag, add_solver_flags, degrees_table, resolve_phi, solve_options, table


class SolveCommand(BaseCommand):
    """One phi-coherent labelling: a forward pass on acyclic graphs, iteration otherwise."""

    name = "solve"
    help = "compute a phi-coherent labelling of a graph"

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--graph", required=True, help="graph file (- for stdin)")
        add_phi_flag(parser)
        parser.add_argument("--start", help="labelling file to start from (default: sigma0)")
        parser.add_argument(
            "--method",
            choices=["auto", "iterate", "forward"],
            default="auto",
            help="forward needs an acyclic graph; auto picks it when possible",
        )
        add_solver_flags(parser)

    def __call__(self, args: Namespace, settings: Settings) -> CommandResult:
        graph = load_graph(args.graph)
        phi = resolve_phi(args, graph.phi)
        opts = solve_options(args, settings)
        forward = args.method == "forward" or (
            args.method == "auto" and args.start is None and find_cycle(graph) is None
        )
        if forward:
            labelling = forward_acyclic(graph, phi)
            result = SolveResult(labelling=labelling, iterations=1, residual=0.0, converged=True)
        else:
            start = load_labelling(args.start) if args.start else initial_labelling(graph)
            result = solve_fixed_point(graph, start, phi, opts)
        status = "converged" if result.converged else "did not converge"
        pretty = (
            f"{status} after {result.iterations} iteration(s), residual {result.residual:.3g}\n"
            f"{degrees_table(result.labelling.sigma, 'sigma')}"
        )
        return CommandResult(output=dump_result(result), pretty=pretty, failed=not result.converged)


class EnumerateCommand(BaseCommand):
    """Distinct phi-coherent labellings found from sigma0 and seeded random starts."""

    name = "enumerate"
    help = "enumerate phi-coherent labellings by multi-start iteration"

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--graph", required=True, help="graph file (- for stdin)")
        add_phi_flag(parser)
        add_solver_flags(parser)

    def __call__(self, args: Namespace, settings: Settings) -> CommandResult:
        graph = load_graph(args.graph)
        results = enumerate_labellings(graph, resolve_phi(args, graph.phi), solve_options(args, settings))
        rows = [[r.start, r.iterations, r.residual, *(r.labelling[a] for a in graph.arguments)] for r in results]
        pretty = f"{len(results)} labelling(s)\n{table(['start', 'iters', 'residual', *graph.arguments], rows)}"
        return CommandResult(output=dump_results(results), pretty=pretty, failed=not results)


class OracleCommand(BaseCommand):
    """Grid scan of a small graph, for cross-checking the solver."""

    name = "oracle"
    help = "brute-force grid scan for phi-coherent labellings (at most 4 arguments)"

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--graph", required=True, help="graph file (- for stdin)")
        add_phi_flag(parser)
        parser.add_argument(
            "--grid",
            type=int,
            choices=[round(1 / s) for s in GRID_STEPS],
            default=32,
            help="grid resolution: points per unit interval",
        )
        parser.add_argument("--eps", type=float, help="grid-point residual that makes a candidate")

    def __call__(self, args: Namespace, settings: Settings) -> CommandResult:
        graph = load_graph(args.graph)
        points = grid_oracle(graph, resolve_phi(args, graph.phi), 1 / args.grid, args.eps)
        rows = [[p[a] for a in graph.arguments] for p in points]
        return CommandResult(
            output={"format": FORMAT, "labellings": [{"sigma": p.to_json()} for p in points]},
            pretty=f"{len(points)} fixed point(s)\n{table(list(graph.arguments), rows)}",
            failed=not points,
        )
