from argparse import ArgumentParser, Namespace

from ..config import Settings
from ..fuzzy import FuzzyLogic
from ..kb import preference_table
from ..prefmodel import ConditionalQuery, build_model, labelling_set_from_results, query_labellings
from ..schema import FORMAT, load_graph, load_labelling_set
from ..solver import enumerate_labellings
from .base import BaseCommand, CommandResult
from .common import add_phi_flag, add_solver_flags, resolve_phi, solve_options


class QueryCommand(BaseCommand):
    """`T(A) => B θ n` over the model of a labelling set.

    Without --labellings the set is produced by enumerate with the given solver flags.
    """

    name = "query"
    help = "answer a fuzzy conditional query over a set of labellings"

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--graph", required=True, help="graph file")
        parser.add_argument("--labellings", help="labelling set or enumerate output (default: enumerate now)")
        parser.add_argument("--query", required=True, help='e.g. "T(A1) => A2 > 0.7"')
        parser.add_argument("--logic", default="goedel", help="implication family for the query")
        add_phi_flag(parser)
        add_solver_flags(parser)

    def __call__(self, args: Namespace, settings: Settings) -> CommandResult:
        graph = load_graph(args.graph)
        query = ConditionalQuery.parse(args.query)
        logic = FuzzyLogic.parse(args.logic)
        if args.labellings:
            ls = load_labelling_set(args.labellings, graph)
        else:
            results = enumerate_labellings(graph, resolve_phi(args, graph.phi), solve_options(args, settings))
            ls = labelling_set_from_results(graph, results)
        answer = query_labellings(ls, query, logic)

        verdict = "holds" if answer.holds else "does not hold"
        pretty = f"{query}: {verdict} (degree {answer.degree:.6g}, {logic} implication)"
        if answer.vacuous:
            pretty += "\nvacuous: the antecedent is 0 on every labelling"
        if query.typicality:
            typical = ", ".join(sorted(answer.typical_set)) or "none"
            interp = build_model(ls)
            pretty += f"\ntypical: {typical}\n{preference_table(interp, query.antecedent)}"
        return CommandResult(
            output={
                "format": FORMAT,
                "query": str(query),
                "labellings": len(ls.labellings),
                **answer.to_json(),
            },
            pretty=pretty,
            failed=not answer.holds,
        )
