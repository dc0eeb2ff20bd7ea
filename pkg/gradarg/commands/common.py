"""Flags and text rendering shared by the subcommands."""

from argparse import ArgumentParser, Namespace
from collections.abc import Iterable, Mapping, Sequence
from typing import Any

from ..activation import Activation, parse_activation
from ..config import Settings
from ..errors import UsageError
from ..report import CheckReport
from ..solver import SolveOptions


def add_phi_flag(parser: ArgumentParser) -> None:
    parser.add_argument(
        "--phi",
        help="activation: logistic:<gain>:<offset> | relu-clamped | ramp:<lo>:<hi> (default: from the input file)",
    )


def resolve_phi(args: Namespace, default: Activation | None) -> Activation:
    if args.phi:
        return parse_activation(args.phi)
    if default is None:
        raise UsageError("no activation given: pass --phi or set 'phi' in the input file")
    return default


def add_solver_flags(parser: ArgumentParser) -> None:
    group = parser.add_argument_group("solver")
    group.add_argument("--tol", type=float, help="residual tolerance")
    group.add_argument("--max-iters", type=int, help="iteration cap per start")
    group.add_argument("--damping", type=float, help="damping in (0, 1]")
    group.add_argument("--restarts", type=int, help="number of starts (sigma0 plus random ones)")
    group.add_argument("--seed", type=int, help="seed for the random starts")


def solve_options(args: Namespace, settings: Settings) -> SolveOptions:
    opts = settings.solve_options()
    flags = {
        "tol": args.tol,
        "max_iters": args.max_iters,
        "damping": args.damping,
        "restarts": args.restarts,
        "rng_seed": args.seed,
    }
    return opts.replace(**{k: v for k, v in flags.items() if v is not None})


def table(headers: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    cells = [[str(h) for h in headers]] + [[_cell(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def degrees_table(values: Mapping[str, float], title: str = "degree") -> str:
    return table(["argument", title], values.items())


def report_text(report: CheckReport) -> str:
    head = f"{report.mode}: {'ok' if report.ok else f'{len(report.violations)} violation(s)'}"
    if report.ok:
        return head
    rows = [(v.kind, v.subject, v.x, v.y, v.lhs, v.rhs) for v in report.violations]
    return f"{head}\n{table(['kind', 'subject', 'x', 'y', 'lhs', 'rhs'], rows)}"
