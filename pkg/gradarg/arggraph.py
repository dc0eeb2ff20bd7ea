"""Weighted bipolar argumentation graphs whose edge sources may be boolean combinations of
arguments, labellings, the weight W^G_sigma, and the labelling checkers."""

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field, replace
from functools import cached_property

import networkx as nx

from .activation import Activation
from .errors import SchemaError, UsageError
from .expr import ArgExpr, Atom, And, Bot, Not, Or, Top, atoms, evaluate, is_arg_expr, render
from .fuzzy import EPS_DEG, EPS_W, ZADEH, FuzzyLogic, check_degree, finite
from .report import CheckMode, CheckReport, Coherent, Faithful, PhiCoherent, Violation, breaks_order

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Edge:
    source: ArgExpr
    target: str
    weight: float

    @property
    def atomic(self) -> bool:
        return isinstance(self.source, Atom)

    def __str__(self) -> str:
        return f"{render(self.source, concept=False)} -> {self.target} ({self.weight:+g})"


@dataclass(frozen=True)
class ArgGraph:
    """Arguments, weighted edges, basic strengths sigma0 and optional per-argument activations.

    `phi` is the graph's default activation when the file names one; operations that need an
    activation take it as a parameter and fall back to `phi` only at the command layer.
    """

    arguments: tuple[str, ...]
    edges: tuple[Edge, ...] = ()
    sigma0: Mapping[str, float] = field(default_factory=dict)
    logic: FuzzyLogic = ZADEH
    phi: Activation | None = None
    phi_override: Mapping[str, Activation] = field(default_factory=dict)

    def __post_init__(self):
        declared = set(self.arguments)
        if len(declared) != len(self.arguments):
            raise SchemaError("graph has repeated arguments")
        for edge in self.edges:
            if edge.target not in declared:
                raise SchemaError(f"edge {edge} targets undeclared argument {edge.target!r}")
            if not is_arg_expr(edge.source):
                raise SchemaError(f"edge source of {edge} may not use top/bottom")
            missing = sorted(set(atoms(edge.source)) - declared)
            if missing:
                raise SchemaError(f"edge {edge} uses undeclared argument(s) {missing}")
        missing = sorted(declared - set(self.sigma0))
        if missing:
            raise SchemaError(f"sigma0 is missing argument(s) {missing}")
        for a, value in self.sigma0.items():
            if a not in declared:
                raise SchemaError(f"sigma0 names undeclared argument {a!r}")
            check_degree(value, f"sigma0({a})")
        unknown = sorted(set(self.phi_override) - declared)
        if unknown:
            raise SchemaError(f"phi_override names undeclared argument(s) {unknown}")

    @cached_property
    def incoming_map(self) -> dict[str, tuple[Edge, ...]]:
        grouped: dict[str, list[Edge]] = {a: [] for a in self.arguments}
        for edge in self.edges:
            grouped[edge.target].append(edge)
        return {a: tuple(edges) for a, edges in grouped.items()}

    @cached_property
    def constrained(self) -> tuple[str, ...]:
        """Arguments with at least one incoming edge (whatever its weight)."""
        return tuple(a for a in self.arguments if self.incoming_map[a])

    @cached_property
    def sources(self) -> tuple[str, ...]:
        return tuple(a for a in self.arguments if not self.incoming_map[a])

    @property
    def atomic(self) -> bool:
        return all(edge.atomic for edge in self.edges)

    def activation(self, a: str, phi: Activation) -> Activation:
        return self.phi_override.get(a, phi)

    def dependency_graph(self) -> nx.DiGraph:
        """Directed graph with an arc from every argument a source mentions to the target."""
        g = nx.DiGraph()
        g.add_nodes_from(self.arguments)
        for edge in self.edges:
            for a in atoms(edge.source):
                g.add_edge(a, edge.target)
        return g

    def with_sigma0(self, values: Mapping[str, float]) -> "ArgGraph":
        return replace(self, sigma0={**self.sigma0, **values})

    def with_edges(self, *edges: Edge) -> "ArgGraph":
        return replace(self, edges=(*self.edges, *edges))

    def rename(self, mapping: Mapping[str, str]) -> "ArgGraph":
        """Rename arguments; names missing from `mapping` are kept."""

        def name(a: str) -> str:
            return mapping.get(a, a)

        return ArgGraph(
            arguments=tuple(name(a) for a in self.arguments),
            edges=tuple(
                Edge(_rename_expr(e.source, name), name(e.target), e.weight) for e in self.edges
            ),
            sigma0={name(a): v for a, v in self.sigma0.items()},
            logic=self.logic,
            phi=self.phi,
            phi_override={name(a): p for a, p in self.phi_override.items()},
        )

    def union(self, other: "ArgGraph") -> "ArgGraph":
        """Disjoint union; the argument names must not overlap."""
        clash = set(self.arguments) & set(other.arguments)
        if clash:
            raise UsageError(f"graphs share argument(s) {sorted(clash)}")
        return ArgGraph(
            arguments=(*self.arguments, *other.arguments),
            edges=(*self.edges, *other.edges),
            sigma0={**self.sigma0, **other.sigma0},
            logic=self.logic,
            phi=self.phi,
            phi_override={**self.phi_override, **other.phi_override},
        )


def _rename_expr(expr: ArgExpr, name) -> ArgExpr:
    match expr:
        case Atom(a):
            return Atom(name(a))
        case Not(operand):
            return Not(_rename_expr(operand, name))
        case And(left, right):
            return And(_rename_expr(left, name), _rename_expr(right, name))
        case Or(left, right):
            return Or(_rename_expr(left, name), _rename_expr(right, name))
        case Top() | Bot():
            return expr


@dataclass(frozen=True)
class Labelling:
    """A total map from arguments to acceptability degrees."""

    sigma: Mapping[str, float]

    def __post_init__(self):
        for a, value in self.sigma.items():
            check_degree(value, f"sigma({a})")

    def __getitem__(self, a: str) -> float:
        try:
            return self.sigma[a]
        except KeyError:
            raise SchemaError(f"labelling has no value for argument {a!r}") from None

    def __iter__(self):
        return iter(self.sigma)

    def __len__(self) -> int:
        return len(self.sigma)

    def distance(self, other: "Labelling") -> float:
        """Max-norm distance over the union of both domains (missing values count as 0)."""
        keys = set(self.sigma) | set(other.sigma)
        return max((abs(self.sigma.get(k, 0.0) - other.sigma.get(k, 0.0)) for k in keys), default=0.0)

    def updated(self, values: Mapping[str, float]) -> "Labelling":
        return Labelling({**self.sigma, **values})

    def to_json(self) -> dict[str, float]:
        return dict(self.sigma)


def initial_labelling(graph: ArgGraph) -> Labelling:
    return Labelling(dict(graph.sigma0))


def _require_total(graph: ArgGraph, labelling: Labelling):
    missing = [a for a in graph.arguments if a not in labelling.sigma]
    if missing:
        raise SchemaError(f"labelling is missing argument(s) {missing}")


def incoming(graph: ArgGraph, a: str) -> tuple[Edge, ...]:
    """R^-(a): every edge whose target is `a`, boolean sources included."""
    try:
        return graph.incoming_map[a]
    except KeyError:
        raise UsageError(f"unknown argument {a!r}") from None


def eval_arg_expr(labelling: Labelling, expr: ArgExpr, logic: FuzzyLogic) -> float:
    return evaluate(expr, labelling.__getitem__, logic)


def weight_of_argument(graph: ArgGraph, labelling: Labelling, a: str) -> float | None:
    """W^G_sigma(a); None (undefined) when `a` has no incoming edge."""
    edges = incoming(graph, a)
    if not edges:
        return None
    return sum((e.weight * eval_arg_expr(labelling, e.source, graph.logic) for e in edges), 0.0)


def weights(graph: ArgGraph, labelling: Labelling) -> dict[str, float]:
    """W^G_sigma on every constrained argument."""
    result = {}
    for a in graph.constrained:
        w = weight_of_argument(graph, labelling, a)
        assert w is not None
        result[a] = w
    return result


def residual(graph: ArgGraph, labelling: Labelling, phi: Activation) -> float:
    """max over constrained a of |sigma(a) - phi_a(W(a))|; 0 when nothing is constrained."""
    _require_total(graph, labelling)
    return max(
        (
            abs(labelling[a] - graph.activation(a, phi)(w))
            for a, w in weights(graph, labelling).items()
        ),
        default=0.0,
    )


def check_labelling(
    graph: ArgGraph,
    labelling: Labelling,
    mode: CheckMode,
    eps_deg: float = EPS_DEG,
    eps_w: float = EPS_W,
) -> CheckReport:
    """Check a labelling against the coherent, faithful or phi-coherent semantics.

    Only arguments with incoming edges are constrained; the others only feed weights.
    """
    _require_total(graph, labelling)
    w = weights(graph, labelling)
    violations: list[Violation] = []
    match mode:
        case Coherent() | Faithful():
            for a in graph.constrained:
                for b in graph.constrained:
                    if a == b:
                        continue
                    if not breaks_order(mode, labelling[b], labelling[a], finite(w[b]), finite(w[a]), eps_deg, eps_w):
                        continue
                    violations.append(
                        Violation(
                            kind="coherence" if isinstance(mode, Coherent) else "faithfulness",
                            subject=a,
                            x=a,
                            y=b,
                            lhs=w[a],
                            rhs=w[b],
                            detail=(
                                f"sigma({a})={labelling[a]:g}, sigma({b})={labelling[b]:g}, "
                                f"W({a})={w[a]:g}, W({b})={w[b]:g}"
                            ),
                        )
                    )
        case PhiCoherent(phi):
            for a in graph.constrained:
                target = graph.activation(a, phi)(w[a])
                if abs(labelling[a] - target) > eps_deg:
                    violations.append(
                        Violation(
                            kind="phi-coherence",
                            subject=a,
                            x=a,
                            lhs=labelling[a],
                            rhs=target,
                            detail=f"sigma({a})={labelling[a]:g} but phi(W)={target:g} (W={w[a]:g})",
                        )
                    )
    log.debug("check_labelling %s: %d violation(s)", mode.name, len(violations))
    return CheckReport(mode=mode.name, violations=tuple(violations))


def graph_arguments(edges: Iterable[Edge]) -> list[str]:
    """Arguments mentioned by `edges`, in first-mention order."""
    seen: dict[str, None] = {}
    for edge in edges:
        for a in atoms(edge.source):
            seen.setdefault(a)
        seen.setdefault(edge.target)
    return list(seen)
