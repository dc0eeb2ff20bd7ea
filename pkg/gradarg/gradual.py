"""Evaluation methods <h, g, f> for gradual semantics, the M^phi instance, and checkers for the
gradual-semantics properties M^phi is known to satisfy (or, for neutrality, to violate)."""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any, Literal

import networkx as nx
import numpy as np

from .activation import Activation, FloatArray
from .arggraph import ArgGraph, Edge, Labelling
from .errors import UnsupportedShapeError, UsageError
from .expr import Atom
from .solver import SolveOptions, run_iteration

log = logging.getLogger(__name__)

# directionality tries at most this many added edges
MAX_DIRECTIONALITY_EDGES = 32
NEUTRAL_ARGUMENT = "__neutral"


@dataclass(frozen=True)
class EvaluationMethod:
    """h combines an edge weight with the source's degree, g aggregates (None when there is
    nothing to aggregate), f maps basic strength and aggregate to the final degree."""

    h: Callable[[float, float], float]
    g: Callable[[Sequence[float]], float | None]
    f: Callable[[float, float | None], float]
    name: str = "custom"


def h_prod(weight: float, strength: float) -> float:
    return weight * strength


def g_sum(values: Sequence[float]) -> float | None:
    if not values:
        return None
    return float(sum(values))


def mk_mphi(phi: Activation) -> EvaluationMethod:
    def f_phi(basic: float, aggregate: float | None) -> float:
        # the basic strength only matters when nothing attacks or supports
        return basic if aggregate is None else phi(aggregate)

    return EvaluationMethod(h=h_prod, g=g_sum, f=f_phi, name=f"M[{phi.spec}]")


@dataclass(frozen=True, kw_only=True)
class DegreeResult:
    weighting: Labelling
    converged: bool
    residual: float
    iterations: int = 0

    @property
    def deg(self) -> dict[str, float]:
        return dict(self.weighting.sigma)

    def to_json(self) -> dict[str, Any]:
        return {
            "deg": self.deg,
            "converged": self.converged,
            "residual": self.residual,
            "iterations": self.iterations,
        }


def _update_fn(method: EvaluationMethod, graph: ArgGraph) -> Callable[[FloatArray], FloatArray]:
    names = list(graph.arguments)
    index = {a: i for i, a in enumerate(names)}
    basic = [graph.sigma0[a] for a in names]
    incoming = [
        [(e.weight, index[e.source.name]) for e in graph.incoming_map[a] if isinstance(e.source, Atom)]
        for a in names
    ]

    def update(x: FloatArray) -> FloatArray:
        return np.array(
            [
                method.f(basic[i], method.g([method.h(w, float(x[j])) for w, j in incoming[i]]))
                for i in range(len(names))
            ],
            dtype=np.float64,
        )

    return update


def degree_of(method: EvaluationMethod, graph: ArgGraph, opts: SolveOptions | None = None) -> DegreeResult:
    """Solve Deg(a) = f(sigma0(a), g(h(w, Deg(b)) for every edge b -> a)) by iteration from sigma0."""
    opts = opts or SolveOptions()
    if not graph.atomic:
        raise UnsupportedShapeError(
            "evaluation methods only cover atomic edge sources; "
            "use the labelling semantics (solve/check-labelling) for boolean sources"
        )
    if graph.phi_override:
        raise UnsupportedShapeError(
            f"evaluation methods apply one f to every argument; graph overrides phi for "
            f"{', '.join(sorted(graph.phi_override))} (use solve/check-labelling for per-argument activations)"
        )
    x0 = np.array([graph.sigma0[a] for a in graph.arguments], dtype=np.float64)
    mask = np.ones(len(graph.arguments), dtype=bool)
    outcome = run_iteration(_update_fn(method, graph), x0, mask, opts)
    weighting = Labelling({a: float(v) for a, v in zip(graph.arguments, np.clip(outcome.x, 0.0, 1.0))})
    return DegreeResult(
        weighting=weighting,
        converged=outcome.converged,
        residual=outcome.residual,
        iterations=outcome.iterations,
    )


class GradualProperty(StrEnum):
    ANONYMITY = "anonymity"
    INDEPENDENCE = "independence"
    DIRECTIONALITY = "directionality"
    EQUIVALENCE = "equivalence"
    MAXIMALITY = "maximality"
    NEUTRALITY_WITNESS = "neutrality-witness"

    @classmethod
    def parse(cls, name: str) -> "GradualProperty":
        key = name.strip().lower().replace("_", "-")
        if key == "neutrality":
            key = cls.NEUTRALITY_WITNESS.value
        try:
            return cls(key)
        except ValueError:
            choices = ", ".join(p.value for p in cls)
            raise UsageError(f"unknown property {name!r}, expected one of {choices}") from None


# read with incoming edges in place of attackers, so weights of both signs count
REFORMULATED = frozenset({GradualProperty.EQUIVALENCE, GradualProperty.MAXIMALITY})

PropertyStatus = Literal["holds", "fails", "inconclusive"]


@dataclass(frozen=True, kw_only=True)
class PropertyReport:
    """`holds` for neutrality-witness means a counterexample to neutrality was produced."""

    property: GradualProperty
    status: PropertyStatus
    detail: str = ""
    witness: dict[str, Any] | None = None
    checked: int = 0
    skipped: int = 0

    @property
    def reformulated(self) -> bool:
        return self.property in REFORMULATED

    @property
    def ok(self) -> bool:
        return self.status != "fails"

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "property": self.property.value,
            "status": self.status,
            "reformulated": self.reformulated,
            "checked": self.checked,
            "skipped": self.skipped,
        }
        if self.detail:
            data["detail"] = self.detail
        if self.witness is not None:
            data["witness"] = self.witness
        return data


@dataclass
class _Tally:
    prop: GradualProperty
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    checked: int = 0
    skipped: int = 0

    def report(self, vacuous: str = "") -> PropertyReport:
        if self.failures:
            status: PropertyStatus = "fails"
            detail = "; ".join(self.failures[:5])
        elif self.checked:
            status, detail = "holds", ""
        elif self.skipped:
            status, detail = "inconclusive", "no comparison could be completed"
        else:
            status, detail = "holds", vacuous
        detail = "; ".join(filter(None, [detail, *self.notes]))
        return PropertyReport(
            property=self.prop,
            status=status,
            detail=detail,
            checked=self.checked,
            skipped=self.skipped,
        )


def _close(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol


def _fresh(graph: ArgGraph, stem: str) -> str:
    name, k = stem, 0
    while name in graph.arguments:
        k += 1
        name = f"{stem}{k}"
    return name


def _anonymity(graph, method, base, opts, tol) -> PropertyReport:
    tally = _Tally(GradualProperty.ANONYMITY)
    mapping = {a: _fresh(graph, f"__anon{i}") for i, a in enumerate(graph.arguments)}
    other = degree_of(method, graph.rename(mapping), opts)
    if not other.converged:
        tally.skipped += 1
        return tally.report()
    for a in graph.arguments:
        tally.checked += 1
        if not _close(base.deg[a], other.deg[mapping[a]], tol):
            tally.failures.append(f"Deg({a})={base.deg[a]:g} but renamed {other.deg[mapping[a]]:g}")
    return tally.report(vacuous="graph has no arguments")


def _independence(graph, method, base, opts, tol) -> PropertyReport:
    tally = _Tally(GradualProperty.INDEPENDENCE)
    copy = graph.rename({a: _fresh(graph, f"{a}__copy") for a in graph.arguments})
    joint = degree_of(method, graph.union(copy), opts)
    if not joint.converged:
        tally.skipped += 1
        return tally.report()
    for a in graph.arguments:
        tally.checked += 1
        if not _close(base.deg[a], joint.deg[a], tol):
            tally.failures.append(f"Deg({a}) moved from {base.deg[a]:g} to {joint.deg[a]:g}")
    return tally.report(vacuous="graph has no arguments")


def _directionality(graph, method, base, opts, tol) -> PropertyReport:
    tally = _Tally(GradualProperty.DIRECTIONALITY)
    pairs = [(a, b) for a in graph.arguments for b in graph.arguments]
    if len(pairs) > MAX_DIRECTIONALITY_EDGES:
        tally.skipped += len(pairs) - MAX_DIRECTIONALITY_EDGES
        tally.notes.append(f"only the first {MAX_DIRECTIONALITY_EDGES} of {len(pairs)} candidate edges were tried")
        pairs = pairs[:MAX_DIRECTIONALITY_EDGES]
    for a, b in pairs:
        extended = graph.with_edges(Edge(Atom(a), b, 1.0))
        reach = nx.descendants(extended.dependency_graph(), b) | {b}
        untouched = [c for c in graph.arguments if c not in reach]
        if not untouched:
            continue
        result = degree_of(method, extended, opts)
        if not result.converged:
            tally.skipped += 1
            continue
        tally.checked += 1
        for c in untouched:
            if not _close(base.deg[c], result.deg[c], tol):
                tally.failures.append(
                    f"adding {a} -> {b} moved Deg({c}) from {base.deg[c]:g} to {result.deg[c]:g}"
                )
    return tally.report(vacuous="no added edge leaves an argument unreachable")


def _profile(graph: ArgGraph, deg: dict[str, float], a: str) -> list[tuple[float, float]]:
    return sorted((e.weight, deg[e.source.name]) for e in graph.incoming_map[a] if isinstance(e.source, Atom))


def _same_profile(p: list[tuple[float, float]], q: list[tuple[float, float]], tol: float) -> bool:
    return len(p) == len(q) and all(_close(w1, w2, tol) and _close(d1, d2, tol) for (w1, d1), (w2, d2) in zip(p, q))


def _equivalence(graph, method, base, opts, tol) -> PropertyReport:
    tally = _Tally(GradualProperty.EQUIVALENCE)
    args = graph.arguments
    profiles = {a: _profile(graph, base.deg, a) for a in args}
    for i, a in enumerate(args):
        for b in args[i + 1 :]:
            if not _close(graph.sigma0[a], graph.sigma0[b], tol):
                continue
            if not _same_profile(profiles[a], profiles[b], tol):
                continue
            tally.checked += 1
            if not _close(base.deg[a], base.deg[b], tol):
                tally.failures.append(f"{a} and {b} are equivalent but Deg differs ({base.deg[a]:g} vs {base.deg[b]:g})")
    return tally.report(vacuous="no pair of arguments is equivalent")


def _maximality(graph, method, base, opts, tol) -> PropertyReport:
    tally = _Tally(GradualProperty.MAXIMALITY)
    for a in graph.sources:
        tally.checked += 1
        if not _close(base.deg[a], graph.sigma0[a], tol):
            tally.failures.append(f"Deg({a})={base.deg[a]:g} but sigma0({a})={graph.sigma0[a]:g}")
    return tally.report(vacuous="every argument has incoming edges")


def _neutrality_pairs(graph: ArgGraph) -> list[tuple[str, ArgGraph, ArgGraph]]:
    """(argument, graph with weight-0 edges, graph without them) candidates."""
    pairs = []
    for a in graph.constrained:
        edges = graph.incoming_map[a]
        if all(e.weight == 0 for e in edges):
            stripped = ArgGraph(
                arguments=graph.arguments,
                edges=tuple(e for e in graph.edges if e.target != a),
                sigma0=graph.sigma0,
                logic=graph.logic,
                phi=graph.phi,
            )
            pairs.append((a, graph, stripped))
    if graph.sources:
        neutral = _fresh(graph, NEUTRAL_ARGUMENT)
        for a in graph.sources:
            padded = ArgGraph(
                arguments=(*graph.arguments, neutral),
                edges=(*graph.edges, Edge(Atom(neutral), a, 0.0)),
                sigma0={**graph.sigma0, neutral: 1.0},
                logic=graph.logic,
                phi=graph.phi,
            )
            pairs.append((a, padded, graph))
    return pairs


def _neutrality_witness(graph, method, base, opts, tol) -> PropertyReport:
    skipped = 0
    for a, with_edge, without_edge in _neutrality_pairs(graph):
        left = degree_of(method, with_edge, opts)
        right = degree_of(method, without_edge, opts)
        if not (left.converged and right.converged):
            skipped += 1
            continue
        gap = abs(left.deg[a] - right.deg[a])
        if gap > tol:
            return PropertyReport(
                property=GradualProperty.NEUTRALITY_WITNESS,
                status="holds",
                detail=f"a weight-0 edge into {a} changes Deg({a}) by {gap:g}",
                witness={
                    "argument": a,
                    "with_zero_edge": left.deg[a],
                    "without_edge": right.deg[a],
                    "difference": gap,
                },
                checked=1,
                skipped=skipped,
            )
    return PropertyReport(
        property=GradualProperty.NEUTRALITY_WITNESS,
        status="inconclusive",
        detail="no argument of this graph yields a neutrality counterexample",
        skipped=skipped,
    )


_CHECKERS = {
    GradualProperty.ANONYMITY: _anonymity,
    GradualProperty.INDEPENDENCE: _independence,
    GradualProperty.DIRECTIONALITY: _directionality,
    GradualProperty.EQUIVALENCE: _equivalence,
    GradualProperty.MAXIMALITY: _maximality,
    GradualProperty.NEUTRALITY_WITNESS: _neutrality_witness,
}


def check_gradual_property(
    graph: ArgGraph,
    method: EvaluationMethod,
    prop: GradualProperty,
    opts: SolveOptions | None = None,
) -> PropertyReport:
    """Check one property against the iterate-from-sigma0 semantics of `method`.

    Degrees are compared within `opts.dedupe_tol`. Runs that do not converge make the
    comparisons that need them inconclusive.
    """
    opts = opts or SolveOptions()
    base = degree_of(method, graph, opts)
    if not base.converged and prop is not GradualProperty.NEUTRALITY_WITNESS:
        return PropertyReport(
            property=prop,
            status="inconclusive",
            detail=f"degree_of did not converge (residual {base.residual:g})",
            skipped=1,
        )
    report = _CHECKERS[prop](graph, method, base, opts, opts.dedupe_tol)
    log.debug("%s: %s (%d checked, %d skipped)", prop.value, report.status, report.checked, report.skipped)
    return report
