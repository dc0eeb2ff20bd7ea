"""The preferential model of a finite set of labellings, conditional queries over it, and the
check that such a model is a coherent (faithful) model of the graph's knowledge base."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from .activation import Activation
from .arggraph import ArgGraph, Labelling, check_labelling
from .bridge import graph_to_kb
from .errors import SchemaError
from .expr import ArgExpr, atoms, is_arg_expr, render
from .fuzzy import GOEDEL, FuzzyLogic, check_degree
from .grammar import parse_query
from .kb import FiniteInterpretation, Inclusion, Theta, check_model, satisfies_axiom
from .report import CheckReport, Coherent, Faithful, PhiCoherent
from .solver import SolveResult

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Provenance:
    start: int | None = None
    residual: float | None = None

    def to_json(self) -> dict[str, Any]:
        return {"start": self.start, "residual": self.residual}


@dataclass(frozen=True)
class LabellingSet:
    graph: ArgGraph
    labellings: tuple[Labelling, ...]
    provenance: tuple[Provenance, ...] = ()

    def __post_init__(self):
        if not self.labellings:
            raise SchemaError("a labelling set needs at least one labelling")
        declared = set(self.graph.arguments)
        for j, labelling in enumerate(self.labellings, start=1):
            keys = set(labelling.sigma)
            if keys != declared:
                missing, extra = sorted(declared - keys), sorted(keys - declared)
                raise SchemaError(f"labelling {j} does not match the graph (missing {missing}, extra {extra})")
        if self.provenance and len(self.provenance) != len(self.labellings):
            raise SchemaError("provenance must have one record per labelling")

    def element(self, j: int) -> str:
        """Domain element standing for the j-th labelling (0-based)."""
        return f"x{j + 1}"


@dataclass(frozen=True)
class ConditionalQuery:
    """`T(antecedent) ⊑ consequent θ threshold`, or without T when `typicality` is off."""

    antecedent: ArgExpr
    consequent: ArgExpr
    typicality: bool = True
    theta: Theta = Theta.GE
    threshold: float = 1.0

    def __post_init__(self):
        check_degree(self.threshold, "query threshold")
        for part in (self.antecedent, self.consequent):
            if not is_arg_expr(part):
                raise SchemaError(f"query expressions may only use arguments: {render(part, concept=False)}")

    @classmethod
    def parse(cls, text: str) -> "ConditionalQuery":
        parsed = parse_query(text)
        return cls(
            antecedent=parsed.antecedent,
            consequent=parsed.consequent,
            typicality=parsed.typicality,
            theta=Theta.parse(parsed.theta),
            threshold=parsed.threshold,
        )

    def __str__(self) -> str:
        lhs = render(self.antecedent, concept=False)
        if self.typicality:
            lhs = f"T({lhs})"
        return f"{lhs} => {render(self.consequent, concept=False)} {self.theta.value} {self.threshold:g}"


@dataclass(frozen=True, kw_only=True)
class QueryAnswer:
    degree: float
    holds: bool
    typical_set: frozenset[str]
    vacuous: bool
    logic: FuzzyLogic

    def to_json(self) -> dict[str, Any]:
        return {
            "ok": self.holds,
            "degree": self.degree,
            "holds": self.holds,
            "typical_set": sorted(self.typical_set),
            "vacuous": self.vacuous,
            "logic": str(self.logic),
        }


def build_model(ls: LabellingSet) -> FiniteInterpretation:
    """Domain x_1..x_n, one element per labelling, with A^I(x_j) = sigma_j(A)."""
    domain = tuple(ls.element(j) for j in range(len(ls.labellings)))
    membership = {
        a: {x: sigma[a] for x, sigma in zip(domain, ls.labellings)} for a in ls.graph.arguments
    }
    return FiniteInterpretation(
        domain=domain,
        membership=membership,
        individuals={x: x for x in domain},
        logic=ls.graph.logic,
    )


def answer_query(interp: FiniteInterpretation, q: ConditionalQuery, logic: FuzzyLogic = GOEDEL) -> QueryAnswer:
    """inf over the domain of implication(antecedent, consequent), compared against the threshold.

    With typicality the antecedent is crisp: 1 on the typical elements, 0 elsewhere.
    """
    for name in {*atoms(q.antecedent), *atoms(q.consequent)}:
        if name not in interp.membership:
            raise SchemaError(f"query names undeclared argument {name!r}")
    inclusion = Inclusion(q.antecedent, q.consequent, q.theta, q.threshold, typical=q.typicality)
    result = satisfies_axiom(interp.with_logic(logic), inclusion)
    return QueryAnswer(
        degree=result.degree,
        holds=result.holds,
        typical_set=result.typical_set or frozenset(),
        vacuous=result.vacuous,
        logic=logic,
    )


def query_labellings(ls: LabellingSet, q: ConditionalQuery, logic: FuzzyLogic = GOEDEL) -> QueryAnswer:
    return answer_query(build_model(ls), q, logic)


def labelling_set_from_results(graph: ArgGraph, results: Sequence[SolveResult]) -> LabellingSet:
    return LabellingSet(
        graph=graph,
        labellings=tuple(r.labelling for r in results),
        provenance=tuple(Provenance(start=r.start, residual=r.residual) for r in results),
    )


@dataclass(frozen=True, kw_only=True)
class LabellingModelReport:
    """Model checks of build_model(ls) against graph_to_kb(graph).

    `coherent` / `faithful` are None when the activation gives no guarantee for that check.
    """

    phi: Activation
    precondition: CheckReport
    coherent: CheckReport | None = None
    faithful: CheckReport | None = None

    @property
    def ok(self) -> bool:
        claimed = [r for r in (self.coherent, self.faithful) if r is not None]
        return self.precondition.ok and all(r.ok for r in claimed)

    def to_json(self) -> dict[str, Any]:
        return {
            "ok": self.ok,
            "phi": self.phi.spec,
            "precondition": self.precondition.to_json(),
            "coherent": None if self.coherent is None else self.coherent.to_json(),
            "faithful": None if self.faithful is None else self.faithful.to_json(),
        }


def verify_labelling_model(ls: LabellingSet, phi: Activation) -> LabellingModelReport:
    """Check that the model of a phi-coherent labelling set is coherent (strictly increasing phi
    with range in (0, 1]) and faithful (any non-decreasing phi) for the graph's conditionals."""
    precondition = CheckReport(mode="phi-coherent")
    for labelling in ls.labellings:
        precondition += check_labelling(ls.graph, labelling, PhiCoherent(phi))
    if not precondition.ok:
        log.info("labelling set is not phi-coherent; no model checks run")
        return LabellingModelReport(phi=phi, precondition=precondition)

    interp = build_model(ls)
    kb = graph_to_kb(ls.graph)
    coherent = None
    if phi.strictly_increasing and phi.positive_range:
        coherent = check_model(interp, kb, Coherent())
    # every supported activation family is non-decreasing
    faithful = check_model(interp, kb, Faithful())
    return LabellingModelReport(phi=phi, precondition=precondition, coherent=coherent, faithful=faithful)
