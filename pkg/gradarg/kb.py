"""Weighted conditional knowledge bases over the boolean fragment with typicality, finite fuzzy
interpretations, and the coherent / faithful / phi-coherent model checkers."""

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field, replace
from enum import StrEnum

from .activation import apply_activation
from .errors import SchemaError, UsageError
from .expr import Atom, ConceptExpr, atoms, evaluate, render
from .fuzzy import BOTTOM, EPS_DEG, EPS_W, ZADEH, ExtendedReal, FuzzyLogic, check_degree, finite
from .report import CheckMode, CheckReport, Coherent, Faithful, PhiCoherent, Violation, breaks_order

log = logging.getLogger(__name__)


class Theta(StrEnum):
    GE = ">="
    LE = "<="
    GT = ">"
    LT = "<"

    @classmethod
    def parse(cls, text: str) -> "Theta":
        aliases = {"≥": ">=", "≤": "<=", "=>": ">="}
        try:
            return cls(aliases.get(text.strip(), text.strip()))
        except ValueError:
            raise SchemaError(f"unknown comparison {text!r}, expected >=, <=, > or <") from None

    def holds(self, degree: float, threshold: float, eps: float = EPS_DEG) -> bool:
        match self:
            case Theta.GE:
                return degree >= threshold - eps
            case Theta.LE:
                return degree <= threshold + eps
            case Theta.GT:
                return degree > threshold + eps
            case Theta.LT:
                return degree < threshold - eps


@dataclass(frozen=True)
class Inclusion:
    """`lhs ⊑ rhs θ n`, or `T(lhs) ⊑ rhs θ n` when `typical` is set."""

    lhs: ConceptExpr
    rhs: ConceptExpr
    theta: Theta = Theta.GE
    threshold: float = 1.0
    typical: bool = False

    def __post_init__(self):
        check_degree(self.threshold, "threshold")

    def __str__(self) -> str:
        lhs = f"T({render(self.lhs)})" if self.typical else render(self.lhs)
        return f"{lhs} ⊑ {render(self.rhs)} {self.theta.value} {self.threshold:g}"


@dataclass(frozen=True)
class Assertion:
    """`concept(individual) θ n`."""

    concept: ConceptExpr
    individual: str
    theta: Theta = Theta.GE
    threshold: float = 1.0

    def __post_init__(self):
        check_degree(self.threshold, "threshold")

    def __str__(self) -> str:
        return f"{render(self.concept)}({self.individual}) {self.theta.value} {self.threshold:g}"


FuzzyAxiom = Inclusion | Assertion


@dataclass(frozen=True)
class WeightedInclusion:
    """`T(subject) ⊑ body` with a real weight."""

    subject: str
    body: ConceptExpr
    weight: float

    def __str__(self) -> str:
        return f"T({self.subject}) ⊑ {render(self.body)}, {self.weight:+g}"


@dataclass(frozen=True)
class WeightedKB:
    atoms: tuple[str, ...]
    strict: tuple[Inclusion, ...] = ()
    assertions: tuple[Assertion, ...] = ()
    conditionals: Mapping[str, tuple[WeightedInclusion, ...]] = field(default_factory=dict)
    logic: FuzzyLogic = ZADEH
    individuals: tuple[str, ...] = ()
    definitions: Mapping[str, ConceptExpr] = field(default_factory=dict)

    def __post_init__(self):
        names = set(self.atoms) | set(self.definitions)
        clash = set(self.atoms) & set(self.definitions)
        if clash:
            raise SchemaError(f"names both atomic and defined: {sorted(clash)}")
        for name, expr in self.definitions.items():
            if name in set(atoms(expr)):
                raise SchemaError(f"definition of {name} refers to itself")
            self._check_declared(atoms(expr), names, f"definition of {name}")
        for axiom in self.strict:
            self._check_declared([*atoms(axiom.lhs), *atoms(axiom.rhs)], names, str(axiom))
        for axiom in self.assertions:
            self._check_declared(atoms(axiom.concept), names, str(axiom))
        for subject, inclusions in self.conditionals.items():
            if subject not in names:
                raise SchemaError(f"distinguished concept {subject!r} is not declared")
            if not inclusions:
                raise SchemaError(f"distinguished concept {subject!r} has no weighted inclusions")
            for inclusion in inclusions:
                if inclusion.subject != subject:
                    raise SchemaError(f"{inclusion} filed under {subject!r}")
                self._check_declared(atoms(inclusion.body), names, str(inclusion))

    @staticmethod
    def _check_declared(used: Iterable[str], declared: set[str], where: str):
        missing = sorted(set(used) - declared)
        if missing:
            raise SchemaError(f"undeclared concept name(s) {missing} in {where}")

    @property
    def distinguished(self) -> tuple[str, ...]:
        return tuple(self.conditionals)

    def subject_expr(self, name: str) -> ConceptExpr:
        return Atom(name)


@dataclass(frozen=True)
class FiniteInterpretation:
    """A finite domain, a membership table for atomic concepts and an individual map."""

    domain: tuple[str, ...]
    membership: Mapping[str, Mapping[str, float]]
    individuals: Mapping[str, str] = field(default_factory=dict)
    logic: FuzzyLogic = ZADEH

    def __post_init__(self):
        if not self.domain:
            raise SchemaError("interpretation domain must be non-empty")
        if len(set(self.domain)) != len(self.domain):
            raise SchemaError("interpretation domain has repeated elements")
        elements = set(self.domain)
        for atom, row in self.membership.items():
            missing = elements - set(row)
            if missing:
                raise SchemaError(f"membership of {atom} is missing elements {sorted(missing)}")
            extra = set(row) - elements
            if extra:
                raise SchemaError(f"membership of {atom} names unknown elements {sorted(extra)}")
            for x, value in row.items():
                check_degree(value, f"{atom}({x})")
        for name, x in self.individuals.items():
            if x not in elements:
                raise SchemaError(f"individual {name} is bound to unknown element {x!r}")

    @property
    def atoms(self) -> tuple[str, ...]:
        return tuple(self.membership)

    def with_logic(self, logic: FuzzyLogic) -> "FiniteInterpretation":
        return self if logic == self.logic else replace(self, logic=logic)

    def degree(self, atom: str, x: str) -> float:
        row = self.membership.get(atom)
        if row is None:
            raise SchemaError(f"concept {atom!r} is not declared in the interpretation")
        try:
            return row[x]
        except KeyError:
            raise SchemaError(f"{x!r} is not a domain element") from None


def _value_of(interp: FiniteInterpretation, x: str, definitions: Mapping[str, ConceptExpr] | None):
    def value_of(name: str) -> float:
        if definitions and name in definitions:
            return evaluate(definitions[name], value_of, interp.logic)
        return interp.degree(name, x)

    return value_of


def eval_concept(
    interp: FiniteInterpretation,
    expr: ConceptExpr,
    x: str,
    definitions: Mapping[str, ConceptExpr] | None = None,
) -> float:
    """C^I(x), evaluated compositionally with the interpretation's logic."""
    if x not in interp.domain:
        raise SchemaError(f"{x!r} is not a domain element")
    return evaluate(expr, _value_of(interp, x, definitions), interp.logic)


def _degrees(interp, expr, definitions) -> dict[str, float]:
    return {x: eval_concept(interp, expr, x, definitions) for x in interp.domain}


def induced_preference(
    interp: FiniteInterpretation,
    expr: ConceptExpr,
    eps: float = EPS_DEG,
    definitions: Mapping[str, ConceptExpr] | None = None,
) -> frozenset[tuple[str, str]]:
    """Pairs (x, y) with x <_C y, i.e. C^I(x) > C^I(y)."""
    degree = _degrees(interp, expr, definitions)
    return frozenset(
        (x, y) for x in interp.domain for y in interp.domain if degree[x] > degree[y] + eps
    )


def preference_levels(
    interp: FiniteInterpretation,
    expr: ConceptExpr,
    eps: float = EPS_DEG,
    definitions: Mapping[str, ConceptExpr] | None = None,
) -> list[tuple[float, list[str]]]:
    """Domain elements grouped into ranks, most preferred first."""
    degree = _degrees(interp, expr, definitions)
    levels: list[tuple[float, list[str]]] = []
    for x in sorted(interp.domain, key=lambda e: -degree[e]):
        if levels and abs(levels[-1][0] - degree[x]) <= eps:
            levels[-1][1].append(x)
        else:
            levels.append((degree[x], [x]))
    return levels


def preference_table(
    interp: FiniteInterpretation,
    expr: ConceptExpr,
    eps: float = EPS_DEG,
    definitions: Mapping[str, ConceptExpr] | None = None,
) -> str:
    """Text table of the ranks of <_C, rank 0 first."""
    levels = preference_levels(interp, expr, eps, definitions)
    lines = [f"{'rank':>4}  {'degree':>10}  elements", f"{'-' * 4}  {'-' * 10}  {'-' * 8}"]
    for rank, (degree, elements) in enumerate(levels):
        lines.append(f"{rank:>4}  {degree:>10.6g}  {', '.join(elements)}")
    return "\n".join(lines)


def typical_elements(
    interp: FiniteInterpretation,
    expr: ConceptExpr,
    eps: float = EPS_DEG,
    definitions: Mapping[str, ConceptExpr] | None = None,
) -> frozenset[str]:
    """min_{<_C}(C^I_{>0}): the elements of maximal positive degree."""
    degree = _degrees(interp, expr, definitions)
    positive = [x for x in interp.domain if degree[x] > 0.0]
    if not positive:
        return frozenset()
    best = max(degree[x] for x in positive)
    return frozenset(x for x in positive if degree[x] >= best - eps)


def element_weight(
    interp: FiniteInterpretation, kb: WeightedKB, concept: str, x: str
) -> ExtendedReal:
    """W_i(x): the weighted sum of body degrees, or bottom when C_i^I(x) = 0."""
    inclusions = kb.conditionals.get(concept)
    if inclusions is None:
        raise UsageError(f"{concept!r} is not a distinguished concept of the knowledge base")
    interp = interp.with_logic(kb.logic)
    if eval_concept(interp, kb.subject_expr(concept), x, kb.definitions) <= 0.0:
        return BOTTOM
    return finite(_weighted_sum(interp, kb, inclusions, x))


def _weighted_sum(interp, kb: WeightedKB, inclusions, x: str) -> float:
    return sum(
        (d.weight * eval_concept(interp, d.body, x, kb.definitions) for d in inclusions), 0.0
    )


@dataclass(frozen=True)
class AxiomResult:
    degree: float
    holds: bool
    typical_set: frozenset[str] | None = None
    vacuous: bool = False


def satisfies_axiom(
    interp: FiniteInterpretation,
    axiom: FuzzyAxiom,
    definitions: Mapping[str, ConceptExpr] | None = None,
) -> AxiomResult:
    match axiom:
        case Assertion(concept, individual, theta, threshold):
            x = interp.individuals.get(individual)
            if x is None:
                raise SchemaError(f"unknown individual {individual!r}")
            degree = eval_concept(interp, concept, x, definitions)
            return AxiomResult(degree, theta.holds(degree, threshold))
        case Inclusion(lhs, rhs, theta, threshold, typical):
            typical_set = None
            if typical:
                # T(C) is crisp: 1 on the typical C-elements, 0 elsewhere
                typical_set = typical_elements(interp, lhs, definitions=definitions)
                antecedents = {x: 1.0 if x in typical_set else 0.0 for x in interp.domain}
            else:
                antecedents = _degrees(interp, lhs, definitions)
            degree = min(
                interp.logic.implication(antecedents[x], eval_concept(interp, rhs, x, definitions))
                for x in interp.domain
            )
            vacuous = all(a == 0.0 for a in antecedents.values())
            return AxiomResult(degree, theta.holds(degree, threshold), typical_set, vacuous)


def satisfies_kb(interp: FiniteInterpretation, kb: WeightedKB) -> CheckReport:
    """Check the strict TBox and the ABox of `kb` in `interp`."""
    interp = interp.with_logic(kb.logic)
    violations = []
    for axiom in (*kb.strict, *kb.assertions):
        result = satisfies_axiom(interp, axiom, kb.definitions)
        if not result.holds:
            violations.append(
                Violation(
                    kind="assertion" if isinstance(axiom, Assertion) else "axiom",
                    subject=str(axiom),
                    lhs=result.degree,
                    rhs=axiom.threshold,
                    detail=f"degree {result.degree:g} does not satisfy {axiom.theta.value} {axiom.threshold:g}",
                )
            )
    return CheckReport(mode="axioms", violations=tuple(violations))


def check_model(
    interp: FiniteInterpretation,
    kb: WeightedKB,
    mode: CheckMode,
    eps_deg: float = EPS_DEG,
    eps_w: float = EPS_W,
) -> CheckReport:
    """Check `interp` against `kb` and report every violated condition."""
    interp = interp.with_logic(kb.logic)
    violations = list(satisfies_kb(interp, kb).violations)
    for concept, inclusions in kb.conditionals.items():
        degree = _degrees(interp, kb.subject_expr(concept), kb.definitions)
        match mode:
            case Coherent() | Faithful():
                weight = {x: element_weight(interp, kb, concept, x) for x in interp.domain}
                for x in interp.domain:
                    for y in interp.domain:
                        if x == y:
                            continue
                        if not breaks_order(mode, degree[x], degree[y], weight[x], weight[y], eps_deg, eps_w):
                            continue
                        violations.append(
                            Violation(
                                kind="coherence" if isinstance(mode, Coherent) else "faithfulness",
                                subject=concept,
                                x=x,
                                y=y,
                                lhs=weight[x].value,
                                rhs=weight[y].value,
                                detail=(
                                    f"{concept}({x})={degree[x]:g}, {concept}({y})={degree[y]:g}, "
                                    f"W({x})={weight[x]}, W({y})={weight[y]}"
                                ),
                            )
                        )
            case PhiCoherent(phi):
                for x in interp.domain:
                    target = apply_activation(phi, _weighted_sum(interp, kb, inclusions, x))
                    if abs(degree[x] - target) > eps_deg:
                        violations.append(
                            Violation(
                                kind="phi-coherence",
                                subject=concept,
                                x=x,
                                lhs=degree[x],
                                rhs=target,
                                detail=f"{concept}({x})={degree[x]:g} but phi(sum)={target:g}",
                            )
                        )
    log.debug("check_model %s: %d violation(s)", mode.name, len(violations))
    return CheckReport(mode=mode.name, violations=tuple(violations))
