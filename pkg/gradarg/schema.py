"""JSON file formats. Every file carries `"format": 1`; loaders validate with pydantic and build
the engine's value objects, dumpers produce the same shapes back."""

import json
import logging
import re
import sys
from collections.abc import Mapping
from pathlib import Path
from typing import Any, Literal

from pydantic import AliasChoices, BaseModel, ConfigDict, Field, ValidationError

from .activation import Activation, parse_activation
from .arggraph import ArgGraph, Edge, Labelling
from .bridge import MlpModel, NetworkState, Synapse
from .errors import SchemaError
from .expr import Atom, Expr, from_json, to_json
from .fuzzy import ZADEH, Degree, FuzzyLogic
from .grammar import parse_expr
from .kb import Assertion, FiniteInterpretation, Inclusion, Theta, WeightedInclusion, WeightedKB
from .prefmodel import LabellingSet, Provenance
from .solver import SolveResult

log = logging.getLogger(__name__)

FORMAT = 1
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def read_json(path: str | Path) -> Any:
    """Read a JSON document from a file, or from stdin when `path` is "-"."""
    try:
        if str(path) == "-":
            text = sys.stdin.read()
        else:
            log.info("reading %s", path)
            text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e.strerror or e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None


def _expr(data: Any) -> Expr:
    """A JSON expression tree, a bare name, or a string in the query syntax."""
    if isinstance(data, str) and not _NAME.fullmatch(data.strip()):
        return parse_expr(data)
    if isinstance(data, str):
        return Atom(data.strip())
    return from_json(data)


def _logic(name: str | None) -> FuzzyLogic:
    return ZADEH if name is None else FuzzyLogic.parse(name)


def _phi(spec: str | None) -> Activation | None:
    return None if spec is None else parse_activation(spec)


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    format: Literal[1] = FORMAT


class EdgeModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    source: Any
    target: str
    w: float


class GraphFile(_Model):
    arguments: list[str]
    sigma0: dict[str, Degree] = Field(default_factory=dict)
    edges: list[EdgeModel] = Field(default_factory=list)
    logic: str | None = None
    phi: str | None = None
    phi_override: dict[str, str] = Field(default_factory=dict)

    def build(self) -> ArgGraph:
        return ArgGraph(
            arguments=tuple(self.arguments),
            edges=tuple(Edge(_expr(e.source), e.target, e.w) for e in self.edges),
            sigma0=dict(self.sigma0),
            logic=_logic(self.logic),
            phi=_phi(self.phi),
            phi_override={a: parse_activation(s) for a, s in self.phi_override.items()},
        )


class LabellingFile(_Model):
    sigma: dict[str, Degree]
    iterations: int | None = None
    residual: float | None = None
    converged: bool | None = None
    start: int | None = None

    def build(self) -> Labelling:
        return Labelling(dict(self.sigma))


class LabellingSetFile(_Model):
    labellings: list[LabellingFile]

    def build(self, graph: ArgGraph) -> LabellingSet:
        return LabellingSet(
            graph=graph,
            labellings=tuple(entry.build() for entry in self.labellings),
            provenance=tuple(Provenance(entry.start, entry.residual) for entry in self.labellings),
        )


class AxiomModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    lhs: Any
    rhs: Any
    theta: str = ">="
    n: Degree = 1.0
    typ: bool = Field(default=False, validation_alias=AliasChoices("typ", "typical"))


class AssertionModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    concept: Any
    individual: str
    theta: str = ">="
    n: Degree = 1.0


class ConditionalModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    body: Any
    w: float


class KBFile(_Model):
    atoms: list[str]
    logic: str | None = None
    definitions: dict[str, Any] = Field(default_factory=dict)
    strict: list[AxiomModel] = Field(default_factory=list)
    assertions: list[AssertionModel] = Field(default_factory=list)
    conditionals: dict[str, list[ConditionalModel]] = Field(default_factory=dict)
    individuals: list[str] = Field(default_factory=list)

    def build(self) -> WeightedKB:
        return WeightedKB(
            atoms=tuple(self.atoms),
            strict=tuple(
                Inclusion(_expr(a.lhs), _expr(a.rhs), Theta.parse(a.theta), a.n, a.typ) for a in self.strict
            ),
            assertions=tuple(
                Assertion(_expr(a.concept), a.individual, Theta.parse(a.theta), a.n) for a in self.assertions
            ),
            conditionals={
                subject: tuple(WeightedInclusion(subject, _expr(c.body), c.w) for c in items)
                for subject, items in self.conditionals.items()
            },
            logic=_logic(self.logic),
            individuals=tuple(self.individuals),
            definitions={name: _expr(body) for name, body in self.definitions.items()},
        )


class InterpretationFile(_Model):
    domain: list[str]
    membership: dict[str, dict[str, Degree]]
    individuals: dict[str, str] = Field(default_factory=dict)
    logic: str | None = None

    def build(self) -> FiniteInterpretation:
        return FiniteInterpretation(
            domain=tuple(self.domain),
            membership={a: dict(row) for a, row in self.membership.items()},
            # every element also names itself unless the file says otherwise
            individuals={**{x: x for x in self.domain}, **self.individuals},
            logic=_logic(self.logic),
        )


class SynapseModel(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    source: str = Field(alias="from")
    target: str = Field(alias="to")
    w: float


class MlpFile(_Model):
    units: list[str]
    inputs: list[str] | None = None
    synapses: list[SynapseModel] = Field(default_factory=list)
    biases: dict[str, float] = Field(default_factory=dict)
    phi: str | None = None
    phi_override: dict[str, str] = Field(default_factory=dict)

    def build(self) -> MlpModel:
        return MlpModel(
            units=tuple(self.units),
            synapses=tuple(Synapse(s.source, s.target, s.w) for s in self.synapses),
            biases=dict(self.biases),
            activation=_phi(self.phi),
            overrides={u: parse_activation(s) for u, s in self.phi_override.items()},
            inputs=None if self.inputs is None else tuple(self.inputs),
        )


class StateFile(_Model):
    state: dict[str, Degree]

    def build(self) -> NetworkState:
        return NetworkState(dict(self.state))


def _load(model: type[_Model], path: str | Path, data: Any = None):
    if data is None:
        data = read_json(path)
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "<root>"
        raise SchemaError(f"{path}: {where}: {first['msg']} ({e.error_count()} error(s))") from None


def load_graph(path: str | Path) -> ArgGraph:
    return _load(GraphFile, path).build()


def load_labelling(path: str | Path) -> Labelling:
    return _load(LabellingFile, path).build()


def load_labelling_set(path: str | Path, graph: ArgGraph) -> LabellingSet:
    """A labelling-set file, or a solver output (one labelling or a list of them)."""
    data = read_json(path)
    if isinstance(data, dict) and "sigma" in data:
        data = {"format": data.get("format", FORMAT), "labellings": [data]}
    return _load(LabellingSetFile, path, data).build(graph)


def load_kb(path: str | Path) -> WeightedKB:
    return _load(KBFile, path).build()


def load_interpretation(path: str | Path) -> FiniteInterpretation:
    return _load(InterpretationFile, path).build()


def load_mlp(path: str | Path) -> MlpModel:
    return _load(MlpFile, path).build()


def load_state(path: str | Path) -> NetworkState:
    data = read_json(path)
    if isinstance(data, dict) and "sigma" in data and "state" not in data:
        data = {"format": data.get("format", FORMAT), "state": data["sigma"]}
    return _load(StateFile, path, data).build()


def _expr_json(expr: Expr) -> Any:
    return expr.name if isinstance(expr, Atom) else to_json(expr)


def dump_graph(graph: ArgGraph) -> dict[str, Any]:
    data: dict[str, Any] = {
        "format": FORMAT,
        "arguments": list(graph.arguments),
        "sigma0": dict(graph.sigma0),
        "edges": [{"source": _expr_json(e.source), "target": e.target, "w": e.weight} for e in graph.edges],
        "logic": str(graph.logic),
    }
    if graph.phi is not None:
        data["phi"] = graph.phi.spec
    if graph.phi_override:
        data["phi_override"] = {a: p.spec for a, p in graph.phi_override.items()}
    return data


def dump_result(result: SolveResult) -> dict[str, Any]:
    return {"format": FORMAT, **result.to_json(), "start": result.start}


def dump_results(results: list[SolveResult]) -> dict[str, Any]:
    return {
        "format": FORMAT,
        "labellings": [{**r.to_json(), "start": r.start} for r in results],
    }


def _axiom_json(axiom: Inclusion) -> dict[str, Any]:
    return {
        "lhs": _expr_json(axiom.lhs),
        "rhs": _expr_json(axiom.rhs),
        "theta": axiom.theta.value,
        "n": axiom.threshold,
        "typ": axiom.typical,
    }


def dump_kb(kb: WeightedKB) -> dict[str, Any]:
    return {
        "format": FORMAT,
        "atoms": list(kb.atoms),
        "logic": str(kb.logic),
        "definitions": {name: _expr_json(body) for name, body in kb.definitions.items()},
        "strict": [_axiom_json(a) for a in kb.strict],
        "assertions": [
            {"concept": _expr_json(a.concept), "individual": a.individual, "theta": a.theta.value, "n": a.threshold}
            for a in kb.assertions
        ],
        "conditionals": {
            subject: [{"body": _expr_json(d.body), "w": d.weight} for d in items]
            for subject, items in kb.conditionals.items()
        },
        "individuals": list(kb.individuals),
    }


def dump_interpretation(interp: FiniteInterpretation) -> dict[str, Any]:
    return {
        "format": FORMAT,
        "domain": list(interp.domain),
        "membership": {a: dict(row) for a, row in interp.membership.items()},
        "individuals": dict(interp.individuals),
        "logic": str(interp.logic),
    }


def dump_state(state: NetworkState) -> dict[str, Any]:
    return {"format": FORMAT, "state": state.to_json()}


def dump(data: Mapping[str, Any], indent: int | None = 2) -> str:
    return json.dumps(data, indent=indent, ensure_ascii=False)
