"""Translations between multilayer perceptrons, argumentation graphs and weighted conditional
knowledge bases, and stationary-state certification for networks."""

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from .activation import Activation
from .arggraph import ArgGraph, Edge, Labelling, check_labelling
from .errors import SchemaError
from .expr import Atom
from .fuzzy import EPS_DEG, check_degree
from .kb import FiniteInterpretation, WeightedInclusion, WeightedKB
from .report import CheckReport, PhiCoherent
from .solver import SolveOptions, enumerate_labellings, forward_acyclic

log = logging.getLogger(__name__)

# constant-1 unit that carries the biases as ordinary synapses
BIAS = "__bias"


@dataclass(frozen=True)
class Synapse:
    source: str
    target: str
    weight: float


@dataclass(frozen=True)
class MlpModel:
    units: tuple[str, ...]
    synapses: tuple[Synapse, ...] = ()
    biases: Mapping[str, float] = field(default_factory=dict)
    activation: Activation | None = None
    overrides: Mapping[str, Activation] = field(default_factory=dict)
    # None: every unit without incoming synapses or bias
    inputs: tuple[str, ...] | None = None

    def __post_init__(self):
        declared = set(self.units)
        if len(declared) != len(self.units):
            raise SchemaError("network has repeated units")
        for s in self.synapses:
            for end in (s.source, s.target):
                if end not in declared:
                    raise SchemaError(f"synapse {s.source} -> {s.target} uses undeclared unit {end!r}")
        for name, mapping in (("bias", self.biases), ("activation override", self.overrides)):
            unknown = sorted(set(mapping) - declared)
            if unknown:
                raise SchemaError(f"{name} for undeclared unit(s) {unknown}")
        if self.inputs is not None:
            unknown = sorted(set(self.inputs) - declared)
            if unknown:
                raise SchemaError(f"inputs name undeclared unit(s) {unknown}")
            fed = {s.target for s in self.synapses} | set(self.biases)
            bad = sorted(set(self.inputs) & fed)
            if bad:
                raise SchemaError(f"input unit(s) {bad} have incoming synapses or a bias")

    @property
    def input_units(self) -> tuple[str, ...]:
        if self.inputs is not None:
            return self.inputs
        fed = {s.target for s in self.synapses} | set(self.biases)
        return tuple(u for u in self.units if u not in fed)

    def phi(self) -> Activation:
        if self.activation is None:
            raise SchemaError("network has no activation (set 'phi' in the file or pass --phi)")
        return self.activation


@dataclass(frozen=True)
class NetworkState:
    values: Mapping[str, float]

    def __post_init__(self):
        for unit, value in self.values.items():
            check_degree(value, f"activation of {unit}")

    def __getitem__(self, unit: str) -> float:
        return self.values[unit]

    def to_json(self) -> dict[str, float]:
        return dict(self.values)


def mlp_to_graph(mlp: MlpModel, inputs: Mapping[str, float] | None = None) -> ArgGraph:
    """One argument per unit, one edge per synapse, biases as edges from the `__bias` argument.

    sigma0 is 0 everywhere except `__bias` (1) and the units named in `inputs`.
    """
    if BIAS in mlp.units:
        raise SchemaError(f"unit name {BIAS!r} is reserved for the bias argument")
    inputs = inputs or {}
    unknown = sorted(set(inputs) - set(mlp.units))
    if unknown:
        raise SchemaError(f"input values for undeclared unit(s) {unknown}")
    arguments = (*mlp.units, BIAS) if mlp.biases else mlp.units
    edges = [Edge(Atom(s.source), s.target, s.weight) for s in mlp.synapses]
    edges += [Edge(Atom(BIAS), u, mlp.biases[u]) for u in mlp.units if u in mlp.biases]
    sigma0 = {u: float(inputs.get(u, 0.0)) for u in mlp.units}
    if mlp.biases:
        sigma0[BIAS] = 1.0
    return ArgGraph(
        arguments=tuple(arguments),
        edges=tuple(edges),
        sigma0=sigma0,
        phi=mlp.activation,
        phi_override=dict(mlp.overrides),
    )


def _conditionals(atoms: Sequence[str], edges: Sequence[Edge]) -> dict[str, tuple[WeightedInclusion, ...]]:
    grouped: dict[str, list[WeightedInclusion]] = {}
    for edge in edges:
        grouped.setdefault(edge.target, []).append(WeightedInclusion(edge.target, edge.source, edge.weight))
    return {a: tuple(grouped[a]) for a in atoms if a in grouped}


def graph_to_kb(graph: ArgGraph) -> WeightedKB:
    """K^G: each edge (src, a, w) becomes the weighted conditional T(a) ⊑ src with weight w."""
    return WeightedKB(
        atoms=graph.arguments,
        conditionals=_conditionals(graph.arguments, graph.edges),
        logic=graph.logic,
    )


def mlp_to_kb(mlp: MlpModel) -> WeightedKB:
    """One concept per unit; a synapse h -> i with weight w becomes T(C_i) ⊑ C_h with weight w."""
    atoms = (*mlp.units, BIAS) if mlp.biases else mlp.units
    edges = [Edge(Atom(s.source), s.target, s.weight) for s in mlp.synapses]
    edges += [Edge(Atom(BIAS), u, mlp.biases[u]) for u in mlp.units if u in mlp.biases]
    return WeightedKB(atoms=tuple(atoms), conditionals=_conditionals(atoms, edges))


def _as_labelling(mlp: MlpModel, state: NetworkState) -> Labelling:
    missing = [u for u in mlp.units if u not in state.values]
    if missing:
        raise SchemaError(f"network state is missing unit(s) {missing}")
    sigma = {u: state[u] for u in mlp.units}
    if mlp.biases:
        sigma[BIAS] = 1.0
    return Labelling(sigma)


def check_stationary(mlp: MlpModel, state: NetworkState, eps: float = EPS_DEG) -> CheckReport:
    """Every non-input unit satisfies state(i) = phi_i(sum_h w_ih * state(h) + b_i) within eps."""
    graph = mlp_to_graph(mlp)
    return check_labelling(graph, _as_labelling(mlp, state), PhiCoherent(mlp.phi()), eps_deg=eps)


def _state(mlp: MlpModel, labelling: Labelling) -> NetworkState:
    return NetworkState({u: labelling[u] for u in mlp.units})


def forward_pass(mlp: MlpModel, inputs: Mapping[str, float]) -> NetworkState:
    """Feedforward evaluation; raises CyclicGraphError on recurrent networks."""
    return _state(mlp, forward_acyclic(mlp_to_graph(mlp, inputs), mlp.phi()))


def stationary_states(
    mlp: MlpModel, inputs: Mapping[str, float], opts: SolveOptions | None = None
) -> list[NetworkState]:
    """Distinct stationary states reachable by iteration, for recurrent networks too."""
    results = enumerate_labellings(mlp_to_graph(mlp, inputs), mlp.phi(), opts)
    return [_state(mlp, r.labelling) for r in results]


def network_interpretation(mlp: MlpModel, states: Sequence[NetworkState]) -> FiniteInterpretation:
    """One domain element x_j per state; the degree of C_u at x_j is the activation of unit u."""
    if not states:
        raise SchemaError("need at least one network state")
    domain = tuple(f"x{j}" for j in range(1, len(states) + 1))
    membership = {u: {x: s[u] for x, s in zip(domain, states)} for u in mlp.units}
    if mlp.biases:
        membership[BIAS] = {x: 1.0 for x in domain}
    log.debug("network interpretation over %d state(s)", len(states))
    return FiniteInterpretation(domain=domain, membership=membership, individuals={x: x for x in domain})
