import json

import pytest

from gradarg.activation import Logistic
from gradarg.arggraph import ArgGraph, Edge
from gradarg.bridge import MlpModel, Synapse
from gradarg.config import Settings
from gradarg.expr import BOT, And, Atom
from gradarg.kb import FiniteInterpretation, Inclusion, WeightedInclusion, WeightedKB

PENGUIN_ATOMS = ("Bird", "Penguin", "Canary", "Fly", "Has_Wings", "Has_Feather", "Black", "Yellow", "Red")


def _conditionals(subject, *pairs):
    return tuple(WeightedInclusion(subject, Atom(body), w) for body, w in pairs)


@pytest.fixture
def penguin_kb() -> WeightedKB:
    return WeightedKB(
        atoms=PENGUIN_ATOMS,
        strict=(
            Inclusion(And(Atom("Yellow"), Atom("Black")), BOT),
            Inclusion(And(Atom("Yellow"), Atom("Red")), BOT),
            Inclusion(And(Atom("Black"), Atom("Red")), BOT),
        ),
        conditionals={
            "Bird": _conditionals("Bird", ("Fly", 20), ("Has_Wings", 50), ("Has_Feather", 50)),
            "Penguin": _conditionals("Penguin", ("Bird", 100), ("Fly", -70), ("Black", 50)),
            "Canary": _conditionals("Canary", ("Bird", 100), ("Yellow", 30), ("Red", 20)),
        },
    )


def penguin_membership(penguin_reddy: float, penguin_opus: float) -> dict[str, dict[str, float]]:
    rows = {
        "Bird": (1.0, 0.8),
        "Penguin": (penguin_reddy, penguin_opus),
        "Canary": (0.0, 0.0),
        "Fly": (1.0, 0.0),
        "Has_Wings": (1.0, 1.0),
        "Has_Feather": (1.0, 1.0),
        "Black": (0.0, 0.8),
        "Yellow": (0.0, 0.0),
        "Red": (1.0, 0.0),
    }
    return {atom: {"reddy": r, "opus": o} for atom, (r, o) in rows.items()}


def penguin_interpretation(penguin_reddy: float, penguin_opus: float) -> FiniteInterpretation:
    return FiniteInterpretation(
        domain=("reddy", "opus"),
        membership=penguin_membership(penguin_reddy, penguin_opus),
        individuals={"reddy": "reddy", "opus": "opus"},
    )


@pytest.fixture
def faithful_interp() -> FiniteInterpretation:
    return penguin_interpretation(0.2, 0.8)


@pytest.fixture
def tied_interp() -> FiniteInterpretation:
    return penguin_interpretation(0.8, 0.8)


@pytest.fixture
def jogging_graph() -> ArgGraph:
    return ArgGraph(
        arguments=("hot", "rain", "jogging"),
        edges=(
            Edge(Atom("hot"), "jogging", -0.8),
            Edge(Atom("rain"), "jogging", -0.5),
            Edge(And(Atom("hot"), Atom("rain")), "jogging", 0.2),
        ),
        sigma0={"hot": 1.0, "rain": 1.0, "jogging": 0.5},
        phi=Logistic(),
    )


@pytest.fixture
def two_node_graph() -> ArgGraph:
    return ArgGraph(
        arguments=("a", "b"),
        edges=(Edge(Atom("a"), "b", 2.0),),
        sigma0={"a": 0.5, "b": 0.0},
    )


@pytest.fixture
def bistable_graph() -> ArgGraph:
    """x = logistic(10x - 5): attracting points near 0.0072 and 0.9928, repelling 0.5."""
    return ArgGraph(
        arguments=("a", "bias"),
        edges=(Edge(Atom("a"), "a", 10.0), Edge(Atom("bias"), "a", -5.0)),
        sigma0={"a": 0.0, "bias": 1.0},
    )


@pytest.fixture
def mlp_231() -> MlpModel:
    return MlpModel(
        units=("i1", "i2", "h1", "h2", "h3", "o"),
        synapses=(
            Synapse("i1", "h1", 0.5),
            Synapse("i1", "h2", -1.0),
            Synapse("i1", "h3", 0.3),
            Synapse("i2", "h1", 1.2),
            Synapse("i2", "h2", 0.4),
            Synapse("i2", "h3", -0.7),
            Synapse("h1", "o", 1.0),
            Synapse("h2", "o", -0.6),
            Synapse("h3", "o", 0.8),
        ),
        biases={"h1": 0.1, "h2": -0.2, "h3": 0.0, "o": 0.05},
        activation=Logistic(),
    )


@pytest.fixture
def default_settings() -> Settings:
    return Settings()


@pytest.fixture
def write_json(tmp_path):
    def write(name: str, data) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return write
