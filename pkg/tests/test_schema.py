import io
import json

from pytest import raises

from gradarg.activation import Logistic, ReLUClamped
from gradarg.errors import SchemaError
from gradarg.expr import BOT, And, Atom, Not
from gradarg.fuzzy import LogicFamily
from gradarg.kb import Theta
from gradarg.schema import (
    dump,
    dump_graph,
    dump_interpretation,
    dump_kb,
    load_graph,
    load_interpretation,
    load_kb,
    load_labelling,
    load_labelling_set,
    load_mlp,
    load_state,
    read_json,
)

JOGGING = {
    "format": 1,
    "arguments": ["hot", "rain", "jogging"],
    "sigma0": {"hot": 1.0, "rain": 1.0, "jogging": 0.5},
    "edges": [
        {"source": "hot", "target": "jogging", "w": -0.8},
        {"source": "rain", "target": "jogging", "w": -0.5},
        {"source": "hot & rain", "target": "jogging", "w": 0.2},
    ],
    "phi": "logistic",
}


def test_load_graph(write_json, jogging_graph):
    graph = load_graph(write_json("g.json", JOGGING))
    assert graph == jogging_graph
    assert graph.edges[2].source == And(Atom("hot"), Atom("rain"))


def test_graph_survives_dump(write_json, jogging_graph):
    path = write_json("g.json", dump_graph(jogging_graph))
    assert load_graph(path) == jogging_graph


def test_graph_overrides(write_json):
    data = {**JOGGING, "phi_override": {"jogging": "relu-clamped"}, "logic": "lukasiewicz"}
    graph = load_graph(write_json("g.json", data))
    assert graph.phi_override == {"jogging": ReLUClamped()}
    assert graph.phi == Logistic()
    assert graph.logic.family is LogicFamily.LUKASIEWICZ
    assert dump_graph(graph)["phi_override"] == {"jogging": "relu-clamped"}


def test_expression_forms(write_json):
    data = {
        "arguments": ["a", "b", "c"],
        "sigma0": {"a": 0.1, "b": 0.2, "c": 0.3},
        "edges": [
            {"source": {"op": "and", "args": ["a", "b"]}, "target": "c", "w": 1.0},
            {"source": {"op": "atom", "name": "a"}, "target": "b", "w": 0.5},
        ],
    }
    graph = load_graph(write_json("g.json", data))
    assert graph.edges[0].source == And(Atom("a"), Atom("b"))
    assert graph.edges[1].source == Atom("a")
    assert graph.phi is None


def test_schema_errors(write_json):
    with raises(SchemaError, match="sigma0.a"):
        load_graph(write_json("g.json", {"arguments": ["a"], "sigma0": {"a": 1.5}}))
    with raises(SchemaError, match="format"):
        load_graph(write_json("g.json", {**JOGGING, "format": 2}))
    with raises(SchemaError, match="not permitted"):
        load_graph(write_json("g.json", {**JOGGING, "nodes": []}))
    with raises(SchemaError, match="unknown logic"):
        load_graph(write_json("g.json", {**JOGGING, "logic": "boolean"}))
    with raises(SchemaError, match="undeclared"):
        load_graph(write_json("g.json", {**JOGGING, "arguments": ["hot", "rain"]}))


def test_unreadable_files(tmp_path):
    with raises(SchemaError, match="cannot read"):
        read_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    with raises(SchemaError, match="invalid JSON"):
        read_json(bad)


def test_stdin(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps({"sigma": {"a": 0.25}})))
    assert load_labelling("-")["a"] == 0.25


def test_labelling_set_accepts_solver_output(write_json, bistable_graph):
    single = write_json("one.json", {"format": 1, "sigma": {"a": 0.9, "bias": 1.0}, "converged": True})
    assert len(load_labelling_set(single, bistable_graph).labellings) == 1

    many = write_json(
        "many.json",
        {
            "labellings": [
                {"sigma": {"a": 0.0072, "bias": 1.0}, "start": 0, "residual": 1e-12},
                {"sigma": {"a": 0.9928, "bias": 1.0}, "start": 3, "residual": 2e-12},
            ]
        },
    )
    ls = load_labelling_set(many, bistable_graph)
    assert [p.start for p in ls.provenance] == [0, 3]
    assert ls.labellings[1]["a"] == 0.9928


def test_load_kb(write_json, penguin_kb):
    data = {
        "atoms": list(penguin_kb.atoms),
        "strict": [
            {"lhs": "Yellow & Black", "rhs": {"op": "bot"}},
            {"lhs": "Yellow & Red", "rhs": {"op": "bot"}},
            {"lhs": "Black & Red", "rhs": {"op": "bot"}},
        ],
        "conditionals": {
            "Bird": [{"body": "Fly", "w": 20}, {"body": "Has_Wings", "w": 50}, {"body": "Has_Feather", "w": 50}],
            "Penguin": [{"body": "Bird", "w": 100}, {"body": "Fly", "w": -70}, {"body": "Black", "w": 50}],
            "Canary": [{"body": "Bird", "w": 100}, {"body": "Yellow", "w": 30}, {"body": "Red", "w": 20}],
        },
    }
    kb = load_kb(write_json("kb.json", data))
    assert kb == penguin_kb
    assert kb.strict[0].rhs == BOT
    assert load_kb(write_json("again.json", dump_kb(kb))) == kb


def test_load_kb_assertions(write_json):
    data = {
        "atoms": ["Bird", "Fly"],
        "assertions": [{"concept": "Bird", "individual": "tweety", "theta": ">", "n": 0.5}],
        "individuals": ["tweety"],
        "definitions": {"Flyer": "Bird & Fly"},
    }
    kb = load_kb(write_json("kb.json", data))
    assert kb.assertions[0].theta is Theta.GT
    assert kb.definitions == {"Flyer": And(Atom("Bird"), Atom("Fly"))}


def test_load_kb_with_typicality_flag(write_json):
    data = {
        "logic": "zadeh",
        "atoms": ["Bird", "Penguin", "Fly"],
        "individuals": [],
        "strict": [
            {
                "lhs": {"op": "atom", "name": "Penguin"},
                "typ": True,
                "rhs": {"op": "not", "arg": {"op": "atom", "name": "Fly"}},
                "theta": ">=",
                "n": 0.5,
            },
            {"lhs": {"op": "atom", "name": "Penguin"}, "typ": False, "rhs": "Bird", "theta": ">=", "n": 1.0},
        ],
        "assertions": [],
        "conditionals": {"Penguin": [{"body": {"op": "atom", "name": "Fly"}, "w": -70}]},
    }
    kb = load_kb(write_json("kb.json", data))
    assert kb.strict[0].typical
    assert kb.strict[0].rhs == Not(Atom("Fly"))
    assert kb.strict[0].threshold == 0.5
    assert not kb.strict[1].typical
    dumped = dump_kb(kb)
    assert [axiom["typ"] for axiom in dumped["strict"]] == [True, False]
    assert load_kb(write_json("again.json", dumped)) == kb


def test_typical_is_accepted_for_typ(write_json):
    data = {"atoms": ["A", "B"], "strict": [{"lhs": "A", "rhs": "B", "typical": True}]}
    assert load_kb(write_json("kb.json", data)).strict[0].typical


def test_load_interpretation(write_json, faithful_interp):
    data = {
        "domain": ["reddy", "opus"],
        "membership": {a: dict(row) for a, row in faithful_interp.membership.items()},
    }
    interp = load_interpretation(write_json("i.json", data))
    assert interp.individuals == {"reddy": "reddy", "opus": "opus"}
    assert interp.degree("Black", "opus") == 0.8
    assert dump_interpretation(interp)["domain"] == ["reddy", "opus"]


def test_load_mlp(write_json):
    data = {
        "units": ["i", "o"],
        "synapses": [{"from": "i", "to": "o", "w": 0.7}],
        "biases": {"o": -0.1},
        "phi": "logistic:2:0",
    }
    mlp = load_mlp(write_json("mlp.json", data))
    assert mlp.synapses[0].source == "i"
    assert mlp.biases == {"o": -0.1}
    assert mlp.phi() == Logistic(gain=2.0)
    assert mlp.input_units == ("i",)


def test_load_state_accepts_sigma(write_json):
    assert load_state(write_json("s.json", {"state": {"i": 1.0}}))["i"] == 1.0
    assert load_state(write_json("s.json", {"sigma": {"i": 0.5}}))["i"] == 0.5


def test_dump():
    assert dump({"ä": 1}, indent=None) == '{"ä": 1}'
