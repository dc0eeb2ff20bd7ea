from hypothesis import given, settings
from pytest import approx, mark, raises

from gradarg.activation import Logistic
from gradarg.arggraph import ArgGraph, Edge, Labelling
from gradarg.errors import UsageError
from gradarg.expr import And, Atom
from gradarg.oracle import grid_oracle, spectral_radius
from gradarg.solver import SolveOptions, compile_graph, enumerate_labellings

from .strategies import graphs


def _matched(oracle: list[Labelling], found: list[Labelling], tol: float = 1e-6) -> bool:
    return all(any(p.distance(q) <= tol for q in found) for p in oracle)


def test_bistable(bistable_graph):
    points = grid_oracle(bistable_graph, Logistic())
    assert sorted(p["a"] for p in points) == [approx(0.0072, abs=1e-4), approx(0.9928, abs=1e-4)]


def test_repelling_point_is_dropped(bistable_graph):
    compiled = compile_graph(bistable_graph, Logistic())
    assert spectral_radius(compiled, compiled.vector(Labelling({"a": 0.5, "bias": 1.0}))) == approx(2.5)


def test_sources_only():
    graph = ArgGraph(arguments=("a", "b"), sigma0={"a": 0.25, "b": 1.0})
    assert grid_oracle(graph, Logistic()) == [Labelling({"a": 0.25, "b": 1.0})]


@mark.parametrize("step", [1 / 16, 1 / 32, 1 / 64])
def test_steps(two_node_graph, step):
    points = grid_oracle(two_node_graph, Logistic(), grid_step=step)
    assert len(points) == 1
    assert points[0]["b"] == approx(0.731059, abs=1e-6)


def test_rejections(jogging_graph):
    with raises(UsageError, match="atomic"):
        grid_oracle(jogging_graph, Logistic())
    big = ArgGraph(arguments=tuple("abcde"), sigma0=dict.fromkeys("abcde", 0.0))
    with raises(UsageError, match="at most 4"):
        grid_oracle(big, Logistic())
    small = ArgGraph(arguments=("a",), sigma0={"a": 0.0})
    with raises(UsageError, match="grid_step"):
        grid_oracle(small, Logistic(), grid_step=0.1)


def test_boolean_edges_are_not_atomic():
    graph = ArgGraph(
        arguments=("a", "b", "c"),
        edges=(Edge(And(Atom("a"), Atom("b")), "c", 1.0),),
        sigma0={"a": 1.0, "b": 1.0, "c": 0.0},
    )
    assert not graph.atomic
    with raises(UsageError):
        grid_oracle(graph, Logistic())


@mark.slow
@settings(max_examples=40, deadline=None)
@given(graphs(max_arguments=3, max_weight=1.0))
def test_solver_finds_every_oracle_point(graph):
    phi = Logistic()
    oracle = grid_oracle(graph, phi, grid_step=1 / 16)
    found = [r.labelling for r in enumerate_labellings(graph, phi, SolveOptions(restarts=32, rng_seed=5))]
    assert oracle
    assert _matched(oracle, found)


def _self_loop() -> ArgGraph:
    return ArgGraph(arguments=("a",), edges=(Edge(Atom("a"), "a", 10.0),), sigma0={"a": 0.0})


def _three_cycle() -> ArgGraph:
    return ArgGraph(
        arguments=("a", "b", "c"),
        edges=(Edge(Atom("a"), "b", 2.0), Edge(Atom("b"), "c", -3.0), Edge(Atom("c"), "a", 1.5)),
        sigma0={"a": 0.0, "b": 0.0, "c": 0.0},
    )


def _four_with_feedback() -> ArgGraph:
    return ArgGraph(
        arguments=("s", "a", "b", "c"),
        edges=(
            Edge(Atom("s"), "a", 1.0),
            Edge(Atom("a"), "b", -1.5),
            Edge(Atom("b"), "a", 0.5),
            Edge(Atom("b"), "c", 2.0),
        ),
        sigma0={"s": 0.7, "a": 0.0, "b": 0.0, "c": 0.0},
    )


CORPUS = {"self_loop": _self_loop, "three_cycle": _three_cycle, "four_with_feedback": _four_with_feedback}


@mark.parametrize(
    "name, count",
    [("bistable_graph", 2), ("two_node_graph", 1), ("self_loop", 1), ("three_cycle", 1), ("four_with_feedback", 1)],
)
def test_oracle_and_solver_agree(request, name, count):
    graph = CORPUS[name]() if name in CORPUS else request.getfixturevalue(name)
    phi = Logistic()
    oracle = grid_oracle(graph, phi)
    found = [r.labelling for r in enumerate_labellings(graph, phi, SolveOptions(restarts=32, rng_seed=5))]
    assert len(oracle) == count
    assert _matched(oracle, found, tol=1e-4)
    assert _matched(found, oracle, tol=1e-4)
