import numpy as np
from hypothesis import given, settings
from pytest import approx, mark, raises

from gradarg.activation import Logistic, ReLUClamped
from gradarg.arggraph import ArgGraph, Edge, Labelling, check_labelling, initial_labelling, residual
from gradarg.errors import CyclicGraphError, UsageError
from gradarg.expr import Atom
from gradarg.report import Coherent, Faithful, PhiCoherent
from gradarg.solver import (
    SolveOptions,
    compile_graph,
    dedupe,
    enumerate_labellings,
    find_cycle,
    forward_acyclic,
    iterate_step,
    solve_fixed_point,
)

from .strategies import graphs


def test_two_node_fixed_point(two_node_graph):
    result = solve_fixed_point(two_node_graph, initial_labelling(two_node_graph), Logistic())
    assert result.converged
    assert result.labelling["b"] == approx(0.731059, abs=1e-6)
    assert result.labelling["a"] == 0.5


def test_iterate_step_damping(two_node_graph):
    start = initial_labelling(two_node_graph)
    assert iterate_step(two_node_graph, start, Logistic())["b"] == approx(0.731059, abs=1e-6)
    assert iterate_step(two_node_graph, start, Logistic(), damping=0.5)["b"] == approx(0.365529, abs=1e-6)
    with raises(UsageError):
        iterate_step(two_node_graph, start, Logistic(), damping=0.0)


def test_boolean_source(jogging_graph):
    result = solve_fixed_point(jogging_graph, initial_labelling(jogging_graph), Logistic())
    assert result.converged
    assert result.labelling["jogging"] == approx(0.249740, abs=1e-6)
    assert forward_acyclic(jogging_graph, Logistic())["jogging"] == approx(0.249740, abs=1e-6)


def test_forward_matches_iteration_on_acyclic_graph():
    graph = ArgGraph(
        arguments=("a", "b", "c", "d"),
        edges=(
            Edge(Atom("a"), "b", 1.5),
            Edge(Atom("b"), "c", -2.0),
            Edge(Atom("a"), "c", 0.7),
            Edge(Atom("c"), "d", 3.0),
        ),
        sigma0={"a": 0.9, "b": 0.0, "c": 0.0, "d": 0.0},
    )
    forward = forward_acyclic(graph, Logistic())
    iterated = solve_fixed_point(graph, initial_labelling(graph), Logistic())
    assert forward.distance(iterated.labelling) < 1e-8
    assert residual(graph, forward, Logistic()) < 1e-12


def test_forward_rejects_cycles(bistable_graph):
    assert find_cycle(bistable_graph) == ["a"]
    with raises(CyclicGraphError) as info:
        forward_acyclic(bistable_graph, Logistic())
    assert info.value.cycle == ["a"]
    assert "a -> a" in info.value.message


def test_self_loop_has_single_fixed_point():
    graph = ArgGraph(arguments=("a",), edges=(Edge(Atom("a"), "a", 10.0),), sigma0={"a": 0.0})
    results = enumerate_labellings(graph, Logistic(), SolveOptions(restarts=8))
    assert len(results) == 1
    assert results[0].labelling["a"] == approx(0.99995, abs=1e-5)


def test_bistable_graph_has_two_labellings(bistable_graph):
    results = enumerate_labellings(bistable_graph, Logistic(), SolveOptions(restarts=16, rng_seed=3))
    found = sorted(r.labelling["a"] for r in results)
    assert found == [approx(0.0072, abs=1e-4), approx(0.9928, abs=1e-4)]
    assert results[0].start == 0
    for r in results:
        assert r.labelling["bias"] == 1.0
        assert check_labelling(bistable_graph, r.labelling, PhiCoherent(Logistic())).ok


def test_enumerate_is_reproducible(bistable_graph):
    opts = SolveOptions(restarts=6, rng_seed=11)
    first = enumerate_labellings(bistable_graph, Logistic(), opts)
    second = enumerate_labellings(bistable_graph, Logistic(), opts)
    assert [r.labelling for r in first] == [r.labelling for r in second]


def test_non_convergence_returns_best_point():
    phi = ReLUClamped()
    # x -> clamp(1 - x) flips between 0 and 1 unless damped
    flip = ArgGraph(
        arguments=("a", "one"),
        edges=(Edge(Atom("a"), "a", -1.0), Edge(Atom("one"), "a", 1.0)),
        sigma0={"a": 0.0, "one": 1.0},
    )
    stuck = solve_fixed_point(flip, initial_labelling(flip), phi, SolveOptions(max_iters=50))
    assert not stuck.converged
    assert stuck.residual == approx(1.0)
    damped = solve_fixed_point(flip, initial_labelling(flip), phi, SolveOptions(damping=0.5))
    assert damped.converged
    assert damped.labelling["a"] == approx(0.5)


def test_zero_iterations():
    graph = ArgGraph(arguments=("a", "b"), edges=(Edge(Atom("a"), "b", 1.0),), sigma0={"a": 1.0, "b": 0.0})
    result = solve_fixed_point(graph, initial_labelling(graph), Logistic(), SolveOptions(max_iters=0))
    assert not result.converged
    assert result.iterations == 0
    assert result.labelling == initial_labelling(graph)


def test_graph_without_edges_is_its_own_fixed_point():
    graph = ArgGraph(arguments=("a", "b"), sigma0={"a": 0.3, "b": 0.7})
    result = solve_fixed_point(graph, initial_labelling(graph), Logistic())
    assert result.converged and result.iterations == 0 and result.residual == 0.0
    assert enumerate_labellings(graph, Logistic())[0].labelling == initial_labelling(graph)


def test_parallel_edges_are_summed():
    graph = ArgGraph(
        arguments=("a", "b"),
        edges=(Edge(Atom("a"), "b", 1.0), Edge(Atom("a"), "b", 1.0)),
        sigma0={"a": 0.5, "b": 0.0},
    )
    compiled = compile_graph(graph, Logistic())
    assert compiled.matrix[1, 0] == 2.0
    assert solve_fixed_point(graph, initial_labelling(graph), Logistic()).labelling["b"] == approx(0.731059, abs=1e-6)


def test_override_in_solver():
    graph = ArgGraph(
        arguments=("a", "b"),
        edges=(Edge(Atom("a"), "b", 0.4),),
        sigma0={"a": 1.0, "b": 0.0},
        phi_override={"b": ReLUClamped()},
    )
    assert solve_fixed_point(graph, initial_labelling(graph), Logistic()).labelling["b"] == approx(0.4)


def test_dedupe_keeps_discovery_order():
    results = [
        solve_fixed_point(ArgGraph(arguments=("a",), sigma0={"a": v}), Labelling({"a": v}), Logistic())
        for v in (0.3, 0.3000000001, 0.6)
    ]
    kept = dedupe(results, 1e-6)
    assert [r.labelling["a"] for r in kept] == [0.3, 0.6]


@mark.parametrize(
    "kwargs",
    [{"tol": 0.0}, {"damping": 0.0}, {"damping": 1.5}, {"max_iters": -1}, {"restarts": 0}, {"dedupe_tol": 0.0}],
)
def test_solve_options_validation(kwargs):
    with raises(UsageError):
        SolveOptions(**kwargs)


@settings(max_examples=60, deadline=None)
@given(graphs(max_arguments=4, max_weight=1.0, boolean=True))
def test_converged_results_are_phi_coherent(graph):
    # |w| <= 1 with at most 2 incoming edges keeps the map a contraction for logistic(1)
    phi = Logistic()
    result = solve_fixed_point(graph, initial_labelling(graph), phi)
    assert result.converged
    assert check_labelling(graph, result.labelling, PhiCoherent(phi)).ok
    for a in graph.sources:
        assert result.labelling[a] == graph.sigma0[a]


@settings(max_examples=40, deadline=None)
@given(graphs(max_arguments=5, max_weight=2.0, acyclic=True))
def test_forward_pass_is_a_fixed_point(graph):
    phi = Logistic()
    labelling = forward_acyclic(graph, phi)
    assert residual(graph, labelling, phi) < 1e-12


def test_local_field_vectorised(jogging_graph):
    compiled = compile_graph(jogging_graph, Logistic())
    w = compiled.local_field(np.array([1.0, 1.0, 0.0]))
    assert w[2] == approx(-1.1)


@mark.slow
@settings(max_examples=100, deadline=None)
@given(graphs(max_arguments=4, max_weight=1.0, dyadic=True))
def test_phi_coherent_labellings_are_coherent_and_faithful(graph):
    # cycles included; logistic(2) is strictly increasing, so phi-coherence orders degrees like weights
    phi = Logistic(gain=2.0)
    for result in enumerate_labellings(graph, phi, SolveOptions(restarts=8, rng_seed=2, tol=1e-12)):
        assert check_labelling(graph, result.labelling, PhiCoherent(phi)).ok
        assert check_labelling(graph, result.labelling, Coherent()).ok
        assert check_labelling(graph, result.labelling, Faithful()).ok
