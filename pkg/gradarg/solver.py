"""Fixed-point solvers for phi-coherent labellings.

Graphs are compiled once into numpy arrays: atomic edges become a dense weight matrix and
boolean-source edges are evaluated per step. Updates are synchronous (Jacobi style).
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field, replace

import networkx as nx
import numpy as np
import scipy.optimize

from .activation import Activation, FloatArray
from .arggraph import ArgGraph, Edge, Labelling
from .errors import CyclicGraphError, UsageError
from .expr import Atom, evaluate

log = logging.getLogger(__name__)

UpdateFn = Callable[[FloatArray], FloatArray]


@dataclass(frozen=True, kw_only=True)
class SolveOptions:
    tol: float = 1e-9
    max_iters: int = 10_000
    damping: float = 1.0
    restarts: int = 16
    rng_seed: int = 0
    dedupe_tol: float = 1e-6
    # refine converged points with a root finder so equal equilibria compare equal
    polish: bool = True

    def __post_init__(self):
        if not self.tol > 0:
            raise UsageError(f"tol must be > 0, got {self.tol}")
        if not 0 < self.damping <= 1:
            raise UsageError(f"damping must be in (0, 1], got {self.damping}")
        if self.max_iters < 0:
            raise UsageError(f"max_iters must be >= 0, got {self.max_iters}")
        if self.restarts < 1:
            raise UsageError(f"restarts must be >= 1, got {self.restarts}")
        if not self.dedupe_tol > 0:
            raise UsageError(f"dedupe_tol must be > 0, got {self.dedupe_tol}")

    def replace(self, **kwargs) -> "SolveOptions":
        return replace(self, **kwargs)


@dataclass(frozen=True, kw_only=True)
class SolveResult:
    labelling: Labelling
    iterations: int
    residual: float
    converged: bool
    # index of the start point in enumerate_labellings (0 is sigma0)
    start: int = 0

    def to_json(self) -> dict:
        return {
            "sigma": self.labelling.to_json(),
            "iterations": self.iterations,
            "residual": self.residual,
            "converged": self.converged,
        }


@dataclass(frozen=True)
class IterationOutcome:
    x: FloatArray
    iterations: int
    residual: float
    converged: bool


@dataclass
class CompiledGraph:
    """Array form of an ArgGraph under one default activation."""

    graph: ArgGraph
    phi: Activation
    names: list[str] = field(init=False)
    index: dict[str, int] = field(init=False)
    matrix: FloatArray = field(init=False)
    boolean_edges: list[tuple[int, Edge]] = field(init=False)
    mask: np.ndarray = field(init=False)
    overrides: list[tuple[int, Activation]] = field(init=False)

    def __post_init__(self):
        self.names = list(self.graph.arguments)
        self.index = {a: i for i, a in enumerate(self.names)}
        n = len(self.names)
        self.matrix = np.zeros((n, n))
        self.boolean_edges = []
        for edge in self.graph.edges:
            t = self.index[edge.target]
            match edge.source:
                case Atom(name):
                    # parallel edges are summed
                    self.matrix[t, self.index[name]] += edge.weight
                case _:
                    self.boolean_edges.append((t, edge))
        self.mask = np.array([bool(self.graph.incoming_map[a]) for a in self.names], dtype=bool)
        self.overrides = [(self.index[a], p) for a, p in self.graph.phi_override.items()]

    def vector(self, labelling: Labelling) -> FloatArray:
        return np.array([labelling[a] for a in self.names], dtype=np.float64)

    def labelling(self, x: FloatArray) -> Labelling:
        return Labelling({a: float(v) for a, v in zip(self.names, np.clip(x, 0.0, 1.0))})

    def local_field(self, x: FloatArray) -> FloatArray:
        """W^G_sigma for every argument (0 where undefined)."""
        w = self.matrix @ x
        for t, edge in self.boolean_edges:
            value = evaluate(edge.source, lambda a: float(x[self.index[a]]), self.graph.logic)
            w[t] += edge.weight * value
        return w

    def activate(self, w: FloatArray) -> FloatArray:
        out = self.phi(w)
        for i, phi in self.overrides:
            out[i] = phi(float(w[i]))
        return out

    def update(self, x: FloatArray) -> FloatArray:
        """The undamped synchronous map; source arguments keep their value."""
        return np.where(self.mask, self.activate(self.local_field(x)), x)

    def derivative(self, x: FloatArray) -> FloatArray:
        w = self.local_field(x)
        d = self.phi.derivative(w)
        for i, phi in self.overrides:
            d[i] = phi.derivative(float(w[i]))
        return d


def compile_graph(graph: ArgGraph, phi: Activation) -> CompiledGraph:
    return CompiledGraph(graph, phi)


def _residual(x: FloatArray, target: FloatArray, mask: np.ndarray) -> float:
    if not mask.any():
        return 0.0
    return float(np.max(np.abs(x - target)[mask]))


def polish_point(update: UpdateFn, x: FloatArray, mask: np.ndarray, radius: float) -> FloatArray | None:
    """Refine a near-fixed point with scipy's root finder; None if it wanders off or fails."""
    if not mask.any():
        return None

    def objective(y: FloatArray) -> FloatArray:
        z = x.copy()
        z[mask] = y
        return z[mask] - update(z)[mask]

    result = scipy.optimize.root(objective, x[mask], method="hybr")
    if not result.success:
        return None
    polished = x.copy()
    polished[mask] = np.clip(result.x, 0.0, 1.0)
    if np.max(np.abs(polished - x)) > radius:
        return None
    return polished


def run_iteration(update: UpdateFn, x0: FloatArray, mask: np.ndarray, opts: SolveOptions) -> IterationOutcome:
    """Damped synchronous iteration of `update` from `x0` until the residual drops to tol.

    Returns the best point seen (lowest residual) when max_iters runs out.
    """
    x = x0.astype(np.float64, copy=True)
    best_x, best_r, best_it = x, np.inf, 0
    iterations = 0
    while True:
        target = update(x)
        r = _residual(x, target, mask)
        if r < best_r:
            best_x, best_r, best_it = x, r, iterations
        if r <= opts.tol or iterations >= opts.max_iters:
            break
        x = (1.0 - opts.damping) * x + opts.damping * target
        iterations += 1

    converged = best_r <= opts.tol
    if not converged:
        log.info("no convergence after %d iterations (best residual %.3g)", iterations, best_r)
        return IterationOutcome(best_x, iterations, float(best_r), False)

    if opts.polish and best_r > 0.0:
        polished = polish_point(update, best_x, mask, opts.dedupe_tol)
        if polished is not None:
            r = _residual(polished, update(polished), mask)
            if r < best_r:
                best_x, best_r = polished, r
    log.debug("converged in %d iterations (residual %.3g)", best_it, best_r)
    return IterationOutcome(best_x, best_it, float(best_r), True)


def iterate_step(graph: ArgGraph, labelling: Labelling, phi: Activation, damping: float = 1.0) -> Labelling:
    if not 0 < damping <= 1:
        raise UsageError(f"damping must be in (0, 1], got {damping}")
    compiled = compile_graph(graph, phi)
    x = compiled.vector(labelling)
    return compiled.labelling((1.0 - damping) * x + damping * compiled.update(x))


def _solve_compiled(compiled: CompiledGraph, x0: FloatArray, opts: SolveOptions, start: int = 0) -> SolveResult:
    outcome = run_iteration(compiled.update, x0, compiled.mask, opts)
    return SolveResult(
        labelling=compiled.labelling(outcome.x),
        iterations=outcome.iterations,
        residual=outcome.residual,
        converged=outcome.converged,
        start=start,
    )


def solve_fixed_point(
    graph: ArgGraph, start: Labelling, phi: Activation, opts: SolveOptions | None = None
) -> SolveResult:
    opts = opts or SolveOptions()
    compiled = compile_graph(graph, phi)
    return _solve_compiled(compiled, compiled.vector(start), opts)


def find_cycle(graph: ArgGraph) -> list[str] | None:
    try:
        arcs = nx.find_cycle(graph.dependency_graph())
    except nx.NetworkXNoCycle:
        return None
    return [u for u, _ in arcs]


def forward_acyclic(graph: ArgGraph, phi: Activation) -> Labelling:
    """One pass in topological order; sources keep sigma0."""
    cycle = find_cycle(graph)
    if cycle is not None:
        raise CyclicGraphError(cycle)
    compiled = compile_graph(graph, phi)
    x = compiled.vector(Labelling(dict(graph.sigma0)))
    for a in nx.topological_sort(graph.dependency_graph()):
        i = compiled.index[a]
        if compiled.mask[i]:
            x[i] = compiled.update(x)[i]
    return compiled.labelling(x)


def dedupe_points(points: list[FloatArray], tol: float) -> list[FloatArray]:
    kept: list[FloatArray] = []
    for point in points:
        if all(np.max(np.abs(point - k), initial=0.0) > tol for k in kept):
            kept.append(point)
    return kept


def dedupe(results: list[SolveResult], tol: float) -> list[SolveResult]:
    """Drop results within `tol` (max-norm) of an earlier one, keeping discovery order."""
    kept: list[SolveResult] = []
    for result in results:
        if all(result.labelling.distance(k.labelling) > tol for k in kept):
            kept.append(result)
    return kept


def enumerate_labellings(
    graph: ArgGraph, phi: Activation, opts: SolveOptions | None = None
) -> list[SolveResult]:
    """Solve from sigma0 and from restarts-1 seeded random starts; keep distinct converged results.

    Random starts redraw only the constrained arguments; sources stay at sigma0.
    """
    opts = opts or SolveOptions()
    compiled = compile_graph(graph, phi)
    rng = np.random.default_rng(opts.rng_seed)
    base = compiled.vector(Labelling(dict(graph.sigma0)))
    results = []
    for k in range(opts.restarts):
        x0 = base.copy()
        if k > 0:
            x0[compiled.mask] = rng.uniform(0.0, 1.0, size=int(compiled.mask.sum()))
        result = _solve_compiled(compiled, x0, opts, start=k)
        if result.converged:
            results.append(result)
    distinct = dedupe(results, opts.dedupe_tol)
    log.info(
        "enumerate_labellings: %d/%d starts converged, %d distinct",
        len(results),
        opts.restarts,
        len(distinct),
    )
    return distinct
