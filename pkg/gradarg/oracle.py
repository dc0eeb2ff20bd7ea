"""Brute-force grid scan for phi-coherent labellings of small atomic graphs.

Independent of the iterative solver: scans a regular grid over the constrained arguments,
refines near-fixed grid points with a root finder and keeps the attracting ones.
"""

import itertools
import logging

import numpy as np
import scipy.optimize

from .activation import Activation, FloatArray
from .arggraph import ArgGraph, Labelling
from .errors import UsageError
from .solver import CompiledGraph, SolveOptions, compile_graph, dedupe_points, run_iteration

log = logging.getLogger(__name__)

MAX_ARGUMENTS = 4
GRID_STEPS = (1 / 16, 1 / 32, 1 / 64)
# fixed points closer than this are the same point
MATCH_TOL = 1e-6


def _lipschitz(compiled: CompiledGraph) -> float:
    """Numerical bound on the sup-norm Lipschitz constant of the update map."""
    samples = np.linspace(-60.0, 60.0, 24001)
    slope = float(np.max(compiled.phi.derivative(samples)))
    for _, phi in compiled.overrides:
        slope = max(slope, float(np.max(phi.derivative(samples))))
    rows = np.abs(compiled.matrix).sum(axis=1)
    return slope * float(rows.max(initial=0.0))


def _batch_residual(compiled: CompiledGraph, points: FloatArray) -> FloatArray:
    fields = points @ compiled.matrix.T
    targets = compiled.phi(fields)
    for i, phi in compiled.overrides:
        targets[:, i] = phi(fields[:, i])
    return np.abs(points - targets)[:, compiled.mask].max(axis=1)


def spectral_radius(compiled: CompiledGraph, x: FloatArray) -> float:
    """Spectral radius of the update Jacobian restricted to the constrained arguments."""
    mask = compiled.mask
    jac = compiled.derivative(x)[:, None] * compiled.matrix
    eigenvalues = np.linalg.eigvals(jac[np.ix_(mask, mask)])
    return float(np.max(np.abs(eigenvalues), initial=0.0))


def _refine(compiled: CompiledGraph, x: FloatArray, radius: float) -> FloatArray | None:
    mask = compiled.mask

    def objective(y: FloatArray) -> FloatArray:
        z = x.copy()
        z[mask] = y
        return z[mask] - compiled.update(z)[mask]

    result = scipy.optimize.root(objective, x[mask], method="hybr")
    if result.success:
        point = x.copy()
        point[mask] = result.x
        inside = np.all((point >= -1e-12) & (point <= 1 + 1e-12))
        near = np.max(np.abs(point - x)) <= radius
        if inside and near and np.max(np.abs(objective(point[mask]))) <= 1e-12:
            return np.clip(point, 0.0, 1.0)
    # fall back to plain iteration, which only ever lands on attracting points
    outcome = run_iteration(compiled.update, x, mask, SolveOptions(tol=1e-12, max_iters=20_000))
    return outcome.x if outcome.converged else None


def grid_oracle(
    graph: ArgGraph,
    phi: Activation,
    grid_step: float = 1 / 32,
    eps: float | None = None,
) -> list[Labelling]:
    """Every attracting phi-coherent labelling the grid resolves, sources pinned at sigma0.

    `eps` bounds the grid-point residual that qualifies a point as a candidate; by default it
    is the largest residual a grid point within half a step of a fixed point can have.
    """
    if len(graph.arguments) > MAX_ARGUMENTS:
        raise UsageError(f"grid oracle handles at most {MAX_ARGUMENTS} arguments, got {len(graph.arguments)}")
    if not graph.atomic:
        raise UsageError("grid oracle needs atomic edge sources")
    if not any(abs(grid_step - s) < 1e-12 for s in GRID_STEPS):
        raise UsageError(f"grid_step must be one of 1/16, 1/32, 1/64, got {grid_step}")

    compiled = compile_graph(graph, phi)
    base = compiled.vector(Labelling(dict(graph.sigma0)))
    free = np.flatnonzero(compiled.mask)
    if free.size == 0:
        return [compiled.labelling(base)]
    if eps is None:
        eps = grid_step * (1.0 + _lipschitz(compiled))

    ticks = np.linspace(0.0, 1.0, round(1 / grid_step) + 1)
    rest = np.array(list(itertools.product(ticks, repeat=free.size - 1)), dtype=np.float64)
    rest = rest.reshape(len(ticks) ** (free.size - 1), free.size - 1)
    candidates: list[tuple[float, FloatArray]] = []
    # one slab per value of the first free coordinate keeps memory flat
    for head in ticks:
        points = np.tile(base, (rest.shape[0], 1))
        points[:, free[0]] = head
        points[:, free[1:]] = rest
        r = _batch_residual(compiled, points)
        for i in np.flatnonzero(r <= eps):
            candidates.append((float(r[i]), points[i]))
    candidates.sort(key=lambda c: c[0])
    log.info("grid oracle: %d candidate grid point(s) at step %g", len(candidates), grid_step)

    found: list[FloatArray] = []
    visited: list[FloatArray] = []
    for _, point in candidates:
        if any(np.max(np.abs(point - v)) <= grid_step for v in visited):
            continue
        refined = _refine(compiled, point, radius=2 * grid_step)
        if refined is None:
            continue
        visited.append(refined)
        if spectral_radius(compiled, refined) >= 1.0 - 1e-9:
            continue
        found.append(refined)
    points = dedupe_points(found, MATCH_TOL)
    log.info("grid oracle: %d attracting fixed point(s)", len(points))
    return [compiled.labelling(p) for p in points]
