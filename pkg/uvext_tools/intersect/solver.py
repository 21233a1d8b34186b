"""Locate the zeros of a polynomial system on the compact subgroup.

The system is pulled back to the Betti torus [0, 1)^(2g) through
compact_coordinates() and its real and imaginary parts are treated as a map
R^(2g) -> R^(2m). The map is sampled on a regular grid; grid nodes that look
like zeros seed a damped Gauss-Newton refinement with a finite-difference
Jacobian. Refined zeros are deduplicated on the torus and sorted, so that the
outcome does not depend on the number of worker threads.
"""

import logging
from threading import Thread

import numpy as np
from six.moves.queue import Queue  # type: ignore  # No library stub yet

from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

from uvext_runtime.elliptic import NoConvergence
from uvext_runtime.extension import BettiPoint, ExtensionConfig, betti_to_point, compact_coordinates
from uvext_tools.intersect.types import IntersectionReport, Solution
from uvext_tools.variety.evaluate import eval_coordinates
from uvext_tools.variety.types import VarietySpec

DEFAULT_RESOLUTION = 64
DEFAULT_TOLERANCE = 1e-8
DEFAULT_EXTRA_SEEDS = 8

# Largest real dimension 2g of the torus searched by default.
MAX_TORUS_DIMENSION = 6

# A grid node spawns a refinement when its residual is at most this multiple
# of the largest change towards an axis neighbour.
SPAWN_FACTOR = 4.0

FD_STEP = 1e-7
MAX_ITER = 100
POLISH_FLOOR = 1e-15
CHUNK = 1 << 15

# Stored Betti coordinates within this distance of an integer are snapped.
SNAP = 1e-12

T = TypeVar('T')
S = TypeVar('S')


class DimensionGuard(Exception):
    """Raised when the torus is too large to be searched on a grid."""

    def __init__(self, g, limit):
        # type: (int, int) -> None
        super(DimensionGuard, self).__init__(
            'Torus dimension 2g = %d exceeds the limit %d' % (2 * g, limit))
        self.g = g
        self.limit = limit


class WorkerPool(object):
    """Apply a function to items on daemon threads fed from a task queue.

    Results come back in item order whatever the number of workers.
    """

    def __init__(self, workers=1):
        # type: (int) -> None
        assert workers >= 1
        self.workers = workers

    def map(self, func, items):
        # type: (Callable[[T], S], Sequence[T]) -> List[S]
        if self.workers == 1 or len(items) <= 1:
            return [func(item) for item in items]
        tasks = Queue()  # type: Queue[Optional[Tuple[int, T]]]
        results = {}  # type: Dict[int, S]
        errors = []  # type: List[Tuple[int, Exception]]

        def consumer():
            # type: () -> None
            while True:
                task = tasks.get()
                if task is None:
                    tasks.task_done()
                    return
                index, item = task
                try:
                    results[index] = func(item)
                except Exception as err:
                    errors.append((index, err))
                tasks.task_done()

        threads = []
        for _ in range(min(self.workers, len(items))):
            thread = Thread(target=consumer)
            thread.daemon = True
            thread.start()
            threads.append(thread)
        for task in enumerate(items):
            tasks.put(task)
        for _ in threads:
            tasks.put(None)
        tasks.join()
        if errors:
            raise min(errors, key=lambda e: e[0])[1]
        return [results[i] for i in range(len(items))]


def residual_vectors(cfg, spec, betti):
    # type: (ExtensionConfig, VarietySpec, Any) -> Any
    """Real and imaginary parts of the system at Betti points of shape (N, 2g)."""
    values = eval_coordinates(spec, compact_coordinates(cfg, betti))
    return np.concatenate([values.real, values.imag], axis=1)


def residual_norms(cfg, spec, betti):
    # type: (ExtensionConfig, VarietySpec, Any) -> Any
    return np.sqrt(np.sum(residual_vectors(cfg, spec, betti) ** 2, axis=1))


def grid_points(resolution, dim, start, stop):
    # type: (int, int, int, int) -> Any
    """Nodes start..stop-1 (C order) of the grid i/resolution in [0, 1)^dim."""
    index = np.unravel_index(np.arange(start, stop), (resolution,) * dim)
    return np.stack(index, axis=1).astype(float) / resolution


def grid_residuals(cfg, spec, resolution, pool=None):
    # type: (ExtensionConfig, VarietySpec, int, Optional[WorkerPool]) -> Any
    """Residual norms on the whole grid, as an array of shape (resolution,) * 2g."""
    pool = pool or WorkerPool()
    dim = 2 * cfg.g
    total = resolution ** dim
    chunks = [(start, min(start + CHUNK, total)) for start in range(0, total, CHUNK)]
    parts = pool.map(lambda c: residual_norms(cfg, spec, grid_points(resolution, dim, c[0], c[1])),
                     chunks)
    return np.concatenate(parts).reshape((resolution,) * dim)


def spawn_seeds(norms, factor=SPAWN_FACTOR):
    # type: (Any, float) -> Any
    """Grid indices of nodes that are local minima and small against their neighbours."""
    is_min = np.ones(norms.shape, dtype=bool)
    spread = np.zeros(norms.shape)
    for axis in range(norms.ndim):
        for shift in (1, -1):
            neighbour = np.roll(norms, shift, axis=axis)
            is_min &= norms <= neighbour
            spread = np.maximum(spread, np.abs(neighbour - norms))
    return np.argwhere(is_min & (norms <= factor * spread))


def _jacobian(cfg, spec, x):
    # type: (ExtensionConfig, VarietySpec, Any) -> Any
    dim = len(x)
    offsets = FD_STEP * np.eye(dim)
    points = np.concatenate([x + offsets, x - offsets])
    values = residual_vectors(cfg, spec, points)
    return ((values[:dim] - values[dim:]) / (2 * FD_STEP)).T


def _snap(x):
    # type: (Any) -> Any
    nearest = np.round(x)
    return np.where(np.abs(x - nearest) < SNAP, nearest, x)


def refine_newton(cfg, spec, b0, tol=DEFAULT_TOLERANCE, max_iter=MAX_ITER):
    # type: (ExtensionConfig, VarietySpec, BettiPoint, float, int) -> Solution
    """Damped Gauss-Newton refinement of a zero starting from b0.

    Iterates until the residual stops decreasing, so that zeros of higher
    multiplicity are polished as far as double precision allows. The result
    is marked refined unless max_iter ran out first. Raises NoConvergence
    unless the final residual is below tol.
    """
    x = np.array(b0.coords, dtype=float)
    f = residual_vectors(cfg, spec, x[None])[0]
    r = float(np.linalg.norm(f))
    damping = 1e-3
    iterations = 0
    refined = r < POLISH_FLOOR
    while iterations < max_iter and not refined:
        jac = _jacobian(cfg, spec, x)
        normal = jac.T.dot(jac)
        gradient = jac.T.dot(f)
        scale = max(float(np.max(np.diag(normal))), 1e-300)
        improved = False
        for _ in range(12):
            lhs = normal + damping * scale * np.eye(len(x))
            step = np.linalg.lstsq(lhs, -gradient, rcond=None)[0]
            trial = x + step
            f_trial = residual_vectors(cfg, spec, trial[None])[0]
            r_trial = float(np.linalg.norm(f_trial))
            if r_trial < r:
                improved = True
                break
            damping *= 4
        iterations += 1
        if not improved:
            refined = True
            break
        x, f, r = trial, f_trial, r_trial
        damping = max(damping / 3, 1e-12)
        refined = r < POLISH_FLOOR or np.max(np.abs(step)) < 1e-13
    if not r < tol:
        raise NoConvergence('refinement from %r' % (b0,), r)
    b = BettiPoint(_snap(x - np.floor(x)))
    return Solution(b, betti_to_point(cfg, b), r, bool(refined), iterations)


def _refine_or_none(cfg, spec, tol):
    # type: (ExtensionConfig, VarietySpec, float) -> Callable[[BettiPoint], Optional[Solution]]
    def refine(b0):
        # type: (BettiPoint) -> Optional[Solution]
        try:
            return refine_newton(cfg, spec, b0, tol)
        except NoConvergence as err:
            logging.debug('%s', err)
            return None
    return refine


def deduplicate(solutions, radius):
    # type: (Sequence[Solution], float) -> List[Solution]
    """Keep the first of any solutions closer than radius on the torus."""
    kept = []  # type: List[Solution]
    for s in solutions:
        if all(s.betti.distance(k.betti) > radius for k in kept):
            kept.append(s)
    return kept


def canonical_order(solutions):
    # type: (Sequence[Solution]) -> List[Solution]
    return sorted(solutions, key=lambda s: s.betti.coords)


def same_solutions(first, second, radius):
    # type: (Sequence[Solution], Sequence[Solution], float) -> bool
    """Whether two solution lists agree up to torus distance radius."""
    if len(first) != len(second):
        return False
    return (all(any(a.betti.distance(b.betti) < radius for b in second) for a in first) and
            all(any(a.betti.distance(b.betti) < radius for a in first) for b in second))


def _solve_once(cfg, spec, resolution, tol, seed, pool, extra_seeds):
    # type: (ExtensionConfig, VarietySpec, int, float, int, WorkerPool, int) -> IntersectionReport
    norms = grid_residuals(cfg, spec, resolution, pool)
    seeds = [BettiPoint(index / float(resolution)) for index in spawn_seeds(norms)]
    rng = np.random.RandomState(seed)
    seeds.extend(BettiPoint(x) for x in rng.rand(extra_seeds, 2 * cfg.g))
    logging.debug('resolution %d: %d seeds, smallest grid residual %.3g',
                  resolution, len(seeds), float(np.min(norms)))
    refined = pool.map(_refine_or_none(cfg, spec, tol), seeds)
    found = [s for s in refined if s is not None]
    solutions = canonical_order(deduplicate(found, 10 * tol))
    return IntersectionReport(solutions, [resolution], tol, len(seeds), len(seeds) - len(found))


def solve_intersection(cfg, spec, resolution=DEFAULT_RESOLUTION, tol=DEFAULT_TOLERANCE,
                       seed=0, workers=1, extra_seeds=DEFAULT_EXTRA_SEEDS,
                       max_dimension=MAX_TORUS_DIMENSION, confirm=False):
    # type: (ExtensionConfig, VarietySpec, int, float, int, int, int, int, bool) -> IntersectionReport
    """Find the zeros of spec on the compact subgroup of cfg.

    Completeness is relative to the grid: the report claims only that no
    further zeros were found at the resolutions it lists. With confirm, the
    search is repeated at twice the resolution and 'stable' records whether
    both searches agree.
    """
    assert spec.g == cfg.g, 'System has g = %d, configuration has g = %d' % (spec.g, cfg.g)
    if 2 * cfg.g > max_dimension:
        raise DimensionGuard(cfg.g, max_dimension)
    pool = WorkerPool(workers)
    report = _solve_once(cfg, spec, resolution, tol, seed, pool, extra_seeds)
    if confirm:
        finer = _solve_once(cfg, spec, 2 * resolution, tol, seed, pool, extra_seeds)
        report.resolutions_used.append(2 * resolution)
        report.stable = same_solutions(report.solutions, finer.solutions, 1e-6)
    return report


def sample_intersection(cfg, spec, count, seed=0, tol=DEFAULT_TOLERANCE, workers=1):
    # type: (ExtensionConfig, VarietySpec, int, int, float, int) -> List[Solution]
    """Refine random starting points to sample a positive-dimensional intersection."""
    rng = np.random.RandomState(seed)
    seeds = [BettiPoint(x) for x in rng.rand(4 * count, 2 * cfg.g)]
    refined = WorkerPool(workers).map(_refine_or_none(cfg, spec, tol), seeds)
    found = deduplicate([s for s in refined if s is not None], 10 * tol)
    return canonical_order(found[:count])
