"""Infer torsion orders and rational subtorus cosets from solutions on the Betti torus."""

import functools
import itertools
import logging
import math
from fractions import Fraction

import numpy as np
from six.moves import range
from typing import Any, Dict, List, Optional, Sequence, Tuple

from uvext_runtime.extension import BettiPoint
from uvext_tools.intersect.types import IntersectionReport, Relation

DEFAULT_HEIGHT = 3
DEFAULT_QMAX = 100
TORSION_TOLERANCE = 1e-7
RELATION_TOLERANCE = 1e-6


def _coords(points):
    # type: (Sequence[Any]) -> Any
    return np.array([p.coords if isinstance(p, BettiPoint) else p for p in points], dtype=float)


def _circular_offset(values, tol):
    # type: (Any, float) -> Tuple[float, float]
    """Common value of values mod 1 and the largest deviation from it."""
    deviation = (values - values[0] + 0.5) % 1.0 - 0.5
    shift = float(np.mean(deviation))
    c = float((values[0] + shift) % 1.0)
    if min(c, 1.0 - c) < tol:
        c = 0.0
    return c, float(np.max(np.abs(deviation - shift)))


def candidate_vectors(dim, height):
    # type: (int, int) -> Any
    """Primitive integer vectors with entries in [-height, height], first nonzero entry positive."""
    found = []
    for a in itertools.product(range(-height, height + 1), repeat=dim):
        nonzero = [x for x in a if x]
        if nonzero and nonzero[0] > 0 and functools.reduce(math.gcd, nonzero) == 1:
            found.append(a)
    return np.array(found, dtype=int).reshape(-1, dim)


def hermite_basis(vectors):
    # type: (Sequence[Sequence[int]]) -> List[Tuple[int, ...]]
    """Row Hermite normal form of the integer lattice spanned by vectors (nonzero rows only)."""
    rows = [[int(x) for x in v] for v in vectors]
    if not rows:
        return []
    ncols = len(rows[0])
    basis = []  # type: List[List[int]]
    pivots = []  # type: List[int]
    for col in range(ncols):
        active = [r for r in rows if r[col] != 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            head = active[0]
            for r in active[1:]:
                q = r[col] // head[col]
                for j in range(ncols):
                    r[j] -= q * head[j]
            active = [r for r in active if r[col] != 0]
        if not active:
            continue
        head = active[0]
        if head[col] < 0:
            head[:] = [-x for x in head]
        rows = [r for r in rows if r is not head]
        basis.append(head)
        pivots.append(col)
    for i, col in enumerate(pivots):
        for k in range(i):
            q = basis[k][col] // basis[i][col]
            if q:
                basis[k] = [x - q * y for x, y in zip(basis[k], basis[i])]
    return [tuple(r) for r in basis]


def detect_subtorus(points, height=DEFAULT_HEIGHT, tol=RELATION_TOLERANCE):
    # type: (Sequence[Any], int, float) -> List[Tuple[Tuple[int, ...], float]]
    """Find integer relations a.x = c (mod 1) holding on all points.

    Every primitive a with entries bounded by height is tried; the relations
    found are reduced to an independent generating set in Hermite normal form,
    each with its common offset c. An empty list means no relation exists at
    this height.
    """
    x = _coords(points)
    assert len(x) >= 2, 'Need at least two points'
    candidates = candidate_vectors(x.shape[1], height)
    values = x.dot(candidates.T)
    deviation = (values - values[0] + 0.5) % 1.0 - 0.5
    spread = np.max(deviation, axis=0) - np.min(deviation, axis=0)
    accepted = candidates[spread < tol * np.sum(np.abs(candidates), axis=1)]
    logging.debug('%d of %d candidate relations hold', len(accepted), len(candidates))
    relations = []
    for a in hermite_basis(accepted.tolist()):
        c, _ = _circular_offset(x.dot(np.array(a, dtype=float)), tol)
        relations.append((a, c))
    return relations


def detect_torsion(b, qmax=DEFAULT_QMAX, tol=TORSION_TOLERANCE):
    # type: (Any, int, float) -> Optional[int]
    """Order of a Betti point whose coordinates are rationals with denominator at most qmax."""
    coords = b.coords if isinstance(b, BettiPoint) else tuple(b)
    order = 1
    for x in coords:
        approx = Fraction(float(x)).limit_denominator(qmax)
        if abs(float(x) - float(approx)) > tol:
            return None
        order = order * approx.denominator // math.gcd(order, approx.denominator)
    multiple = np.array(coords, dtype=float) * order
    if np.max(np.abs(multiple - np.round(multiple))) > order * tol:
        return None
    return order


def cluster_solutions(points, radius):
    # type: (Sequence[BettiPoint], float) -> List[List[int]]
    """Single-linkage clusters of points within radius of each other on the torus."""
    parent = list(range(len(points)))

    def find(i):
        # type: (int) -> int
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if points[i].distance(points[j]) <= radius:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    clusters = {}  # type: Dict[int, List[int]]
    for i in range(len(points)):
        clusters.setdefault(find(i), []).append(i)
    return [clusters[k] for k in sorted(clusters)]


def classify_report(report, height=DEFAULT_HEIGHT, qmax=DEFAULT_QMAX, radius=None):
    # type: (IntersectionReport, int, int, Optional[float]) -> IntersectionReport
    """Fill in torsion orders, clusters and per-cluster relations of a report."""
    points = report.betti_points()
    report.torsion = [detect_torsion(p, qmax) for p in points]
    if radius is None:
        radius = 2.0 / min(report.resolutions_used)
    report.clusters = cluster_solutions(points, radius)
    report.relations = []
    for members in report.clusters:
        if len(members) < 3:
            continue
        for a, c in detect_subtorus([points[i] for i in members], height):
            report.relations.append(Relation(a, c, tuple(members)))
    return report
