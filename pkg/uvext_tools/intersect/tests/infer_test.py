import math
import unittest

import numpy as np

from uvext_runtime.elliptic import CurveInvariants
from uvext_runtime.extension import BettiPoint, ExtensionConfig, betti_to_point
from uvext_tools.intersect.infer import (
    candidate_vectors,
    classify_report,
    cluster_solutions,
    detect_subtorus,
    detect_torsion,
    hermite_basis,
)
from uvext_tools.intersect.types import IntersectionReport, Relation, Solution


class TestCandidateVectors(unittest.TestCase):
    def test_one_dimension(self):
        # type: () -> None
        assert candidate_vectors(1, 3).tolist() == [[1]]

    def test_two_dimensions(self):
        # type: () -> None
        found = [tuple(a) for a in candidate_vectors(2, 2).tolist()]
        assert (1, 0) in found
        assert (0, 1) in found
        assert (1, -2) in found
        assert (2, 1) in found
        assert (2, 2) not in found
        assert (-1, 1) not in found
        assert (0, -1) not in found
        assert (0, 0) not in found
        assert len(found) == len(set(found))

    def test_primitive_with_negative_entries(self):
        # type: () -> None
        found = [tuple(a) for a in candidate_vectors(2, 2).tolist()]
        assert (2, -1) in found
        assert (2, -2) not in found
        assert sorted(found) == [(0, 1), (1, -2), (1, -1), (1, 0), (1, 1), (1, 2), (2, -1), (2, 1)]


class TestHermiteBasis(unittest.TestCase):
    def test_empty(self):
        # type: () -> None
        assert hermite_basis([]) == []

    def test_reduced_form(self):
        # type: () -> None
        assert hermite_basis([[2, 4], [3, 5]]) == [(1, 1), (0, 2)]

    def test_dependent_rows(self):
        # type: () -> None
        rows = [[1, 2, -1, -2], [0, 1, 0, -1], [1, 1, -1, -1], [2, 3, -2, -3]]
        assert hermite_basis(rows) == [(1, 0, -1, 0), (0, 1, 0, -1)]

    def test_negative_pivot(self):
        # type: () -> None
        assert hermite_basis([[0, -3]]) == [(0, 3)]


class TestDetectSubtorus(unittest.TestCase):
    def test_horizontal_line(self):
        # type: () -> None
        points = [BettiPoint([t, 0.0]) for t in (0.1, 0.37, 0.52, 0.9)]
        assert detect_subtorus(points) == [((0, 1), 0.0)]

    def test_shifted_line(self):
        # type: () -> None
        points = [[t, 0.25 - 2 * t] for t in (0.1, 0.37, 0.52, 0.9)]
        relations = detect_subtorus(points)
        assert len(relations) == 1
        a, c = relations[0]
        assert a == (2, 1)
        assert abs(c - 0.25) < 1e-12

    def test_diagonal(self):
        # type: () -> None
        rng = np.random.RandomState(5)
        points = [list(x) * 2 for x in rng.rand(6, 2)]
        assert detect_subtorus(points) == [((1, 0, -1, 0), 0.0), ((0, 1, 0, -1), 0.0)]

    def test_generic_points(self):
        # type: () -> None
        rng = np.random.RandomState(11)
        assert detect_subtorus(rng.rand(8, 4).tolist()) == []

    def test_wraps_around(self):
        # type: () -> None
        points = [[0.999999999, 0.2], [0.0, 0.7], [1e-9, 0.45]]
        assert detect_subtorus(points) == [((1, 0), 0.0)]


class TestDetectTorsion(unittest.TestCase):
    def test_orders(self):
        # type: () -> None
        assert detect_torsion([1.0 / 3, 0.5]) == 6
        assert detect_torsion(BettiPoint([0.0, 0.0])) == 1
        assert detect_torsion([0.25, 0.75, 0.2, 0.0]) == 20
        assert detect_torsion([0.25, 1.0 / 6]) == 12

    def test_irrational(self):
        # type: () -> None
        assert detect_torsion([1 / math.sqrt(2), 0.0], qmax=50) is None

    def test_denominator_bound(self):
        # type: () -> None
        assert detect_torsion([1.0 / 7, 0.0], qmax=7) == 7
        assert detect_torsion([1.0 / 7, 0.0], qmax=6) is None

    def test_noise(self):
        # type: () -> None
        assert detect_torsion([0.5 + 1e-9, 0.0]) == 2
        assert detect_torsion([0.5 + 1e-5, 0.0]) is None


class TestClusterSolutions(unittest.TestCase):
    def test_chains(self):
        # type: () -> None
        points = [BettiPoint([x, 0.5]) for x in (0.0, 0.05, 0.5, 0.1, 0.97)]
        assert cluster_solutions(points, 0.06) == [[0, 1, 3, 4], [2]]

    def test_singletons(self):
        # type: () -> None
        points = [BettiPoint([x, x]) for x in (0.1, 0.3, 0.6)]
        assert cluster_solutions(points, 0.01) == [[0], [1], [2]]
        assert cluster_solutions([], 0.1) == []


class TestClassifyReport(unittest.TestCase):
    def test_line_and_torsion(self):
        # type: () -> None
        cfg = ExtensionConfig.from_invariants([CurveInvariants(complex(4, 0), complex(0, 0))])
        points = [BettiPoint([t, 0.5]) for t in (0.0, 0.0213, 0.0437, 0.0651)] + [BettiPoint([0.5, 0.0])]
        solutions = [Solution(b, betti_to_point(cfg, b), 0.0, True, 0) for b in points]
        report = IntersectionReport(solutions, [64], 1e-8, 5, 0)
        classify_report(report, radius=0.03)
        assert report.torsion == [2, None, None, None, 2]
        assert report.clusters == [[0, 1, 2, 3], [4]]
        assert report.relations == [Relation((0, 1), 0.5, (0, 1, 2, 3))]

    def test_default_radius(self):
        # type: () -> None
        cfg = ExtensionConfig.from_invariants([CurveInvariants(complex(4, 0), complex(0, 0))])
        points = [BettiPoint([0.1, 0.1]), BettiPoint([0.12, 0.1])]
        solutions = [Solution(b, betti_to_point(cfg, b), 0.0, True, 0) for b in points]
        report = classify_report(IntersectionReport(solutions, [64, 128], 1e-8, 2, 0))
        assert report.clusters == [[0, 1]]
        assert report.relations == []
