"""Value types describing the intersection of a variety with the compact subgroup."""

from typing import List, NamedTuple, Optional, Sequence, Tuple

from uvext_runtime.extension import BettiPoint, UEPoint


class Solution(object):
    """A zero of the system on the compact subgroup."""

    def __init__(self, betti, point, residual, refined, iterations):
        # type: (BettiPoint, UEPoint, float, bool, int) -> None
        self.betti = betti
        self.point = point
        self.residual = residual
        self.refined = refined
        self.iterations = iterations

    def __repr__(self):
        # type: () -> str
        return 'Solution(%r, residual=%.3g, iterations=%d)' % (
            self.betti, self.residual, self.iterations)


# An integer vector a with a.x = c (mod 1) on the member solutions.
Relation = NamedTuple('Relation', [('a', Tuple[int, ...]),
                                   ('c', float),
                                   ('members', Tuple[int, ...])])


class IntersectionReport(object):
    """Solutions found on a grid of the Betti torus, with their classification.

    'clusters' partitions solution indices; 'torsion' is aligned with
    'solutions'; 'relations' hold on the members they list.
    """

    def __init__(self, solutions, resolutions_used, tolerance, seeds, failures):
        # type: (Sequence[Solution], Sequence[int], float, int, int) -> None
        self.solutions = list(solutions)
        self.resolutions_used = list(resolutions_used)
        self.tolerance = tolerance
        self.seeds = seeds
        self.failures = failures
        self.clusters = [[i] for i in range(len(self.solutions))]  # type: List[List[int]]
        self.relations = []  # type: List[Relation]
        self.torsion = [None] * len(self.solutions)  # type: List[Optional[int]]
        self.stable = None  # type: Optional[bool]

    def betti_points(self):
        # type: () -> List[BettiPoint]
        return [s.betti for s in self.solutions]

    def __repr__(self):
        # type: () -> str
        return 'IntersectionReport(%d solutions at resolutions %s)' % (
            len(self.solutions), self.resolutions_used)
