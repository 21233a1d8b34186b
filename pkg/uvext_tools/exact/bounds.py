"""Exact evaluation of the explicit point-count bounds and pfaffian format bookkeeping.

Everything here is integer arithmetic. The constants of the effective bound
N <= c1 * delta^c2 on the number of translates are not known numerically;
they are reported as unresolved rather than guessed.
"""

from mypy_extensions import TypedDict
from typing import Callable, Dict, List, NamedTuple, Tuple

# Number of pieces in the pfaffian description of the graph of (wp, zeta)
# on a fundamental domain.
PIECES = 144503

UNRESOLVED = 'unresolved'


class PfaffianFormat(NamedTuple('PfaffianFormat', [('e1', int), ('e2', int), ('e3', int),
                                                   ('e4', int), ('e5', int), ('e6', int)])):
    """A six-entry pfaffian format, entries in their fixed order."""

    @property
    def beta(self):
        # type: () -> int
        """The entry bounding polynomial degrees."""
        return self.e3


def format_graph():
    # type: () -> PfaffianFormat
    """Format of the graph of (wp, zeta) restricted to a fundamental domain."""
    return PfaffianFormat(9, 9, 1, 6, PIECES, 4)


def format_xg():
    # type: () -> PfaffianFormat
    """Format of the graph together with six equations of degree at most 3."""
    return PfaffianFormat(9, 9, 3, 12, PIECES, 10)


def format_product(gp):
    # type: (int) -> PfaffianFormat
    """Format of the product of gp copies of format_xg()."""
    assert gp >= 1, 'gp must be positive'
    return PfaffianFormat(9 * gp, 9 * gp, 3, 12 * gp, PIECES ** gp, 10 * gp)


def chart_count(g):
    # type: (int) -> int
    """Number of chart specializations (X0 = 1 or identity, per factor)."""
    assert g >= 1
    return 2 ** g


def n_iso_bound(g, delta):
    # type: (int, int) -> int
    """2^(42g^2 + 126g) * g^(30g) * max(3, delta)^(21g), exactly."""
    assert g >= 1 and delta >= 1, 'g and delta must be positive'
    return 2 ** (42 * g * g + 126 * g) * g ** (30 * g) * max(3, delta) ** (21 * g)


# Zero sets covering one chart specialization: how many, and the order and
# degree of the pfaffian functions defining them.
PfaffianZeroSets = NamedTuple('PfaffianZeroSets', [('count', int),
                                                   ('order', int),
                                                   ('degree', Tuple[int, int]),
                                                   ('charts', int)])


def pfaffian_zero_set_data(g, delta):
    # type: (int, int) -> PfaffianZeroSets
    assert g >= 1 and delta >= 1
    return PfaffianZeroSets(PIECES ** g, 9 * g, (9 * g, max(3, delta)), chart_count(g))


# Serialized form of TranslateBoundShape.
ShapeDict = TypedDict('ShapeDict', {'g': int,
                                    'statement': str,
                                    'c1': str,
                                    'c2': str,
                                    'exponent_shape': str})


class TranslateBoundShape(object):
    """The shape N <= c1 * delta^c2 of the bound on translates, constants unresolved."""

    statement = 'N <= c1 * delta^c2'
    exponent_shape = "(c*g)^(c'*g)"

    def __init__(self, g, c1=UNRESOLVED, c2=UNRESOLVED):
        # type: (int, str, str) -> None
        assert g >= 1
        self.g = g
        self.c1 = c1
        self.c2 = c2

    def is_resolved(self):
        # type: () -> bool
        return self.c1 != UNRESOLVED and self.c2 != UNRESOLVED

    def to_dict(self):
        # type: () -> ShapeDict
        return {
            'g': self.g,
            'statement': self.statement,
            'c1': self.c1,
            'c2': self.c2,
            'exponent_shape': self.exponent_shape,
        }

    @classmethod
    def from_dict(cls, data):
        # type: (ShapeDict) -> TranslateBoundShape
        return cls(data['g'], data['c1'], data['c2'])

    def __repr__(self):
        # type: () -> str
        return 'TranslateBoundShape(g=%d, c1=%s, c2=%s)' % (self.g, self.c1, self.c2)

    def __eq__(self, other):
        # type: (object) -> bool
        return isinstance(other, TranslateBoundShape) and self.to_dict() == other.to_dict()

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other


def translate_bound_shape(g):
    # type: (int) -> TranslateBoundShape
    return TranslateBoundShape(g)


# An external estimate for the number of connected components of the zero
# sets described by a PfaffianZeroSets record.
ComponentEstimate = Callable[[PfaffianZeroSets], int]

_component_estimates = {}  # type: Dict[str, ComponentEstimate]


def register_component_estimate(name, estimate):
    # type: (str, ComponentEstimate) -> None
    """Register a connected-component estimate taken from an external reference."""
    _component_estimates[name] = estimate


def unregister_component_estimate(name):
    # type: (str) -> None
    _component_estimates.pop(name, None)


def component_estimate(name, zero_sets):
    # type: (str, PfaffianZeroSets) -> int
    if name not in _component_estimates:
        raise KeyError('No component estimate registered as %r' % name)
    return _component_estimates[name](zero_sets)


def registered_estimates():
    # type: () -> List[str]
    return sorted(_component_estimates)


class BoundReport(object):
    """Exact bounds for V in a product of g extensions, defined in degree delta."""

    def __init__(self, g, delta, n_iso, translate_shape, zero_sets, formats, external):
        # type: (int, int, int, TranslateBoundShape, PfaffianZeroSets, List[PfaffianFormat], Dict[str, int]) -> None
        assert n_iso > 0
        self.g = g
        self.delta = delta
        self.n_iso = n_iso
        self.translate_shape = translate_shape
        self.zero_sets = zero_sets
        self.formats = formats
        self.external = external

    def __repr__(self):
        # type: () -> str
        return 'BoundReport(g=%d, delta=%d)' % (self.g, self.delta)


def bound_report(g, delta):
    # type: (int, int) -> BoundReport
    zero_sets = pfaffian_zero_set_data(g, delta)
    formats = [format_graph(), format_xg()] + [format_product(k) for k in range(1, g + 1)]
    external = {name: component_estimate(name, zero_sets) for name in registered_estimates()}
    return BoundReport(g, delta, n_iso_bound(g, delta), translate_bound_shape(g), zero_sets,
                       formats, external)
