"""The universal vectorial extension G of an elliptic curve, as a surface in P^4.

G is cut out by

    X0*X2^2 = 4*X1^3 - g2*X0^2*X1 - g3*X0^3
    X0*X4 - X2*X3 = 2*X1^2

and a product of g such surfaces is described by an ExtensionConfig. Points
are kept per factor either as an AffinePoint (the chart X0 = 1) or as a
FiberPoint(v), the point [0:0:1:0:v] over the origin of the curve.

The exponential sends (z, w) to (1, wp, wp', zeta + w, wp'*(zeta + w) + 2*wp^2)
with kernel spanned by the columns (omega_i, -eta_i) of the period matrix.
Writing z = p*omega1 + q*omega2 over the reals gives the Betti coordinates
(p, q); the maximal compact subgroup is where w = -p*eta1 - q*eta2.
"""

import logging
import math

import numpy as np

from typing import Any, List, NamedTuple, Sequence, Tuple, Union

from uvext_runtime.elliptic import (
    CurveInvariants,
    DEFAULT_PRECISION,
    EllipticError,
    NoConvergence,
    PeriodMatrix,
    PoleAtLatticePoint,
    compute_periods,
    lattice_coordinates,
    POLE_THRESHOLD,
    reduce_mod_lattice,
    wp,
    wp_prime,
    zeta,
)

MODEL_TOLERANCE = 1e-9
COMPACT_TOLERANCE = 1e-8

# Points whose relative model residual exceeds this are rejected as input.
INPUT_TOLERANCE = 1e-7

# Seeds per side of the grid used to start the logarithm.
LOG_GRID = 20
LOG_MAX_ITER = 60


class NotOnModel(EllipticError):
    """Raised when a point does not satisfy the equations of the model."""

    def __init__(self, residual):
        # type: (float) -> None
        super(NotOnModel, self).__init__('Point is not on the model (residual %.3g)' % residual)
        self.residual = residual


FiberPoint = NamedTuple('FiberPoint', [('v', complex)])

AffinePoint = NamedTuple('AffinePoint', [('x0', complex),
                                         ('x1', complex),
                                         ('x2', complex),
                                         ('x3', complex),
                                         ('x4', complex)])

Factor = Union[FiberPoint, AffinePoint]


def affine_point(x1, x2, x3, x4):
    # type: (complex, complex, complex, complex) -> AffinePoint
    return AffinePoint(1 + 0j, complex(x1), complex(x2), complex(x3), complex(x4))


def factor_coordinates(factor):
    # type: (Factor) -> Tuple[complex, complex, complex, complex, complex]
    """Representative homogeneous coordinates of one factor."""
    if isinstance(factor, FiberPoint):
        return 0j, 0j, 1 + 0j, 0j, complex(factor.v)
    return tuple(complex(x) for x in factor)  # type: ignore


class UEPoint(object):
    """A point of G_1 x ... x G_g, one Factor per curve."""

    def __init__(self, factors):
        # type: (Sequence[Factor]) -> None
        self.factors = tuple(factors)

    @property
    def g(self):
        # type: () -> int
        return len(self.factors)

    def projective_coordinates(self):
        # type: () -> List[Tuple[complex, complex, complex, complex, complex]]
        return [factor_coordinates(f) for f in self.factors]

    def __repr__(self):
        # type: () -> str
        return 'UEPoint(%s)' % ', '.join(repr(f) for f in self.factors)

    def __eq__(self, other):
        # type: (object) -> bool
        return isinstance(other, UEPoint) and self.factors == other.factors

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other

    def __hash__(self):
        # type: () -> int
        return hash(self.factors)


class LogPoint(object):
    """Tangent-space coordinates (z_k, w_k), one pair per factor."""

    def __init__(self, pairs):
        # type: (Sequence[Tuple[complex, complex]]) -> None
        self.pairs = tuple((complex(z), complex(w)) for z, w in pairs)

    def __add__(self, other):
        # type: (LogPoint) -> LogPoint
        return LogPoint([(z1 + z2, w1 + w2)
                         for (z1, w1), (z2, w2) in zip(self.pairs, other.pairs)])

    def scale(self, n):
        # type: (int) -> LogPoint
        return LogPoint([(n * z, n * w) for z, w in self.pairs])

    def __neg__(self):
        # type: () -> LogPoint
        return self.scale(-1)

    def __repr__(self):
        # type: () -> str
        return 'LogPoint(%r)' % (list(self.pairs),)

    def __eq__(self, other):
        # type: (object) -> bool
        return isinstance(other, LogPoint) and self.pairs == other.pairs

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other

    def __hash__(self):
        # type: () -> int
        return hash(self.pairs)


def _mod1(x):
    # type: (float) -> float
    y = x - math.floor(x)
    return 0.0 if y >= 1.0 else y


def torus_distance(x, y):
    # type: (Sequence[float], Sequence[float]) -> float
    """Max-metric distance on R^n/Z^n."""
    best = 0.0
    for a, b in zip(x, y):
        d = abs(a - b) % 1.0
        best = max(best, min(d, 1.0 - d))
    return best


class BettiPoint(object):
    """Betti coordinates (p1, q1, ..., pg, qg), stored modulo 1 in [0, 1)."""

    def __init__(self, coords):
        # type: (Sequence[float]) -> None
        assert len(coords) % 2 == 0, 'Betti coordinates come in pairs'
        self.coords = tuple(_mod1(float(x)) for x in coords)

    @classmethod
    def from_pairs(cls, pairs):
        # type: (Sequence[Tuple[float, float]]) -> BettiPoint
        return cls([x for pair in pairs for x in pair])

    @property
    def g(self):
        # type: () -> int
        return len(self.coords) // 2

    def pairs(self):
        # type: () -> List[Tuple[float, float]]
        return [(self.coords[2 * k], self.coords[2 * k + 1]) for k in range(self.g)]

    def distance(self, other):
        # type: (BettiPoint) -> float
        return torus_distance(self.coords, other.coords)

    def __add__(self, other):
        # type: (BettiPoint) -> BettiPoint
        return BettiPoint([a + b for a, b in zip(self.coords, other.coords)])

    def __repr__(self):
        # type: () -> str
        return 'BettiPoint(%s)' % ', '.join('%.12g' % x for x in self.coords)

    def __eq__(self, other):
        # type: (object) -> bool
        return isinstance(other, BettiPoint) and self.coords == other.coords

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other

    def __hash__(self):
        # type: () -> int
        return hash(self.coords)


class ExtensionConfig(object):
    """An ordered product of universal vectorial extensions, one per curve."""

    def __init__(self, factors):
        # type: (Sequence[Tuple[CurveInvariants, PeriodMatrix]]) -> None
        assert len(factors) >= 1, 'At least one factor is required'
        for inv, pm in factors:
            assert pm.legendre_residual() < 1e-9, 'Legendre relation fails for %r' % (pm,)
        self.factors = tuple(factors)

    @classmethod
    def from_invariants(cls, curves, precision_target=DEFAULT_PRECISION):
        # type: (Sequence[CurveInvariants], float) -> ExtensionConfig
        return cls([(inv, compute_periods(inv, precision_target)) for inv in curves])

    @property
    def g(self):
        # type: () -> int
        return len(self.factors)

    def period_matrices(self):
        # type: () -> List[PeriodMatrix]
        return [pm for _, pm in self.factors]

    def __repr__(self):
        # type: () -> str
        return 'ExtensionConfig(%r)' % (list(self.factors),)


def exp_factor_arrays(pm, z, w):
    # type: (PeriodMatrix, Any, Any) -> Any
    """Representative coordinates of exp(z, w) for arrays z, w; shape (N, 5).

    Arguments on the lattice give the fiber coordinates (0, 0, 1, 0, v).
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    a, b = lattice_coordinates(z, pm)
    m = np.floor(a + 0.5)
    n = np.floor(b + 0.5)
    offset = z - m * pm.omega1 - n * pm.omega2
    fiber = np.abs(offset) < POLE_THRESHOLD * pm.shortest_period()
    out = np.zeros(z.shape + (5,), dtype=complex)
    if np.any(fiber):
        out[fiber, 2] = 1
        out[fiber, 4] = w[fiber] + m[fiber] * pm.eta1 + n[fiber] * pm.eta2
    regular = ~fiber
    if np.any(regular):
        zr = z[regular]
        p = wp(zr, pm)
        dp = wp_prime(zr, pm)
        x3 = zeta(zr, pm) + w[regular]
        out[regular, 0] = 1
        out[regular, 1] = p
        out[regular, 2] = dp
        out[regular, 3] = x3
        out[regular, 4] = dp * x3 + 2 * p ** 2
    return out


def _factor_from_row(row):
    # type: (Any) -> Factor
    if row[0] == 0:
        return FiberPoint(complex(row[4]))
    return affine_point(row[1], row[2], row[3], row[4])


def exp_ue(cfg, x):
    # type: (ExtensionConfig, LogPoint) -> UEPoint
    """The exponential map of G, factor by factor."""
    assert len(x.pairs) == cfg.g
    factors = []
    for (inv, pm), (z, w) in zip(cfg.factors, x.pairs):
        factors.append(_factor_from_row(exp_factor_arrays(pm, z, w)[0]))
    return UEPoint(factors)


def compact_coordinates(cfg, betti):
    # type: (ExtensionConfig, Any) -> Any
    """Coordinates of the compact points with Betti coordinates betti (shape (N, 2g)).

    Returns an array of shape (N, g, 5).
    """
    betti = np.atleast_2d(np.asarray(betti, dtype=float))
    out = np.zeros((betti.shape[0], cfg.g, 5), dtype=complex)
    for k, pm in enumerate(cfg.period_matrices()):
        p = betti[:, 2 * k]
        q = betti[:, 2 * k + 1]
        z = p * pm.omega1 + q * pm.omega2
        w = -p * pm.eta1 - q * pm.eta2
        out[:, k, :] = exp_factor_arrays(pm, z, w)
    return out


def betti_to_point(cfg, b):
    # type: (ExtensionConfig, BettiPoint) -> UEPoint
    """The point of the maximal compact subgroup with Betti coordinates b."""
    assert b.g == cfg.g
    pairs = []
    for pm, (p, q) in zip(cfg.period_matrices(), b.pairs()):
        pairs.append((p * pm.omega1 + q * pm.omega2, -p * pm.eta1 - q * pm.eta2))
    return exp_ue(cfg, LogPoint(pairs))


def torsion_point(cfg, numerators, order):
    # type: (ExtensionConfig, Sequence[int], int) -> UEPoint
    """The compact point with Betti coordinates numerators/order."""
    return betti_to_point(cfg, BettiPoint([float(a) / order for a in numerators]))


def factor_residual(inv, factor):
    # type: (CurveInvariants, Factor) -> float
    """Relative residual of both model equations at one factor."""
    x0, x1, x2, x3, x4 = factor_coordinates(factor)
    g2, g3 = inv.g2, inv.g3
    cubic = x0 * x2 ** 2 - 4 * x1 ** 3 + g2 * x0 ** 2 * x1 + g3 * x0 ** 3
    cubic_scale = (abs(x0) * abs(x2) ** 2 + 4 * abs(x1) ** 3 +
                   abs(g2) * abs(x0) ** 2 * abs(x1) + abs(g3) * abs(x0) ** 3)
    quadric = x0 * x4 - x2 * x3 - 2 * x1 ** 2
    quadric_scale = abs(x0 * x4) + abs(x2 * x3) + 2 * abs(x1) ** 2
    if not any((x0, x1, x2, x3, x4)):
        return float('inf')
    return max(abs(cubic) / (1 + cubic_scale), abs(quadric) / (1 + quadric_scale))


def model_residual(cfg, P):
    # type: (ExtensionConfig, UEPoint) -> List[float]
    assert P.g == cfg.g
    return [factor_residual(inv, f) for (inv, _), f in zip(cfg.factors, P.factors)]


def check_on_model(cfg, P, tol=INPUT_TOLERANCE):
    # type: (ExtensionConfig, UEPoint, float) -> None
    worst = max(model_residual(cfg, P))
    if not worst < tol:
        raise NotOnModel(worst)


def _log_residual(pm, z, x1, x2):
    # type: (PeriodMatrix, complex, complex, complex) -> float
    try:
        return (abs(wp(z, pm) - x1) / (1 + abs(x1)) +
                abs(wp_prime(z, pm) - x2) / (1 + abs(x2)))
    except PoleAtLatticePoint:
        return float('inf')


def _log_seeds(pm, x1, x2):
    # type: (PeriodMatrix, complex, complex) -> List[complex]
    """Starting points for inverting (wp, wp'), best first."""
    ticks = (np.arange(LOG_GRID) + 0.5) / LOG_GRID
    a, b = np.meshgrid(ticks, ticks, indexing='ij')
    grid = (a * pm.omega1 + b * pm.omega2).ravel()
    score = (np.abs(wp(grid, pm) - x1) / (1 + abs(x1)) +
             np.abs(wp_prime(grid, pm) - x2) / (1 + abs(x2)))
    order = np.argsort(score, kind='mergesort')
    seeds = [complex(grid[i]) for i in order[:4]]
    if x1 != 0:
        # Near the origin wp(z) ~ 1/z^2 and wp'(z) ~ -2/z^3.
        near = 1 / np.sqrt(complex(x1))
        if abs(-2 / near ** 3 - x2) > abs(2 / near ** 3 - x2):
            near = -near
        seeds.insert(0, complex(near))
    return seeds


def _newton_log(pm, x1, x2, seed):
    # type: (PeriodMatrix, complex, complex, complex) -> Tuple[complex, float]
    """Newton iteration for wp(z) = x1, wp'(z) = x2, taking the better of two steps."""
    inv = pm.invariants
    z = seed
    r = _log_residual(pm, z, x1, x2)
    for _ in range(LOG_MAX_ITER):
        if r < 1e-15:
            break
        try:
            p = wp(z, pm)
            dp = wp_prime(z, pm)
        except PoleAtLatticePoint:
            break
        ddp = 6 * p ** 2 - inv.g2 / 2
        candidates = []
        if dp != 0:
            candidates.append(z - (p - x1) / dp)
        if ddp != 0:
            candidates.append(z - (dp - x2) / ddp)
        scored = [(_log_residual(pm, c, x1, x2), i) for i, c in enumerate(candidates)]
        if not scored:
            break
        best, index = min(scored)
        if not best < r:
            break
        z, r = candidates[index], best
    return z, r


def _log_factor(pm, factor):
    # type: (PeriodMatrix, Factor) -> Tuple[complex, complex]
    if isinstance(factor, FiberPoint):
        return 0j, complex(factor.v)
    x1, x2, x3 = factor.x1 / factor.x0, factor.x2 / factor.x0, factor.x3 / factor.x0
    best_z, best_r = 0j, float('inf')
    for seed in _log_seeds(pm, x1, x2):
        z, r = _newton_log(pm, x1, x2, seed)
        if r < best_r:
            best_z, best_r = z, r
        if r < 1e-12:
            break
    if not best_r < 1e-9:
        logging.debug('logarithm failed for x1=%r x2=%r (residual %.3g)', x1, x2, best_r)
        raise NoConvergence('logarithm', best_r)
    z0, _, _ = reduce_mod_lattice(best_z, pm)
    return z0, x3 - zeta(z0, pm)


def log_ue(cfg, P):
    # type: (ExtensionConfig, UEPoint) -> LogPoint
    """A logarithm of P, with each z_k in the fundamental parallelogram."""
    check_on_model(cfg, P)
    return LogPoint([_log_factor(pm, f) for pm, f in zip(cfg.period_matrices(), P.factors)])


def log_betti(pm, z, w):
    # type: (PeriodMatrix, complex, complex) -> Tuple[float, float, complex]
    """Betti coordinates (p, q) of z and the compactness residual w + p*eta1 + q*eta2."""
    p, q = lattice_coordinates(z, pm)
    p, q = float(p), float(q)
    return p, q, w + p * pm.eta1 + q * pm.eta2


def betti_residual(cfg, P):
    # type: (ExtensionConfig, UEPoint) -> Tuple[BettiPoint, List[complex]]
    """Betti coordinates of P and the per-factor distance from the compact subgroup.

    Raises NoConvergence when the logarithm of some factor cannot be found.
    """
    x = log_ue(cfg, P)
    coords = []  # type: List[float]
    residuals = []  # type: List[complex]
    for pm, (z, w) in zip(cfg.period_matrices(), x.pairs):
        p, q, r = log_betti(pm, z, w)
        coords.extend([p, q])
        residuals.append(r)
    return BettiPoint(coords), residuals


def is_in_compact(cfg, P, tol=COMPACT_TOLERANCE):
    # type: (ExtensionConfig, UEPoint, float) -> bool
    """Whether P lies on the compact subgroup; False if its logarithm does not converge."""
    try:
        _, residuals = betti_residual(cfg, P)
    except NoConvergence as err:
        logging.debug('is_in_compact: %s', err)
        return False
    return all(abs(r) < tol for r in residuals)


def is_identity(cfg, P, tol=COMPACT_TOLERANCE):
    # type: (ExtensionConfig, UEPoint, float) -> bool
    return all(isinstance(f, FiberPoint) and abs(f.v) < tol for f in P.factors)


def identity(cfg):
    # type: (ExtensionConfig) -> UEPoint
    return UEPoint([FiberPoint(0j)] * cfg.g)


def group_add(cfg, P1, P2):
    # type: (ExtensionConfig, UEPoint, UEPoint) -> UEPoint
    """Sum in G, computed through the logarithm."""
    return exp_ue(cfg, log_ue(cfg, P1) + log_ue(cfg, P2))


def scalar_mul(cfg, n, P):
    # type: (ExtensionConfig, int, UEPoint) -> UEPoint
    return exp_ue(cfg, log_ue(cfg, P).scale(n))


def negate(cfg, P):
    # type: (ExtensionConfig, UEPoint) -> UEPoint
    return scalar_mul(cfg, -1, P)


def conjugate_config(cfg):
    # type: (ExtensionConfig) -> ExtensionConfig
    """The configuration of the conjugate group: invariants and periods conjugated."""
    return ExtensionConfig([(inv.conjugate(), pm.conjugate()) for inv, pm in cfg.factors])


def conjugate_point(P):
    # type: (UEPoint) -> UEPoint
    factors = []  # type: List[Factor]
    for f in P.factors:
        if isinstance(f, FiberPoint):
            factors.append(FiberPoint(f.v.conjugate()))
        else:
            factors.append(AffinePoint(*[x.conjugate() for x in f]))
    return UEPoint(factors)


def point_distance(P1, P2):
    # type: (UEPoint, UEPoint) -> float
    """Largest chordal-style distance between normalized factor coordinates."""
    worst = 0.0
    for f1, f2 in zip(P1.factors, P2.factors):
        c1 = np.array(factor_coordinates(f1))
        c2 = np.array(factor_coordinates(f2))
        index = int(np.argmax(np.abs(c1)))
        if c2[index] == 0:
            return float('inf')
        c1 = c1 / c1[index]
        c2 = c2 / c2[index]
        worst = max(worst, float(np.max(np.abs(c1 - c2))))
    return worst
