"""Period lattices, quasi-periods and the Weierstrass functions.

A curve is given by its invariants g2, g3 (the cubic 4x^3 - g2 x - g3).
compute_periods() finds a lattice basis with tau in the standard fundamental
domain, using complete elliptic integrals at extended precision and checking
the answer against the Eisenstein series of the lattice. The functions wp(),
wp_prime() and zeta() are evaluated by q-series after reducing the argument
modulo the lattice; they accept scalars or numpy arrays.
"""

import itertools
import logging
import math

import mpmath
import numpy as np

from typing import Any, Iterator, List, Optional, Tuple

# Relative size of the discriminant below which a curve counts as singular.
DEGENERACY_THRESHOLD = 1e-10

# A point closer than this (times the shortest period) to the lattice is a pole.
POLE_THRESHOLD = 1e-6

DEFAULT_PRECISION = 1e-12

# Coefficients this close to an integer are snapped before reduction.
SNAP_TOLERANCE = 1e-10

# Largest number of q-series terms used by the evaluators.
MAX_TERMS = 2000


class EllipticError(Exception):
    """Base class for errors in the analytic core."""


class DegenerateCurve(EllipticError):
    """Raised when the discriminant of the cubic vanishes (numerically).

    The 'invariants' attribute holds the offending CurveInvariants.
    """

    def __init__(self, invariants):
        # type: (CurveInvariants) -> None
        super(DegenerateCurve, self).__init__('Singular cubic: %r' % (invariants,))
        self.invariants = invariants


class NoConvergence(EllipticError):
    """Raised when an iteration fails to reach its target."""

    def __init__(self, what, residual):
        # type: (str, float) -> None
        super(NoConvergence, self).__init__('No convergence in %s (residual %.3g)' % (what, residual))
        self.what = what
        self.residual = residual


class PoleAtLatticePoint(EllipticError):
    """Raised when a Weierstrass function is evaluated on (or too near) the lattice."""

    def __init__(self, z):
        # type: (complex) -> None
        super(PoleAtLatticePoint, self).__init__('Argument %r is a lattice point' % (z,))
        self.z = z


class CurveInvariants(object):
    """The Weierstrass invariants g2, g3 of y^2 = 4x^3 - g2 x - g3."""

    def __init__(self, g2, g3):
        # type: (complex, complex) -> None
        self.g2 = complex(g2)
        self.g3 = complex(g3)

    @property
    def discriminant(self):
        # type: () -> complex
        return self.g2 ** 3 - 27 * self.g3 ** 2

    def is_degenerate(self, threshold=DEGENERACY_THRESHOLD):
        # type: (float) -> bool
        scale = abs(self.g2) ** 3 + 27 * abs(self.g3) ** 2
        return scale == 0 or abs(self.discriminant) <= threshold * scale

    def is_real(self):
        # type: () -> bool
        return self.g2.imag == 0 and self.g3.imag == 0

    def conjugate(self):
        # type: () -> CurveInvariants
        return CurveInvariants(self.g2.conjugate(), self.g3.conjugate())

    def __repr__(self):
        # type: () -> str
        return 'CurveInvariants(g2=%r, g3=%r)' % (self.g2, self.g3)

    def __eq__(self, other):
        # type: (object) -> bool
        return (isinstance(other, CurveInvariants) and
                self.g2 == other.g2 and self.g3 == other.g3)

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other

    def __hash__(self):
        # type: () -> int
        return hash((self.g2, self.g3))


class PeriodMatrix(object):
    """Periods omega1, omega2 and quasi-periods eta1, eta2 of a lattice.

    The basis produced by compute_periods() is positively oriented
    (Im tau > 0). Conjugation yields a negatively oriented basis; evaluation
    handles both by flipping the second generator internally.
    """

    def __init__(self, omega1, omega2, eta1, eta2, invariants):
        # type: (complex, complex, complex, complex, CurveInvariants) -> None
        self.omega1 = complex(omega1)
        self.omega2 = complex(omega2)
        self.eta1 = complex(eta1)
        self.eta2 = complex(eta2)
        self.invariants = invariants

    @property
    def tau(self):
        # type: () -> complex
        return self.omega2 / self.omega1

    @property
    def orientation(self):
        # type: () -> int
        return 1 if self.tau.imag > 0 else -1

    def matrix(self):
        # type: () -> Any
        """The 2x2 matrix with columns (omega_i, -eta_i)."""
        return np.array([[self.omega1, self.omega2],
                         [-self.eta1, -self.eta2]], dtype=complex)

    def legendre_residual(self):
        # type: () -> float
        expected = 2j * math.pi * self.orientation
        return abs(self.eta1 * self.omega2 - self.eta2 * self.omega1 - expected)

    def shortest_period(self):
        # type: () -> float
        return min(abs(self.omega1), abs(self.omega2))

    def oriented(self):
        # type: () -> Tuple[complex, complex, complex, complex]
        """Return (omega1, omega2, eta1, eta2) with the second pair flipped if needed."""
        if self.orientation > 0:
            return self.omega1, self.omega2, self.eta1, self.eta2
        return self.omega1, -self.omega2, self.eta1, -self.eta2

    def conjugate(self):
        # type: () -> PeriodMatrix
        return PeriodMatrix(self.omega1.conjugate(), self.omega2.conjugate(),
                            self.eta1.conjugate(), self.eta2.conjugate(),
                            self.invariants.conjugate())

    def __repr__(self):
        # type: () -> str
        return 'PeriodMatrix(omega1=%r, omega2=%r, eta1=%r, eta2=%r)' % (
            self.omega1, self.omega2, self.eta1, self.eta2)

    def __eq__(self, other):
        # type: (object) -> bool
        return (isinstance(other, PeriodMatrix) and
                (self.omega1, self.omega2, self.eta1, self.eta2) ==
                (other.omega1, other.omega2, other.eta1, other.eta2) and
                self.invariants == other.invariants)

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other

    def __hash__(self):
        # type: () -> int
        return hash((self.omega1, self.omega2, self.eta1, self.eta2))


def _sigma(n, k):
    # type: (int, int) -> int
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def _eisenstein(tau, weight, terms):
    # type: (Any, int, int) -> Any
    """Normalized Eisenstein series E2, E4 or E6 at tau (mpmath arithmetic)."""
    factor = {2: -24, 4: 240, 6: -504}[weight]
    q = mpmath.exp(2j * mpmath.pi * tau)
    total = mpmath.mpf(0)
    qn = mpmath.mpf(1)
    for n in range(1, terms + 1):
        qn *= q
        total += _sigma(n, weight - 1) * qn
    return 1 + factor * total


def _series_terms(tau_imag, digits):
    # type: (float, int) -> int
    # |q|^n < 10^-digits
    return int(math.ceil(digits * math.log(10) / (2 * math.pi * tau_imag))) + 2


def _invariants_mp(omega1, tau, digits):
    # type: (Any, Any, int) -> Tuple[Any, Any]
    terms = _series_terms(float(mpmath.im(tau)), digits)
    pi = mpmath.pi
    g2 = 4 * pi ** 4 * _eisenstein(tau, 4, terms) / (3 * omega1 ** 4)
    g3 = 8 * pi ** 6 * _eisenstein(tau, 6, terms) / (27 * omega1 ** 6)
    return g2, g3


def _invariant_error(g2, g3, target_g2, target_g3):
    # type: (Any, Any, complex, complex) -> float
    err2 = abs(g2 - target_g2) / (abs(target_g2) + abs(target_g3) ** (2.0 / 3))
    err3 = abs(g3 - target_g3) / (abs(target_g3) + abs(target_g2) ** 1.5)
    return float(max(err2, err3))


def _reduce_basis(omega1, omega2):
    # type: (Any, Any) -> Tuple[Any, Any, int]
    """Move tau = omega2/omega1 into the standard fundamental domain.

    Ties go to -1/2 <= Re tau < 1/2 and, on the unit circle, Re tau <= 0.
    """
    eps = mpmath.mpf('1e-12')
    steps = 0
    if mpmath.im(omega2 / omega1) < 0:
        omega2 = -omega2
    while True:
        tau = omega2 / omega1
        k = int(mpmath.floor(mpmath.re(tau) + mpmath.mpf(0.5) + eps))
        if k:
            omega2 -= k * omega1
            tau -= k
            steps += 1
        norm = abs(tau) ** 2
        if norm < 1 - eps or (norm <= 1 + eps and mpmath.re(tau) > eps):
            omega1, omega2 = omega2, -omega1
            steps += 1
            continue
        return omega1, omega2, steps


def _candidate_bases(roots):
    # type: (List[Any]) -> Iterator[Tuple[Any, Any]]
    """Yield period pairs from complete elliptic integrals, best-conditioned first."""
    eps = mpmath.mpf('1e-20')
    candidates = []
    for e1, e2, e3 in itertools.permutations(roots):
        m = (e2 - e3) / (e1 - e3)
        on_cut = abs(mpmath.im(m)) < eps and (mpmath.re(m) >= 1 or mpmath.re(m) <= 0)
        if on_cut:
            continue
        spread = e1 - e3
        key = (round(float(abs(m)), 12), round(float(abs(1 - m)), 12),
               -round(float(mpmath.re(spread)), 12), -round(float(mpmath.im(spread)), 12))
        candidates.append((key, e1, e3, m))
    candidates.sort(key=lambda c: c[0])
    for _, e1, e3, m in candidates:
        root = mpmath.sqrt(e1 - e3)
        yield 2 * mpmath.ellipk(m) / root, 2j * mpmath.ellipk(1 - m) / root


def compute_periods(inv, precision_target=DEFAULT_PRECISION):
    # type: (CurveInvariants, float) -> PeriodMatrix
    """Compute a reduced period basis and its quasi-periods.

    The returned basis has Im tau > 0 with tau in the standard fundamental
    domain; its Eisenstein invariants match inv within precision_target.
    """
    if inv.is_degenerate():
        raise DegenerateCurve(inv)
    digits = max(30, int(-math.log10(precision_target)) + 15)
    best = float('inf')
    with mpmath.workdps(digits):
        g2 = mpmath.mpc(inv.g2)
        g3 = mpmath.mpc(inv.g3)
        roots = mpmath.polyroots([4, 0, -g2, -g3], maxsteps=200, extraprec=2 * digits)
        for omega1, omega2 in _candidate_bases(list(roots)):
            if abs(mpmath.im(omega2 / omega1)) < mpmath.mpf('1e-20'):
                continue
            omega1, omega2, steps = _reduce_basis(omega1, omega2)
            tau = omega2 / omega1
            found_g2, found_g3 = _invariants_mp(omega1, tau, digits)
            error = _invariant_error(found_g2, found_g3, inv.g2, inv.g3)
            best = min(best, error)
            if error >= precision_target:
                logging.debug('period candidate rejected: tau=%s error=%.3g',
                              mpmath.nstr(tau, 8), error)
                continue
            terms = _series_terms(float(mpmath.im(tau)), digits)
            eta1 = mpmath.pi ** 2 * _eisenstein(tau, 2, terms) / (3 * omega1)
            eta2 = (eta1 * omega2 - 2j * mpmath.pi) / omega1
            logging.debug('periods: tau=%s after %d reduction steps',
                          mpmath.nstr(tau, 12), steps)
            pm = PeriodMatrix(complex(omega1), complex(omega2),
                              complex(eta1), complex(eta2), inv)
            _check_quasi_periods(pm, precision_target)
            return pm
    raise NoConvergence('period computation', best)


def _check_quasi_periods(pm, precision_target):
    # type: (PeriodMatrix, float) -> None
    # eta2 must agree with 2 zeta(omega2/2), evaluated without lattice reduction.
    omega1, omega2, eta1, eta2 = pm.oriented()
    tau = omega2 / omega1
    direct = 2 * _zeta_series(np.array([tau / 2]), omega1, tau, eta1)[0]
    scale = abs(eta1) + abs(eta2) + 1.0
    if abs(direct - eta2) > max(precision_target, 1e-9) * scale:
        raise NoConvergence('quasi-periods', abs(direct - eta2) / scale)


def lattice_invariants(pm):
    # type: (PeriodMatrix) -> CurveInvariants
    """Invariants g2, g3 of the lattice spanned by pm, from Eisenstein series."""
    omega1, omega2, _, _ = pm.oriented()
    with mpmath.workdps(30):
        tau = mpmath.mpc(omega2) / mpmath.mpc(omega1)
        g2, g3 = _invariants_mp(mpmath.mpc(omega1), tau, 30)
        return CurveInvariants(complex(g2), complex(g3))


def j_invariant(inv):
    # type: (CurveInvariants) -> complex
    if inv.is_degenerate():
        raise DegenerateCurve(inv)
    return 1728 * inv.g2 ** 3 / inv.discriminant


def lattice_coordinates(z, pm):
    # type: (Any, PeriodMatrix) -> Tuple[Any, Any]
    """Real coefficients (a, b) with z = a*omega1 + b*omega2 (array friendly)."""
    z = np.asarray(z, dtype=complex)
    w1, w2 = pm.omega1, pm.omega2
    det = w1.real * w2.imag - w2.real * w1.imag
    a = (z.real * w2.imag - z.imag * w2.real) / det
    b = (w1.real * z.imag - w1.imag * z.real) / det
    return a, b


def _snap(x):
    # type: (Any) -> Any
    nearest = np.round(x)
    return np.where(np.abs(x - nearest) < SNAP_TOLERANCE, nearest, x)


def reduce_mod_lattice(z, pm):
    # type: (complex, PeriodMatrix) -> Tuple[complex, int, int]
    """Write z = z0 + m*omega1 + n*omega2 with z0 in the fundamental parallelogram."""
    a, b = lattice_coordinates(z, pm)
    a, b = float(_snap(a)), float(_snap(b))
    m, n = int(math.floor(a)), int(math.floor(b))
    a0, b0 = a - m, b - n
    if a0 == 0 and b0 == 0:
        return 0j, m, n
    return a0 * pm.omega1 + b0 * pm.omega2, m, n


def _nearest_reduction(z, pm):
    # type: (Any, PeriodMatrix) -> Tuple[Any, Any, Any, Any]
    """Reduce z to the parallelogram centred at 0 in the oriented basis.

    Returns (u, m, n, z0) with u = z0/omega1 and z = z0 + m*omega1 + n*omega2'.
    """
    omega1, omega2, _, _ = pm.oriented()
    a, b = lattice_coordinates(z, pm)
    if pm.orientation < 0:
        b = -b
    m = np.floor(a + 0.5)
    n = np.floor(b + 0.5)
    z0 = z - m * omega1 - n * omega2
    return z0 / omega1, m, n, z0


def _check_poles(z, z0, pm):
    # type: (Any, Any, PeriodMatrix) -> None
    close = np.abs(z0) < POLE_THRESHOLD * pm.shortest_period()
    if np.any(close):
        raise PoleAtLatticePoint(complex(np.asarray(z).ravel()[int(np.argmax(close.ravel()))]))


def _cot_csc2(u):
    # type: (Any) -> Tuple[Any, Any]
    """cot(pi u) and csc(pi u)^2 through exponentials that cannot overflow."""
    w = np.exp(2j * np.pi * u)
    flip = np.abs(w) > 1
    w = np.where(flip, 1 / np.where(flip, w, 1), w)
    cot = np.where(flip, -1j, 1j) * (w + 1) / (w - 1)
    csc2 = -4 * w / (w - 1) ** 2
    return cot, csc2


def _terms(tau, u):
    # type: (complex, Any) -> Tuple[Any, Any, Any]
    """Series ingredients: n, q^n e^{2 pi i n u}, q^n e^{-2 pi i n u} and 1/(1 - q^n)."""
    count = min(MAX_TERMS, _series_terms(tau.imag, 34))
    n = np.arange(1, count + 1, dtype=float).reshape((-1,) + (1,) * u.ndim)
    plus = np.exp(2j * np.pi * n * (tau + u))
    minus = np.exp(2j * np.pi * n * (tau - u))
    damp = 1 / (1 - np.exp(2j * np.pi * n * tau))
    return n, plus, minus, damp


def _zeta_series(u, omega1, tau, eta1):
    # type: (Any, complex, complex, complex) -> Any
    n, plus, minus, damp = _terms(tau, u)
    cot, _ = _cot_csc2(u)
    sines = np.sum((plus - minus) / 2j * damp, axis=0)
    return eta1 * u + (np.pi / omega1) * cot + (4 * np.pi / omega1) * sines


def _wp_series(u, omega1, tau, eta1):
    # type: (Any, complex, complex, complex) -> Any
    n, plus, minus, damp = _terms(tau, u)
    _, csc2 = _cot_csc2(u)
    cosines = np.sum(n * (plus + minus) / 2 * damp, axis=0)
    return (-eta1 / omega1 + (np.pi / omega1) ** 2 * csc2 -
            (8 * np.pi ** 2 / omega1 ** 2) * cosines)


def _wp_prime_series(u, omega1, tau):
    # type: (Any, complex, complex) -> Any
    n, plus, minus, damp = _terms(tau, u)
    cot, csc2 = _cot_csc2(u)
    sines = np.sum(n ** 2 * (plus - minus) / 2j * damp, axis=0)
    return (-2 * (np.pi / omega1) ** 3 * csc2 * cot +
            (16 * np.pi ** 3 / omega1 ** 3) * sines)


def _evaluate(z, pm, kind):
    # type: (Any, PeriodMatrix, str) -> Any
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    u, m, n, z0 = _nearest_reduction(z, pm)
    _check_poles(z, z0, pm)
    omega1, omega2, eta1, eta2 = pm.oriented()
    tau = omega2 / omega1
    if kind == 'wp':
        result = _wp_series(u, omega1, tau, eta1)
    elif kind == 'wp_prime':
        result = _wp_prime_series(u, omega1, tau)
    else:
        result = _zeta_series(u, omega1, tau, eta1) + m * eta1 + n * eta2
    if scalar:
        return complex(result[0])
    return result


def wp(z, pm, inv=None):
    # type: (Any, PeriodMatrix, Optional[CurveInvariants]) -> Any
    """Weierstrass p-function of the lattice of pm.

    The invariants are implied by pm; inv is accepted for symmetry.
    """
    return _evaluate(z, pm, 'wp')


def wp_prime(z, pm, inv=None):
    # type: (Any, PeriodMatrix, Optional[CurveInvariants]) -> Any
    return _evaluate(z, pm, 'wp_prime')


def wp_second(z, pm, inv=None):
    # type: (Any, PeriodMatrix, Optional[CurveInvariants]) -> Any
    """Second derivative of wp, through 6 wp^2 - g2/2."""
    inv = inv or pm.invariants
    return 6 * wp(z, pm) ** 2 - inv.g2 / 2


def zeta(z, pm, inv=None):
    # type: (Any, PeriodMatrix, Optional[CurveInvariants]) -> Any
    """Weierstrass zeta-function, including the quasi-period increments."""
    return _evaluate(z, pm, 'zeta')


def half_periods(pm):
    # type: (PeriodMatrix) -> Tuple[complex, complex, complex]
    """The values e1, e2, e3 of wp at omega1/2, omega2/2 and (omega1 + omega2)/2."""
    points = np.array([pm.omega1 / 2, pm.omega2 / 2, (pm.omega1 + pm.omega2) / 2])
    values = wp(points, pm)
    return complex(values[0]), complex(values[1]), complex(values[2])


def ode_residual(z, pm):
    # type: (Any, PeriodMatrix) -> Any
    """Relative residual of wp'^2 = 4 wp^3 - g2 wp - g3."""
    inv = pm.invariants
    p = wp(z, pm)
    dp = wp_prime(z, pm)
    return np.abs(dp ** 2 - 4 * p ** 3 + inv.g2 * p + inv.g3) / (1 + np.abs(p) ** 3)
