"""Recover the rational matrices of endomorphisms and isogenies from computed periods.

An isogeny acting on the tangent space by alpha lifts to the universal
extension, where it acts by the lower triangular matrix

    L = [[alpha, 0], [gamma, conj(alpha)]]

on the left of the period matrix P (columns (omega_i, -eta_i)). The matrices
A and B of

    L * P = P * A        (endomorphisms)
    L * Ptilde = P * B   (isogenies from the curve with periods Ptilde)

are rational, resp. integral. They are found here by least squares on the
floating point periods followed by snapping; gamma is a free complex unknown.
"""

import logging
from fractions import Fraction

import numpy as np
from typing import Any, List, Optional, Tuple

from uvext_runtime.elliptic import PeriodMatrix
from uvext_tools.exact.algebra import Matrix, PreconditionViolated, mat_mul

DEFAULT_DENOMINATOR = 100
DEFAULT_TOLERANCE = 1e-6


def _relation_system(alpha, left, right):
    # type: (complex, PeriodMatrix, PeriodMatrix) -> Tuple[Any, Any]
    """Real least-squares system for (X00, X10, X01, X11, Re gamma, Im gamma)."""
    rows = []
    rhs = []
    for j, (omega, eta) in enumerate([(left.omega1, left.eta1), (left.omega2, left.eta2)]):
        # alpha*omega_j = right.omega1*X0j + right.omega2*X1j
        row = np.zeros(6, dtype=complex)
        row[j * 2] = right.omega1
        row[j * 2 + 1] = right.omega2
        rows.append(row)
        rhs.append(alpha * omega)
        # gamma*omega_j - conj(alpha)*eta_j = -right.eta1*X0j - right.eta2*X1j
        row = np.zeros(6, dtype=complex)
        row[j * 2] = right.eta1
        row[j * 2 + 1] = right.eta2
        row[4] = omega
        row[5] = 1j * omega
        rows.append(row)
        rhs.append(alpha.conjugate() * eta)
    lhs = np.array(rows)
    b = np.array(rhs)
    return np.vstack([lhs.real, lhs.imag]), np.concatenate([b.real, b.imag])


def _as_matrix(x):
    # type: (Any) -> Any
    return np.array([[x[0], x[2]], [x[1], x[3]]], dtype=float)


def _solve_gamma(alpha, left, right, X):
    # type: (complex, PeriodMatrix, PeriodMatrix, Any) -> complex
    omegas = np.array([left.omega1, left.omega2])
    etas = np.array([left.eta1, left.eta2])
    target = alpha.conjugate() * etas - (right.eta1 * X[0] + right.eta2 * X[1])
    return complex(np.vdot(omegas, target) / np.vdot(omegas, omegas))


def relation_residual(alpha, gamma, left, right, X):
    # type: (complex, complex, PeriodMatrix, PeriodMatrix, Any) -> float
    """Largest entry of L*left - right*X, relative to the size of the period matrices."""
    L = np.array([[alpha, 0], [gamma, alpha.conjugate()]], dtype=complex)
    difference = L.dot(left.matrix()) - right.matrix().dot(np.asarray(X, dtype=float))
    scale = max(1.0, float(np.max(np.abs(left.matrix()))), float(np.max(np.abs(right.matrix()))))
    return float(np.max(np.abs(difference))) / scale


def _solve(alpha, left, right, denominator, tol):
    # type: (complex, PeriodMatrix, PeriodMatrix, int, float) -> Optional[Tuple[complex, Matrix]]
    alpha = complex(alpha)
    lhs, rhs = _relation_system(alpha, left, right)
    x = np.linalg.lstsq(lhs, rhs, rcond=None)[0]
    snapped = [[Fraction(float(v)).limit_denominator(denominator) for v in row]
               for row in _as_matrix(x)]
    X = np.array([[float(v) for v in row] for row in snapped])
    gamma = _solve_gamma(alpha, left, right, X)
    residual = relation_residual(alpha, gamma, left, right, X)
    logging.debug('relation for alpha=%r: X=%s residual=%.3g', alpha, X.tolist(), residual)
    if residual >= tol:
        return None
    return gamma, snapped


def solve_endomorphism(pm, alpha, denominator=DEFAULT_DENOMINATOR, tol=DEFAULT_TOLERANCE):
    # type: (PeriodMatrix, complex, int, float) -> Optional[Tuple[complex, Matrix]]
    """Find gamma and rational A with L(alpha)*P = P*A, or None if alpha is no endomorphism."""
    return _solve(alpha, pm, pm, denominator, tol)


def solve_isogeny_B(pm_source, pm_target, alpha, tol=DEFAULT_TOLERANCE):
    # type: (PeriodMatrix, PeriodMatrix, complex, float) -> Optional[List[List[int]]]
    """Find an integer B with L(alpha)*P_target = P_source*B, or None."""
    found = _solve(alpha, pm_target, pm_source, 1, tol)
    if found is None:
        return None
    return [[int(v) for v in row] for row in found[1]]


def normalize_embedding(A):
    # type: (Matrix) -> Tuple[int, Matrix, Matrix]
    """Conjugate a rational A with A^2 = D*I, D < 0, to A_D = [[0, D], [1, 0]].

    Returns (D, S, A_D) with A*S = S*A_D, where S has columns e1 and A*e1.
    Replacing P by P*S turns A into A_D.
    """
    A = [[Fraction(v) for v in row] for row in A]
    square = mat_mul(A, A)
    D = square[0][0]
    if A[0][0] + A[1][1] != 0 or square != [[D, 0], [0, D]]:
        raise PreconditionViolated('A^2 is not a scalar matrix: %s' % square)
    if D >= 0 or D.denominator != 1:
        raise PreconditionViolated('A^2 = %s*I is not a negative integer multiple' % D)
    S = [[Fraction(1), A[0][0]], [Fraction(0), A[1][0]]]
    A_D = [[Fraction(0), D], [Fraction(1), Fraction(0)]]
    return int(D), S, A_D
