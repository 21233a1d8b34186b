"""Exact arithmetic in Q(sqrt(D)) and the rank statements about the matrices A(alpha).

For D < 0 an element x = a + b*sqrt(D) acts on Q^2 through

    A(x) = a*I + b*A_D,    A_D = [[0, D], [1, 0]],

an injective ring homomorphism. Given e x r matrices M, Mtilde over
Q(sqrt(D)) and an integer 2x2 matrix B, the block matrices with blocks
A(m) + A(mtilde)*B (resp. A(m)) have rank at least r (resp. exactly 2r)
whenever M has rank r and det(B) < 0. The checkers below verify this with
exact rational arithmetic.
"""

import logging
import math
import random
from fractions import Fraction

from typing import List, NamedTuple, Sequence, Tuple, Union

Rational = Union[int, Fraction]
Matrix = List[List[Fraction]]

DISCRIMINANTS = (-1, -2, -3, -7, -11)
DEFAULT_HEIGHT = 10
MAX_SIZE = 4


class PreconditionViolated(Exception):
    """Raised when an instance does not satisfy the hypotheses of a rank statement."""

    def __init__(self, reason):
        # type: (str) -> None
        super(PreconditionViolated, self).__init__('Precondition violated: %s' % reason)
        self.reason = reason


class QuadElem(object):
    """An exact element a + b*sqrt(D) of the imaginary quadratic field Q(sqrt(D))."""

    def __init__(self, a, b, D):
        # type: (Rational, Rational, int) -> None
        if D >= 0:
            raise PreconditionViolated('D = %d is not negative' % D)
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.D = D

    @classmethod
    def rational(cls, a, D):
        # type: (Rational, int) -> QuadElem
        return cls(a, 0, D)

    @classmethod
    def sqrt_d(cls, D):
        # type: (int) -> QuadElem
        return cls(0, 1, D)

    def is_zero(self):
        # type: () -> bool
        return self.a == 0 and self.b == 0

    def _check(self, other):
        # type: (QuadElem) -> None
        assert self.D == other.D, 'Elements of different fields: D = %d and %d' % (self.D, other.D)

    def __add__(self, other):
        # type: (QuadElem) -> QuadElem
        self._check(other)
        return QuadElem(self.a + other.a, self.b + other.b, self.D)

    def __sub__(self, other):
        # type: (QuadElem) -> QuadElem
        return self + (-other)

    def __neg__(self):
        # type: () -> QuadElem
        return QuadElem(-self.a, -self.b, self.D)

    def __mul__(self, other):
        # type: (QuadElem) -> QuadElem
        self._check(other)
        return QuadElem(self.a * other.a + self.D * self.b * other.b,
                        self.a * other.b + self.b * other.a, self.D)

    def conjugate(self):
        # type: () -> QuadElem
        return QuadElem(self.a, -self.b, self.D)

    def norm(self):
        # type: () -> Fraction
        return self.a * self.a - self.D * self.b * self.b

    def inverse(self):
        # type: () -> QuadElem
        if self.is_zero():
            raise ZeroDivisionError('inverse of zero in Q(sqrt(%d))' % self.D)
        n = self.norm()
        return QuadElem(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        # type: (QuadElem) -> QuadElem
        return self * other.inverse()

    __div__ = __truediv__

    def to_complex(self):
        # type: () -> complex
        return complex(float(self.a), float(self.b) * (-self.D) ** 0.5)

    def __repr__(self):
        # type: () -> str
        return 'QuadElem(%s, %s, D=%d)' % (self.a, self.b, self.D)

    def __eq__(self, other):
        # type: (object) -> bool
        return (isinstance(other, QuadElem) and self.D == other.D and
                self.a == other.a and self.b == other.b)

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other

    def __hash__(self):
        # type: () -> int
        return hash((self.a, self.b, self.D))


def identity_matrix(n):
    # type: (int) -> Matrix
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_mul(x, y):
    # type: (Sequence[Sequence[Rational]], Sequence[Sequence[Rational]]) -> Matrix
    return [[sum((Fraction(x[i][k]) * y[k][j] for k in range(len(y))), Fraction(0))
             for j in range(len(y[0]))] for i in range(len(x))]


def mat_add(x, y):
    # type: (Sequence[Sequence[Rational]], Sequence[Sequence[Rational]]) -> Matrix
    return [[Fraction(a) + b for a, b in zip(rx, ry)] for rx, ry in zip(x, y)]


def det2(m):
    # type: (Sequence[Sequence[Rational]]) -> Fraction
    return Fraction(m[0][0]) * m[1][1] - Fraction(m[0][1]) * m[1][0]


def A_embed(x):
    # type: (QuadElem) -> Matrix
    """The matrix a*I + b*A_D of x = a + b*sqrt(D)."""
    return [[x.a, x.b * x.D], [x.b, x.a]]


def _integer_row(row):
    # type: (Sequence[Rational]) -> List[int]
    values = [Fraction(v) for v in row]
    scale = 1
    for v in values:
        scale = scale * v.denominator // math.gcd(scale, v.denominator)
    return [int(v * scale) for v in values]


def exact_rank(mat):
    # type: (Sequence[Sequence[Rational]]) -> int
    """Rank over Q by fraction-free (Bareiss) elimination.

    Rows are first cleared of denominators, so all intermediate values are
    integers and every division is exact.
    """
    rows = [_integer_row(r) for r in mat]
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    previous = 1
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            f = rows[i][col]
            rows[i] = [(p * rows[i][j] - f * rows[rank][j]) // previous for j in range(ncols)]
        previous = p
        rank += 1
        if rank == len(rows):
            break
    return rank


def field_rank(mat):
    # type: (Sequence[Sequence[QuadElem]]) -> int
    """Rank over Q(sqrt(D)) by Gaussian elimination."""
    rows = [list(r) for r in mat]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(rows)):
            if not rows[i][col].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col].inverse()
        for i in range(rank + 1, len(rows)):
            if rows[i][col].is_zero():
                continue
            f = rows[i][col] * inv
            rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


class RankInstance(object):
    """Matrices M, Mtilde (e x r over Q(sqrt(D))) and an integer 2x2 matrix B."""

    def __init__(self, M, Mtilde, B):
        # type: (Sequence[Sequence[QuadElem]], Sequence[Sequence[QuadElem]], Sequence[Sequence[int]]) -> None
        self.M = [list(row) for row in M]
        self.Mtilde = [list(row) for row in Mtilde]
        self.B = [[int(x) for x in row] for row in B]
        assert len(self.M) == len(self.Mtilde) and len(self.M) >= 1
        assert all(len(row) == len(self.M[0]) for row in self.M + self.Mtilde)

    @property
    def e(self):
        # type: () -> int
        return len(self.M)

    @property
    def r(self):
        # type: () -> int
        return len(self.M[0])

    def validate(self):
        # type: () -> None
        rank = field_rank(self.M)
        if rank != self.r:
            raise PreconditionViolated('M has rank %d < r = %d' % (rank, self.r))
        d = det2(self.B)
        if d >= 0:
            raise PreconditionViolated('det(B) = %s is not negative' % d)

    def __repr__(self):
        # type: () -> str
        return 'RankInstance(e=%d, r=%d, M=%r, Mtilde=%r, B=%r)' % (
            self.e, self.r, self.M, self.Mtilde, self.B)


def _block_matrix(blocks):
    # type: (List[List[Matrix]]) -> Matrix
    out = []  # type: Matrix
    for block_row in blocks:
        for i in range(2):
            out.append([x for block in block_row for x in block[i]])
    return out


def hat_matrix_mixed(inst):
    # type: (RankInstance) -> Matrix
    """The 2e x 2r matrix with blocks A(m_st) + A(mtilde_st)*B."""
    return _block_matrix([[mat_add(A_embed(m), mat_mul(A_embed(mt), inst.B))
                           for m, mt in zip(row, row_t)]
                          for row, row_t in zip(inst.M, inst.Mtilde)])


def hat_matrix_pure(M):
    # type: (Sequence[Sequence[QuadElem]]) -> Matrix
    """The 2e x 2r matrix with blocks A(m_st)."""
    return _block_matrix([[A_embed(m) for m in row] for row in M])


def check_mixed_rank(inst):
    # type: (RankInstance) -> Tuple[int, bool]
    """Exact rank of hat_matrix_mixed(inst) and whether it is at least r."""
    inst.validate()
    rank = exact_rank(hat_matrix_mixed(inst))
    holds = rank >= inst.r
    if not holds:
        logging.error('Rank %d < %d for %r', rank, inst.r, inst)
    return rank, holds


def check_pure_rank(M):
    # type: (Sequence[Sequence[QuadElem]]) -> Tuple[int, bool]
    """Exact rank of hat_matrix_pure(M) and whether it equals 2r."""
    r = len(M[0])
    rank = field_rank(M)
    if rank != r:
        raise PreconditionViolated('M has rank %d < r = %d' % (rank, r))
    hat_rank = exact_rank(hat_matrix_pure(M))
    holds = hat_rank == 2 * r
    if not holds:
        logging.error('Rank %d != %d for %r', hat_rank, 2 * r, M)
    return hat_rank, holds


def direct_sum_holds(x1, x2, B):
    # type: (QuadElem, QuadElem, Sequence[Sequence[int]]) -> bool
    """Whether A(x1) + A(x2)*B = 0 forces x1 = x2 = 0 for this pair."""
    total = mat_add(A_embed(x1), mat_mul(A_embed(x2), B))
    vanishes = all(v == 0 for row in total for v in row)
    return not vanishes or (x1.is_zero() and x2.is_zero())


def direct_sum_rank(D, B):
    # type: (int, Sequence[Sequence[int]]) -> int
    """Rank of I, A_D, B, A_D*B as vectors in Q^4; 4 means R + R*B is direct."""
    a_d = A_embed(QuadElem.sqrt_d(D))
    mats = [identity_matrix(2), a_d, [[Fraction(x) for x in row] for row in B], mat_mul(a_d, B)]
    return exact_rank([[x for row in m for x in row] for m in mats])


def random_rational(rng, height=DEFAULT_HEIGHT):
    # type: (random.Random, int) -> Fraction
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_quad(rng, D, height=DEFAULT_HEIGHT):
    # type: (random.Random, int, int) -> QuadElem
    return QuadElem(random_rational(rng, height), random_rational(rng, height), D)


def random_matrix(rng, e, r, D, height=DEFAULT_HEIGHT):
    # type: (random.Random, int, int, int, int) -> List[List[QuadElem]]
    return [[random_quad(rng, D, height) for _ in range(r)] for _ in range(e)]


def random_full_rank(rng, e, r, D, height=DEFAULT_HEIGHT):
    # type: (random.Random, int, int, int, int) -> List[List[QuadElem]]
    """A random e x r matrix of rank r (e >= r)."""
    assert e >= r
    while True:
        M = random_matrix(rng, e, r, D, height)
        if field_rank(M) == r:
            return M


def random_negative_det(rng, height=DEFAULT_HEIGHT):
    # type: (random.Random, int) -> List[List[int]]
    while True:
        B = [[rng.randint(-height, height) for _ in range(2)] for _ in range(2)]
        if B[0][0] * B[1][1] - B[0][1] * B[1][0] < 0:
            return B


def random_mixed_instance(rng, height=DEFAULT_HEIGHT, max_size=MAX_SIZE):
    # type: (random.Random, int, int) -> RankInstance
    D = rng.choice(DISCRIMINANTS)
    e = rng.randint(1, max_size)
    r = rng.randint(1, e)
    return RankInstance(random_full_rank(rng, e, r, D, height),
                        random_matrix(rng, e, r, D, height),
                        random_negative_det(rng, height))


def random_pure_matrix(rng, height=DEFAULT_HEIGHT, max_size=MAX_SIZE):
    # type: (random.Random, int, int) -> List[List[QuadElem]]
    D = rng.choice(DISCRIMINANTS)
    e = rng.randint(1, max_size)
    r = rng.randint(1, e)
    return random_full_rank(rng, e, r, D, height)


# Outcome of a fuzzing run: violation counts per statement.
FuzzResult = NamedTuple('FuzzResult', [('trials', int),
                                       ('seed', int),
                                       ('mixed_violations', int),
                                       ('pure_violations', int),
                                       ('direct_sum_violations', int)])


def fuzz_rank_checks(trials, seed=0, height=DEFAULT_HEIGHT, max_size=MAX_SIZE):
    # type: (int, int, int, int) -> FuzzResult
    """Check both rank statements and the direct-sum fact on random instances."""
    rng = random.Random(seed)
    mixed = pure = direct = 0
    for _ in range(trials):
        inst = random_mixed_instance(rng, height, max_size)
        if not check_mixed_rank(inst)[1]:
            mixed += 1
        if not check_pure_rank(random_pure_matrix(rng, height, max_size))[1]:
            pure += 1
        D = inst.M[0][0].D
        if direct_sum_rank(D, inst.B) != 4:
            direct += 1
    logging.debug('fuzzed %d instances with seed %d', trials, seed)
    return FuzzResult(trials, seed, mixed, pure, direct)


def total_violations(result):
    # type: (FuzzResult) -> int
    return result.mixed_violations + result.pure_violations + result.direct_sum_violations
