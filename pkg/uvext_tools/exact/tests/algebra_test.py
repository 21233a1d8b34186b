import random
import unittest
from fractions import Fraction

from uvext_tools.exact.algebra import (
    A_embed,
    PreconditionViolated,
    QuadElem,
    RankInstance,
    check_mixed_rank,
    check_pure_rank,
    direct_sum_holds,
    direct_sum_rank,
    exact_rank,
    field_rank,
    fuzz_rank_checks,
    hat_matrix_mixed,
    mat_mul,
    random_quad,
    total_violations,
)


def q(a, b, D=-1):
    # type: (object, object, int) -> QuadElem
    return QuadElem(Fraction(a), Fraction(b), D)


class TestQuadElem(unittest.TestCase):
    def test_arithmetic(self):
        # type: () -> None
        x = q(1, 1, -2)
        assert x * x.conjugate() == QuadElem.rational(3, -2)
        assert x.norm() == 3
        assert x * x.inverse() == QuadElem.rational(1, -2)
        assert x - x == QuadElem.rational(0, -2)
        assert QuadElem.sqrt_d(-7) * QuadElem.sqrt_d(-7) == QuadElem.rational(-7, -7)
        assert q('1/2', 3) / q('1/2', 3) == QuadElem.rational(1, -1)

    def test_to_complex(self):
        # type: () -> None
        assert QuadElem.sqrt_d(-1).to_complex() == 1j
        assert abs(q(1, 1, -3).to_complex() - complex(1, 3 ** 0.5)) < 1e-15

    def test_errors(self):
        # type: () -> None
        with self.assertRaises(PreconditionViolated):
            QuadElem(1, 1, 2)
        with self.assertRaises(PreconditionViolated):
            QuadElem(1, 1, 0)
        with self.assertRaises(ZeroDivisionError):
            QuadElem.rational(0, -3).inverse()


class TestEmbedding(unittest.TestCase):
    def test_examples(self):
        # type: () -> None
        assert A_embed(QuadElem.sqrt_d(-1)) == [[0, -1], [1, 0]]
        assert A_embed(q(2, 3, -5)) == [[2, -15], [3, 2]]
        i = A_embed(QuadElem.sqrt_d(-1))
        assert mat_mul(i, i) == [[-1, 0], [0, -1]]

    def test_homomorphism(self):
        # type: () -> None
        rng = random.Random(7)
        for D in -1, -2, -3, -7, -11:
            for _ in range(20):
                x = random_quad(rng, D)
                y = random_quad(rng, D)
                assert A_embed(x * y) == mat_mul(A_embed(x), A_embed(y))
                sum_matrix = [[a + b for a, b in zip(r, s)] for r, s in zip(A_embed(x), A_embed(y))]
                assert A_embed(x + y) == sum_matrix


class TestExactRank(unittest.TestCase):
    def test_examples(self):
        # type: () -> None
        assert exact_rank([[1, 2], [2, 4]]) == 1
        assert exact_rank([[0, 1], [1, 0]]) == 2
        assert exact_rank([[0, 0], [0, 0]]) == 0
        assert exact_rank([]) == 0
        assert exact_rank([[Fraction(1, 2), Fraction(1, 3)], [3, 2]]) == 1
        assert exact_rank([[0, 1, 2], [0, 2, 4], [0, 0, 1]]) == 2
        assert exact_rank([[1, 2, 3], [4, 5, 6], [7, 8, 10]]) == 3
        assert exact_rank([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 2

    def test_wide_and_tall(self):
        # type: () -> None
        assert exact_rank([[1, 0, 0, 1], [0, 1, 1, 0]]) == 2
        assert exact_rank([[1], [2], [Fraction(-3, 7)]]) == 1

    def test_large_entries(self):
        # type: () -> None
        big = 10 ** 40
        assert exact_rank([[big, big + 1], [big - 1, big]]) == 2
        assert exact_rank([[big, 2 * big], [Fraction(1, big), Fraction(2, big)]]) == 1

    def test_mixed_denominators(self):
        # type: () -> None
        assert exact_rank([[Fraction(1, 2), Fraction(-1, 3)], [Fraction(3, 4), Fraction(-1, 2)]]) == 1
        assert exact_rank([[Fraction(1, 4), Fraction(1, 6)], [Fraction(-1, 6), Fraction(1, 10)]]) == 2

    def test_field_rank(self):
        # type: () -> None
        i = QuadElem.sqrt_d(-1)
        one = QuadElem.rational(1, -1)
        # Rows (1, i) and (i, -1) are proportional over Q(i) but not over Q.
        assert field_rank([[one, i], [i, -one]]) == 1
        assert field_rank([[one, i], [i, one]]) == 2
        assert exact_rank([[1, 0], [0, 1]]) == 2


class TestRankChecks(unittest.TestCase):
    def test_mixed_examples(self):
        # type: () -> None
        one = QuadElem.rational(1, -1)
        zero = QuadElem.rational(0, -1)
        flip = [[1, 0], [0, -1]]
        assert check_mixed_rank(RankInstance([[one]], [[zero]], flip)) == (2, True)
        # A(1) + A(1)*B = [[2, 0], [0, 0]]: the bound r is attained.
        inst = RankInstance([[one]], [[one]], flip)
        assert hat_matrix_mixed(inst) == [[2, 0], [0, 0]]
        assert check_mixed_rank(inst) == (1, True)

    def test_mixed_preconditions(self):
        # type: () -> None
        one = QuadElem.rational(1, -2)
        zero = QuadElem.rational(0, -2)
        with self.assertRaises(PreconditionViolated):
            check_mixed_rank(RankInstance([[one]], [[one]], [[1, 0], [0, 1]]))
        with self.assertRaises(PreconditionViolated):
            check_mixed_rank(RankInstance([[zero]], [[one]], [[0, 1], [1, 0]]))

    def test_pure(self):
        # type: () -> None
        one = QuadElem.rational(1, -3)
        s = QuadElem.sqrt_d(-3)
        assert check_pure_rank([[one], [s]]) == (2, True)
        assert check_pure_rank([[one, s], [s, one]]) == (4, True)
        with self.assertRaises(PreconditionViolated):
            check_pure_rank([[one, s], [s, QuadElem.rational(-3, -3)]])

    def test_direct_sum(self):
        # type: () -> None
        assert direct_sum_rank(-1, [[1, 0], [0, -1]]) == 4
        assert direct_sum_rank(-2, [[0, 1], [1, 0]]) == 4
        assert direct_sum_rank(-1, [[1, 0], [0, 1]]) == 2
        assert direct_sum_holds(q(0, 0), q(0, 0), [[1, 0], [0, -1]])
        assert direct_sum_holds(q(1, 2), q(3, -1), [[1, 0], [0, -1]])
        assert not direct_sum_holds(q(1, 0), q(-1, 0), [[1, 0], [0, 1]])

    def test_fuzz(self):
        # type: () -> None
        result = fuzz_rank_checks(40, seed=1)
        assert result.trials == 40
        assert total_violations(result) == 0

    def test_fuzz_thousand(self):
        # type: () -> None
        result = fuzz_rank_checks(1000, seed=7)
        assert (result.mixed_violations, result.pure_violations) == (0, 0)
        assert result.direct_sum_violations == 0

    def test_fuzz_deterministic(self):
        # type: () -> None
        assert fuzz_rank_checks(10, seed=3) == fuzz_rank_checks(10, seed=3)
