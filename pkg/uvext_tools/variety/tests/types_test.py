import unittest
from fractions import Fraction

from uvext_tools.variety.types import (
    Coefficient,
    EmptySystem,
    InhomogeneousDegree,
    MultiProjPoly,
    Polynomial,
    VarietySpec,
    homogenize,
    variable_index,
    variable_name,
)


def var(g, factor, coordinate):
    # type: (int, int, int) -> Polynomial
    return Polynomial.variable(g, factor, coordinate)


class TestCoefficient(unittest.TestCase):
    def test_arithmetic(self):
        # type: () -> None
        a = Coefficient(1, 2)
        b = Coefficient(1, -2)
        assert a * b == Coefficient(5)
        assert a + b == Coefficient(2)
        assert -a == Coefficient(-1, -2)
        assert (a + -a).is_zero()
        assert Coefficient(0, 1) * Coefficient(0, 1) == Coefficient(-1)
        assert Coefficient(Fraction(1, 2), 3).to_complex() == complex(0.5, 3)

    def test_str_conversion(self):
        # type: () -> None
        assert repr(Coefficient(Fraction(1, 2))) == '1/2'
        assert repr(Coefficient(0, 3)) == '3i'
        assert repr(Coefficient(1, -2)) == '(1-2i)'
        assert repr(Coefficient(-1, Fraction(2, 3))) == '(-1+2/3i)'

    def test_hash(self):
        # type: () -> None
        assert len({Coefficient(1), Coefficient(Fraction(2, 2)), Coefficient(1, 1)}) == 2
        assert Coefficient(1) != Coefficient(1, 1)
        assert Coefficient(1) != 1


class TestVariables(unittest.TestCase):
    def test_index(self):
        # type: () -> None
        assert variable_index(1, 0) == 0
        assert variable_index(2, 3) == 8
        assert variable_name(8) == 'X3_2'
        assert variable_name(4) == 'X4_1'
        for g in 1, 2, 3:
            for index in range(5 * g):
                name = variable_name(index)
                coordinate, factor = name[1:].split('_')
                assert variable_index(int(factor), int(coordinate)) == index


class TestPolynomial(unittest.TestCase):
    def test_arithmetic(self):
        # type: () -> None
        x0, x1 = var(1, 1, 0), var(1, 1, 1)
        square = (x1 + x0) ** 2
        assert square == x1 * x1 + x1 * x0 + x0 * x1 + x0 * x0
        assert len(square.terms) == 3
        assert square.total_degree() == 2
        assert square.factor_degrees(1) == [2]
        assert (x1 - x1).is_zero()
        assert x1 ** 0 == Polynomial.constant(1, Coefficient(1))
        assert (x1 ** 0).is_constant()
        assert not x1.is_constant()

    def test_mixed_degrees(self):
        # type: () -> None
        x0, x2 = var(2, 1, 0), var(2, 1, 2)
        y1 = var(2, 2, 1)
        poly = x2 * x2 + x0 * y1
        assert poly.factor_degrees(1) == [1, 2]
        assert poly.factor_degrees(2) == [0, 1]
        assert poly.uses_factor(2)
        assert not x2.uses_factor(2)

    def test_zero_coefficients_dropped(self):
        # type: () -> None
        exps = (0, 1, 0, 0, 0)
        poly = Polynomial(1, {exps: Coefficient(0), (1, 0, 0, 0, 0): Coefficient(2)})
        assert list(poly.terms) == [(1, 0, 0, 0, 0)]

    def test_equality(self):
        # type: () -> None
        assert var(1, 1, 1) == var(1, 1, 1)
        assert var(1, 1, 1) != var(1, 1, 2)
        assert var(1, 1, 1) != var(2, 1, 1)
        assert hash(var(2, 2, 3) * var(2, 1, 0)) == hash(var(2, 1, 0) * var(2, 2, 3))


class TestMultiProjPoly(unittest.TestCase):
    def test_degrees(self):
        # type: () -> None
        poly = MultiProjPoly.from_polynomial(var(2, 1, 1) * var(2, 2, 0) - var(2, 1, 0) * var(2, 2, 1))
        assert poly.per_factor_degree == [1, 1]
        poly = MultiProjPoly.from_polynomial(var(2, 1, 3) ** 3 - var(2, 1, 0) ** 3)
        assert poly.per_factor_degree == [3, 0]

    def test_inhomogeneous(self):
        # type: () -> None
        x0, x1 = var(2, 1, 0), var(2, 1, 1)
        y0, y1 = var(2, 2, 0), var(2, 2, 1)
        with self.assertRaises(InhomogeneousDegree) as ctx:
            MultiProjPoly.from_polynomial(x1 * y1 - x0 * y0 * y1)
        assert ctx.exception.factor == 2
        assert str(ctx.exception).startswith('Polynomial is not homogeneous in factor 2: ')


class TestHomogenize(unittest.TestCase):
    def test_homogenize(self):
        # type: () -> None
        x0, x1, x2 = var(1, 1, 0), var(1, 1, 1), var(1, 1, 2)
        poly = homogenize(x1 ** 3 - x2 + Polynomial.constant(1, Coefficient(5)), [1])
        assert poly == x1 ** 3 - x2 * x0 ** 2 + Polynomial.constant(1, Coefficient(5)) * x0 ** 3

    def test_only_listed_factors(self):
        # type: () -> None
        x1 = var(2, 1, 1)
        y0, y2 = var(2, 2, 0), var(2, 2, 2)
        poly = homogenize(x1 * x1 * y2 - y2, [2])
        assert poly == x1 * x1 * y2 - y2
        poly = homogenize(x1 * x1 * y2 - y2, [1])
        assert poly == x1 * x1 * y2 - y2 * var(2, 1, 0) ** 2
        assert MultiProjPoly.from_polynomial(poly).per_factor_degree == [2, 1]
        assert homogenize(y2 * y2 - y0, [2]) == y2 * y2 - y0 * y0


class TestVarietySpec(unittest.TestCase):
    def test_delta(self):
        # type: () -> None
        line = MultiProjPoly.from_polynomial(var(1, 1, 1) - var(1, 1, 0))
        cubic = MultiProjPoly.from_polynomial(var(1, 1, 3) ** 3 - var(1, 1, 0) ** 2 * var(1, 1, 2))
        assert VarietySpec([line], 1).delta == 1
        assert VarietySpec([line, cubic], 1).delta == 3
        assert VarietySpec([line, cubic], 1) == VarietySpec([line, cubic], 1)
        assert VarietySpec([line, cubic], 1) != VarietySpec([cubic, line], 1)

    def test_empty(self):
        # type: () -> None
        with self.assertRaises(EmptySystem):
            VarietySpec([], 2)
