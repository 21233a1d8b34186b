import os
import tempfile
import unittest
from fractions import Fraction

from uvext_tools.variety.parse import (
    ParseError,
    format_variety,
    load_variety,
    parse_poly,
    parse_variety,
    tokenize,
)
from uvext_tools.variety.types import (
    Coefficient,
    EmptySystem,
    InhomogeneousDegree,
    Polynomial,
    variable_index,
)


def exps(g, **powers):
    # type: (int, **int) -> tuple
    """Exponent tuple from keywords such as X1_1=2."""
    out = [0] * (5 * g)
    for name, e in powers.items():
        coordinate, factor = name[1:].split('_')
        out[variable_index(int(factor), int(coordinate))] = e
    return tuple(out)


class TestParseError(unittest.TestCase):
    def test_str_conversion(self):
        # type: () -> None
        err = ParseError('X1_1 +', 6, 'unexpected end')
        assert str(err) == 'Invalid polynomial (line 1, column 7): unexpected end: X1_1 +'

    def test_position_and_line(self):
        # type: () -> None
        with self.assertRaises(ParseError) as ctx:
            parse_variety('X1_1 - X0_1\n# comment\nX2_1 + $', 1)
        assert ctx.exception.line == 3
        assert ctx.exception.position == 7
        assert ctx.exception.text == 'X2_1 + $'


class TestTokenize(unittest.TestCase):
    def test_tokens(self):
        # type: () -> None
        tokens = tokenize('X3_1 - 2*X0_1', 1)
        assert [repr(t) for t in tokens] == ['Variable(X3_1)', '-', 'Number(2)', '*',
                                             'Variable(X0_1)', 'End()']

    def test_numbers(self):
        # type: () -> None
        values = [t.value for t in tokenize('3 0.25 2/3 1/2i i 1e-2', 1)[:-1]]
        assert values == [Coefficient(3), Coefficient(Fraction(1, 4)), Coefficient(Fraction(2, 3)),
                          Coefficient(0, Fraction(1, 2)), Coefficient(0, 1),
                          Coefficient(Fraction(1, 100))]

    def test_affine_alias(self):
        # type: () -> None
        token = tokenize('x4_2', 2)[0]
        assert (token.factor, token.coordinate, token.affine) == (2, 4, True)


class TestParsePoly(unittest.TestCase):
    def test_linear(self):
        # type: () -> None
        spec = parse_variety('X3_1 - 2*X0_1', 1)
        assert len(spec.polys) == 1
        assert spec.delta == 1
        assert spec.polys[0].terms == {exps(1, X3_1=1): Coefficient(1),
                                       exps(1, X0_1=1): Coefficient(-2)}

    def test_affine_homogenized(self):
        # type: () -> None
        spec = parse_variety('x1_1^3 - x2_1', 1)
        assert spec.delta == 3
        assert spec.polys[0].terms == {exps(1, X1_1=3): Coefficient(1),
                                       exps(1, X2_1=1, X0_1=2): Coefficient(-1)}

    def test_two_factors(self):
        # type: () -> None
        poly = parse_poly('X1_1*X2_2 - (X0_1 + X1_1)*X0_2', 2)
        assert poly.per_factor_degree == [1, 1]
        assert len(poly.terms) == 3

    def test_complex_coefficients(self):
        # type: () -> None
        poly = parse_poly('i*X1_1 + 1/2i*X0_1 - 0.25*X2_1', 1)
        assert poly.terms[exps(1, X1_1=1)] == Coefficient(0, 1)
        assert poly.terms[exps(1, X0_1=1)] == Coefficient(0, Fraction(1, 2))
        assert poly.terms[exps(1, X2_1=1)] == Coefficient(Fraction(-1, 4))

    def test_unary_and_powers(self):
        # type: () -> None
        poly = parse_poly('-(X1_1 - X0_1)^2 + +X2_1*X0_1', 1)
        x0, x1, x2 = [Polynomial.variable(1, 1, i) for i in range(3)]
        assert poly == -(x1 - x0) ** 2 + x2 * x0

    def test_empty_system(self):
        # type: () -> None
        with self.assertRaises(EmptySystem):
            parse_variety('# nothing here\n\n   \n', 1)

    def test_inhomogeneous(self):
        # type: () -> None
        with self.assertRaises(InhomogeneousDegree) as ctx:
            parse_variety('X1_1^2 - X0_1', 1)
        assert ctx.exception.factor == 1

    def test_errors(self):
        # type: () -> None
        for text in ['X5_1', 'x0_1', 'X1_2', '1/0*X0_1', 'X1_1^1.5', 'X1_1^-1', 'X1_1 $',
                     '(X1_1', 'X1_1)', 'X1_1 - X1_1', '3', 'x1_1 - X1_1', 'X1_1 X0_1', '']:
            with self.assertRaises(ParseError):
                parse_poly(text, 1)


class TestRoundTrip(unittest.TestCase):
    def test_round_trip(self):
        # type: () -> None
        texts = [
            'X3_1 - 2*X0_1',
            'x1_1^3 - 7/3*x2_1 + (1-2i)*x3_1*x1_1',
            'X1_1*X2_2 - 1/2i*X0_1*X0_2\nX4_1^2*X3_2 - X0_1*X2_1*X1_2',
        ]
        for text in texts:
            g = 2 if '_2' in text else 1
            spec = parse_variety(text, g)
            again = parse_variety(format_variety(spec), g)
            assert again == spec
            assert again.delta == spec.delta

    def test_load_variety(self):
        # type: () -> None
        f = None
        try:
            with tempfile.NamedTemporaryFile(mode='w', suffix='.var', delete=False) as f:
                f.write('# diagonal\nX1_1*X0_2 - X0_1*X1_2\n')
            spec = load_variety(f.name, 2)
        finally:
            if f is not None:
                os.remove(f.name)
        assert spec.g == 2
        assert spec.delta == 1
