"""Parse polynomial systems given as text.

Grammar, one polynomial per line ('#' starts a comment):

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INTEGER)?
    atom   := NUMBER | VARIABLE | 'i' | '(' expr ')'

NUMBER is a decimal or a rational a/b, optionally followed by 'i' to make it
imaginary. VARIABLE is X{i}_{k} (homogeneous coordinate i of factor k) or the
affine alias x{i}_{k} (i in 1..4), which stands for X{i}_{k}/X0_{k}; such
polynomials are homogenized with X0_{k}.
"""

import re
from fractions import Fraction

from mypy_extensions import NoReturn
from typing import List, Optional, Set, Tuple

from uvext_tools.variety.types import (
    COORDINATES,
    Coefficient,
    MultiProjPoly,
    Polynomial,
    VarietySpec,
    homogenize,
    variable_name,
)


class ParseError(Exception):
    """Raised on any error in a polynomial.

    The 'text' attribute contains the offending line, 'position' the 0-based
    column and 'line' the 1-based line number.
    """

    def __init__(self, text, position, reason='syntax error', line=1):
        # type: (str, int, str, int) -> None
        super(ParseError, self).__init__('Invalid polynomial (line %d, column %d): %s: %s' % (
            line, position + 1, reason, text))
        self.text = text
        self.position = position
        self.reason = reason
        self.line = line


class Token(object):
    """Abstract base class for tokens used for parsing polynomials"""
    text = ''
    position = 0


class Number(Token):
    """A numeric literal such as '3', '0.25', '2/3' or '1/2i'"""

    def __init__(self, text, value, position):
        # type: (str, Coefficient, int) -> None
        self.text = text
        self.value = value
        self.position = position

    def __repr__(self):
        # type: () -> str
        return 'Number(%s)' % self.text


class Variable(Token):
    """A coordinate such as 'X0_1' or the affine alias 'x2_3'"""

    def __init__(self, text, factor, coordinate, affine, position):
        # type: (str, int, int, bool, int) -> None
        self.text = text
        self.factor = factor
        self.coordinate = coordinate
        self.affine = affine
        self.position = position

    def __repr__(self):
        # type: () -> str
        return 'Variable(%s)' % self.text


class Separator(Token):
    """An operator or parenthesis"""

    def __init__(self, text, position):
        # type: (str, int) -> None
        self.text = text
        self.position = position

    def __repr__(self):
        # type: () -> str
        return self.text


class End(Token):
    """A token representing the end of a polynomial"""

    def __init__(self, position):
        # type: (int) -> None
        self.position = position

    def __repr__(self):
        # type: () -> str
        return 'End()'


NUMBER_RE = re.compile(r'(\d+\.?\d*(?:[eE][-+]?\d+)?|\.\d+(?:[eE][-+]?\d+)?)(?:/(\d+))?(i?)')
VARIABLE_RE = re.compile(r'([Xx])(\d+)_(\d+)')


def tokenize(s, g, line=1):
    # type: (str, int, int) -> List[Token]
    """Translate a polynomial into a list of tokens."""
    tokens = []  # type: List[Token]
    i = 0
    while True:
        if i >= len(s):
            tokens.append(End(i))
            return tokens
        elif s[i] in ' \t':
            i += 1
        elif s[i] in '+-*^()':
            tokens.append(Separator(s[i], i))
            i += 1
        elif VARIABLE_RE.match(s, i):
            m = VARIABLE_RE.match(s, i)
            assert m
            affine = m.group(1) == 'x'
            coordinate, factor = int(m.group(2)), int(m.group(3))
            lowest = 1 if affine else 0
            if not lowest <= coordinate < COORDINATES:
                raise ParseError(s, i, 'no coordinate %d' % coordinate, line)
            if not 1 <= factor <= g:
                raise ParseError(s, i, 'no factor %d (g = %d)' % (factor, g), line)
            tokens.append(Variable(m.group(0), factor, coordinate, affine, i))
            i = m.end()
        elif NUMBER_RE.match(s, i):
            m = NUMBER_RE.match(s, i)
            assert m
            value = Fraction(m.group(1))
            if m.group(2):
                if int(m.group(2)) == 0:
                    raise ParseError(s, i, 'zero denominator', line)
                value /= int(m.group(2))
            coeff = Coefficient(0, value) if m.group(3) else Coefficient(value)
            tokens.append(Number(m.group(0), coeff, i))
            i = m.end()
        elif s[i] == 'i':
            tokens.append(Number('i', Coefficient(0, 1), i))
            i += 1
        else:
            raise ParseError(s, i, 'unexpected character %r' % s[i], line)


def parse_poly(text, g, line=1):
    # type: (str, int, int) -> MultiProjPoly
    """Parse one polynomial and homogenize its affine factors."""
    return Parser(text, g, line).parse()


class Parser(object):
    """Implementation of the polynomial parser"""

    def __init__(self, text, g, line=1):
        # type: (str, int, int) -> None
        self.text = text
        self.g = g
        self.line = line
        self.tokens = tokenize(text, g, line)
        self.i = 0
        self.affine = set()  # type: Set[int]
        self.homogeneous = set()  # type: Set[int]

    def parse(self):
        # type: () -> MultiProjPoly
        poly = self.parse_expr()
        if not isinstance(self.tokens[self.i], End):
            self.fail('unexpected %r' % self.tokens[self.i].text)
        mixed = self.affine & self.homogeneous
        if mixed:
            self.fail('factor %d mixes affine and homogeneous coordinates' % min(mixed))
        if poly.is_zero():
            self.fail('polynomial is identically zero')
        if poly.is_constant():
            self.fail('polynomial is a nonzero constant')
        return MultiProjPoly.from_polynomial(homogenize(poly, sorted(self.affine)))

    def parse_expr(self):
        # type: () -> Polynomial
        poly = self.parse_term()
        while self.lookup() in ('+', '-'):
            op = self.next().text
            term = self.parse_term()
            poly = poly + term if op == '+' else poly - term
        return poly

    def parse_term(self):
        # type: () -> Polynomial
        poly = self.parse_unary()
        while self.lookup() == '*':
            self.expect('*')
            poly = poly * self.parse_unary()
        return poly

    def parse_unary(self):
        # type: () -> Polynomial
        if self.lookup() == '-':
            self.expect('-')
            return -self.parse_unary()
        if self.lookup() == '+':
            self.expect('+')
            return self.parse_unary()
        return self.parse_power()

    def parse_power(self):
        # type: () -> Polynomial
        base = self.parse_atom()
        if self.lookup() == '^':
            self.expect('^')
            t = self.next()
            if not (isinstance(t, Number) and t.value.im == 0 and
                    t.value.re.denominator == 1 and re.match(r'^\d+$', t.text)):
                self.fail('exponent must be a nonnegative integer', t)
            return base ** int(t.text)
        return base

    def parse_atom(self):
        # type: () -> Polynomial
        t = self.next()
        if isinstance(t, Number):
            return Polynomial.constant(self.g, t.value)
        if isinstance(t, Variable):
            (self.affine if t.affine else self.homogeneous).add(t.factor)
            return Polynomial.variable(self.g, t.factor, t.coordinate)
        if t.text == '(':
            poly = self.parse_expr()
            self.expect(')')
            return poly
        self.fail('unexpected %r' % t.text if t.text else 'unexpected end', t)

    def expect(self, s):
        # type: (str) -> None
        if self.tokens[self.i].text != s:
            self.fail('expected %r' % s)
        self.i += 1

    def lookup(self):
        # type: () -> str
        return self.tokens[self.i].text

    def next(self):
        # type: () -> Token
        token = self.tokens[self.i]
        self.i += 1
        return token

    def fail(self, reason, token=None):
        # type: (str, Optional[Token]) -> NoReturn
        token = token or self.tokens[min(self.i, len(self.tokens) - 1)]
        raise ParseError(self.text, token.position, reason, self.line)


def parse_variety(text, g):
    # type: (str, int) -> VarietySpec
    """Parse a system, one polynomial per line."""
    polys = []  # type: List[MultiProjPoly]
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].rstrip()
        if line.strip():
            polys.append(parse_poly(line, g, number))
    return VarietySpec(polys, g)


def load_variety(path, g):
    # type: (str, int) -> VarietySpec
    with open(path) as f:
        return parse_variety(f.read(), g)


def format_coefficient(coeff):
    # type: (Coefficient) -> str
    if coeff.im == 0:
        return str(coeff.re)
    if coeff.re == 0:
        return '%si' % coeff.im
    return '(%s + %si)' % (coeff.re, coeff.im)


def format_monomial(exps):
    # type: (Tuple[int, ...]) -> List[str]
    parts = []
    for index, e in enumerate(exps):
        if e == 1:
            parts.append(variable_name(index))
        elif e > 1:
            parts.append('%s^%d' % (variable_name(index), e))
    return parts


def format_poly(poly):
    # type: (Polynomial) -> str
    """Serialize a polynomial in the grammar accepted by parse_poly()."""
    if poly.is_zero():
        return '0'
    terms = []
    for exps, coeff in poly.sorted_terms():
        factors = format_monomial(exps)
        if coeff != Coefficient(1) or not factors:
            factors.insert(0, format_coefficient(coeff))
        terms.append('*'.join(factors))
    return ' + '.join(terms)


def format_variety(spec):
    # type: (VarietySpec) -> str
    return ''.join(format_poly(p) + '\n' for p in spec.polys)
