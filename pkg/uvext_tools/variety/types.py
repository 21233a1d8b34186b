"""Internal representation of multiprojective polynomial systems.

Variables are the homogeneous coordinates X{i}_{k} (coordinate i in 0..4 of
factor k in 1..g). A monomial is a tuple of 5*g exponents, factor-major.
Coefficients are exact Gaussian rationals.
"""

from fractions import Fraction

from six import iteritems
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

COORDINATES = 5

Exponents = Tuple[int, ...]


class InhomogeneousDegree(Exception):
    """Raised when a polynomial is not homogeneous in some factor.

    The 'poly' attribute holds the offending polynomial and 'factor' the
    (1-based) factor index.
    """

    def __init__(self, poly, factor):
        # type: (Polynomial, int) -> None
        super(InhomogeneousDegree, self).__init__(
            'Polynomial is not homogeneous in factor %d: %s' % (factor, poly))
        self.poly = poly
        self.factor = factor


class EmptySystem(Exception):
    """Raised when a system has no polynomials."""

    def __init__(self):
        # type: () -> None
        super(EmptySystem, self).__init__('The system contains no polynomials')


class Coefficient(object):
    """An exact complex rational re + im*i."""

    def __init__(self, re, im=0):
        # type: (Union[int, Fraction], Union[int, Fraction]) -> None
        self.re = Fraction(re)
        self.im = Fraction(im)

    def is_zero(self):
        # type: () -> bool
        return self.re == 0 and self.im == 0

    def to_complex(self):
        # type: () -> complex
        return complex(float(self.re), float(self.im))

    def __add__(self, other):
        # type: (Coefficient) -> Coefficient
        return Coefficient(self.re + other.re, self.im + other.im)

    def __neg__(self):
        # type: () -> Coefficient
        return Coefficient(-self.re, -self.im)

    def __mul__(self, other):
        # type: (Coefficient) -> Coefficient
        return Coefficient(self.re * other.re - self.im * other.im,
                           self.re * other.im + self.im * other.re)

    def __repr__(self):
        # type: () -> str
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return '%si' % self.im
        sign = '+' if self.im > 0 else '-'
        return '(%s%s%si)' % (self.re, sign, abs(self.im))

    def __eq__(self, other):
        # type: (object) -> bool
        return isinstance(other, Coefficient) and self.re == other.re and self.im == other.im

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other

    def __hash__(self):
        # type: () -> int
        return hash((self.re, self.im))


ONE = Coefficient(1)


def variable_index(factor, coordinate):
    # type: (int, int) -> int
    """Position of X{coordinate}_{factor} in an exponent tuple (factor is 1-based)."""
    return COORDINATES * (factor - 1) + coordinate


def variable_name(index):
    # type: (int) -> str
    return 'X%d_%d' % (index % COORDINATES, index // COORDINATES + 1)


def factor_degree(exps, factor):
    # type: (Exponents, int) -> int
    start = COORDINATES * (factor - 1)
    return sum(exps[start:start + COORDINATES])


class Polynomial(object):
    """A sparse polynomial in the 5*g coordinates, not necessarily homogeneous."""

    def __init__(self, g, terms=None):
        # type: (int, Optional[Dict[Exponents, Coefficient]]) -> None
        self.g = g
        self.terms = {}  # type: Dict[Exponents, Coefficient]
        for exps, coeff in iteritems(terms or {}):
            assert len(exps) == COORDINATES * g
            if not coeff.is_zero():
                self.terms[tuple(exps)] = coeff

    @classmethod
    def constant(cls, g, coeff):
        # type: (int, Coefficient) -> Polynomial
        return cls(g, {(0,) * (COORDINATES * g): coeff})

    @classmethod
    def variable(cls, g, factor, coordinate):
        # type: (int, int, int) -> Polynomial
        exps = [0] * (COORDINATES * g)
        exps[variable_index(factor, coordinate)] = 1
        return cls(g, {tuple(exps): ONE})

    def is_zero(self):
        # type: () -> bool
        return not self.terms

    def is_constant(self):
        # type: () -> bool
        return all(not any(exps) for exps in self.terms)

    def factor_degrees(self, factor):
        # type: (int) -> List[int]
        """Degrees in the given factor of all monomials, sorted."""
        return sorted(set(factor_degree(exps, factor) for exps in self.terms))

    def total_degree(self):
        # type: () -> int
        return max([sum(exps) for exps in self.terms] or [0])

    def uses_factor(self, factor):
        # type: (int) -> bool
        return any(factor_degree(exps, factor) for exps in self.terms)

    def __add__(self, other):
        # type: (Polynomial) -> Polynomial
        terms = dict(self.terms)
        for exps, coeff in iteritems(other.terms):
            terms[exps] = terms[exps] + coeff if exps in terms else coeff
        return Polynomial(self.g, terms)

    def __neg__(self):
        # type: () -> Polynomial
        return Polynomial(self.g, {exps: -coeff for exps, coeff in iteritems(self.terms)})

    def __sub__(self, other):
        # type: (Polynomial) -> Polynomial
        return self + (-other)

    def __mul__(self, other):
        # type: (Polynomial) -> Polynomial
        terms = {}  # type: Dict[Exponents, Coefficient]
        for e1, c1 in iteritems(self.terms):
            for e2, c2 in iteritems(other.terms):
                exps = tuple(a + b for a, b in zip(e1, e2))
                product = c1 * c2
                terms[exps] = terms[exps] + product if exps in terms else product
        return Polynomial(self.g, terms)

    def __pow__(self, n):
        # type: (int) -> Polynomial
        assert n >= 0
        result = Polynomial.constant(self.g, ONE)
        for _ in range(n):
            result = result * self
        return result

    def sorted_terms(self):
        # type: () -> List[Tuple[Exponents, Coefficient]]
        return sorted(self.terms.items(), key=lambda item: item[0], reverse=True)

    def __repr__(self):
        # type: () -> str
        from uvext_tools.variety.parse import format_poly
        return format_poly(self)

    def __eq__(self, other):
        # type: (object) -> bool
        return isinstance(other, Polynomial) and self.g == other.g and self.terms == other.terms

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other

    def __hash__(self):
        # type: () -> int
        return hash((self.g, tuple(self.sorted_terms())))


class MultiProjPoly(Polynomial):
    """A polynomial homogeneous in each factor's five coordinates."""

    def __init__(self, g, terms):
        # type: (int, Dict[Exponents, Coefficient]) -> None
        super(MultiProjPoly, self).__init__(g, terms)
        degrees = []  # type: List[int]
        for factor in range(1, g + 1):
            found = self.factor_degrees(factor)
            if len(found) > 1:
                raise InhomogeneousDegree(self, factor)
            degrees.append(found[0] if found else 0)
        self.per_factor_degree = degrees

    @classmethod
    def from_polynomial(cls, poly):
        # type: (Polynomial) -> MultiProjPoly
        return cls(poly.g, poly.terms)


def homogenize(poly, factors):
    # type: (Polynomial, Iterable[int]) -> Polynomial
    """Multiply monomials by powers of X0_k so each listed factor is homogeneous."""
    factors = list(factors)
    tops = {k: max(poly.factor_degrees(k) or [0]) for k in factors}
    terms = {}  # type: Dict[Exponents, Coefficient]
    for exps, coeff in iteritems(poly.terms):
        padded = list(exps)
        for k in factors:
            padded[variable_index(k, 0)] += tops[k] - factor_degree(exps, k)
        terms[tuple(padded)] = coeff
    return Polynomial(poly.g, terms)


class VarietySpec(object):
    """A system of multiprojective polynomials on a product of g copies of P^4."""

    def __init__(self, polys, g):
        # type: (Sequence[MultiProjPoly], int) -> None
        if not polys:
            raise EmptySystem()
        assert all(p.g == g for p in polys)
        self.polys = list(polys)
        self.g = g

    @property
    def delta(self):
        # type: () -> int
        """Degree of definition: the largest per-factor degree in the system."""
        return max(max(p.per_factor_degree) for p in self.polys)

    def __repr__(self):
        # type: () -> str
        return 'VarietySpec(g=%d, %r)' % (self.g, self.polys)

    def __eq__(self, other):
        # type: (object) -> bool
        return isinstance(other, VarietySpec) and self.g == other.g and self.polys == other.polys

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other


# A chart specialization: factors in 'chart' get X0 = 1, the others the
# identity coordinates (0, 0, 1, 0, 0).
Specialization = NamedTuple('Specialization', [('chart', Tuple[int, ...]),
                                               ('polys', List[Polynomial]),
                                               ('degree', int)])
