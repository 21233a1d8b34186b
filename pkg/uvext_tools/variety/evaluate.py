"""Evaluate polynomial systems at points of G and specialize them to charts."""

import numpy as np

from six import iteritems
from typing import Any, Dict, List, Optional, Tuple

from uvext_runtime.extension import ExtensionConfig, UEPoint, check_on_model
from uvext_tools.variety.types import (
    COORDINATES,
    Exponents,
    Coefficient,
    Polynomial,
    Specialization,
    VarietySpec,
    variable_index,
)

# The identity of G in model coordinates.
IDENTITY_COORDINATES = (0, 0, 1, 0, 0)


def _power(x, e):
    # type: (Any, int) -> Any
    result = x
    for _ in range(e - 1):
        result = result * x
    return result


def _compile(poly):
    # type: (Polynomial) -> List[Tuple[complex, List[Tuple[int, int, int]]]]
    compiled = []
    for exps, coeff in poly.sorted_terms():
        factors = [(index // COORDINATES, index % COORDINATES, e)
                   for index, e in enumerate(exps) if e]
        compiled.append((coeff.to_complex(), factors))
    return compiled


def normalize_coordinates(coords):
    # type: (Any) -> Any
    """Divide each factor's coordinates by its entry of largest magnitude."""
    coords = np.asarray(coords, dtype=complex)
    pivot = np.argmax(np.abs(coords), axis=-1)[..., None]
    scale = np.take_along_axis(coords, pivot, axis=-1)
    return coords / np.where(scale == 0, 1, scale)


def eval_coordinates(spec, coords):
    # type: (VarietySpec, Any) -> Any
    """Scale-invariant values of every polynomial; coords has shape (N, g, 5).

    Returns an array of shape (N, number of polynomials).
    """
    coords = normalize_coordinates(coords)
    out = np.zeros((coords.shape[0], len(spec.polys)), dtype=complex)
    for j, poly in enumerate(spec.polys):
        for coeff, factors in _compile(poly):
            term = np.full(coords.shape[0], coeff, dtype=complex)
            for k, i, e in factors:
                term = term * _power(coords[:, k, i], e)
            out[:, j] += term
    return out


def eval_variety(spec, cfg, P):
    # type: (VarietySpec, ExtensionConfig, UEPoint) -> List[complex]
    """Residuals of the system at P, invariant under rescaling each factor."""
    assert spec.g == cfg.g
    check_on_model(cfg, P)
    coords = np.array([P.projective_coordinates()], dtype=complex)
    return [complex(v) for v in eval_coordinates(spec, coords)[0]]


def _specialize(poly, chart):
    # type: (Polynomial, Tuple[int, ...]) -> Polynomial
    terms = {}  # type: Dict[Exponents, Coefficient]
    for exps, coeff in iteritems(poly.terms):
        reduced = list(exps)
        survives = True
        for k in range(1, poly.g + 1):
            if k in chart:
                reduced[variable_index(k, 0)] = 0
                continue
            for i, value in enumerate(IDENTITY_COORDINATES):
                index = variable_index(k, i)
                if reduced[index] and value == 0:
                    survives = False
                reduced[index] = 0
        if survives:
            key = tuple(reduced)
            terms[key] = terms[key] + coeff if key in terms else coeff
    return Polynomial(poly.g, terms)


def chart_specializations(spec, g=None):
    # type: (VarietySpec, Optional[int]) -> List[Specialization]
    """The 2^g systems obtained by putting X0_k = 1 on a set of factors and the
    identity (0, 0, 1, 0, 0) on the rest.

    Each result carries the total degree of its system, at most
    len(chart) * spec.delta.
    """
    g = spec.g if g is None else g
    assert g == spec.g
    result = []
    for mask in range(2 ** g):
        chart = tuple(k for k in range(1, g + 1) if mask & (1 << (k - 1)))
        polys = [_specialize(p, chart) for p in spec.polys]
        degree = max([p.total_degree() for p in polys] or [0])
        result.append(Specialization(chart, polys, degree))
    return result
