"""Build the structured reports written by the command line tool.

Every report is a JSON object with the keys 'schema', 'command', 'inputs',
'results' and 'provenance'. Complex numbers are written as 're+im i' strings
and exact integers as JSON integers, so reports compare byte for byte.
"""

import json
import logging

import numpy as np
from mypy_extensions import TypedDict
from typing import Any, Dict, List, Optional, Sequence, Tuple

from uvext_runtime.elliptic import (
    CurveInvariants,
    compute_periods,
    half_periods,
    j_invariant,
)
from uvext_runtime.extension import (
    BettiPoint,
    ExtensionConfig,
    LogPoint,
    UEPoint,
    betti_residual,
    betti_to_point,
    exp_ue,
    is_in_compact,
    log_ue,
    model_residual,
)
from uvext_tools.exact.algebra import fuzz_rank_checks, total_violations
from uvext_tools.exact.bounds import bound_report
from uvext_tools.intersect.config import RunConfig, curve_pairs, format_complex
from uvext_tools.intersect.infer import classify_report, detect_torsion
from uvext_tools.intersect.solver import residual_norms, solve_intersection
from uvext_tools.intersect.types import IntersectionReport
from uvext_tools.variety.evaluate import eval_variety
from uvext_tools.variety.parse import load_variety
from uvext_tools.variety.types import VarietySpec

SCHEMA_VERSION = 1

# Top level schema of every report
Report = TypedDict('Report', {'schema': int,
                              'command': str,
                              'inputs': Dict[str, Any],
                              'results': Dict[str, Any],
                              'provenance': Dict[str, Any]})

# Schema of one solution in an intersection report
SolutionData = TypedDict('SolutionData', {'betti': List[float],
                                          'point': List[List[str]],
                                          'residual': float,
                                          'variety_residual': float,
                                          'iterations': int,
                                          'refined': bool,
                                          'torsion': Optional[int]})


def make_report(command, inputs, results, provenance=None):
    # type: (str, Dict[str, Any], Dict[str, Any], Optional[Dict[str, Any]]) -> Report
    return {
        'schema': SCHEMA_VERSION,
        'command': command,
        'inputs': inputs,
        'results': results,
        'provenance': provenance or {},
    }


def dump_report(report, path=None):
    # type: (Report, Optional[str]) -> str
    """Serialize a report; write it to path if given and return the text."""
    text = json.dumps(report, sort_keys=True, indent=4) + '\n'
    if path:
        with open(path, 'w') as f:
            f.write(text)
    return text


def format_point(P):
    # type: (UEPoint) -> List[List[str]]
    return [[format_complex(x) for x in coords] for coords in P.projective_coordinates()]


def periods_report(inv, precision):
    # type: (CurveInvariants, float) -> Report
    pm = compute_periods(inv, precision)
    e1, e2, e3 = half_periods(pm)
    results = {
        'omega1': format_complex(pm.omega1),
        'omega2': format_complex(pm.omega2),
        'eta1': format_complex(pm.eta1),
        'eta2': format_complex(pm.eta2),
        'tau': format_complex(pm.tau),
        'j': format_complex(j_invariant(inv)),
        'half_period_values': [format_complex(e) for e in (e1, e2, e3)],
        'legendre_residual': pm.legendre_residual(),
    }
    return make_report('periods',
                       {'g2': format_complex(inv.g2), 'g3': format_complex(inv.g3)},
                       results, {'precision_target': precision})


def _curve_inputs(cfg):
    # type: (ExtensionConfig) -> List[Tuple[str, str]]
    return curve_pairs([inv for inv, _ in cfg.factors])


def exp_report(cfg, x):
    # type: (ExtensionConfig, LogPoint) -> Report
    P = exp_ue(cfg, x)
    return make_report('exp',
                       {'curves': _curve_inputs(cfg),
                        'log': [[format_complex(z), format_complex(w)] for z, w in x.pairs]},
                       {'point': format_point(P), 'model_residual': model_residual(cfg, P)})


def log_report(cfg, P):
    # type: (ExtensionConfig, UEPoint) -> Report
    x = log_ue(cfg, P)
    return make_report('log',
                       {'curves': _curve_inputs(cfg), 'point': format_point(P)},
                       {'log': [[format_complex(z), format_complex(w)] for z, w in x.pairs]})


def betti_report(cfg, b):
    # type: (ExtensionConfig, BettiPoint) -> Report
    """Point of the compact subgroup with Betti coordinates b."""
    P = betti_to_point(cfg, b)
    _, residuals = betti_residual(cfg, P)
    return make_report('betti',
                       {'curves': _curve_inputs(cfg), 'betti': list(b.coords)},
                       {'point': format_point(P),
                        'compact_residual': [abs(r) for r in residuals],
                        'in_compact': is_in_compact(cfg, P)})


def point_betti_report(cfg, P):
    # type: (ExtensionConfig, UEPoint) -> Report
    """Betti coordinates of P and its distance from the compact subgroup."""
    b, residuals = betti_residual(cfg, P)
    return make_report('betti',
                       {'curves': _curve_inputs(cfg), 'point': format_point(P)},
                       {'betti': list(b.coords),
                        'residual': [format_complex(r) for r in residuals],
                        'in_compact': is_in_compact(cfg, P)})


def bound_report_data(g, delta):
    # type: (int, int) -> Report
    bounds = bound_report(g, delta)
    zero_sets = bounds.zero_sets
    results = {
        'n_iso': bounds.n_iso,
        'translate_bound': bounds.translate_shape.to_dict(),
        'formats': [list(f) for f in bounds.formats],
        'zero_sets': {
            'count': zero_sets.count,
            'order': zero_sets.order,
            'degree': list(zero_sets.degree),
            'charts': zero_sets.charts,
        },
        'component_estimates': bounds.external,
    }
    return make_report('bound', {'g': g, 'delta': delta}, results)


def lemmas_report(trials, seed):
    # type: (int, int) -> Report
    result = fuzz_rank_checks(trials, seed)
    violations = total_violations(result)
    logging.info('violations: %d', violations)
    return make_report('lemmas', {'trials': trials, 'seed': seed}, {
        'mixed_violations': result.mixed_violations,
        'pure_violations': result.pure_violations,
        'direct_sum_violations': result.direct_sum_violations,
        'violations': violations,
    })


def torsion_report(coords, qmax):
    # type: (Sequence[float], int) -> Report
    order = detect_torsion(list(coords), qmax)
    logging.info('order: %s', order if order is not None else 'none')
    return make_report('torsion', {'betti': list(coords), 'qmax': qmax}, {'order': order})


def _solution_data(cfg, spec, report):
    # type: (ExtensionConfig, VarietySpec, IntersectionReport) -> List[SolutionData]
    data = []  # type: List[SolutionData]
    for s, order in zip(report.solutions, report.torsion):
        values = eval_variety(spec, cfg, s.point)
        data.append({
            'betti': list(s.betti.coords),
            'point': format_point(s.point),
            'residual': s.residual,
            'variety_residual': max(abs(v) for v in values),
            'iterations': s.iterations,
            'refined': s.refined,
            'torsion': order,
        })
    return data


def run_intersection(run, spec=None):
    # type: (RunConfig, Optional[VarietySpec]) -> Tuple[Report, ExtensionConfig, VarietySpec, IntersectionReport]
    """Solve, classify and report the intersection described by a validated RunConfig."""
    cfg = ExtensionConfig.from_invariants(run.curves)
    if spec is None:
        assert run.variety
        spec = load_variety(run.variety, cfg.g)
    report = solve_intersection(cfg, spec, run.resolution, run.tol, run.seed,
                                workers=run.workers, confirm=run.confirm)
    classify_report(report, run.height, run.qmax)
    logging.info('solutions: %d', len(report.solutions))
    results = {
        'solutions': _solution_data(cfg, spec, report),
        'clusters': report.clusters,
        'relations': [{'a': list(r.a), 'c': r.c, 'members': list(r.members)}
                      for r in report.relations],
        'stable': report.stable,
        'seeds': report.seeds,
        'failures': report.failures,
    }
    inputs = {
        'curves': curve_pairs(run.curves),
        'variety': [str(p) for p in spec.polys],
        'delta': spec.delta,
        'resolution': run.resolution,
        'tol': run.tol,
        'seed': run.seed,
        'height': run.height,
        'qmax': run.qmax,
    }
    provenance = {
        'resolutions_used': report.resolutions_used,
        'tolerance': report.tolerance,
        'completeness': 'no further zeros found at the resolutions used',
    }
    return make_report('intersect', inputs, results, provenance), cfg, spec, report


def plot_rows(cfg, spec, resolution, anchor=None):
    # type: (ExtensionConfig, VarietySpec, int, Optional[BettiPoint]) -> List[Tuple[float, float, float]]
    """Residual samples (p, q, |F|) over the first factor's Betti square.

    The other factors are held at the anchor point (default the origin).
    """
    base = np.array(anchor.coords if anchor is not None else [0.0] * (2 * cfg.g))
    grid = np.arange(resolution) / float(resolution)
    p, q = np.meshgrid(grid, grid, indexing='ij')
    points = np.tile(base, (resolution * resolution, 1))
    points[:, 0] = p.ravel()
    points[:, 1] = q.ravel()
    norms = residual_norms(cfg, spec, points)
    return [(float(a), float(b), float(r)) for a, b, r in zip(points[:, 0], points[:, 1], norms)]


def write_plot(path, rows):
    # type: (str, Sequence[Tuple[float, float, float]]) -> None
    with open(path, 'w') as f:
        f.write('# p\tq\tresidual\n')
        for p, q, r in rows:
            f.write('%r\t%r\t%r\n' % (p, q, r))
