from __future__ import print_function

import argparse
import logging
import sys
from fractions import Fraction

from typing import Any, Callable, Dict, List, Optional

from uvext_runtime.elliptic import DegenerateCurve, NoConvergence, PoleAtLatticePoint
from uvext_runtime.extension import (
    BettiPoint,
    ExtensionConfig,
    FiberPoint,
    LogPoint,
    NotOnModel,
    UEPoint,
    affine_point,
)
from uvext_tools.exact.algebra import PreconditionViolated
from uvext_tools.intersect.config import (
    ConfigError,
    RunConfig,
    load_config,
    parse_complex,
    parse_curve,
)
from uvext_tools.intersect.main import (
    Report,
    betti_report,
    bound_report_data,
    dump_report,
    exp_report,
    lemmas_report,
    log_report,
    periods_report,
    plot_rows,
    point_betti_report,
    run_intersection,
    torsion_report,
    write_plot,
)
from uvext_tools.intersect.solver import DimensionGuard
from uvext_tools.variety.parse import ParseError
from uvext_tools.variety.types import EmptySystem, InhomogeneousDegree

# Exit status 1: the input was rejected.
VALIDATION_ERRORS = (ParseError, InhomogeneousDegree, EmptySystem, DegenerateCurve, NotOnModel,
                     ConfigError, PreconditionViolated, DimensionGuard, IOError)

# Exit status 2: a numerical computation failed.
NUMERICAL_ERRORS = (NoConvergence, PoleAtLatticePoint)


class ArgumentParser(argparse.ArgumentParser):
    """Argument parser that exits with status 1 on usage errors."""

    def error(self, message):
        # type: (str) -> Any
        self.print_usage(sys.stderr)
        self.exit(1, '%s: error: %s\n' % (self.prog, message))


common = argparse.ArgumentParser(add_help=False)
common.add_argument('-v', '--verbose', action='store_true',
                    help="More verbose output")
common.add_argument('--out', metavar="FILE",
                    help="Write the report to FILE instead of standard output")

curves = argparse.ArgumentParser(add_help=False)
curves.add_argument('--curve', action='append', metavar="G2,G3",
                    help="Curve invariants, e.g. 4+0i,0 (repeat once per factor)")

parser = ArgumentParser(prog='uvext')
subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')

periods = subparsers.add_parser('periods', parents=[common], help="Periods and quasi-periods of a curve")
periods.add_argument('--curve', required=True, metavar="G2,G3",
                     help="Curve invariants, e.g. 4,0")
periods.add_argument('--precision', type=float, default=1e-12, metavar="X",
                     help="Precision target (default 1e-12)")

exp = subparsers.add_parser('exp', parents=[common, curves], help="Exponential map")
exp.add_argument('pairs', nargs='+', metavar="Z,W",
                 help="Tangent coordinates, one pair per factor")

log = subparsers.add_parser('log', parents=[common, curves], help="Logarithm of a point")
log.add_argument('factors', nargs='+', metavar="X1,X2,X3,X4",
                 help="Affine coordinates per factor, or fiber:V for [0:0:1:0:V]")

betti = subparsers.add_parser('betti', parents=[common, curves], help="Betti coordinates")
betti.add_argument('values', nargs='+', metavar="P,Q",
                   help="Betti coordinates per factor (or model points with --point)")
betti.add_argument('--point', action='store_true',
                   help="Values are model points; report their Betti coordinates")

intersect = subparsers.add_parser('intersect', parents=[common, curves],
                                  help="Intersect a variety with the compact subgroup")
intersect.add_argument('--config', metavar="FILE",
                       help="INI configuration file; flags override its values")
intersect.add_argument('--variety', metavar="FILE",
                       help="Variety file, one polynomial per line")
intersect.add_argument('--resolution', type=int, metavar="N",
                       help="Grid points per Betti axis (default 64)")
intersect.add_argument('--tol', type=float, metavar="X",
                       help="Residual tolerance (default 1e-8)")
intersect.add_argument('--seed', type=int, metavar="N",
                       help="Seed for extra random starting points (default 0)")
intersect.add_argument('--height', type=int, metavar="H",
                       help="Height bound for subtorus relations (default 3)")
intersect.add_argument('--qmax', type=int, metavar="Q",
                       help="Denominator bound for torsion detection (default 100)")
intersect.add_argument('-j', '--workers', type=int, metavar="N",
                       help="Use N worker threads (default 1)")
intersect.add_argument('--confirm', action='store_true', default=None,
                       help="Repeat at twice the resolution and report stability")
intersect.add_argument('--plot', metavar="FILE",
                       help="Write (p, q, residual) samples to FILE (default OUT.plot.tsv)")

bound = subparsers.add_parser('bound', parents=[common], help="Exact bounds")
bound.add_argument('g', type=int, help="Number of factors")
bound.add_argument('delta', type=int, help="Degree of definition")

lemmas = subparsers.add_parser('lemmas', parents=[common], help="Fuzz the exact rank checks")
lemmas.add_argument('--trials', type=int, default=1000, metavar="N",
                    help="Number of random instances (default 1000)")
lemmas.add_argument('--seed', type=int, default=0, metavar="N",
                    help="Random seed (default 0)")

torsion = subparsers.add_parser('torsion', parents=[common], help="Order of a Betti point")
torsion.add_argument('betti', metavar="P,Q,...",
                     help="Betti coordinates, rationals such as 1/3 allowed")
torsion.add_argument('--qmax', type=int, default=100, metavar="Q",
                     help="Denominator bound (default 100)")


def _numbers(text, count=None):
    # type: (str, Optional[int]) -> List[str]
    parts = [p.strip() for p in text.split(',')]
    if count is not None and len(parts) != count:
        raise ConfigError('value', text, 'expected %d comma separated numbers' % count)
    return parts


def _config(args):
    # type: (argparse.Namespace) -> ExtensionConfig
    if not args.curve:
        raise ConfigError('curve', None, 'at least one --curve is required')
    return ExtensionConfig.from_invariants([parse_curve(c) for c in args.curve])


def _check_count(cfg, values):
    # type: (ExtensionConfig, List[Any]) -> None
    if len(values) != cfg.g:
        raise ConfigError('values', len(values), 'expected one per curve (%d)' % cfg.g)


def parse_factor(text):
    # type: (str) -> Any
    if text.startswith('fiber:'):
        return FiberPoint(parse_complex(text[len('fiber:'):], 'fiber'))
    x1, x2, x3, x4 = [parse_complex(p, 'coordinate') for p in _numbers(text, 4)]
    return affine_point(x1, x2, x3, x4)


def parse_real(text):
    # type: (str) -> float
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise ConfigError('betti', text, 'expected a real number or fraction')


def cmd_periods(args):
    # type: (argparse.Namespace) -> Report
    return periods_report(parse_curve(args.curve), args.precision)


def cmd_exp(args):
    # type: (argparse.Namespace) -> Report
    cfg = _config(args)
    _check_count(cfg, args.pairs)
    pairs = []
    for text in args.pairs:
        z, w = [parse_complex(p) for p in _numbers(text, 2)]
        pairs.append((z, w))
    return exp_report(cfg, LogPoint(pairs))


def cmd_log(args):
    # type: (argparse.Namespace) -> Report
    cfg = _config(args)
    _check_count(cfg, args.factors)
    return log_report(cfg, UEPoint([parse_factor(t) for t in args.factors]))


def cmd_betti(args):
    # type: (argparse.Namespace) -> Report
    cfg = _config(args)
    _check_count(cfg, args.values)
    if args.point:
        return point_betti_report(cfg, UEPoint([parse_factor(t) for t in args.values]))
    coords = [parse_real(x) for text in args.values for x in _numbers(text, 2)]
    return betti_report(cfg, BettiPoint(coords))


def cmd_intersect(args):
    # type: (argparse.Namespace) -> Report
    run = load_config(args.config) if args.config else RunConfig()
    run = run.override(curves=[parse_curve(c) for c in args.curve] if args.curve else None,
                       variety=args.variety, out=args.out, plot=args.plot,
                       resolution=args.resolution, tol=args.tol, seed=args.seed,
                       height=args.height, qmax=args.qmax, workers=args.workers,
                       confirm=args.confirm)
    run.validate()
    report, cfg, spec, result = run_intersection(run)
    plot = run.plot or (run.out + '.plot.tsv' if run.out else None)
    if plot:
        anchor = result.solutions[0].betti if result.solutions else None
        write_plot(plot, plot_rows(cfg, spec, run.resolution, anchor))
        logging.info('plot data written to %s', plot)
    args.out = run.out
    return report


def cmd_bound(args):
    # type: (argparse.Namespace) -> Report
    if args.g < 1 or args.delta < 1:
        raise ConfigError('bound', (args.g, args.delta), 'g and delta must be positive')
    report = bound_report_data(args.g, args.delta)
    logging.info('n_iso: %d', report['results']['n_iso'])
    return report


def cmd_lemmas(args):
    # type: (argparse.Namespace) -> Report
    if args.trials < 0:
        raise ConfigError('trials', args.trials, 'must not be negative')
    return lemmas_report(args.trials, args.seed)


def cmd_torsion(args):
    # type: (argparse.Namespace) -> Report
    if args.qmax < 1:
        raise ConfigError('qmax', args.qmax, 'must be positive')
    return torsion_report([parse_real(x) for x in _numbers(args.betti)], args.qmax)


COMMANDS = {
    'periods': cmd_periods,
    'exp': cmd_exp,
    'log': cmd_log,
    'betti': cmd_betti,
    'intersect': cmd_intersect,
    'bound': cmd_bound,
    'lemmas': cmd_lemmas,
    'torsion': cmd_torsion,
}  # type: Dict[str, Callable[[argparse.Namespace], Report]]


def main(args_override=None):
    # type: (Optional[List[str]]) -> None

    # Parse command line.
    args = parser.parse_args(args_override)
    if not args.command:
        parser.error("A command is required")

    # Set up logging handler.
    level = logging.DEBUG if args.verbose else logging.INFO
    logging.basicConfig(format='%(message)s', level=level)

    try:
        report = COMMANDS[args.command](args)
    except VALIDATION_ERRORS as err:
        sys.exit('uvext %s: %s' % (args.command, err))
    except NUMERICAL_ERRORS as err:
        print('uvext %s: %s' % (args.command, err), file=sys.stderr)
        sys.exit(2)

    text = dump_report(report, args.out)
    if args.out:
        logging.info('report written to %s', args.out)
    else:
        sys.stdout.write(text)


if __name__ == '__main__':
    main()
