"""Run configuration: INI file sections plus command line overrides.

A configuration file looks like

    [curves]
    curve1 = 4+0i, 0
    curve2 = -1+0.5i, 2-1i

    [variety]
    file = diagonal.var

    [solver]
    resolution = 64
    tol = 1e-8
    seed = 0
    height = 3
    qmax = 100
    workers = 1
    confirm = false

    [output]
    out = report.json
    plot = report.plot.tsv

Curves are taken in file order. Relative paths are resolved against the
directory containing the file.
"""

import math
import os
import re

from six.moves import configparser
from typing import Any, Dict, List, Optional, Tuple

from uvext_runtime.elliptic import CurveInvariants

DEFAULTS = {
    'resolution': 64,
    'tol': 1e-8,
    'seed': 0,
    'height': 3,
    'qmax': 100,
    'workers': 1,
    'confirm': False,
}  # type: Dict[str, Any]

MIN_RESOLUTION = 8
MAX_TOLERANCE = 1e-4

COMPLEX_RE = re.compile(r'^[-+0-9.eEij]+$')


class ConfigError(Exception):
    """Raised for an invalid configuration value."""

    def __init__(self, key, value, reason):
        # type: (str, Any, str) -> None
        super(ConfigError, self).__init__('Invalid %s %r: %s' % (key, value, reason))
        self.key = key
        self.value = value
        self.reason = reason


def parse_complex(text, key='number'):
    # type: (str, str) -> complex
    """Parse 're+im i' (e.g. '4+0i', '-0.5-1.25i', '2i') or a plain real."""
    compact = text.replace(' ', '')
    if not compact or not COMPLEX_RE.match(compact):
        raise ConfigError(key, text, 'expected a complex number such as 1.5-2i')
    try:
        value = complex(compact.replace('i', 'j'))
    except ValueError:
        raise ConfigError(key, text, 'expected a complex number such as 1.5-2i')
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ConfigError(key, text, 'not finite')
    return value


def _format_real(x):
    # type: (float) -> str
    s = repr(float(x))
    return s[:-2] if s.endswith('.0') else s


def format_complex(z):
    # type: (complex) -> str
    """Inverse of parse_complex(); round trips exactly."""
    z = complex(z)
    imag = _format_real(z.imag)
    if not imag.startswith('-'):
        imag = '+' + imag
    return '%s%si' % (_format_real(z.real), imag)


def parse_curve(text):
    # type: (str) -> CurveInvariants
    """Parse 'g2,g3'."""
    parts = text.split(',')
    if len(parts) != 2:
        raise ConfigError('curve', text, 'expected g2,g3')
    return CurveInvariants(parse_complex(parts[0], 'g2'), parse_complex(parts[1], 'g3'))


def format_curve(inv):
    # type: (CurveInvariants) -> str
    return '%s,%s' % (format_complex(inv.g2), format_complex(inv.g3))


def _parse_bool(key, text):
    # type: (str, str) -> bool
    lowered = text.strip().lower()
    if lowered in ('1', 'true', 'yes', 'on'):
        return True
    if lowered in ('0', 'false', 'no', 'off'):
        return False
    raise ConfigError(key, text, 'expected true or false')


def _parse_int(key, text):
    # type: (str, str) -> int
    try:
        return int(text)
    except ValueError:
        raise ConfigError(key, text, 'expected an integer')


def _parse_float(key, text):
    # type: (str, str) -> float
    try:
        return float(text)
    except ValueError:
        raise ConfigError(key, text, 'expected a number')


class RunConfig(object):
    """Inputs of an intersection run."""

    def __init__(self, curves=None, variety=None, out=None, plot=None, **solver):
        # type: (Optional[List[CurveInvariants]], Optional[str], Optional[str], Optional[str], **Any) -> None
        unknown = set(solver) - set(DEFAULTS)
        if unknown:
            raise ConfigError('option', sorted(unknown)[0], 'unknown solver option')
        self.curves = list(curves or [])
        self.variety = variety
        self.out = out
        self.plot = plot
        values = dict(DEFAULTS)
        values.update(solver)
        self.resolution = values['resolution']  # type: int
        self.tol = values['tol']  # type: float
        self.seed = values['seed']  # type: int
        self.height = values['height']  # type: int
        self.qmax = values['qmax']  # type: int
        self.workers = values['workers']  # type: int
        self.confirm = values['confirm']  # type: bool

    @property
    def g(self):
        # type: () -> int
        return len(self.curves)

    def validate(self):
        # type: () -> None
        if not self.curves:
            raise ConfigError('curves', self.curves, 'at least one curve is required')
        if not self.variety:
            raise ConfigError('variety', self.variety, 'a variety file is required')
        if self.resolution < MIN_RESOLUTION:
            raise ConfigError('resolution', self.resolution, 'must be at least %d' % MIN_RESOLUTION)
        if not 0 < self.tol <= MAX_TOLERANCE:
            raise ConfigError('tol', self.tol, 'must lie in (0, %g]' % MAX_TOLERANCE)
        for key in ('height', 'qmax', 'workers'):
            if getattr(self, key) < 1:
                raise ConfigError(key, getattr(self, key), 'must be positive')

    def override(self, **values):
        # type: (**Any) -> RunConfig
        """Return a copy with the given non-None values replaced."""
        merged = self.to_dict()
        merged.update((k, v) for k, v in values.items() if v is not None)
        return RunConfig(**merged)

    def to_dict(self):
        # type: () -> Dict[str, Any]
        data = {
            'curves': list(self.curves),
            'variety': self.variety,
            'out': self.out,
            'plot': self.plot,
        }  # type: Dict[str, Any]
        for key in DEFAULTS:
            data[key] = getattr(self, key)
        return data

    def __repr__(self):
        # type: () -> str
        return 'RunConfig(%r)' % (self.to_dict(),)


def _resolve(base, path):
    # type: (str, Optional[str]) -> Optional[str]
    if path is None or os.path.isabs(path):
        return path
    return os.path.join(base, path)


def _solver_options(parser):
    # type: (Any) -> Dict[str, Any]
    options = {}  # type: Dict[str, Any]
    if not parser.has_section('solver'):
        return options
    for key, text in parser.items('solver'):
        if key not in DEFAULTS:
            raise ConfigError('solver.%s' % key, text, 'unknown option')
        if key == 'confirm':
            options[key] = _parse_bool(key, text)
        elif key == 'tol':
            options[key] = _parse_float(key, text)
        else:
            options[key] = _parse_int(key, text)
    return options


def load_config(path):
    # type: (str) -> RunConfig
    """Read a RunConfig from an INI file (not validated yet)."""
    parser = configparser.ConfigParser()
    try:
        with open(path) as f:
            parser.read_file(f)
    except IOError as err:
        raise ConfigError('config', path, str(err))
    except configparser.Error as err:
        raise ConfigError('config', path, str(err).strip())
    base = os.path.dirname(os.path.abspath(path))
    curves = []  # type: List[CurveInvariants]
    if parser.has_section('curves'):
        for _, text in parser.items('curves'):
            curves.append(parse_curve(text))

    def get(section, key):
        # type: (str, str) -> Optional[str]
        if parser.has_option(section, key):
            return parser.get(section, key)
        return None

    return RunConfig(curves=curves,
                     variety=_resolve(base, get('variety', 'file')),
                     out=_resolve(base, get('output', 'out')),
                     plot=_resolve(base, get('output', 'plot')),
                     **_solver_options(parser))


def curve_pairs(curves):
    # type: (List[CurveInvariants]) -> List[Tuple[str, str]]
    return [(format_complex(c.g2), format_complex(c.g3)) for c in curves]
