import json
import os
import shutil
import tempfile
import unittest

from uvext_runtime.elliptic import CurveInvariants
from uvext_runtime.extension import BettiPoint, ExtensionConfig, identity
from uvext_tools.intersect.config import RunConfig
from uvext_tools.intersect.main import (
    bound_report_data,
    dump_report,
    format_point,
    make_report,
    plot_rows,
    run_intersection,
    torsion_report,
    write_plot,
)
from uvext_tools.variety.parse import parse_variety

SQUARE = CurveInvariants(4, 0)


class TestReports(unittest.TestCase):
    def setUp(self):
        # type: () -> None
        self.tempdirname = tempfile.mkdtemp()

    def tearDown(self):
        # type: () -> None
        shutil.rmtree(self.tempdirname)

    def test_dump_report(self):
        # type: () -> None
        report = make_report('torsion', {'b': 1}, {'a': 2})
        path = os.path.join(self.tempdirname, 'r.json')
        text = dump_report(report, path)
        assert text == """\
{
    "command": "torsion",
    "inputs": {
        "b": 1
    },
    "provenance": {},
    "results": {
        "a": 2
    },
    "schema": 1
}
"""
        with open(path) as f:
            assert f.read() == text

    def test_exact_integers(self):
        # type: () -> None
        report = bound_report_data(2, 5)
        n_iso = 2 ** (42 * 4 + 126 * 2) * 2 ** 60 * 5 ** 42
        assert report['results']['n_iso'] == n_iso
        assert json.loads(dump_report(report))['results']['n_iso'] == n_iso
        assert report['results']['zero_sets']['charts'] == 4
        assert report['results']['formats'][0] == [9, 9, 1, 6, 144503, 4]

    def test_torsion_report(self):
        # type: () -> None
        assert torsion_report([0.25, 0.5], 100)['results'] == {'order': 4}
        assert torsion_report([0.123456789, 0.5], 100)['results'] == {'order': None}

    def test_format_point(self):
        # type: () -> None
        cfg = ExtensionConfig.from_invariants([SQUARE, SQUARE])
        assert format_point(identity(cfg)) == [['0+0i', '0+0i', '1+0i', '0+0i', '0+0i']] * 2

    def test_run_intersection(self):
        # type: () -> None
        run = RunConfig(curves=[SQUARE], variety='unused.var', resolution=16)
        spec = parse_variety('X1_1 - X0_1', 1)
        report, cfg, same_spec, result = run_intersection(run, spec)
        assert same_spec is spec
        assert cfg.g == 1
        data = report['results']['solutions']
        assert len(data) == len(result.solutions) >= 2
        assert data[0]['betti'] == [0.0, 0.0]
        assert data[0]['torsion'] == 1
        assert all(s['variety_residual'] < 1e-8 for s in data)
        assert all(isinstance(s['refined'], bool) for s in data)
        assert parse_variety('\n'.join(report['inputs']['variety']), 1) == spec
        assert report['inputs']['delta'] == 1
        assert report['results']['stable'] is None

    def test_plot(self):
        # type: () -> None
        cfg = ExtensionConfig.from_invariants([SQUARE, SQUARE])
        spec = parse_variety('X1_1*X0_2 - X0_1*X1_2', 2)
        rows = plot_rows(cfg, spec, 8, BettiPoint([0.1, 0.2, 0.3, 0.4]))
        assert len(rows) == 64
        assert rows[0][:2] == (0.0, 0.0)
        assert rows[1][:2] == (0.0, 0.125)
        path = os.path.join(self.tempdirname, 'p.tsv')
        write_plot(path, rows)
        with open(path) as f:
            lines = f.read().splitlines()
        assert lines[0] == '# p\tq\tresidual'
        assert lines[1].split('\t')[:2] == ['0.0', '0.0']
