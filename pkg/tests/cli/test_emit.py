import csv
import io
import json
import os
import tempfile
import unittest

import numpy as np

from pylattice.base import KindMismatch
from pylattice.carrier import LatticeWindow, evolve_multi
from pylattice.cli import OutputFormat, PlotKind, emit_plot_data, render_field, render_reports, write_atomic
from pylattice.distributions import gig, sample
from pylattice.stochastic import stationary_dlpp
from pylattice.verification import CSV_HEADER, TestReport

from tests.fixtures import BBS_1_INF
from tests.lattice_test_case import LatticeTestCase


def parse(text: str):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


def limit_report() -> TestReport:
    return TestReport(
        "ultradiscretization",
        "limit",
        "sExp_from_Gam",
        "final_ks",
        0.01,
        0.02,
        1000,
        3,
        {"eps": [0.2, 0.1, 0.05], "ks": [0.05, 0.03, 0.01], "monotone": True},
    )


class TestPlotData(LatticeTestCase):
    def test_ks_curve(self):
        header, rows = parse(emit_plot_data(limit_report(), PlotKind.KS_CURVE))
        self.assertEqual(header, ["eps", "ks"])
        self.assertEqual(len(rows), 3)
        self.assertEqual([float(v) for v in rows[-1]], [0.05, 0.01])

    def test_field_heatmap(self):
        header, rows = parse(emit_plot_data(np.arange(100.0).reshape(10, 10), PlotKind.FIELD_HEATMAP))
        self.assertEqual(header, ["t", "n", "value"])
        self.assertEqual(len(rows), 100)
        self.assertEqual(rows[12], ["1", "2", "12.0"])

    def test_space_time_heatmap(self):
        x = np.zeros(20)
        x[2:4] = 1.0
        field = evolve_multi(LatticeWindow(BBS_1_INF, x), 3)
        _, rows = parse(emit_plot_data(field, PlotKind.FIELD_HEATMAP))
        occupied = [(int(t), int(n)) for t, n, value in rows if float(value) == 1.0]
        self.assertIn((3, 8), occupied)
        self.assertIn((3, 9), occupied)

    def test_quadrant_heatmap(self):
        field = stationary_dlpp(1.0, 2.0).run(4, 3, self.rng(1))
        _, rows = parse(emit_plot_data(field, PlotKind.FIELD_HEATMAP))
        self.assertEqual(len(rows), 12)
        with self.assertRaises(KindMismatch):
            emit_plot_data(stationary_dlpp(1.0, 2.0).run(4, 3, self.rng(1), 5), PlotKind.FIELD_HEATMAP)

    def test_marginal_hist(self):
        spec = gig(1.0, 1.0, 1.0)
        samples = sample(spec, self.rng(2), 100000)
        header, rows = parse(emit_plot_data(samples, PlotKind.MARGINAL_HIST, spec, bins=32))
        self.assertEqual(header, ["bin_left", "bin_right", "count", "expected"])
        self.assertEqual(len(rows), 32)
        self.assertEqual(sum(int(row[2]) for row in rows), 100000)
        self.assertAlmostEqual(sum(float(row[3]) for row in rows), 100000.0, places=6)

    def test_kind_mismatch(self):
        with self.assertRaises(KindMismatch):
            emit_plot_data(np.zeros(3), PlotKind.KS_CURVE)
        with self.assertRaises(KindMismatch):
            emit_plot_data(np.zeros(3), PlotKind.MARGINAL_HIST)
        with self.assertRaises(KindMismatch):
            emit_plot_data(limit_report(), PlotKind.MARGINAL_HIST, gig(1.0, 1.0, 1.0))
        with self.assertRaises(KindMismatch):
            emit_plot_data(np.zeros(3), PlotKind.FIELD_HEATMAP)


class TestRender(LatticeTestCase):
    def test_reports(self):
        reports = [limit_report()]
        header, rows = parse(render_reports(reports, OutputFormat.CSV))
        self.assertEqual(tuple(header), CSV_HEADER)
        self.assertEqual(rows[0][5], "true")
        data = json.loads(render_reports(reports, OutputFormat.JSON))
        self.assertEqual(data[0]["statistic_name"], "final_ks")
        self.assertTrue(data[0]["pass"])

    def test_field(self):
        x = np.zeros(10)
        x[1] = 1.0
        header, rows = parse(render_field(evolve_multi(LatticeWindow(BBS_1_INF, x), 2)))
        self.assertEqual(header, ["t", "n", "x", "u"])
        self.assertNotEmpty(rows)


class TestWriteAtomic(LatticeTestCase):
    def test_replace(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "reports.json")
            write_atomic(path, "old\n")
            write_atomic(path, "new\n")
            with open(path, "r", encoding="utf-8") as f:
                self.assertEqual(f.read(), "new\n")
            self.assertEqual(os.listdir(directory), ["reports.json"])

    def test_failure_keeps_target(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "reports.json")
            write_atomic(path, "old\n")
            with self.assertRaises(TypeError):
                write_atomic(path, None)
            with open(path, "r", encoding="utf-8") as f:
                self.assertEqual(f.read(), "old\n")
            self.assertEqual(os.listdir(directory), ["reports.json"])


if __name__ == "__main__":
    unittest.main()
