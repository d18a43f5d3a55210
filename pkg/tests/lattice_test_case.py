import unittest

import numpy as np

from pylattice.base import relative_error
from pylattice.rng import RNGStream
from pylattice.verification.report import TestReport


class LatticeTestCase(unittest.TestCase):
    seed: int = 20240607

    def rng(self, *path: int) -> RNGStream:
        return RNGStream(self.seed, path)

    def assertEmpty(self, obj):
        self.assertFalse(obj)

    def assertNotEmpty(self, obj):
        self.assertTrue(obj)

    def assertPairAlmostEqual(self, actual, expected, places: int = 12):
        self.assertEqual(len(actual), len(expected))
        for a, e in zip(actual, expected):
            self.assertAlmostEqual(float(a), float(e), places=places)

    def assertArrayEqual(self, actual, expected):
        np.testing.assert_array_equal(np.asarray(actual), np.asarray(expected))

    def assertRelativeClose(self, actual, expected, tol: float = 1e-12):
        error = relative_error(actual, expected)
        self.assertLessEqual(error, tol, f"relative error {error} exceeds {tol}")

    def assertPasses(self, report: TestReport):
        self.assertTrue(
            report.passed,
            f"{report.name} failed: {report.statistic_name}={report.statistic} > {report.threshold}; {report.details}",
        )

    def assertFails(self, report: TestReport):
        self.assertFalse(
            report.passed,
            f"{report.name} passed unexpectedly: {report.statistic_name}={report.statistic}",
        )
