import math
import unittest

import numpy as np

from pylattice.base import EmptySample, TooFewSamples
from pylattice.distributions import dirac, s_exp, sample, ss_geo, sstb_geo
from pylattice.verification.stats import (
    autocorrelation,
    autocorrelation_p_value,
    chi2_goodness_of_fit,
    chi2_independence,
    independence_bins,
    ks_one_sample,
    ks_two_sample,
    marginal_p_value,
    tv_distance_exact,
)

from tests.lattice_test_case import LatticeTestCase

ALPHA = 0.001


class TestKolmogorovSmirnov(LatticeTestCase):
    def test_two_sample(self):
        a = sample(s_exp(1.0, 0.0), self.rng(1), 5000)
        b = sample(s_exp(1.0, 0.0), self.rng(2), 5000)
        c = sample(s_exp(2.0, 0.0), self.rng(3), 5000)
        self.assertGreater(ks_two_sample(a, b)[1], ALPHA)
        statistic, p = ks_two_sample(a, c)
        self.assertGreater(statistic, 0.1)
        self.assertLess(p, 1e-10)

    def test_empty(self):
        with self.assertRaises(EmptySample):
            ks_two_sample([], [1.0])
        with self.assertRaises(EmptySample):
            ks_one_sample([], s_exp(1.0, 0.0))

    def test_one_sample(self):
        x = sample(s_exp(1.0, 2.0), self.rng(4), 5000)
        self.assertGreater(ks_one_sample(x, s_exp(1.0, 2.0))[1], ALPHA)
        self.assertLess(ks_one_sample(x, s_exp(1.0, 1.5))[1], 1e-10)

    def test_discrete_law(self):
        with self.assertRaises(TypeError):
            ks_one_sample([0.0, 1.0], sstb_geo(0.5, 0, 1))


class TestGoodnessOfFit(LatticeTestCase):
    def test_point_mass(self):
        self.assertEqual(chi2_goodness_of_fit([2.0, 2.0], dirac(2.0)), (0.0, 1.0))
        self.assertEqual(chi2_goodness_of_fit([2.0, 3.0], dirac(2.0)), (math.inf, 0.0))

    def test_finite_lattice(self):
        spec = sstb_geo(0.5, 0, 2)
        x = sample(spec, self.rng(5), 5000)
        self.assertGreater(chi2_goodness_of_fit(x, spec)[1], ALPHA)
        self.assertLess(chi2_goodness_of_fit(x, sstb_geo(0.8, 0, 2))[1], 1e-10)

    def test_off_support(self):
        self.assertEqual(chi2_goodness_of_fit([0.0, 1.0, 0.5], sstb_geo(0.5, 0, 2)), (math.inf, 0.0))
        self.assertEqual(chi2_goodness_of_fit([0.0, 3.0], sstb_geo(0.5, 0, 2)), (math.inf, 0.0))

    def test_infinite_lattice(self):
        spec = ss_geo(0.5)
        x = sample(spec, self.rng(6), 5000)
        self.assertGreater(chi2_goodness_of_fit(x, spec)[1], ALPHA)

    def test_continuous(self):
        x = sample(s_exp(2.0, 0.0), self.rng(7), 5000)
        self.assertGreater(chi2_goodness_of_fit(x, s_exp(2.0, 0.0))[1], ALPHA)
        self.assertLess(chi2_goodness_of_fit(x, s_exp(1.0, 0.0))[1], 1e-10)

    def test_marginal(self):
        x = sample(s_exp(2.0, 0.0), self.rng(8), 2000)
        self.assertEqual(marginal_p_value(x, s_exp(2.0, 0.0)), ks_one_sample(x, s_exp(2.0, 0.0))[1])
        y = sample(sstb_geo(0.5, 0, 2), self.rng(9), 2000)
        self.assertEqual(marginal_p_value(y, sstb_geo(0.5, 0, 2)), chi2_goodness_of_fit(y, sstb_geo(0.5, 0, 2))[1])


class TestIndependence(LatticeTestCase):
    def test_independent(self):
        generator = self.rng(10).generator
        pairs = generator.normal(size=(10000, 2))
        self.assertGreater(chi2_independence(pairs)[1], ALPHA)

    def test_dependent(self):
        generator = self.rng(11).generator
        x = generator.normal(size=10000)
        pairs = np.column_stack([x, x + 0.5 * generator.normal(size=10000)])
        self.assertLess(chi2_independence(pairs)[1], 1e-10)

    def test_discrete(self):
        generator = self.rng(12).generator
        pairs = generator.integers(0, 2, size=(2000, 2)).astype(float)
        self.assertGreater(chi2_independence(pairs, bins=2)[1], ALPHA)

    def test_constant(self):
        generator = self.rng(13).generator
        pairs = np.column_stack([np.ones(2000), generator.normal(size=2000)])
        self.assertEqual(chi2_independence(pairs), (0.0, 1.0))

    def test_too_few(self):
        with self.assertRaises(TooFewSamples):
            chi2_independence(np.zeros((100, 2)), bins=8)
        with self.assertRaises(ValueError):
            chi2_independence(np.zeros((2000, 3)), bins=2)
        with self.assertRaises(EmptySample):
            chi2_independence(np.zeros((0, 2)))

    def test_bins(self):
        self.assertEqual(independence_bins(100000, 8), 8)
        self.assertEqual(independence_bins(400, 8), 4)
        with self.assertRaises(TooFewSamples):
            independence_bins(50, 8)


class TestTotalVariation(LatticeTestCase):
    def test_distance(self):
        self.assertEqual(tv_distance_exact({(0.0,): 0.5, (1.0,): 0.5}, {(0.0,): 1.0}), 0.5)
        self.assertEqual(tv_distance_exact({(0.0,): 1.0}, {(0.0,): 1.0}), 0.0)
        self.assertEqual(tv_distance_exact({(0.0,): 1.0}, {(1.0,): 1.0}), 1.0)


class TestAutocorrelation(LatticeTestCase):
    def test_independent(self):
        x = self.rng(14).generator.normal(size=10000)
        r = autocorrelation(x, [1, 2, 3])
        self.assertTrue(np.all(np.abs(r) < 0.05))

    def test_period(self):
        noise = self.rng(15).generator.normal(scale=0.1, size=1000)
        x = np.tile([0.0, 5.0], 500) + noise
        self.assertLess(autocorrelation(x, [1])[0], -0.9)
        self.assertLess(abs(autocorrelation(x, [1], period=2)[0]), 0.15)

    def test_constant(self):
        self.assertArrayEqual(autocorrelation(np.ones(10), [1, 2]), [0.0, 0.0])

    def test_lag_range(self):
        with self.assertRaises(ValueError):
            autocorrelation(np.arange(5.0), [5])

    def test_p_value(self):
        self.assertEqual(autocorrelation_p_value(0.0, 100), 1.0)
        self.assertLess(autocorrelation_p_value(0.5, 100), 1e-6)


if __name__ == "__main__":
    unittest.main()
