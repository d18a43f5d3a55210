import math
import unittest

from pylattice.base import InvalidParams, SamplerOverflow
from pylattice.distributions import s_exp, st_exp
from pylattice.maps import dkdv, udkdv
from pylattice.verification.limits import (
    CorrespondenceSide,
    LimitTarget,
    check_correspondence,
    check_ultradiscretization,
    conjugation_error,
    monotone_ks,
    sample_s_exp_from_gam,
    sample_st_exp_from_gig,
    ultradiscretization_limit,
)

from tests.lattice_test_case import LatticeTestCase


class TestMonotone(LatticeTestCase):
    def test_monotone(self):
        self.assertEqual(monotone_ks([0.1, 0.05, 0.01]), (True, 0))
        self.assertEqual(monotone_ks([0.1, 0.05, 0.053, 0.01]), (True, 1))
        self.assertEqual(monotone_ks([0.1, 0.05, 0.06]), (False, 1))
        self.assertEqual(monotone_ks([0.1, 0.101, 0.102]), (False, 2))
        self.assertEqual(monotone_ks([0.1]), (True, 0))


class TestUltradiscretization(LatticeTestCase):
    def test_limit_laws(self):
        self.assertEqual(ultradiscretization_limit(LimitTarget.S_EXP_FROM_GAM, {"lambda": 1, "c": 0}), s_exp(1.0, 0.0))
        self.assertEqual(
            ultradiscretization_limit(LimitTarget.ST_EXP_FROM_GIG, {"lambda": 1, "c": -1, "L": 2}),
            st_exp(1.0, -1.0, 3.0),
        )
        with self.assertRaises(InvalidParams):
            ultradiscretization_limit(LimitTarget.ST_EXP_FROM_GIG, {"lambda": 1, "c": -1})

    def test_samplers(self):
        x = sample_s_exp_from_gam(1.0, 0.5, 0.1, 1000, self.rng(1))
        self.assertEqual(x.shape, (1000,))
        y = sample_st_exp_from_gig(1.0, -1.0, 2.0, 0.1, 1000, self.rng(2))
        self.assertEqual(y.shape, (1000,))
        self.assertGreater(y.min(), -1.5)
        self.assertLess(y.max(), 3.5)

    def test_s_exp_from_gam(self):
        report = check_ultradiscretization(
            LimitTarget.S_EXP_FROM_GAM, {"lambda": 1, "c": 0}, [0.2, 0.1, 0.05, 0.01], 50000, self.rng(3)
        )
        self.assertPasses(report)
        self.assertEqual(len(report.details["ks"]), 4)
        self.assertTrue(report.details["monotone"])
        self.assertEqual(report.details["limit"], str(s_exp(1.0, 0.0)))

    def test_st_exp_from_gig(self):
        report = check_ultradiscretization(
            LimitTarget.ST_EXP_FROM_GIG, {"lambda": 1, "c": -1, "L": 2}, [0.2, 0.1, 0.05, 0.01], 50000, self.rng(4)
        )
        self.assertPasses(report)

    def test_coarse_schedule(self):
        report = check_ultradiscretization(LimitTarget.S_EXP_FROM_GAM, {"lambda": 1, "c": 0}, [0.5], 20000, self.rng(5))
        self.assertEqual(len(report.details["ks"]), 1)
        self.assertTrue(report.details["monotone"])
        self.assertFails(report)

    def test_errors(self):
        with self.assertRaises(SamplerOverflow):
            check_ultradiscretization(LimitTarget.S_EXP_FROM_GAM, {"lambda": 1, "c": 10}, [0.01], 100, self.rng(6))
        with self.assertRaises(InvalidParams):
            check_ultradiscretization(LimitTarget.S_EXP_FROM_GAM, {"lambda": 1, "c": 0}, [0.1, 0.2], 100, self.rng(6))
        with self.assertRaises(InvalidParams):
            check_ultradiscretization(LimitTarget.S_EXP_FROM_GAM, {"lambda": 1, "c": 0}, [], 100, self.rng(6))
        with self.assertRaises(InvalidParams):
            sample_st_exp_from_gig(1.0, 1.0, 2.0, 0.1, 100, self.rng(6))


class TestCorrespondence(LatticeTestCase):
    def test_conjugation(self):
        for local_map in [udkdv(1, math.inf), udkdv(0, math.inf), udkdv(2.5, math.inf), dkdv(1.0, 0.0), dkdv(0.3, 0.0)]:
            with self.subTest(model=str(local_map)):
                self.assertLess(conjugation_error(local_map, self.rng(7)), 1e-12)

    def test_ultra(self):
        report = check_correspondence(
            CorrespondenceSide.ULTRA,
            {"lambda1": 1, "lambda2": 1, "c": -1},
            20000,
            [0.4, 0.2, 0.1, 0.02],
            self.rng(8),
        )
        self.assertPasses(report)
        self.assertLess(report.details["conjugation_error"], 1e-12)
        self.assertEqual(len(report.details["acceptance"]), 4)

    def test_discrete(self):
        report = check_correspondence(
            CorrespondenceSide.DISCRETE,
            {"lambda1": 1, "lambda2": 1, "c": 1},
            40000,
            [0.8, 0.4, 0.2, 0.05],
            self.rng(9),
        )
        ks = report.details["ks"]
        self.assertLess(ks[-1], 0.03)
        self.assertLess(report.details["ks_c"][-1], 0.03)
        self.assertGreater(ks[0], ks[-1])
        self.assertLess(report.details["conjugation_error"], 1e-12)

    def test_errors(self):
        with self.assertRaises(InvalidParams):
            check_correspondence(CorrespondenceSide.ULTRA, {"lambda1": 1, "lambda2": 1, "c": 1}, 100, [0.1], self.rng(10))
        with self.assertRaises(InvalidParams):
            check_correspondence(CorrespondenceSide.DISCRETE, {"lambda1": 1, "lambda2": 1, "c": -1}, 100, [0.1], self.rng(10))
        with self.assertRaises(InvalidParams):
            check_correspondence(CorrespondenceSide.DISCRETE, {"lambda1": 1, "c": 1}, 100, [0.1], self.rng(10))


if __name__ == "__main__":
    unittest.main()
