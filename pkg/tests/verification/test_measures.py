import math
import unittest

from pylattice.base import InfiniteSupport, InvalidParams, PrecheckFailed, UnsupportedFamily
from pylattice.distributions import Family, dirac, gamma_law, gig, inv_gamma, s_exp, sstb_geo, st_exp
from pylattice.maps import dkdv, udkdv
from pylattice.verification.measures import (
    carrier_fixed_point,
    predicted_carrier,
    product_table,
    pushforward_table,
)
from pylattice.verification.stats import tv_distance_exact

from tests.fixtures import BBS_1_2, BBS_1_INF, DKDV_1_0, UDKDV_2_4, UDTODA, UDTODA_STAR
from tests.lattice_test_case import LatticeTestCase


class TestTables(LatticeTestCase):
    def test_product(self):
        self.assertEqual(product_table(dirac(2.0), dirac(5.0)), {(2.0, 5.0): 1.0})
        table = product_table(sstb_geo(0.5, 0, 1), sstb_geo(0.5, 0, 2))
        self.assertEqual(len(table), 6)
        self.assertAlmostEqual(math.fsum(table.values()), 1.0, places=14)

    def test_pushforward(self):
        mu, nu = sstb_geo(0.5, 0, 1), sstb_geo(0.5, 0, 2)
        image = pushforward_table(BBS_1_2, mu, nu)
        self.assertLessEqual(tv_distance_exact(product_table(mu, nu), image), 1e-14)

    def test_pushforward_perturbed(self):
        mu, nu = sstb_geo(0.6, 0, 1), sstb_geo(0.5, 0, 2)
        image = pushforward_table(BBS_1_2, mu, nu)
        self.assertAlmostEqual(tv_distance_exact(product_table(mu, nu), image), 3.0 / 56.0, places=12)

    def test_point_masses(self):
        image = pushforward_table(UDTODA_STAR, dirac(2.0), dirac(2.0))
        self.assertEqual(list(image), [(2.0, 0.0)])

    def test_infinite(self):
        with self.assertRaises(InfiniteSupport):
            product_table(sstb_geo(0.5, 0, math.inf))


class TestPredictedCarrier(LatticeTestCase):
    def test_udkdv(self):
        self.assertEqual(predicted_carrier(UDKDV_2_4, st_exp(1.0, 0.0, 2.0)), st_exp(1.0, 0.0, 4.0))
        self.assertEqual(predicted_carrier(udkdv(2, math.inf), st_exp(1.0, 0.0, 2.0)), s_exp(1.0, 0.0))
        self.assertEqual(predicted_carrier(udkdv(2, 2), st_exp(1.0, 0.0, 2.0)), st_exp(1.0, 0.0, 2.0))

    def test_udkdv_lattice(self):
        carrier = predicted_carrier(BBS_1_INF, sstb_geo(3.0 / 7.0, 0, 1))
        self.assertIs(carrier.family, Family.SSTB_GEO)
        self.assertEqual(carrier["theta"], 3.0 / 7.0)
        self.assertEqual(carrier["N"], math.inf)

        carrier = predicted_carrier(BBS_1_2, sstb_geo(0.5, 0, 1))
        self.assertEqual(carrier["N"], 2.0)

    def test_udkdv_point_mass(self):
        self.assertEqual(predicted_carrier(UDKDV_2_4, dirac(0.5)), dirac(0.5))
        with self.assertRaises(PrecheckFailed):
            predicted_carrier(UDKDV_2_4, dirac(1.5))

    def test_udkdv_mismatch(self):
        with self.assertRaises(UnsupportedFamily):
            predicted_carrier(UDKDV_2_4, st_exp(1.0, 0.0, 3.0))
        with self.assertRaises(UnsupportedFamily):
            predicted_carrier(UDKDV_2_4, gamma_law(1.0, 1.0))

    def test_dkdv(self):
        self.assertEqual(predicted_carrier(DKDV_1_0, gig(1.0, 1.0, 1.0)), inv_gamma(1.0, 1.0))
        self.assertEqual(predicted_carrier(dkdv(0.5, 2.0), gig(2.0, 0.5, 1.0)), gig(2.0, 2.0, 1.0))
        self.assertEqual(predicted_carrier(dkdv(1.0, 1.0), gamma_law(2.0, 1.0)), gamma_law(2.0, 1.0))
        with self.assertRaises(UnsupportedFamily):
            predicted_carrier(DKDV_1_0, gig(1.0, 2.0, 1.0))

    def test_udtoda(self):
        self.assertEqual(predicted_carrier(UDTODA, s_exp(1.0, 0.0), s_exp(3.0, 0.0)), s_exp(2.0, 0.0))
        self.assertEqual(predicted_carrier(UDTODA, dirac(5.0), dirac(2.0)), dirac(2.0))
        with self.assertRaises(PrecheckFailed):
            predicted_carrier(UDTODA, dirac(2.0), dirac(5.0))
        with self.assertRaises(InvalidParams):
            predicted_carrier(UDTODA, s_exp(1.0, 0.0))

    def test_unsupported(self):
        with self.assertRaises(UnsupportedFamily):
            predicted_carrier(UDTODA_STAR, s_exp(1.0, 0.0))


class TestCarrierFixedPoint(LatticeTestCase):
    def test_box_ball(self):
        # a reflected walk stepping up with probability 0.3
        law = carrier_fixed_point(BBS_1_INF, sstb_geo(3.0 / 7.0, 0, 1))
        self.assertEqual(len(law), 65)
        self.assertAlmostEqual(law[0.0], 4.0 / 7.0, places=10)
        self.assertAlmostEqual(law[1.0], 4.0 / 7.0 * 3.0 / 7.0, places=10)
        self.assertAlmostEqual(math.fsum(law.values()), 1.0, places=12)

    def test_matches_prediction(self):
        mu = sstb_geo(3.0 / 7.0, 0, 1)
        law = carrier_fixed_point(BBS_1_INF, mu)
        carrier = predicted_carrier(BBS_1_INF, mu)
        for k in range(10):
            self.assertAlmostEqual(law[float(k)], (1.0 - carrier["theta"]) * carrier["theta"] ** k, places=10)

    def test_errors(self):
        with self.assertRaises(UnsupportedFamily):
            carrier_fixed_point(UDTODA, sstb_geo(0.5, 0, 1))
        with self.assertRaises(InvalidParams):
            carrier_fixed_point(BBS_1_INF, sstb_geo(0.5, 0, 1), truncation=0)
        with self.assertRaises(InfiniteSupport):
            carrier_fixed_point(BBS_1_INF, sstb_geo(0.5, 0, math.inf))


if __name__ == "__main__":
    unittest.main()
