import unittest

from pylattice.base import PrecheckFailed, UnsupportedFamily, UnsupportedRegime
from pylattice.distributions import dirac, gamma_law, gig, inv_gamma, s_exp, sstb_geo, st_exp
from pylattice.maps import dkdv
from pylattice.verification.prechecks import precheck_ergodicity, precheck_invariance

from tests.fixtures import BBS_1_INF, DKDV_1_0, DTODA, UDKDV_2_4, UDTODA
from tests.lattice_test_case import LatticeTestCase

BERNOULLI = sstb_geo(3.0 / 7.0, 0, 1)
BERNOULLI_CARRIER = sstb_geo(3.0 / 7.0, 0, float("inf"))


class TestInvariancePrecheck(LatticeTestCase):
    def test_box_ball(self):
        precheck_invariance(BBS_1_INF, BERNOULLI)
        precheck_invariance(BBS_1_INF, st_exp(2.0, 0.0, 1.0))
        with self.assertRaises(PrecheckFailed):
            precheck_invariance(BBS_1_INF, st_exp(-2.0, 0.0, 1.0))

    def test_finite_capacity(self):
        precheck_invariance(UDKDV_2_4, st_exp(-2.0, 0.0, 2.0))

    def test_dkdv(self):
        precheck_invariance(DKDV_1_0, gig(1.0, 1.0, 1.0))
        with self.assertRaises(PrecheckFailed):
            precheck_invariance(dkdv(4.0, 0.0), dirac(1.0))
        precheck_invariance(dkdv(0.0, 4.0), dirac(0.25))
        with self.assertRaises(PrecheckFailed):
            precheck_invariance(dkdv(0.0, 4.0), dirac(1.0))

    def test_udtoda(self):
        precheck_invariance(UDTODA, s_exp(1.0, 0.0), s_exp(3.0, 0.0))
        with self.assertRaises(PrecheckFailed):
            precheck_invariance(UDTODA, s_exp(3.0, 0.0), s_exp(1.0, 0.0))
        with self.assertRaises(PrecheckFailed):
            precheck_invariance(UDTODA, s_exp(1.0, 0.0))

    def test_dtoda(self):
        precheck_invariance(DTODA, gamma_law(1.0, 1.0), gamma_law(3.0, 1.0))
        with self.assertRaises(PrecheckFailed):
            precheck_invariance(DTODA, gamma_law(3.0, 1.0), gamma_law(1.0, 1.0))


class TestErgodicityPrecheck(LatticeTestCase):
    def test_box_ball(self):
        precheck_ergodicity(BBS_1_INF, BERNOULLI, BERNOULLI_CARRIER)

    def test_excluded_point_mass(self):
        with self.assertRaises(PrecheckFailed):
            precheck_ergodicity(BBS_1_INF, dirac(0.5), dirac(0.5))

    def test_carrier_mass(self):
        with self.assertRaises(PrecheckFailed):
            precheck_ergodicity(UDKDV_2_4, st_exp(1.0, 0.0, 2.0), dirac(2.0))
        precheck_ergodicity(UDKDV_2_4, st_exp(1.0, 0.0, 2.0), dirac(3.0))
        precheck_ergodicity(UDKDV_2_4, st_exp(1.0, 0.0, 2.0), st_exp(1.0, 0.0, 4.0))

    def test_dkdv(self):
        precheck_ergodicity(DKDV_1_0, gig(2.0, 0.5, 0.5), inv_gamma(2.0, 0.5))
        with self.assertRaises(PrecheckFailed):
            precheck_ergodicity(DKDV_1_0, gig(2.0, 0.5, 0.5), dirac(2.0))
        precheck_ergodicity(dkdv(0.0, 1.0), dirac(0.5), dirac(2.0))

    def test_unsupported(self):
        with self.assertRaises(UnsupportedRegime):
            precheck_ergodicity(dkdv(1.0, 1.0), dirac(0.5), dirac(0.5))
        with self.assertRaises(UnsupportedFamily):
            precheck_ergodicity(UDTODA, s_exp(1.0, 0.0), s_exp(2.0, 0.0))


if __name__ == "__main__":
    unittest.main()
