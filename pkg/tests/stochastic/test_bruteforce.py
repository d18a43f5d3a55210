import unittest

import numpy as np

from pylattice.base import DomainError, TooLarge
from pylattice.distributions import s_exp, uniform01
from pylattice.maps import MapFamily, plain, rpe_kernel
from pylattice.stochastic import (
    PolymerMode,
    QuadrantField,
    dlpp_bruteforce,
    dlpp_recursion,
    polymer_bruteforce,
    polymer_recursion,
    run_quadrant,
)

from tests.lattice_test_case import LatticeTestCase


class TestLastPassage(LatticeTestCase):
    def test_zero_weights(self):
        self.assertArrayEqual(dlpp_bruteforce(np.zeros((3, 4))), np.zeros((3, 4)))

    def test_two_by_two(self):
        z = dlpp_bruteforce(np.array([[1.0, 2.0], [3.0, 4.0]]))
        self.assertArrayEqual(z, [[1.0, 3.0], [4.0, 8.0]])

    def test_single_cell(self):
        self.assertArrayEqual(dlpp_bruteforce(np.array([[2.5]])), [[2.5]])

    def test_recursion_matches_enumeration(self):
        weights = self.rng(1).generator.exponential(size=(5, 5))
        self.assertRelativeClose(dlpp_recursion(weights), dlpp_bruteforce(weights))

    def test_too_large(self):
        with self.assertRaises(TooLarge):
            dlpp_bruteforce(np.ones((13, 2)))


class TestPolymer(LatticeTestCase):
    def test_site_ones(self):
        z = polymer_bruteforce(np.ones((2, 2)), PolymerMode.SITE)
        self.assertArrayEqual(np.round(z, 12), [[1.0, 1.0], [1.0, 2.0]])

    def test_site_recursion(self):
        weights = self.rng(2).generator.uniform(0.5, 2.0, size=(4, 6))
        self.assertRelativeClose(
            polymer_recursion(weights, PolymerMode.SITE),
            polymer_bruteforce(weights, PolymerMode.SITE),
            1e-12,
        )

    def test_beta_polymer(self):
        weights = self.rng(3).generator.uniform(0.05, 0.95, size=(3, 3))
        brute = polymer_bruteforce(weights, PolymerMode.EDGE)
        self.assertEqual(brute[0, 0], 1.0)
        self.assertRelativeClose(polymer_recursion(weights, PolymerMode.EDGE), brute, 1e-12)

    def test_edge_weights(self):
        weights = np.array([[0.5, 0.5], [0.5, 0.5]])
        # both paths to (2, 2) collect one x and one h(x)
        z = polymer_bruteforce(weights, PolymerMode.EDGE, A=1.0, B=1.0)
        self.assertAlmostEqual(z[1, 1], 2 * 0.5 * 1.5, places=12)

    def test_domain(self):
        with self.assertRaises(DomainError):
            polymer_bruteforce(np.array([[1.0, 0.0]]), PolymerMode.SITE)
        with self.assertRaises(DomainError):
            polymer_recursion(np.array([[1.0, 2.0]]), PolymerMode.EDGE)


def identity(values: np.ndarray) -> np.ndarray:
    return values


def inverse(values: np.ndarray) -> np.ndarray:
    return 1.0 / values


def with_boundary(field: QuadrantField, corner: float, row, column, bulk) -> np.ndarray:
    """
    Weights on (N+1) x (M+1) cells whose first column carries the boundary U_{n,0} and whose
    first row carries V_{0,m}, so that paths from the corner cell give the partition values Z.
    """

    n, m = field.X.shape
    weights = np.empty((n + 1, m + 1))
    weights[0, 0] = corner
    weights[1:, 0] = row(field.U[:, 0])
    weights[0, 1:] = column(field.V[0, :])
    weights[1:, 1:] = bulk(field.X)
    return weights


class TestQuadrantPartition(LatticeTestCase):
    def test_last_passage(self):
        field = run_quadrant(
            plain(MapFamily.R_DLPP), s_exp(1.0, 0.0), s_exp(2.0, 0.0), s_exp(1.0, 0.0), 5, 4, self.rng(4)
        )
        weights = with_boundary(field, 0.0, identity, identity, identity)
        self.assertRelativeClose(field.Z, dlpp_bruteforce(weights), 1e-12)

    def test_site_polymer(self):
        # arrays of the site polymer hold inverse weights and inverse ratios
        field = run_quadrant(
            plain(MapFamily.R_RPS), s_exp(1.0, 0.2), s_exp(2.0, 0.2), s_exp(1.0, 0.5), 4, 5, self.rng(5)
        )
        weights = with_boundary(field, 1.0, inverse, inverse, inverse)
        self.assertRelativeClose(field.Z, np.log(polymer_bruteforce(weights, PolymerMode.SITE)), 1e-10)

    def test_edge_polymer(self):
        A, B = 2.0, 0.5
        field = run_quadrant(rpe_kernel(A, B), s_exp(1.0, 0.2), s_exp(1.0, 1.0), s_exp(2.0, 0.1), 5, 3, self.rng(6))
        # a step along the first row collects h(w) = V_{0,m}
        weights = with_boundary(field, 1.0, identity, lambda values: (values - B) / A, identity)
        brute = polymer_bruteforce(weights, PolymerMode.EDGE, A=A, B=B)
        self.assertRelativeClose(field.Z, np.log(brute), 1e-10)

    def test_beta_polymer(self):
        field = run_quadrant(rpe_kernel(-1.0, 1.0), uniform01(), uniform01(), uniform01(), 4, 4, self.rng(7))
        weights = with_boundary(field, 0.5, identity, lambda values: 1.0 - values, identity)
        self.assertRelativeClose(field.Z, np.log(polymer_bruteforce(weights, PolymerMode.EDGE)), 1e-10)


if __name__ == "__main__":
    unittest.main()
