import unittest

import numpy as np

from pylattice.base import CoverageError, InvalidParams, UnsupportedFamily
from pylattice.carrier import CarrierPath, LatticeWindow, SpaceTimeField, window_from_json

from tests.fixtures import BBS_1_INF, DKDV_1_0, UDTODA, UDTODA_STAR
from tests.lattice_test_case import LatticeTestCase


class TestLatticeWindow(LatticeTestCase):
    def test_pairs(self):
        flat = LatticeWindow(UDTODA, [1.0, 2.0, 3.0, 4.0])
        self.assertEqual(flat.values.shape, (2, 2))
        self.assertEqual(len(flat), 2)
        self.assertArrayEqual(flat.indices(), [0, 1])

    def test_invalid(self):
        cases = [
            (UDTODA, [1.0, 2.0, 3.0]),
            (UDTODA, np.ones((3, 3))),
            (BBS_1_INF, []),
            (BBS_1_INF, np.ones((2, 2))),
            (BBS_1_INF, [0.0, np.nan]),
            (DKDV_1_0, [1.0, 0.0]),
        ]
        for model, values in cases:
            with self.subTest(model=str(model), values=values):
                with self.assertRaises(InvalidParams):
                    LatticeWindow(model, values)
        with self.assertRaises(UnsupportedFamily):
            LatticeWindow(UDTODA_STAR, [1.0, 2.0])

    def test_crop(self):
        window = LatticeWindow(BBS_1_INF, [0, 1, 2, 3, 4], 5)
        self.assertEqual(window.end, 10)
        cropped = window.crop(6, 8)
        self.assertEqual(cropped.offset, 6)
        self.assertArrayEqual(cropped.values, [1, 2])
        with self.assertRaises(CoverageError):
            window.crop(4, 8)
        with self.assertRaises(CoverageError):
            window.crop(7, 7)

    def test_reflect(self):
        window = LatticeWindow(BBS_1_INF, [1, 2, 3], 5)
        reflected = window.reflect()
        self.assertEqual(reflected.offset, -7)
        self.assertArrayEqual(reflected.values, [3, 2, 1])
        twice = reflected.reflect()
        self.assertEqual(twice.offset, 5)
        self.assertArrayEqual(twice.values, window.values)

    def test_reflect_pairs(self):
        window = LatticeWindow(UDTODA, [[1, 10], [2, 20], [3, 30]])
        reflected = window.reflect()
        self.assertEqual(reflected.offset, -1)
        self.assertArrayEqual(reflected.values, [[3, 20], [2, 10]])
        with self.assertRaises(CoverageError):
            LatticeWindow(UDTODA, [[1, 10]]).reflect()

    def test_from_json(self):
        window = window_from_json(UDTODA, [[1, 2], [3, 4]], 3)
        self.assertEqual(window.offset, 3)
        self.assertArrayEqual(window.values, [[1, 2], [3, 4]])
        with self.assertRaises(InvalidParams):
            window_from_json(BBS_1_INF, "0,1,1")
        with self.assertRaises(InvalidParams):
            window_from_json(BBS_1_INF, [["a"]])


class TestCarrierPath(LatticeTestCase):
    def test_at(self):
        path = CarrierPath(3, np.array([1.0, 2.0, 3.0]), 3)
        self.assertEqual(path.end, 6)
        self.assertArrayEqual(path.at(4, 6), [2.0, 3.0])
        with self.assertRaises(CoverageError):
            path.at(2, 4)


class TestSpaceTimeField(LatticeTestCase):
    def field(self, following: float) -> SpaceTimeField:
        return SpaceTimeField(
            BBS_1_INF,
            [LatticeWindow(BBS_1_INF, [0, 1]), LatticeWindow(BBS_1_INF, [following], 1)],
            [CarrierPath(0, np.array([0.0, 1.0]), 0)],
        )

    def test_residual(self):
        self.assertEqual(self.field(0.0).residual(), 0.0)
        self.assertEqual(self.field(1.0).residual(), 1.0)

    def test_rows(self):
        header, rows = self.field(0.0).to_csv_rows()
        self.assertEqual(tuple(header), ("t", "n", "x", "u"))
        self.assertEqual(rows, [(0, 0, 0.0, 0.0), (0, 1, 1.0, 1.0), (1, 1, 0.0, "")])

    def test_pair_rows(self):
        field = SpaceTimeField(UDTODA, [LatticeWindow(UDTODA, [[1, 2]])], [])
        header, rows = field.to_csv_rows()
        self.assertEqual(tuple(header), ("t", "n", "Q", "E", "u"))
        self.assertEqual(rows, [(0, 0, 1.0, 2.0, "")])


if __name__ == "__main__":
    unittest.main()
