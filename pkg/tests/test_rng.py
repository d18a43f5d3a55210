import unittest

import numpy as np

from pylattice.rng import RNGStream

from tests.lattice_test_case import LatticeTestCase


class TestRNGStream(LatticeTestCase):
    def test_reproducible(self):
        self.assertArrayEqual(RNGStream(7).uniform(5), RNGStream(7).uniform(5))
        self.assertFalse(np.array_equal(RNGStream(7).uniform(5), RNGStream(8).uniform(5)))

    def test_children_independent_of_call_order(self):
        forward = RNGStream(7)
        first = forward.child(0).uniform(4)
        second = forward.child(1).uniform(4)

        backward = RNGStream(7)
        self.assertArrayEqual(backward.child(1).uniform(4), second)
        self.assertArrayEqual(backward.child(0).uniform(4), first)
        self.assertFalse(np.array_equal(first, second))

    def test_child_does_not_consume_parent(self):
        parent = RNGStream(7)
        parent.children(3)
        self.assertArrayEqual(parent.uniform(3), RNGStream(7).uniform(3))

    def test_path(self):
        stream = RNGStream(7).child(2).child(5)
        self.assertEqual(stream.path, (2, 5))
        self.assertArrayEqual(stream.uniform(3), RNGStream(7, (2, 5)).uniform(3))
        self.assertEqual(repr(stream), "RNGStream(seed=7, path=(2, 5))")

    def test_invalid(self):
        with self.assertRaises(ValueError):
            RNGStream(-1)
        with self.assertRaises(ValueError):
            RNGStream(2**64)
        with self.assertRaises(ValueError):
            RNGStream(1).child(-1)


if __name__ == "__main__":
    unittest.main()
