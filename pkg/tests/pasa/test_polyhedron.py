import unittest

import numpy as np

from pasa.errors import InputError
from pasa.polyhedron import (
    Face,
    Polyhedron,
    active_set,
    free_set,
    is_feasible,
    make_face,
    residual,
)
from pasa.problems import box


class PolyhedronTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        np.random.seed(1)
        cls.box = box(2)
        cls.free = Polyhedron([], [], n=2)

    def test_dimensions(self):
        self.assertEqual((self.box.m, self.box.n), (4, 2))
        self.assertEqual((self.free.m, self.free.n), (0, 2))
        with self.assertRaises(InputError):
            Polyhedron([[1.0, 0.0]], [1.0, 2.0])
        with self.assertRaises(InputError):
            Polyhedron([], [])
        with self.assertRaises(InputError):
            residual(self.box, [1.0, 2.0, 3.0])

    def test_residual(self):
        np.testing.assert_allclose(
            residual(self.box, [0.3, 0.7]), [-0.7, -0.3, -0.3, -0.7], atol=1e-15
        )
        np.testing.assert_allclose(residual(self.box, [1.0, 0.0])[[0, 3]], [0, 0])
        self.assertEqual(residual(self.free, [4.0, 5.0]).shape, (0,))

    def test_residual_affine(self):
        A = np.random.randn(5, 3)
        poly = Polyhedron(A, np.random.randn(5))
        x, d = np.random.randn(3), np.random.randn(3)
        np.testing.assert_allclose(
            residual(poly, x + d), residual(poly, x) + A @ d, rtol=1e-12, atol=1e-12
        )

    def test_active_set(self):
        self.assertEqual(active_set(self.box, [1.0, 0.5]), (0,))
        self.assertEqual(active_set(self.box, [0.5, 0.5]), ())
        self.assertEqual(active_set(self.box, [1.0, 1.0]), (0, 1))
        self.assertEqual(active_set(self.free, [1.0, 1.0]), ())

    def test_partition(self):
        for x in [[1.0, 0.5], [0.5, 0.5], [1.0, 1.0], [0.0, 0.0]]:
            active, free = set(active_set(self.box, x)), set(free_set(self.box, x))
            self.assertEqual(active | free, set(range(4)))
            self.assertFalse(active & free)

    def test_is_feasible(self):
        self.assertTrue(is_feasible(self.box, [0.5, 0.5], 1e-10))
        self.assertFalse(is_feasible(self.box, [1.1, 0.0], 1e-10))
        self.assertTrue(is_feasible(self.free, [1e9, -1e9], 1e-10))

    def test_make_face(self):
        face = make_face(self.box, [0])
        self.assertTrue(face.contains([1.0, 0.3]))
        self.assertFalse(face.contains([0.9, 0.3]))

        self.assertTrue(make_face(self.box, []).contains([0.2, 0.3]))

        vertex = make_face(self.box, [1, 0, 1])
        self.assertEqual(vertex.equality_rows, (0, 1))
        self.assertTrue(vertex.contains([1.0, 1.0]))
        self.assertFalse(vertex.contains([1.0, 0.9]))

        with self.assertRaises(InputError):
            make_face(self.box, [4])

    def test_monotone_faces(self):
        small, large = Face(self.box, [0, 1]), Face(self.box, [0])
        for x in [[1.0, 1.0], [1.0, 0.5], [0.5, 0.5]]:
            if small.contains(x):
                self.assertTrue(large.contains(x))
        self.assertEqual(small.equality_rows, large.grow([1]).equality_rows)


if __name__ == "__main__":
    unittest.main()
