import unittest

import numpy as np

from pasa.errors import InputError
from pasa.linalg import least_squares_min_norm, null_space_project


class LinalgTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        np.random.seed(1)

    def test_least_squares_min_norm(self):
        z = least_squares_min_norm(np.eye(2), np.array([3.0, 4.0]))
        np.testing.assert_allclose(z, [3.0, 4.0], atol=1e-12)

        z = least_squares_min_norm(np.array([[1.0, 1.0]]), np.array([2.0]))
        np.testing.assert_allclose(z, [1.0, 1.0], atol=1e-12)

        z = least_squares_min_norm(np.zeros((2, 2)), np.array([1.0, 1.0]))
        np.testing.assert_allclose(z, [0.0, 0.0], atol=0)

    def test_least_squares_matches_pinv(self):
        for _ in range(20):
            p, q = np.random.randint(1, 6, size=2)
            k = np.random.randint(1, min(p, q) + 1)
            M = np.random.randn(p, k) @ np.random.randn(k, q)
            r = np.random.randn(p)
            z = least_squares_min_norm(M, r)
            np.testing.assert_allclose(z, np.linalg.pinv(M, rcond=1e-10) @ r, atol=1e-8)

    def test_least_squares_dimension_mismatch(self):
        with self.assertRaises(InputError):
            least_squares_min_norm(np.eye(2), np.ones(3))

    def test_null_space_project(self):
        w = null_space_project(np.array([[1.0, 0.0]]), np.array([3.0, 4.0]))
        np.testing.assert_allclose(w, [0.0, 4.0], atol=1e-12)

        w = null_space_project(np.array([[1.0, 1.0]]), np.array([3.0, 1.0]))
        np.testing.assert_allclose(w, [1.0, -1.0], atol=1e-12)

        w = null_space_project(np.zeros((0, 2)), np.array([5.0, -2.0]))
        np.testing.assert_allclose(w, [5.0, -2.0], atol=0)

    def test_null_space_project_dimension_mismatch(self):
        with self.assertRaises(InputError):
            null_space_project(np.eye(2), np.ones(3))

    def test_null_space_properties(self):
        for _ in range(50):
            n = np.random.randint(1, 6)
            rows = np.random.randint(0, n + 2)
            M = np.random.randn(rows, n)
            if rows > 1 and np.random.rand() < 0.3:
                # Force a repeated row to exercise rank deficiency
                M[-1] = M[0]
            v = np.random.randn(n)
            v2 = np.random.randn(n)
            w = null_space_project(M, v)
            w2 = null_space_project(M, v2)

            # Idempotence
            np.testing.assert_allclose(null_space_project(M, w), w, atol=1e-12)
            # Orthogonality of the correction to the null space
            self.assertLess(abs((v - w) @ w2), 1e-10)
            # Feasibility
            if rows:
                self.assertLessEqual(
                    np.max(np.abs(M @ w)), 1e-10 * (1 + np.linalg.norm(v))
                )
            # Pythagoras
            lhs = v @ v
            rhs = w @ w + (v - w) @ (v - w)
            self.assertLessEqual(abs(lhs - rhs), 1e-10 * max(1.0, lhs))


if __name__ == "__main__":
    unittest.main()
