import unittest

import numpy as np

from pasa.measures import (
    direction,
    global_error,
    local_error,
    snapshot,
    step_point,
    undecided_indices,
    undecided_set,
)
from pasa.polyhedron import Polyhedron
from pasa.problems import box_qp, degenerate_qp_suite, kkt_residual, quadratic_objective
from synthetic.generate import random_polyhedra, random_quadratic


class MeasuresTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        np.random.seed(1)
        cls.obj, cls.box = box_qp([2.0, 2.0])

    def test_step_point(self):
        y = step_point(self.obj, self.box, [1.0, 1.0], 1.0)
        np.testing.assert_allclose(y.point, [1.0, 1.0], atol=1e-12)

        y = step_point(self.obj, self.box, [0.0, 0.0], 1.0)
        np.testing.assert_allclose(y.point, [1.0, 1.0], atol=1e-12)

        y = step_point(self.obj, self.box, [0.3, 0.6], 0.0)
        np.testing.assert_allclose(y.point, [0.3, 0.6], atol=0)
        np.testing.assert_allclose(y.multipliers, np.zeros(4), atol=0)

    def test_direction(self):
        d = direction(self.obj, self.box, [0.0, 0.0], 1.0)
        np.testing.assert_allclose(d, [1.0, 1.0], atol=1e-12)
        d = direction(self.obj, self.box, [1.0, 1.0], 1.0)
        np.testing.assert_allclose(d, [0.0, 0.0], atol=1e-12)

        free = Polyhedron([], [], n=2)
        half_norm = quadratic_objective(np.eye(2), np.zeros(2))
        d = direction(half_norm, free, [1.0, 0.0], 1.0)
        np.testing.assert_allclose(d, [-1.0, 0.0], atol=1e-15)

    def test_global_error(self):
        self.assertAlmostEqual(global_error(self.obj, self.box, [1.0, 1.0]), 0.0)
        self.assertAlmostEqual(
            global_error(self.obj, self.box, [0.0, 0.0]), np.sqrt(2), places=12
        )

        free = Polyhedron([], [], n=3)
        half_norm = quadratic_objective(np.eye(3), np.zeros(3))
        x = np.random.randn(3)
        self.assertAlmostEqual(
            global_error(half_norm, free, x), np.linalg.norm(x), places=12
        )

    def test_local_error(self):
        self.assertAlmostEqual(local_error(self.obj, self.box, [1.0, 0.5]), 1.5)
        self.assertAlmostEqual(local_error(self.obj, self.box, [1.0, 1.0]), 0.0)
        x = np.array([0.25, 0.75])
        self.assertAlmostEqual(
            local_error(self.obj, self.box, x),
            np.linalg.norm(self.obj.gradient(x)),
            places=14,
        )

    def test_undecided_indices(self):
        self.assertEqual(undecided_indices([0.5], [0.01], 0.04), (0,))
        self.assertEqual(undecided_indices([0.0, 0.0], [1.0, 1.0], 0.04), ())
        self.assertEqual(undecided_indices([1.0, 2.0], [0.0, 0.0], 0.04), ())
        self.assertEqual(undecided_indices([1.0], [1.0], 0.0), ())
        # The multiplier threshold is inclusive
        self.assertEqual(undecided_indices([0.5], [0.2], 0.25), (0,))

    def test_undecided_set(self):
        # Stationary and nondegenerate: nothing is undecided
        self.assertEqual(undecided_set(self.obj, self.box, [1.0, 1.0]), ())
        # Interior point pulled hard against x1 <= 1
        obj, box = box_qp([10.0, 0.5])
        self.assertEqual(undecided_set(obj, box, [0.5, 0.5]), (0,))

    def test_snapshot(self):
        snap = snapshot(self.obj, self.box, [1.0, 0.5])
        self.assertAlmostEqual(snap.f, 0.5 * (1.0 + 1.5 ** 2))
        self.assertAlmostEqual(snap.E, 0.5)
        self.assertAlmostEqual(snap.e, 1.5)
        self.assertEqual(snap.active, (0,))
        np.testing.assert_allclose(snap.lam, [1.0, 1.0, 0.0, 0.0], atol=1e-12)
        np.testing.assert_allclose(snap.projection.point, [1.0, 1.0], atol=1e-12)

    def test_stationarity_equivalence(self):
        for obj, poly, sol in degenerate_qp_suite():
            snap = snapshot(obj, poly, sol.x_star)
            self.assertLessEqual(snap.E, 1e-8)
            self.assertLessEqual(
                kkt_residual(obj, poly, sol.x_star, snap.lam), 1e-8
            )

        snap = snapshot(self.obj, self.box, [0.0, 0.0])
        self.assertGreater(snap.E, 1e-8)
        self.assertGreater(kkt_residual(self.obj, self.box, snap.x, snap.lam), 1e-8)

    def test_descent_and_scale(self):
        for gen in random_polyhedra(100, seed=5):
            poly = gen.poly
            obj = random_quadratic(poly.n, gen.rs)
            x = gen.feasible_point()
            g = obj.gradient(x)
            d1 = direction(obj, poly, x, 1.0)
            for alpha in [0.1, 1.0, 10.0]:
                d = direction(obj, poly, x, alpha)
                tol = 1e-10 * max(1.0, np.linalg.norm(g) * np.linalg.norm(d))
                self.assertLessEqual(g @ d, -(d @ d) / alpha + tol)
                self.assertGreaterEqual(
                    np.linalg.norm(d),
                    min(alpha, 1.0) * np.linalg.norm(d1) - 1e-10,
                )

    def test_lipschitz(self):
        pairs = 0
        for gen in random_polyhedra(100, seed=6):
            poly = gen.poly
            obj = random_quadratic(poly.n, gen.rs)
            kappa = obj.lipschitz_hint
            for _ in range(10):
                x1, x2 = gen.feasible_point(), gen.feasible_point()
                gap = np.linalg.norm(x1 - x2)
                for alpha in [0.1, 1.0, 10.0]:
                    y1 = step_point(obj, poly, x1, alpha).point
                    y2 = step_point(obj, poly, x2, alpha).point
                    self.assertLessEqual(
                        np.linalg.norm(y1 - y2), (1 + alpha * kappa) * gap + 1e-8
                    )
                    self.assertLessEqual(
                        np.linalg.norm((y1 - x1) - (y2 - x2)),
                        (2 + alpha * kappa) * gap + 1e-8,
                    )
                pairs += 1
        self.assertEqual(pairs, 1000)


if __name__ == "__main__":
    unittest.main()
