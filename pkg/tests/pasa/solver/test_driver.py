import json
import os
import tempfile
import time
import unittest
from unittest import mock

import numpy as np

from pasa.errors import InputError, NonconvergenceError
from pasa.measures import snapshot
from pasa.polyhedron import Polyhedron
from pasa.problems import (
    box,
    box_qp,
    degenerate_qp_suite,
    kkt_residual,
    quadratic_objective,
    rosenbrock_objective,
)
from pasa.solver import PasaParams, PasaSolver, solve
from pasa.solver.driver import (
    CONVERGED,
    INFEASIBLE,
    MAX_ITER,
    NO_BRANCH,
    ONE_TO_TWO,
    TRACE_COLUMNS,
    TWO_TO_ONE,
)
from synthetic.generate import random_polyhedra, random_quadratic


def tail_after_last_branch(trace):
    """Records from the last phase one -> two branch onward ([] if none)"""
    starts = [t.iter for t in trace if t.branch == ONE_TO_TWO]
    return trace[starts[-1] :] if starts else []


class DriverTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        np.random.seed(1)
        cls.obj, cls.box = box_qp([2.0, 2.0])

    def check_trace_invariants(self, obj, poly, result, params):
        trace = result.trace
        self.assertEqual([t.iter for t in trace], list(range(len(trace))))
        for prev, cur in zip(trace, trace[1:]):
            self.assertLessEqual(cur.theta, prev.theta)
            self.assertLessEqual(cur.f, prev.f + 1e-12 * (1 + abs(prev.f)))
        for t in trace:
            self.assertGreaterEqual(t.E, 0.0)
            self.assertGreaterEqual(t.e, 0.0)
            self.assertIn(t.phase, (1, 2))
            if t.branch == ONE_TO_TWO:
                self.assertGreaterEqual(t.e, t.theta * t.E)
                self.assertEqual(t.phase, 2)
            elif t.branch == TWO_TO_ONE:
                self.assertLess(t.e, t.theta * t.E)
                self.assertEqual(t.phase, 1)
        self.assertEqual(trace[-1].step, 0.0)
        self.assertEqual(
            result.stats["phase_one_iterations"] + result.stats["phase_two_iterations"],
            len(trace) - 1,
        )
        self.assertEqual(
            result.stats["branches_12"], sum(t.branch == ONE_TO_TWO for t in trace)
        )
        if result.converged:
            snap = snapshot(obj, poly, result.x)
            self.assertTrue(
                snap.E <= params.eps + 1e-12
                or kkt_residual(obj, poly, result.x, snap.lam) <= 1e-6
            )

    def test_boxqp(self):
        result = solve(self.obj, self.box, [3.0, 3.0])
        self.assertEqual(result.status, CONVERGED)
        np.testing.assert_allclose(result.x, [1.0, 1.0], atol=1e-12)
        self.assertAlmostEqual(result.f, 1.0)
        self.assertLessEqual(result.E, 1e-8)
        self.assertEqual(len(result.trace), 1)
        self.assertEqual(result.iterations, 0)
        self.assertEqual(result.trace[0].branch, NO_BRANCH)

    def test_unconstrained(self):
        poly = Polyhedron([], [], n=2)
        obj = quadratic_objective(np.eye(2), np.zeros(2))
        result = solve(obj, poly, [1.0, 1.0])
        self.assertEqual(result.status, CONVERGED)
        self.assertLessEqual(np.linalg.norm(result.x), 1e-8)
        self.assertLessEqual(result.E, 1e-8)
        self.assertEqual(result.trace[0].branch, ONE_TO_TWO)
        self.assertEqual(result.trace[0].phase, 2)

    def test_infeasible_start_is_projected(self):
        result = solve(self.obj, self.box, [2.0, -1.0])
        np.testing.assert_allclose(result.trace[0].x, [1.0, 0.0], atol=1e-12)
        # x2 >= 0 is pinned against the gradient while x2 <= 1 is undecided
        self.assertEqual(result.trace[0].phase, 1)
        self.assertEqual(result.trace[0].n_undecided, 1)
        self.assertEqual(result.status, CONVERGED)
        np.testing.assert_allclose(result.x, [1.0, 1.0], atol=1e-12)

    def test_infeasible_polyhedron(self):
        poly = Polyhedron([[1.0, 0.0], [-1.0, 0.0]], [-1.0, -1.0])
        result = solve(self.obj, poly, [0.0, 0.0])
        self.assertEqual(result.status, INFEASIBLE)
        self.assertEqual(result.trace, [])
        np.testing.assert_array_equal(result.x, [0.0, 0.0])
        self.assertTrue(np.isnan(result.f))
        self.assertIsNone(result.to_dict()["f"])

    def test_max_iter(self):
        obj = rosenbrock_objective(2)
        result = solve(obj, box(2, -2.0, 2.0), [-1.2, 1.0], PasaParams(max_iter=3))
        self.assertEqual(result.status, MAX_ITER)
        self.assertEqual(len(result.trace), 4)
        self.assertEqual(result.iterations, 3)

        result = solve(obj, box(2, -2.0, 2.0), [-1.2, 1.0], PasaParams(max_iter=0))
        self.assertEqual(result.status, MAX_ITER)
        self.assertEqual(len(result.trace), 1)

    def test_random_problems(self):
        params = PasaParams()
        for gen in random_polyhedra(40, seed=11):
            poly = gen.poly
            obj = random_quadratic(poly.n, gen.rs)
            result = solve(obj, poly, gen.random_point(), params)
            self.assertNotEqual(result.status, INFEASIBLE)
            if not result.trace:
                continue
            self.check_trace_invariants(obj, poly, result, params)

    def test_min_error_decreases_with_max_iter(self):
        Q = np.diag([1.0, 50.0])
        obj = quadratic_objective(Q, -Q @ np.array([0.5, 0.5]))
        poly = box(2, -2.0, 2.0)
        mins = []
        for max_iter in [10, 20, 40, 80]:
            params = PasaParams(eps=0.0, max_iter=max_iter)
            result = solve(obj, poly, [-2.0, 2.0], params)
            self.assertEqual(result.status, MAX_ITER)
            mins.append(min(t.E for t in result.trace))
        self.assertTrue(all(b <= a for a, b in zip(mins, mins[1:])))
        self.assertLess(mins[-1], mins[0])

    def test_rosenbrock(self):
        obj = rosenbrock_objective(2)
        poly = box(2, -2.0, 2.0)
        # The fixed phase-two step rule stalls short of eps within max_iter here
        params = PasaParams(eps=1e-6, max_iter=10000, step_rule="bb")
        start = time.time()
        result = solve(obj, poly, [-1.2, 1.0], params)
        self.assertLess(time.time() - start, 5.0)
        self.assertEqual(result.status, CONVERGED)
        self.assertLessEqual(result.E, 1e-6)
        np.testing.assert_allclose(result.x, [1.0, 1.0], atol=1e-4)
        self.check_trace_invariants(obj, poly, result, params)

    def test_nondegenerate_phase_two_only(self):
        rs = np.random.RandomState(12)
        for _ in range(20):
            result = solve(self.obj, self.box, rs.uniform(0.0, 1.0, size=2))
            self.assertEqual(result.status, CONVERGED)
            tail = tail_after_last_branch(result.trace)
            self.assertTrue(tail)
            for t in tail:
                self.assertEqual(t.phase, 2)
                self.assertLessEqual(t.E, t.e + 1e-8)

    def check_phase_two_tail(self, result):
        """Phase two, once entered for the last time, runs without a branch
        back and without repeating an iterate"""
        trace = result.trace
        for t in trace[:-1]:
            self.assertGreater(t.step, 0.0)
        if trace[-1].phase == 1:
            return
        tail = tail_after_last_branch(trace)
        self.assertTrue(tail)
        self.assertTrue(all(t.phase == 2 for t in tail))
        self.assertTrue(all(t.branch != TWO_TO_ONE for t in tail))

    def test_degenerate_suite(self):
        params = PasaParams()
        suite = degenerate_qp_suite()
        for seed in [13, 17]:
            rs = np.random.RandomState(seed)
            for obj, poly, sol in suite:
                for _ in range(5):
                    x0 = sol.x_star + rs.randn(poly.n)
                    result = solve(obj, poly, x0, params)
                    self.assertEqual(result.status, CONVERGED, sol.name)
                    np.testing.assert_allclose(result.x, sol.x_star, atol=1e-6)
                    self.check_trace_invariants(obj, poly, result, params)
                    self.check_phase_two_tail(result)
                    self.assertLessEqual(result.stats["theta_decays"], 60)
                    self.assertLessEqual(result.stats["branches_21"], 3)
                    small = [t for t in result.trace if t.E < 1e-3]
                    if small:
                        tail = result.trace[small[0].iter :]
                        self.assertTrue(all(t.n_undecided == 0 for t in tail))

    def test_degenerate_start_near_pinned_vertex(self):
        # Phase two reaches x1 = 0, x2 = 2 with e barely above theta E
        obj, poly, sol = degenerate_qp_suite()[2]
        params = PasaParams()
        result = solve(obj, poly, [0.0177, 2.0313, 0.9913], params)
        self.assertEqual(result.status, CONVERGED)
        np.testing.assert_allclose(result.x, sol.x_star, atol=1e-6)
        self.check_trace_invariants(obj, poly, result, params)
        self.check_phase_two_tail(result)

    def test_badly_scaled_free_gradient(self):
        # A huge gradient on the pinned row x1 >= -1 next to a tiny free one
        obj = quadratic_objective(np.diag([0.0, 1e-6]), [1e6, -1e-7])
        poly = box(2, -1.0, 1.0)
        x0 = np.array([-1.0, 0.5])
        snap = snapshot(obj, poly, x0)
        self.assertAlmostEqual(snap.E, 4e-7, delta=1e-12)
        self.assertGreater(kkt_residual(obj, poly, x0, snap.lam), 1e-7)

        result = solve(obj, poly, x0, PasaParams(eps=1e-8, max_iter=20))
        self.assertNotEqual(result.status, CONVERGED)
        self.assertAlmostEqual(result.x[0], -1.0, places=12)
        self.assertLess(result.x[1], 0.5)
        self.assertTrue(all(t.E > 1e-7 for t in result.trace))

    def test_failed_snapshot_keeps_last_measured_iterate(self):
        calls = []

        def failing_snapshot(*args, **kwargs):
            calls.append(args[2])
            if len(calls) > 1:
                raise NonconvergenceError("Projection did not converge.")
            return snapshot(*args, **kwargs)

        with mock.patch("pasa.solver.driver.snapshot", side_effect=failing_snapshot):
            result = solve(self.obj, self.box, [0.25, 0.5])
        self.assertEqual(len(calls), 2)
        self.assertEqual(result.status, MAX_ITER)
        self.assertEqual(len(result.trace), 1)
        self.assertEqual(result.trace[0].step, 0.0)
        np.testing.assert_array_equal(result.x, [0.25, 0.5])
        np.testing.assert_array_equal(result.trace[0].x, result.x)
        self.assertEqual(result.stats["phase_one_iterations"], 0)
        self.assertEqual(result.stats["phase_two_iterations"], 0)
        self.assertEqual(
            result.stats["branches_12"],
            sum(t.branch == ONE_TO_TWO for t in result.trace),
        )

    def test_finite_identification(self):
        obj, poly, sol = degenerate_qp_suite()[0]
        self.assertEqual(len(sol.active_plus), poly.n)
        rs = np.random.RandomState(14)
        for _ in range(20):
            result = solve(obj, poly, rs.uniform(-1.0, 3.0, size=2))
            hits = [
                t.iter
                for t in result.trace
                if np.linalg.norm(t.x - sol.x_star) <= 1e-12
            ]
            self.assertTrue(hits)
            self.assertLessEqual(hits[0], 50)

    def test_result_documents(self):
        result = solve(self.obj, self.box, [0.25, 0.5])
        frame = result.to_frame()
        self.assertEqual(list(frame.columns), TRACE_COLUMNS)
        self.assertEqual(len(frame), len(result.trace))
        doc = result.to_dict()
        self.assertEqual(doc["status"], CONVERGED)
        self.assertEqual(len(doc["trace"]), len(result.trace))
        self.assertEqual(set(doc["trace"][0]), set(TRACE_COLUMNS))
        json.dumps(doc)


class PasaSolverTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.obj, cls.box = box_qp([2.0, 2.0])

    def test_config(self):
        solver = PasaSolver(verbose=False, eps=1e-6, alpha=2.0)
        self.assertEqual(solver.config["solve_config"]["eps"], 1e-6)
        self.assertEqual(solver.config["solve_config"]["gpa_config"]["alpha"], 2.0)

        result = solver.solve(self.obj, self.box, [0.25, 0.5], max_iter=0)
        self.assertEqual(result.status, MAX_ITER)
        self.assertEqual(solver.config["solve_config"]["max_iter"], 10000)

        result = solver.solve(self.obj, self.box, [0.25, 0.5])
        self.assertEqual(result.status, CONVERGED)
        self.assertIs(solver.result, result)

    def test_invalid_config(self):
        with self.assertRaises(InputError):
            PasaSolver(verbose=False, theta=2.0)
        solver = PasaSolver(verbose=False)
        with self.assertRaises(InputError):
            solver.solve(self.obj, self.box, [0.5, 0.5], writer="tensorboard")

    def test_json_writer(self):
        with tempfile.TemporaryDirectory() as log_dir:
            solver = PasaSolver(
                verbose=False,
                writer="json",
                log_dir=log_dir,
                run_dir="runs",
                run_name="boxqp",
                log_every=1,
            )
            solver.solve(self.obj, self.box, [0.25, 0.5])
            run_dir = os.path.join(log_dir, "runs")
            (run_name,) = os.listdir(run_dir)
            self.assertTrue(run_name.startswith("boxqp_"))
            with open(os.path.join(run_dir, run_name, "log.json")) as f:
                log = json.load(f)
            self.assertEqual(log["result"]["status"], CONVERGED)
            self.assertEqual(log["config"]["solve_config"]["writer"], "json")
            self.assertIn("E", log["run_log"])


if __name__ == "__main__":
    unittest.main()
