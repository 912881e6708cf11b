"""
This tutorial script walks through the basic pieces of PASA: projecting onto a
polyhedron, measuring stationarity, solving a constrained problem, and checking a
run against a problem with a known solution.

Run it from the repository root after `source add_to_path.sh`, or with the settings
in run_Basics_Tutorial.sh.
"""

import argparse

import numpy as np
import torch

from pasa import PasaSolver, Polyhedron, project, quadratic_objective
from pasa.diagnostics import lemma_ratios
from pasa.measures import snapshot
from pasa.problems import (
    box_qp,
    degenerate_qp_suite,
    halfplane,
    kkt_residual,
    simplex,
    torch_objective,
)
from synthetic.generate import RandomPolyhedronGenerator, random_quadratic

parser = argparse.ArgumentParser(description="PASA basics")
parser.add_argument("--n", default=5, type=int, help="dimension of the random QP")
parser.add_argument("--m", default=12, type=int, help="constraints of the random QP")
parser.add_argument("--seed", default=1, type=int)
parser.add_argument(
    "--step_rule", default="fixed", choices=["fixed", "bb"], help="phase two step"
)


def banner(text):
    print(f"\n{'=' * 10} {text} {'=' * 10}")


def projections():
    banner("Projection")
    poly = halfplane()
    y = project(poly, [1.0, 1.0])
    # The closest point of {x1 + x2 <= 1} to (1, 1) is (0.5, 0.5), with multiplier 0.5
    print(f"point={y.point}, multipliers={y.multipliers}, active={y.active_at_point}")


def boxqp(args):
    banner("A box-constrained QP")
    obj, poly = box_qp([2.0, 2.0])
    x0 = np.array([0.25, 0.5])
    print(snapshot(obj, poly, x0))

    solver = PasaSolver(step_rule=args.step_rule, verbose=False)
    result = solver.solve(obj, poly, x0)
    print(result)
    print(result.to_frame())


def random_qp(args):
    banner("A random strongly convex QP")
    gen = RandomPolyhedronGenerator(args.n, args.m, seed=args.seed)
    obj = random_quadratic(args.n, np.random.RandomState(args.seed))
    solver = PasaSolver(step_rule=args.step_rule, verbose=False)
    result = solver.solve(obj, gen.poly, gen.random_point())
    snap = snapshot(obj, gen.poly, result.x)
    print(result)
    print(f"stats: {result.stats}")
    print(f"KKT residual: {kkt_residual(obj, gen.poly, result.x, snap.lam):.3e}")


def diagnostics():
    banner("Identification on the degenerate suite")
    for obj, poly, sol in degenerate_qp_suite():
        x0 = poly.n * [0.1]
        result = PasaSolver(verbose=False).solve(obj, poly, x0)
        diag = lemma_ratios(result.trace, sol, obj, poly, trace=result.trace)
        print(
            f"{sol.name:>18}: status={result.status}, "
            f"iterations={result.iterations}, "
            f"bound_ratio_max={diag.frame['bound_ratio'].max():.3f}, "
            f"identified={bool(diag.frame['identified'].iloc[-1])}"
        )


def torch_simplex():
    banner("A torch objective over the simplex")
    w = torch.tensor([3.0, -1.0, 2.0], dtype=torch.float64)

    def fn(X):
        return torch.logsumexp(w * X, 0) + 0.5 * (X @ X)

    obj = torch_objective(fn, 3)
    poly = simplex(3)
    result = PasaSolver(verbose=False).solve(obj, poly, [1.0, 1.0, 1.0])
    print(result)


if __name__ == "__main__":
    args = parser.parse_args()
    projections()
    boxqp(args)
    random_qp(args)
    diagnostics()
    torch_simplex()
    # An empty polyhedron is reported through the status, not an exception
    empty = Polyhedron([[1.0], [-1.0]], [0.0, -1.0])
    obj = quadratic_objective([[1.0]], [0.0])
    print(PasaSolver(verbose=False).solve(obj, empty, [0.0]))
