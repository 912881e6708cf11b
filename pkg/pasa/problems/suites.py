from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from pasa.polyhedron import Polyhedron, active_set
from pasa.problems.objectives import quadratic_objective


@dataclass
class KnownSolution:
    """A certified stationary point of a test problem

    sigma (strong second-order constant) and pi (nondegeneracy margin) are
    optional metadata for diagnostics; the solver never reads them.
    """

    name: str
    x_star: np.ndarray
    multipliers: np.ndarray
    active_plus: Tuple[int, ...]
    degenerate: bool
    sigma: Optional[float] = None
    pi: Optional[float] = None

    @classmethod
    def from_kkt(cls, name, poly, x_star, multipliers, **kwargs):
        """Derives active_plus and degenerate from (x_star, multipliers)"""
        x_star = np.asarray(x_star, dtype=np.float64)
        multipliers = np.asarray(multipliers, dtype=np.float64)
        active = active_set(poly, x_star)
        active_plus = tuple(i for i in active if multipliers[i] > 0)
        degenerate = len(active_plus) < len(active)
        return cls(name, x_star, multipliers, active_plus, degenerate, **kwargs)


def box(n=2, lower=0.0, upper=1.0):
    """{lower <= x <= upper} with the upper-bound rows first"""
    A = np.vstack([np.eye(n), -np.eye(n)])
    b = np.concatenate([np.full(n, float(upper)), np.full(n, -float(lower))])
    return Polyhedron(A, b)


def halfplane():
    """{x1 + x2 <= 1}"""
    return Polyhedron([[1.0, 1.0]], [1.0])


def simplex(n=2, with_equality=False):
    """{x >= 0, sum(x) <= 1}; with_equality adds -sum(x) <= -1"""
    rows = [-np.eye(n), np.ones((1, n))]
    b = [np.zeros(n), [1.0]]
    if with_equality:
        rows.append(-np.ones((1, n)))
        b.append([-1.0])
    return Polyhedron(np.vstack(rows), np.concatenate(b))


def box_qp(center):
    """f = 1/2 ||x - center||^2 over the unit box in R^2"""
    center = np.asarray(center, dtype=np.float64)
    obj = quadratic_objective(
        np.eye(2), -center, constant=0.5 * center @ center, name="boxqp"
    )
    return obj, box(2)


def degenerate_qp_suite():
    """QPs with certified solutions, degenerate and nondegenerate

    Returns:
        a list of (Objective, Polyhedron, KnownSolution) triples:
          nondegenerate_box: 1/2 ||x - (2, 2)||^2 over the unit box
          degenerate_box:    1/2 ||x - (1, 2)||^2 over the unit box; the
                             constraint x1 <= 1 is active with zero multiplier
          degenerate_3d:     diag(1, 2, 3) quadratic in R^3 whose active rows
                             x1 + x2 <= 2 and x1 - x2 <= 0 are independent but
                             only the first carries a positive multiplier
          simplex:           1/2 ||x - (1, 1)||^2 over the standard simplex
    """
    suite = []

    obj, poly = box_qp([2.0, 2.0])
    sol = KnownSolution.from_kkt(
        "nondegenerate_box", poly, [1.0, 1.0], [1.0, 1.0, 0.0, 0.0], sigma=1.0, pi=1.0
    )
    suite.append((obj, poly, sol))

    obj, poly = box_qp([1.0, 2.0])
    sol = KnownSolution.from_kkt(
        "degenerate_box", poly, [1.0, 1.0], [0.0, 1.0, 0.0, 0.0], sigma=1.0
    )
    suite.append((obj, poly, sol))

    poly = Polyhedron(
        [
            [1.0, 1.0, 0.0],
            [1.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
            [-1.0, 0.0, 0.0],
        ],
        [2.0, 0.0, 1.0, 0.0, 0.0],
    )
    obj = quadratic_objective(np.diag([1.0, 2.0, 3.0]), [-2.0, -3.0, -1.5], name="qp3d")
    sol = KnownSolution.from_kkt(
        "degenerate_3d", poly, [1.0, 1.0, 0.5], [1.0, 0.0, 0.0, 0.0, 0.0], sigma=1.0
    )
    suite.append((obj, poly, sol))

    poly = simplex(2)
    obj = quadratic_objective(np.eye(2), [-1.0, -1.0], name="simplexqp")
    sol = KnownSolution.from_kkt(
        "simplex", poly, [0.5, 0.5], [0.0, 0.0, 0.5], sigma=1.0, pi=0.5
    )
    suite.append((obj, poly, sol))

    return suite
