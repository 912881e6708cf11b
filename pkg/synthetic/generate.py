import numpy as np

from pasa.polyhedron import Polyhedron, active_set
from pasa.problems.objectives import quadratic_objective
from pasa.projection import project


class RandomPolyhedronGenerator(object):
    """Generates a random polyhedron {x : A x <= b} that is feasible by
    construction

    Args:
        n: (int) The dimension
        m: (int) The number of constraints
        entry_range: (tuple) The min and max entries of A
        center_range: (tuple) The min and max entries of the certified point
        zero_slack_prob: (float) The probability that a row passes exactly
            through the certified point (producing degenerate vertices)
        slack_range: (tuple) The min and max slack of the remaining rows
        seed: (int) seed for a private np.random.RandomState

    b = A x_c + s with s >= 0, so x_c (stored as .center) is feasible and can
    serve as a Phase-I anchor.
    """

    def __init__(
        self,
        n,
        m,
        entry_range=(-2.0, 2.0),
        center_range=(-1.0, 1.0),
        zero_slack_prob=0.2,
        slack_range=(0.0, 2.0),
        seed=None,
    ):
        self.n = n
        self.m = m
        self.rs = np.random.RandomState(seed)
        self.A = self.rs.uniform(*entry_range, size=(m, n))
        self.center = self.rs.uniform(*center_range, size=n)
        slack = self.rs.uniform(*slack_range, size=m)
        slack[self.rs.rand(m) < zero_slack_prob] = 0.0
        self.b = self.A @ self.center + slack
        self.poly = Polyhedron(self.A, self.b, n=n)

    def random_point(self, scale=3.0):
        """A point in [-scale, scale]^n, usually infeasible"""
        return self.rs.uniform(-scale, scale, size=self.n)

    def feasible_point(self, scale=3.0):
        """The projection of a random point; often on a face of the polyhedron"""
        return project(self.poly, self.random_point(scale), anchor=self.center).point

    def point_with_active_set(self, scale=3.0, max_tries=50):
        """A feasible point with a nonempty active set (None if not found)"""
        for _ in range(max_tries):
            x = self.feasible_point(scale)
            if active_set(self.poly, x):
                return x
        return None


def random_polyhedra(count, n_max=4, m_max=8, seed=None, **kwargs):
    """count generators with n in [1, n_max] and m in [1, m_max]"""
    rs = np.random.RandomState(seed)
    gens = []
    for _ in range(count):
        n = rs.randint(1, n_max + 1)
        m = rs.randint(1, m_max + 1)
        gens.append(RandomPolyhedronGenerator(n, m, seed=rs.randint(2 ** 31), **kwargs))
    return gens


def random_psd(n, rs=None, ridge=0.1):
    """A random symmetric positive definite matrix B^T B + ridge I"""
    rs = rs or np.random
    B = rs.uniform(-1.0, 1.0, size=(n, n))
    Q = B.T @ B + ridge * np.eye(n)
    return 0.5 * (Q + Q.T)


def random_quadratic(n, rs=None, ridge=0.1):
    """A strongly convex quadratic objective with kappa set by power iteration"""
    rs = rs or np.random
    Q = random_psd(n, rs, ridge)
    c = rs.uniform(-2.0, 2.0, size=n)
    obj = quadratic_objective(Q, c)
    obj.lipschitz_hint = spectral_norm(Q)
    return obj


def spectral_norm(M, n_iter=1000, tol=1e-14):
    """||M||_2 by power iteration on M^T M"""
    M = np.asarray(M, dtype=np.float64)
    v = np.ones(M.shape[1]) / np.sqrt(M.shape[1])
    sigma = 0.0
    for _ in range(n_iter):
        w = M.T @ (M @ v)
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0
        v = w / norm
        new_sigma = np.sqrt(norm)
        if abs(new_sigma - sigma) <= tol * new_sigma:
            break
        sigma = new_sigma
    return float(np.linalg.norm(M @ v))
