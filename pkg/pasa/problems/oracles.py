"""Slow, independent reference computations used to certify the solver.

These use numpy's SVD-based lstsq rather than pasa.linalg so that a defect in
the shared kernels cannot hide behind agreement with itself.
"""

from itertools import combinations

import numpy as np

from pasa.errors import InfeasibleError, InputError
from pasa.projection import ProjectionResult

ORACLE_FEAS_TOL = 1e-9


def _lstsq(M, r):
    if M.size == 0:
        return np.zeros(M.shape[1])
    return np.linalg.lstsq(M, r, rcond=1e-12)[0]


def brute_force_project(poly, z):
    """Projection of z onto poly by enumerating candidate active sets

    For every subset S of rows (|S| <= n; a KKT point always has a multiplier
    supported on linearly independent rows), solve the least-distance problem
    onto {x : A_S x = b_S} and keep candidates that are feasible with
    nonnegative min-norm multipliers on S. The closest candidate is returned.

    Only sensible for tiny problems (m <= 12, n <= 6).
    """
    z = poly.check_point(z, name="z")
    m, n = poly.m, poly.n
    if m > 12 or n > 6:
        raise InputError("Brute-force projection is limited to m <= 12, n <= 6.")
    A, b = poly.A, poly.b

    best = None
    n_subsets = 0
    for size in range(min(m, n) + 1):
        for S in combinations(range(m), size):
            n_subsets += 1
            S = list(S)
            A_S, b_S = A[S], b[S]
            y = z - _lstsq(A_S, A_S @ z - b_S)
            if S and np.max(np.abs(A_S @ y - b_S)) > ORACLE_FEAS_TOL * (
                1 + np.max(np.abs(b_S))
            ):
                continue
            if m and np.max(A @ y - b) > ORACLE_FEAS_TOL:
                continue
            lam_S = _lstsq(A_S.T, z - y)
            if lam_S.size and lam_S.min() < -ORACLE_FEAS_TOL:
                continue
            if np.linalg.norm(A_S.T @ lam_S - (z - y)) > 1e-8 * (1 + np.linalg.norm(z)):
                continue
            dist = np.linalg.norm(y - z)
            if best is None or dist < best[0] - 1e-14:
                lam = np.zeros(m)
                lam[S] = np.maximum(lam_S, 0.0)
                best = (dist, y, lam)

    if best is None:
        raise InfeasibleError(f"{poly} has no feasible KKT candidate.")
    _, y, lam = best
    r = A @ y - b
    active = tuple(int(i) for i in np.flatnonzero(r >= -1e-10 * (1 + np.abs(b))))
    residual = kkt_residual(None, poly, y, lam, z=z)
    return ProjectionResult(y, lam, active, n_subsets, residual)


def kkt_residual(obj, poly, x, multipliers, z=None):
    """Independent first-order check at (x, multipliers)

    Sums the inf-norm stationarity error ||g(x) + A^T lambda||, the
    feasibility violation max(0, max(A x - b)), the sign violation
    ||min(lambda, 0)|| and the complementarity violation max |lambda_i (A x - b)_i|.

    With obj = None the objective is taken to be 1/2 ||x - z||^2, which
    certifies a projection of z.
    """
    x = poly.check_point(x)
    lam = np.asarray(multipliers, dtype=np.float64)
    if lam.shape != (poly.m,):
        raise InputError(f"Expected {poly.m} multipliers, got shape {lam.shape}.")
    if obj is None:
        g = x - poly.check_point(z, name="z")
    else:
        g = obj.gradient(x)
    r = poly.A @ x - poly.b
    stationarity = np.linalg.norm(g + poly.A.T @ lam, np.inf)
    if poly.m == 0:
        return float(stationarity)
    feasibility = max(0.0, float(np.max(r)))
    sign = max(0.0, float(-np.min(lam)))
    complementarity = float(np.max(np.abs(lam * r)))
    return float(stationarity + feasibility + sign + complementarity)
