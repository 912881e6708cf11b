"""Small dense linear algebra kernels.

Matrices and vectors are plain float64 numpy arrays. Rank decisions come from a
column-pivoted QR factorization (scipy.linalg.qr); minimum-norm solutions of
rank-deficient systems use a complete orthogonal decomposition built from two
QR factorizations.
"""

import numpy as np
from scipy.linalg import qr, solve_triangular

from pasa.errors import InputError

RANK_TOL = 1e-12


def numerical_rank(R, rank_tol=RANK_TOL):
    """Number of pivots of a pivoted-QR R factor above rank_tol * |largest pivot|"""
    if R.size == 0:
        return 0
    pivots = np.abs(np.diag(R))
    if pivots[0] == 0.0:
        return 0
    return int(np.sum(pivots > rank_tol * pivots[0]))


def least_squares_min_norm(M, r, rank_tol=RANK_TOL):
    """Minimum-norm minimizer of ||M z - r||

    Args:
        M: an [p, q] np.ndarray
        r: a p-dim np.ndarray
        rank_tol: relative pivot threshold of the rank-revealing factorization
    Returns:
        z: a q-dim np.ndarray

    With M P = Q [R11 R12] (rank k) and [R11 R12]^T = Z S, the minimum-norm
    solution is z = P Z S^{-T} Q_k^T r.
    """
    M = np.asarray(M, dtype=np.float64)
    r = np.asarray(r, dtype=np.float64)
    if M.ndim != 2:
        raise InputError(f"Expected a 2d matrix, got shape {M.shape}.")
    p, q = M.shape
    if r.shape != (p,):
        raise InputError(f"Right-hand side must have length {p}, not {r.shape}.")
    if p == 0 or q == 0:
        return np.zeros(q)

    Q, R, perm = qr(M, mode="economic", pivoting=True)
    k = numerical_rank(R, rank_tol)
    if k == 0:
        return np.zeros(q)

    # Second factorization turns the trapezoid [R11 R12] into a triangle
    Z, S = qr(R[:k, :].T, mode="economic")
    u = solve_triangular(S, Q[:, :k].T @ r, trans="T", lower=False)
    z = np.zeros(q)
    z[perm] = Z @ u
    return z


def null_space_project(M, v, rank_tol=RANK_TOL):
    """Euclidean projection of v onto the null space of M

    Returns w = argmin{||w - v|| : M w = 0}. The correction v - w is the
    least-squares fit of v by the rows of M, w = v - M^T z with
    z = argmin ||M^T z - v|| (minimum norm), which avoids forming M M^T.
    """
    M = np.asarray(M, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if M.ndim != 2 or v.shape != (M.shape[1],):
        raise InputError(
            f"Vector of shape {v.shape} incompatible with matrix of shape {M.shape}."
        )
    if M.shape[0] == 0:
        return v.copy()
    z = least_squares_min_norm(M.T, v, rank_tol)
    return v - M.T @ z
