"""Euclidean projection onto a polyhedron or one of its faces, with multipliers.

The projection QP min 1/2 ||y - z||^2 s.t. A y <= b (plus the face's equality
rows) is solved by a primal active-set method:

    1. find a feasible start (z itself, a ray from a known feasible anchor, or
       a Phase-I solve),
    2. move toward the minimizer on the affine hull of the working set, stopping
       at the first blocking row (which joins the working set),
    3. at the affine minimizer, drop the row with the most negative multiplier,
       or stop when every multiplier is nonnegative.

Ties (equal step lengths, equally negative multipliers within 1e-12) go to the
smallest row index.
"""

import numpy as np
from scipy.optimize import linprog

from pasa.errors import InfeasibleError, NonconvergenceError
from pasa.linalg import RANK_TOL, least_squares_min_norm, null_space_project
from pasa.polyhedron import ACT_TOL, FEAS_TOL, Face, residual
from pasa.utils import as_index_set

TIE_TOL = 1e-12
# Relative error of a least-squares fit computed in float64
ROUNDOFF = 8 * np.finfo(np.float64).eps

projection_default_config = {
    "act_tol": ACT_TOL,
    "feas_tol": FEAS_TOL,
    "rank_tol": RANK_TOL,
    # Working-set changes allowed per solve; None means 50 * (m + 1)
    "max_changes": None,
    # Alternating-projection sweeps per row before the Phase-I LP is used
    "phase1_sweeps": 10,
}


class ProjectionResult(object):
    """The outcome of a projection

    Args:
        point: the projection y
        multipliers: an m-dim np.ndarray (lambda >= 0 on inequality rows)
        active_at_point: ascending tuple of rows active at y
        iterations: (int) working-set changes performed
        kkt_residual: (float) ||y - z + A^T lambda||_inf + ||min(lambda, 0)||_inf
            + max_i |lambda_i (A y - b)_i|
    """

    def __init__(self, point, multipliers, active_at_point, iterations, kkt_residual):
        self.point = point
        self.multipliers = multipliers
        self.active_at_point = active_at_point
        self.iterations = iterations
        self.kkt_residual = kkt_residual

    def __repr__(self):
        return (
            f"ProjectionResult(point={self.point}, multipliers={self.multipliers}, "
            f"active_at_point={self.active_at_point}, iterations={self.iterations})"
        )


class ActiveSetProjector(object):
    """Projects points onto faces of a polyhedron

    Args:
        config: (dict) overrides for projection_default_config
    """

    def __init__(self, **config):
        self.config = dict(projection_default_config)
        self.config.update(config)

    def project(self, face, z, anchor=None):
        """Project z onto face (a Face; a Polyhedron is treated as its own face)

        Args:
            face: a Face or Polyhedron
            z: the point to project
            anchor: an optional point known to lie on the face, used to build a
                feasible start without a Phase-I solve
        """
        if not isinstance(face, Face):
            face = Face(face, ())
        poly = face.base
        z = poly.check_point(z, name="z")
        if poly.m == 0:
            return ProjectionResult(z.copy(), np.zeros(0), (), 0, 0.0)

        A, b = poly.A, poly.b
        E = face.equality_rows
        is_eq = np.zeros(poly.m, dtype=bool)
        is_eq[list(E)] = True
        tols = poly.act_tols(self.config["act_tol"])
        rank_tol = self.config["rank_tol"]
        cap = self.config["max_changes"] or 50 * (poly.m + 1)

        y = self._feasible_start(face, z, anchor, is_eq)
        W = as_index_set(set(E) | set(np.flatnonzero(residual(poly, y) >= -tols)))

        changes = 0
        lam_W = np.zeros(len(W))
        while True:
            A_W = A[list(W)]
            # A second pass removes the rounding left along the rows of A_W
            p = null_space_project(A_W, z - y, rank_tol)
            p = null_space_project(A_W, p, rank_tol)
            if np.linalg.norm(p) <= self._tol(z, y, 1e-12):
                # At the minimizer on the working set's affine hull
                lam_W = least_squares_min_norm(A_W.T, z - y, rank_tol)
                sign_tol = self._tol(z, y, TIE_TOL)
                droppable = [
                    (lam, i)
                    for lam, i in zip(lam_W, W)
                    if not is_eq[i] and lam < -sign_tol
                ]
                if not droppable:
                    break
                most_negative = min(lam for lam, _ in droppable)
                drop = min(i for lam, i in droppable if lam <= most_negative + TIE_TOL)
                W = tuple(i for i in W if i != drop)
            else:
                step, block = self._ratio_test(poly, y, p, W)
                y = y + step * p
                if block is not None:
                    W = as_index_set(W + (block,))
            changes += 1
            if changes > cap:
                raise NonconvergenceError(
                    f"Projection did not converge within {cap} working-set changes."
                )

        lam = self._recover_multipliers(poly, z, y, W, lam_W, is_eq, tols)
        active = as_index_set(set(E) | set(np.flatnonzero(residual(poly, y) >= -tols)))
        return ProjectionResult(
            y, lam, active, changes, self._kkt_residual(poly, z, y, lam, is_eq)
        )

    def _ratio_test(self, poly, y, p, W):
        """Largest step in [0, 1] along p keeping rows outside W feasible"""
        Ap = poly.A @ p
        slack = np.maximum(poly.b - poly.A @ y, 0.0)
        row_norms = np.linalg.norm(poly.A, axis=1)
        outside = np.ones(poly.m, dtype=bool)
        outside[list(W)] = False
        blocking = outside & (Ap > RANK_TOL * row_norms * np.linalg.norm(p))
        if not np.any(blocking):
            return 1.0, None
        idx = np.flatnonzero(blocking)
        ratios = slack[idx] / Ap[idx]
        best = ratios.min()
        if best >= 1.0:
            return 1.0, None
        block = int(idx[np.flatnonzero(ratios <= best + TIE_TOL)[0]])
        return float(best), block

    @staticmethod
    def _tol(z, y, rel):
        """rel (1 + |y|) plus the rounding level of a fit of z - y"""
        return rel * (1.0 + np.linalg.norm(y)) + ROUNDOFF * np.linalg.norm(z - y)

    def _recover_multipliers(self, poly, z, y, W, lam_W, is_eq, tols):
        """Min-norm multipliers on the rows active at y; the working-set
        multipliers are used when the min-norm element has the wrong sign"""
        lam = np.zeros(poly.m)
        sign_tol = self._tol(z, y, TIE_TOL)
        S = list(as_index_set(set(W) | set(np.flatnonzero(residual(poly, y) >= -tols))))
        lam_S = least_squares_min_norm(poly.A[S].T, z - y, self.config["rank_tol"])
        fit = np.linalg.norm(poly.A[S].T @ lam_S - (z - y), np.inf)
        ineq = ~is_eq[S]
        if np.all(lam_S[ineq] >= -sign_tol) and fit <= self._tol(z, y, 1e-10):
            lam[S] = lam_S
        else:
            lam[list(W)] = lam_W
        clamp = ~is_eq & (lam < 0) & (lam >= -sign_tol)
        lam[clamp] = 0.0
        return lam

    @staticmethod
    def _kkt_residual(poly, z, y, lam, is_eq):
        r = residual(poly, y)
        stationarity = np.linalg.norm(y - z + poly.A.T @ lam, np.inf)
        ineq_lam = lam[~is_eq]
        sign = float(max(0.0, -ineq_lam.min())) if ineq_lam.size else 0.0
        complementarity = (
            float(np.max(np.abs(ineq_lam * r[~is_eq]))) if ineq_lam.size else 0.0
        )
        return float(stationarity + sign + complementarity)

    def _feasible_start(self, face, z, anchor, is_eq):
        poly = face.base
        act_tol, feas_tol = self.config["act_tol"], self.config["feas_tol"]
        r = residual(poly, z)
        on_face = np.all(np.abs(r[is_eq]) <= poly.act_tols(act_tol)[is_eq])
        if on_face and np.all(r[~is_eq] <= 0.0):
            return z.copy()

        if anchor is not None:
            anchor = poly.check_point(anchor, name="anchor")
            if face.contains(anchor, act_tol, feas_tol):
                return self._ray_start(face, z, anchor, is_eq)

        return self._phase_one(face, z, is_eq)

    def _ray_start(self, face, z, anchor, is_eq):
        """Farthest feasible point on the segment from anchor toward z (after
        moving z into the face's affine hull)"""
        poly = face.base
        d = null_space_project(face.A_eq, z - anchor, self.config["rank_tol"])
        Ad = poly.A @ d
        slack = np.maximum(poly.b - poly.A @ anchor, 0.0)
        rising = ~is_eq & (Ad > 0.0)
        t = 1.0
        if np.any(rising):
            t = min(1.0, float(np.min(slack[rising] / Ad[rising])))
        return anchor + t * d

    def _phase_one(self, face, z, is_eq):
        """Alternating projections onto violated rows, then a max-slack LP"""
        poly = face.base
        A, b = poly.A, poly.b
        feas_tol = self.config["feas_tol"]
        row_sq = np.sum(A ** 2, axis=1)
        y = z.copy()
        for _ in range(self.config["phase1_sweeps"] * poly.m):
            if face.equality_rows:
                y = y - least_squares_min_norm(
                    face.A_eq, face.A_eq @ y - face.b_eq, self.config["rank_tol"]
                )
            for i in np.flatnonzero(~is_eq & (row_sq > 0.0)):
                viol = A[i] @ y - b[i]
                if viol > 0.0:
                    y = y - (viol / row_sq[i]) * A[i]
            r = A @ y - b
            if np.all(r[~is_eq] <= feas_tol) and np.all(np.abs(r[is_eq]) <= feas_tol):
                return y
        return self._phase_one_lp(face, is_eq)

    def _phase_one_lp(self, face, is_eq):
        """max t s.t. A_I x + t <= b_I, A_E x = b_E, t <= 1"""
        poly = face.base
        n = poly.n
        A_I, b_I = poly.A[~is_eq], poly.b[~is_eq]
        c = np.zeros(n + 1)
        c[-1] = -1.0
        A_ub = np.hstack([A_I, np.ones((A_I.shape[0], 1))]) if A_I.size else None
        b_ub = b_I if A_I.size else None
        A_eq = b_eq = None
        if face.equality_rows:
            A_eq = np.hstack([face.A_eq, np.zeros((len(face.equality_rows), 1))])
            b_eq = face.b_eq
        bounds = [(None, None)] * n + [(None, 1.0)]
        res = linprog(
            c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq, bounds=bounds, method="highs"
        )
        if res.status == 2:
            raise InfeasibleError(f"{face} has no feasible point.")
        if res.status != 0:
            raise NonconvergenceError(f"Phase-I LP failed: {res.message}")
        if -res.fun < -self.config["feas_tol"]:
            raise InfeasibleError(
                f"{face} has no feasible point (max slack {-res.fun:.3e})."
            )
        return res.x[:n]


def project(poly, z, anchor=None, **config):
    """Euclidean projection of z onto Omega = {x : A x <= b}

    Returns a ProjectionResult; see ActiveSetProjector for the config keys.
    """
    return ActiveSetProjector(**config).project(Face(poly, ()), z, anchor=anchor)


def project_face(face, z, anchor=None, **config):
    """Euclidean projection of z onto a face (equality rows held active)"""
    return ActiveSetProjector(**config).project(face, z, anchor=anchor)


def null_gradient(poly, active, g, rank_tol=RANK_TOL):
    """g^I: the projection of g onto the null space of the rows A_I, I = active"""
    g = poly.check_point(g, name="g")
    rows = list(as_index_set(active, poly.m))
    return null_space_project(poly.A[rows], g, rank_tol)
