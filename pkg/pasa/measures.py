"""Stationarity measures at a feasible point x.

    y(x, a)  = P_Omega(x - a g(x))       step_point
    d^a(x)   = y(x, a) - x               direction
    E(x)     = ||d^1(x)||                global_error
    e(x)     = ||g^A(x)||                local_error
    U(x)     = {i : lambda_i >= E^gamma and (b - A x)_i >= E^beta}

The multipliers lambda(x) come from the a = 1 projection.
"""

import numpy as np

from pasa.polyhedron import ACT_TOL, active_set, residual
from pasa.projection import null_gradient, project

measures_default_config = {"gamma": 0.5, "beta": 1.5}


class StationaritySnapshot(object):
    """Everything the driver needs to know about one iterate

    E and e are computed once per iterate and shared by the theta rule, the
    branch test and the trace record.
    """

    def __init__(self, x, f, g, E, e, lam, active, undecided, projection):
        self.x = x
        self.f = f
        self.g = g
        self.E = E
        self.e = e
        self.lam = lam
        self.active = active
        self.undecided = undecided
        # The alpha = 1 projection, reusable as the first GPA trial
        self.projection = projection

    def __repr__(self):
        return (
            f"StationaritySnapshot(f={self.f:.6g}, E={self.E:.3e}, e={self.e:.3e}, "
            f"active={self.active}, undecided={self.undecided})"
        )


def step_point(obj, poly, x, alpha, g=None, **projection_config):
    """The ProjectionResult of P_Omega(x - alpha g(x)), anchored at x"""
    x = poly.check_point(x)
    if g is None:
        g = obj.gradient(x)
    return project(poly, x - alpha * g, anchor=x, **projection_config)


def direction(obj, poly, x, alpha, **projection_config):
    x = poly.check_point(x)
    return step_point(obj, poly, x, alpha, **projection_config).point - x


def global_error(obj, poly, x, **projection_config):
    """E(x) = ||P_Omega(x - g(x)) - x||; zero iff x is stationary"""
    return float(np.linalg.norm(direction(obj, poly, x, 1.0, **projection_config)))


def local_error(obj, poly, x, act_tol=ACT_TOL):
    """e(x) = ||g^A(x)||, the gradient projected onto the null space of the
    rows active at x"""
    x = poly.check_point(x)
    g = obj.gradient(x)
    return float(np.linalg.norm(null_gradient(poly, active_set(poly, x, act_tol), g)))


def undecided_indices(lam, slack, E, gamma=0.5, beta=1.5):
    """Rows whose multiplier is at least E^gamma while their slack is at least
    E^beta. Empty when E = 0.

    Example:
        >>> undecided_indices([0.5], [0.01], 0.04)
        (0,)
    """
    if E <= 0.0:
        return ()
    lam = np.asarray(lam, dtype=np.float64)
    slack = np.asarray(slack, dtype=np.float64)
    mask = (lam >= E ** gamma) & (slack >= E ** beta)
    return tuple(int(i) for i in np.flatnonzero(mask))


def undecided_set(obj, poly, x, gamma=0.5, beta=1.5, **projection_config):
    x = poly.check_point(x)
    y = step_point(obj, poly, x, 1.0, **projection_config)
    E = float(np.linalg.norm(y.point - x))
    return undecided_indices(y.multipliers, -residual(poly, x), E, gamma, beta)


def snapshot(obj, poly, x, gamma=0.5, beta=1.5, **projection_config):
    """Computes f, g, E, e, lambda, A(x) and U(x) at x from one projection

    Args:
        obj: an Objective
        poly: a Polyhedron
        x: a feasible point
        gamma, beta: the undecided-set exponents
        projection_config: tolerances forwarded to the projector
    Returns:
        a StationaritySnapshot
    """
    x = poly.check_point(x)
    f = float(obj.value(x))
    g = obj.gradient(x)
    y = step_point(obj, poly, x, 1.0, g=g, **projection_config)
    E = float(np.linalg.norm(y.point - x))
    active = active_set(poly, x, projection_config.get("act_tol", ACT_TOL))
    e = float(np.linalg.norm(null_gradient(poly, active, g)))
    undecided = undecided_indices(y.multipliers, -residual(poly, x), E, gamma, beta)
    return StationaritySnapshot(x, f, g, E, e, y.multipliers, active, undecided, y)
