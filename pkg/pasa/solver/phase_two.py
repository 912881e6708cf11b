"""Phase two: a linearly constrained optimizer (LCO) on the face Omega_k.

The optimizer never frees a constraint: every row that becomes active is
pinned at equality for the rest of the episode. On entry to phase two one
startup step is taken along the projected arc

    x_{k+1} = P_{Omega_k}(x_k - alpha eta^j g^A(x_k)),

after which each iteration is a projected gradient step on the current face
with an Armijo search along the chord.
"""

import numpy as np

from pasa.errors import LineSearchError, StationarySignal
from pasa.linalg import null_space_project
from pasa.polyhedron import active_set, make_face
from pasa.projection import null_gradient, project_face
from pasa.solver.phase_one import GpaStep, armijo_search


class LcoState(object):
    """The phase-two iterate and the face it lives on

    Args:
        face: the current Face (its equality rows only grow within an episode)
        x: the iterate
        started: (bool) True once the startup step has been taken
        consecutive_same_active: (int) iterations without a face change
        x_prev, gA_prev: the previous iterate and its face gradient, used by
            the Barzilai-Borwein step rule
        last_step: the GpaStep that produced x (None for a fresh state)
    """

    def __init__(
        self,
        face,
        x,
        started=False,
        consecutive_same_active=0,
        x_prev=None,
        gA_prev=None,
        last_step=None,
    ):
        self.face = face
        self.x = x
        self.started = started
        self.consecutive_same_active = consecutive_same_active
        self.x_prev = x_prev
        self.gA_prev = gA_prev
        self.last_step = last_step

    def __repr__(self):
        return (
            f"LcoState(equality_rows={self.face.equality_rows}, x={self.x}, "
            f"started={self.started})"
        )


def lco_startup_step(obj, poly, x, params, f=None, g=None):
    """The startup step taken once on every entry into phase two

    s = alpha eta^j with j the smallest integer for which
    f(x_{k+1}) <= f(x_k) + delta g(x_k).(x_{k+1} - x_k), where
    x_{k+1} = P_{Omega_k}(x_k - s g^A(x_k)) and Omega_k pins A(x_k).
    """
    x = poly.check_point(x)
    f = obj.value(x) if f is None else f
    g = obj.gradient(x) if g is None else g
    active = active_set(poly, x, params.act_tol)
    face = make_face(poly, active)
    gA = null_gradient(poly, active, g, params.rank_tol)

    if not np.any(gA):
        return GpaStep(x.copy(), params.alpha, np.zeros_like(x), 0, f, 0, 0)

    for j in range(params.backtrack_cap + 1):
        s = params.alpha * params.eta ** j
        y = project_face(face, x - s * gA, anchor=x, **params.projection_config())
        x_next = y.point
        f_next = obj.value(x_next)
        if f_next <= f + params.delta * float(g @ (x_next - x)):
            return GpaStep(x_next, s, x_next - x, j, f_next, j + 1, j + 1)
    raise LineSearchError(
        f"Phase-two startup search failed after {params.backtrack_cap} backtracks."
    )


def start_episode(obj, poly, x, params, f=None, g=None):
    """Runs the startup step and returns the first LcoState of an episode"""
    step = lco_startup_step(obj, poly, x, params, f=f, g=g)
    face = make_face(poly, active_set(poly, step.x_next, params.act_tol))
    return LcoState(face, step.x_next, started=True, last_step=step)


def _trial_alpha(state, gA, params):
    if params.step_rule != "bb" or state.x_prev is None:
        return params.alpha
    s = state.x - state.x_prev
    y = gA - state.gA_prev
    sy = float(s @ y)
    if sy <= 0.0:
        return params.bb_max
    return float(np.clip(s @ s / sy, params.bb_min, params.bb_max))


def lco_step(obj, poly, state, params, f=None, g=None):
    """One projected gradient step on the current face

    d = P_face(x - a g^A(x)) - x, then s = eta^j by Armijo; rows active at the
    new point join the face. Returns the next LcoState.

    Raises:
        StationarySignal when d has no descent component on the face; the
            driver then decides between convergence and failure
        LineSearchError when the backtrack cap is exceeded
    """
    x = state.x
    f = obj.value(x) if f is None else f
    g = obj.gradient(x) if g is None else g
    rows = set(state.face.equality_rows) | set(active_set(poly, x, params.act_tol))
    gA = null_gradient(poly, rows, g, params.rank_tol)

    alpha = _trial_alpha(state, gA, params)
    y = project_face(state.face, x - alpha * gA, anchor=x, **params.projection_config())
    # Rounding in the projection leaves d slightly off the face
    d = null_space_project(state.face.A_eq, y.point - x, params.rank_tol)
    slope = float(gA @ d)
    if not np.any(d) or slope >= 0.0:
        raise StationarySignal(f"Zero face projected-gradient direction at x={x}.")

    x_next, s, j, f_next = armijo_search(obj, x, f, slope, d, params)
    step = GpaStep(x_next, s, d, j, f_next, j + 1, 1)
    face = state.face.grow(active_set(poly, x_next, params.act_tol))
    same = face.equality_rows == state.face.equality_rows
    return LcoState(
        face,
        x_next,
        True,
        state.consecutive_same_active + 1 if same else 0,
        x,
        gA,
        step,
    )
