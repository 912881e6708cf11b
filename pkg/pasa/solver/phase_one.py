"""Phase one: the gradient projection algorithm (GPA).

One projection per iteration, then an Armijo backtracking search along the
chord from x to y(x, alpha):

    d = P_Omega(x - alpha g(x)) - x
    s = eta^j, j >= 0 smallest with f(x + s d) <= f(x) + s delta g(x).d
"""

import numpy as np

from pasa.errors import LineSearchError, StationarySignal
from pasa.measures import step_point


class GpaStep(object):
    """One accepted line-search step

    Args:
        x_next: the new iterate
        step: the accepted step length s
        direction: the search direction d (x_next = x + s d for GPA steps;
            for projected-arc steps d = x_next - x)
        backtracks: (int) the number j of step reductions
        f_next: f(x_next)
        evaluations: (int) objective values computed by the search
        projections: (int) projections computed by the search
    """

    def __init__(
        self, x_next, step, direction, backtracks, f_next, evaluations, projections
    ):
        self.x_next = x_next
        self.step = step
        self.direction = direction
        self.backtracks = backtracks
        self.f_next = f_next
        self.evaluations = evaluations
        self.projections = projections

    def __repr__(self):
        return (
            f"GpaStep(step={self.step:.3g}, backtracks={self.backtracks}, "
            f"f_next={self.f_next:.6g})"
        )


def armijo_search(obj, x, f, slope, d, params):
    """Backtracks s = eta^j along d until the Armijo inequality holds

    Returns:
        (x_next, s, j, f_next)
    Raises:
        LineSearchError when j would exceed params.backtrack_cap
    """
    for j in range(params.backtrack_cap + 1):
        s = params.eta ** j
        x_next = x + s * d
        f_next = obj.value(x_next)
        if f_next <= f + s * params.delta * slope:
            return x_next, s, j, f_next
    raise LineSearchError(
        f"Armijo search failed after {params.backtrack_cap} backtracks "
        f"(f={f:.6g}, slope={slope:.3e})."
    )


def gpa_step(obj, poly, x, params, f=None, g=None, projection=None):
    """One iteration of the gradient projection algorithm

    Args:
        obj: an Objective
        poly: a Polyhedron
        x: a feasible iterate
        params: PasaParams
        f, g: f(x) and g(x) if already known
        projection: the ProjectionResult of P_Omega(x - g), reused when
            params.alpha == 1
    Returns:
        a GpaStep
    Raises:
        StationarySignal when d = 0 (or is not a descent direction in floating
            point)
        LineSearchError when the backtrack cap is exceeded
    """
    x = poly.check_point(x)
    f = obj.value(x) if f is None else f
    g = obj.gradient(x) if g is None else g
    n_proj = 0
    if projection is None or params.alpha != 1.0:
        projection = step_point(
            obj, poly, x, params.alpha, g=g, **params.projection_config()
        )
        n_proj = 1
    d = projection.point - x
    slope = float(g @ d)
    if not np.any(d) or slope >= 0.0:
        raise StationarySignal(f"Zero gradient-projection direction at x={x}.")

    x_next, s, j, f_next = armijo_search(obj, x, f, slope, d, params)
    return GpaStep(x_next, s, d, j, f_next, j + 1, n_proj)
