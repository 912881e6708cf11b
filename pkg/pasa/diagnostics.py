"""Run inspection against a known solution x*.

For each recorded iterate x_k the diagnostics measure
    distance      ||x_k - x*||
    anchor gap    ||x_k - xbar_k||, xbar_k the closest point to x_k with the
                  rows A_+(x*) and A(x_k) held at equality
    anchor ratio  gap / distance^2        (bounded near x*)
    bound ratio   distance / E(x_k)       (bounded near x*)
    multiplier ratio ||lambda(x_k) - lambda*|| / distance
    E / e
Ratios with a zero denominator are reported as 0. Iterates within
DISTANCE_FLOOR (1 + ||x*||) of x* get NaN anchor and multiplier ratios, and
anchor gaps at rounding level count as 0. These are test and analysis tools
only; the solver never consults x*.
"""

import numpy as np
import pandas as pd

from pasa.errors import DiagnosticError
from pasa.linalg import least_squares_min_norm
from pasa.measures import snapshot
from pasa.polyhedron import ACT_TOL, active_set
from pasa.utils import as_index_set

STABILITY_TOL = 0.01
# Below these the anchor ratio measures rounding, not the iterate
DISTANCE_FLOOR = 1e-6
GAP_FLOOR = 1e-12


def face_anchor(poly, x, plus_set, act_tol=ACT_TOL):
    """The closest point to x on {y : (A y - b)_i = 0 for i in plus_set | A(x)}

    Raises:
        DiagnosticError if that affine system is inconsistent
    """
    x = poly.check_point(x)
    rows = set(plus_set) | set(active_set(poly, x, act_tol))
    rows = list(as_index_set(rows, poly.m))
    if not rows:
        return x.copy()
    A_S, b_S = poly.A[rows], poly.b[rows]
    x_bar = x - least_squares_min_norm(A_S, A_S @ x - b_S)
    if np.max(np.abs(A_S @ x_bar - b_S)) > 1e-9 * (1.0 + np.max(np.abs(b_S))):
        raise DiagnosticError(f"Rows {tuple(rows)} admit no common point.")
    return x_bar


def _ratio(num, den):
    return float(num / den) if den > 0 else 0.0


class RunDiagnostics(object):
    """Per-iterate ratios (a DataFrame) plus branch counts per phase

    Columns: distance, anchor_gap, anchor_ratio, bound_ratio,
    multiplier_ratio, E, e, E_over_e, identified, and the running maxima
    anchor_ratio_max, bound_ratio_max. `identified` marks iterates whose
    alpha = 1 projection has the active set of x*.
    """

    def __init__(self, frame, branch_counts=None, anchor_failures=0):
        self.frame = frame
        self.branch_counts = branch_counts or {}
        self.anchor_failures = anchor_failures

    def __len__(self):
        return len(self.frame)

    def anchor_ratio_stabilized(self, tol=STABILITY_TOL):
        return ratio_stabilized(self.frame["anchor_ratio"], tol)

    def bound_ratio_stabilized(self, tol=STABILITY_TOL):
        return ratio_stabilized(self.frame["bound_ratio"], tol)

    def to_csv(self, path):
        self.frame.to_csv(path, index_label="iter")


def ratio_stabilized(values, tol=STABILITY_TOL):
    """True if the running max over the last half of values exceeds the
    running max over the first half by less than tol (relative). NaN entries
    (failed anchors) are skipped."""
    values = np.asarray(values, dtype=np.float64)
    values = values[np.isfinite(values)]
    if values.size < 2:
        return True
    head = np.max(values[: values.size // 2])
    return bool(np.max(values) <= (1.0 + tol) * head or np.max(values) == 0.0)


def lemma_ratios(trace_points, sol, obj, poly, trace=None, **projection_config):
    """Computes the diagnostic ratios along a run

    Args:
        trace_points: a sequence of iterates (vectors, or IterateTrace records
            carrying .x)
        sol: a KnownSolution for (obj, poly)
        obj: an Objective
        poly: a Polyhedron
        trace: optional IterateTrace records for the branch counts
    Returns:
        a RunDiagnostics
    """
    act_tol = projection_config.get("act_tol", ACT_TOL)
    x_star = poly.check_point(sol.x_star, name="x_star")
    lam_star = np.asarray(sol.multipliers, dtype=np.float64)
    active_star = active_set(poly, x_star, act_tol)
    floor = DISTANCE_FLOOR * (1.0 + np.linalg.norm(x_star))

    rows = []
    failures = 0
    for point in trace_points:
        x = poly.check_point(getattr(point, "x", point))
        snap = snapshot(obj, poly, x, **projection_config)
        distance = float(np.linalg.norm(x - x_star))
        try:
            x_bar = face_anchor(poly, x, sol.active_plus, act_tol)
            gap = float(np.linalg.norm(x - x_bar))
        except DiagnosticError:
            failures += 1
            gap = np.nan
        if gap <= GAP_FLOOR * (1.0 + np.linalg.norm(x)):
            gap = 0.0
        near = distance < floor
        anchor_ratio = np.nan
        if not near and np.isfinite(gap):
            anchor_ratio = _ratio(gap, distance ** 2)
        lam_gap = np.linalg.norm(snap.lam - lam_star)
        multiplier_ratio = np.nan if near else _ratio(lam_gap, distance)
        rows.append(
            {
                "distance": distance,
                "anchor_gap": gap,
                "anchor_ratio": anchor_ratio,
                "bound_ratio": _ratio(distance, snap.E),
                "multiplier_ratio": multiplier_ratio,
                "E": snap.E,
                "e": snap.e,
                "E_over_e": _ratio(snap.E, snap.e),
                "identified": snap.projection.active_at_point == active_star,
            }
        )

    columns = [
        "distance",
        "anchor_gap",
        "anchor_ratio",
        "bound_ratio",
        "multiplier_ratio",
        "E",
        "e",
        "E_over_e",
        "identified",
    ]
    frame = pd.DataFrame(rows, columns=columns)
    frame["anchor_ratio_max"] = frame["anchor_ratio"].cummax()
    frame["bound_ratio_max"] = frame["bound_ratio"].cummax()

    branch_counts = {}
    if trace is not None:
        branches = pd.Series([t.branch for t in trace])
        phases = pd.Series([t.phase for t in trace])
        branch_counts = {
            "phase_one": int((phases == 1).sum()),
            "phase_two": int((phases == 2).sum()),
            "branches_12": int((branches == "12").sum()),
            "branches_21": int((branches == "21").sum()),
        }
    return RunDiagnostics(frame, branch_counts, failures)
