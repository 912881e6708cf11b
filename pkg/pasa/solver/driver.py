"""The polyhedral active set algorithm.

    x_1 = P_Omega(x_0)
    phase one:  while E > eps
                    if U = {} and e < theta E:  theta <- mu theta
                    if e >= theta E:            goto phase two
                    x <- gradient projection step
    phase two:  startup step on entry, then
                while E > eps
                    if e < theta E:             goto phase one
                    x <- LCO step on the current face

E, e and U are computed once per iterate and shared by the theta rule, the
branch tests and the trace.
"""

import numpy as np
import pandas as pd
from tqdm import tqdm

from pasa.errors import (
    InfeasibleError,
    InputError,
    LineSearchError,
    NonconvergenceError,
    StationarySignal,
)
from pasa.logging import Logger, LogWriter
from pasa.measures import snapshot
from pasa.problems.oracles import kkt_residual
from pasa.projection import project
from pasa.solver.params import PasaParams
from pasa.solver.pasa_defaults import pasa_default_config
from pasa.solver.phase_one import gpa_step
from pasa.solver.phase_two import lco_step, start_episode
from pasa.utils import recursive_merge_dicts, set_seed

CONVERGED = "converged"
MAX_ITER = "max_iter"
INFEASIBLE = "infeasible"
LINE_SEARCH_FAILURE = "line_search_failure"
STATUSES = (CONVERGED, MAX_ITER, INFEASIBLE, LINE_SEARCH_FAILURE)

# Trace branch codes: no branch, phase one -> two, phase two -> one
NO_BRANCH = "-"
ONE_TO_TWO = "12"
TWO_TO_ONE = "21"

TRACE_COLUMNS = [
    "iter",
    "phase",
    "f",
    "E",
    "e",
    "theta",
    "step",
    "n_active",
    "n_undecided",
    "branch",
]


class IterateTrace(object):
    """The record of one iterate x_k

    f, E, e and theta are the values at x_k (theta after any decay at x_k),
    step is the step length taken from x_k in phase `phase` (0 for the final
    iterate) and branch is the phase transition made at x_k.
    """

    def __init__(
        self, iter, phase, f, E, e, theta, step, n_active, n_undecided, branch, x
    ):
        self.iter = iter
        self.phase = phase
        self.f = f
        self.E = E
        self.e = e
        self.theta = theta
        self.step = step
        self.n_active = n_active
        self.n_undecided = n_undecided
        self.branch = branch
        self.x = x

    def as_row(self):
        return [getattr(self, col) for col in TRACE_COLUMNS]

    def __repr__(self):
        return (
            f"IterateTrace(iter={self.iter}, phase={self.phase}, f={self.f:.6g}, "
            f"E={self.E:.3e}, e={self.e:.3e}, branch={self.branch})"
        )


def trace_frame(trace):
    """The trace as a DataFrame with the CSV column order"""
    return pd.DataFrame([t.as_row() for t in trace], columns=TRACE_COLUMNS)


class SolveResult(object):
    """The outcome of a solve

    Args:
        x: the final iterate
        f: f(x)
        E: E(x)
        status: one of STATUSES
        trace: list of IterateTrace, one per iterate
        stats: (dict) counts of projections, evaluations, backtracks,
            phase iterations, theta decays and branches
        message: (str) a human-readable reason for termination
    """

    def __init__(self, x, f, E, status, trace, stats=None, message=""):
        self.x = x
        self.f = f
        self.E = E
        self.status = status
        self.trace = trace
        self.stats = stats or {}
        self.message = message

    @property
    def converged(self):
        return self.status == CONVERGED

    @property
    def iterations(self):
        return max(len(self.trace) - 1, 0)

    def to_frame(self):
        return trace_frame(self.trace)

    def to_dict(self):
        """A JSON-ready document; see docs/formats.md for the frozen field names"""
        return {
            "status": self.status,
            "x": [float(v) for v in self.x],
            "f": _finite_or_none(self.f),
            "E": _finite_or_none(self.E),
            "iterations": self.iterations,
            "message": self.message,
            "stats": dict(self.stats),
            "trace": [
                dict(zip(TRACE_COLUMNS, _plain(t.as_row()))) for t in self.trace
            ],
        }

    def __repr__(self):
        return (
            f"SolveResult(status={self.status}, f={self.f:.10g}, E={self.E:.3e}, "
            f"iterations={self.iterations})"
        )


def _finite_or_none(v):
    return float(v) if v is not None and np.isfinite(v) else None


def _plain(row):
    plain = []
    for v in row:
        if isinstance(v, str):
            plain.append(v)
        elif isinstance(v, (float, np.floating)):
            plain.append(_finite_or_none(v))
        else:
            plain.append(int(v))
    return plain


def _new_stats():
    return {
        "projections": 0,
        "value_evals": 0,
        "gradient_evals": 0,
        "backtracks": 0,
        "phase_one_iterations": 0,
        "phase_two_iterations": 0,
        "theta_decays": 0,
        "branches_12": 0,
        "branches_21": 0,
    }


def solve(
    obj, poly, x0, params=None, logger=None, progress_bar=False, check_gradient=False
):
    """Minimize obj over poly starting from x0

    Args:
        obj: an Objective
        poly: a Polyhedron
        x0: the starting point (projected onto poly first)
        params: PasaParams (defaults if None)
        logger: an optional Logger, ticked once per iteration
        progress_bar: (bool) show a tqdm bar over iterations
        check_gradient: (bool) verify the gradient by finite differences at x_1
    Returns:
        a SolveResult
    """
    params = params or PasaParams()
    x0 = poly.check_point(x0, name="x0")
    pc = params.projection_config()
    stats = _new_stats()
    value_evals0, gradient_evals0 = obj.n_value_evals, obj.n_gradient_evals

    def finish(x, f, E, status, trace, message):
        stats["value_evals"] = obj.n_value_evals - value_evals0
        stats["gradient_evals"] = obj.n_gradient_evals - gradient_evals0
        return SolveResult(x, f, E, status, trace, stats, message)

    try:
        x = project(poly, x0, **pc).point
        if check_gradient:
            obj.check_gradient(x)
        snap = snapshot(obj, poly, x, params.gamma, params.beta, **pc)
    except InfeasibleError as e:
        return finish(x0, np.nan, np.nan, INFEASIBLE, [], str(e))
    except NonconvergenceError as e:
        return finish(x0, np.nan, np.nan, MAX_ITER, [], str(e))
    stats["projections"] += 2

    theta = params.theta0
    phase = 1
    lco = None
    trace = []
    status = message = None
    t = tqdm(total=params.max_iter, disable=not progress_bar)

    def record(snap, step, branch):
        trace.append(
            IterateTrace(
                len(trace),
                phase,
                snap.f,
                snap.E,
                snap.e,
                theta,
                step,
                len(snap.active),
                len(snap.undecided),
                branch,
                snap.x.copy(),
            )
        )

    # The branch taken at snap, recorded with it
    branch = NO_BRANCH
    try:
        while True:
            if snap.E <= params.eps:
                status, message = CONVERGED, f"E={snap.E:.3e} <= eps"
                break
            if len(trace) >= params.max_iter:
                status, message = MAX_ITER, f"max_iter={params.max_iter} reached"
                break

            if phase == 2 and lco is not None and snap.e < theta * snap.E:
                phase, lco, branch = 1, None, TWO_TO_ONE
                stats["branches_21"] += 1
            if phase == 1:
                if not snap.undecided and snap.e < theta * snap.E:
                    theta *= params.mu
                    stats["theta_decays"] += 1
                if snap.e >= theta * snap.E:
                    phase, branch = 2, ONE_TO_TWO
                    stats["branches_12"] += 1

            try:
                if phase == 1:
                    step = gpa_step(
                        obj,
                        poly,
                        snap.x,
                        params,
                        f=snap.f,
                        g=snap.g,
                        projection=snap.projection,
                    )
                elif lco is None:
                    lco = start_episode(obj, poly, snap.x, params, f=snap.f, g=snap.g)
                    step = lco.last_step
                else:
                    lco = lco_step(obj, poly, lco, params, f=snap.f, g=snap.g)
                    step = lco.last_step
            except (StationarySignal, LineSearchError) as e:
                # No usable descent step while E > eps: accept x if KKT holds
                if kkt_residual(obj, poly, snap.x, snap.lam) <= 1e-8 * (
                    1.0 + np.linalg.norm(snap.g)
                ):
                    status, message = CONVERGED, str(e)
                else:
                    status, message = LINE_SEARCH_FAILURE, str(e)
                break

            stats["backtracks"] += step.backtracks
            stats["projections"] += step.projections

            # x is recorded only once x_next has been measured, so a failed
            # snapshot leaves x as the final iterate
            nxt = snapshot(obj, poly, step.x_next, params.gamma, params.beta, **pc)
            stats["projections"] += 1
            stats["phase_one_iterations" if phase == 1 else "phase_two_iterations"] += 1
            record(snap, step.step, branch)
            snap, branch = nxt, NO_BRANCH
            t.update(1)
            t.set_postfix(E=snap.E, phase=phase)
            if logger is not None and logger.check():
                metrics = {"f": snap.f, "E": snap.E, "e": snap.e}
                logger.log(dict(metrics, theta=theta, phase=phase))
    except NonconvergenceError as e:
        status, message = MAX_ITER, str(e)
    except InfeasibleError as e:
        status, message = INFEASIBLE, str(e)
    finally:
        t.close()

    record(snap, 0.0, branch)
    return finish(snap.x, snap.f, snap.E, status, trace, message)


class PasaSolver(object):
    """Polyhedral active set solver

    Config values are given as kwargs (any leaf of pasa_default_config may be
    named directly, e.g. PasaSolver(eps=1e-10, alpha=2.0)) and may be
    overridden again for a single call to solve().

    Example:
        >>> solver = PasaSolver(verbose=False)
        >>> result = solver.solve(obj, poly, x0, max_iter=500)
    """

    def __init__(self, **kwargs):
        self.config = recursive_merge_dicts(pasa_default_config, kwargs)
        # Fail fast on invalid parameters
        PasaParams.from_config(self.config)
        if self.config["seed"] is not None:
            set_seed(self.config["seed"])
        self.result = None

    def solve(self, obj, poly, x0, **kwargs):
        """Runs the solver; kwargs override the config for this run only

        Args:
            obj: an Objective
            poly: a Polyhedron
            x0: a starting point (need not be feasible)
        Returns:
            a SolveResult
        """
        config = recursive_merge_dicts(self.config, kwargs)
        solve_config = config["solve_config"]
        params = PasaParams.from_config(config)
        verbose = bool(config["verbose"])

        writer = None
        if solve_config["writer"] == "json":
            writer = LogWriter(verbose=verbose, **solve_config["writer_config"])
        elif solve_config["writer"] is not None:
            raise InputError(f"Unrecognized writer: {solve_config['writer']}")

        logger = None
        if solve_config["logger"]:
            logger = Logger(
                solve_config["logger_config"], writer=writer, verbose=verbose
            )

        self.result = solve(
            obj,
            poly,
            x0,
            params,
            logger=logger,
            progress_bar=solve_config["progress_bar"] and verbose,
            check_gradient=solve_config["check_gradient"],
        )
        if verbose:
            print(f"Finished: {self.result}")
        if writer is not None:
            writer.write(config=config, result=self.result.to_dict())
        return self.result
