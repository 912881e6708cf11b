from .driver import (
    CONVERGED,
    INFEASIBLE,
    LINE_SEARCH_FAILURE,
    MAX_ITER,
    STATUSES,
    TRACE_COLUMNS,
    IterateTrace,
    PasaSolver,
    SolveResult,
    solve,
    trace_frame,
)
from .params import PasaParams
from .pasa_defaults import pasa_default_config
from .phase_one import GpaStep, gpa_step
from .phase_two import LcoState, lco_startup_step, lco_step, start_episode

__all__ = [
    "CONVERGED",
    "GpaStep",
    "INFEASIBLE",
    "IterateTrace",
    "LINE_SEARCH_FAILURE",
    "LcoState",
    "MAX_ITER",
    "PasaParams",
    "PasaSolver",
    "STATUSES",
    "SolveResult",
    "TRACE_COLUMNS",
    "gpa_step",
    "lco_startup_step",
    "lco_step",
    "pasa_default_config",
    "solve",
    "start_episode",
    "trace_frame",
]
