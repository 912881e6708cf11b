from .objectives import (
    Objective,
    quadratic_objective,
    rosenbrock_objective,
    torch_objective,
)
from .oracles import brute_force_project, kkt_residual
from .suites import (
    KnownSolution,
    box,
    box_qp,
    degenerate_qp_suite,
    halfplane,
    simplex,
)

__all__ = [
    "KnownSolution",
    "Objective",
    "box",
    "box_qp",
    "brute_force_project",
    "degenerate_qp_suite",
    "halfplane",
    "kkt_residual",
    "quadratic_objective",
    "rosenbrock_objective",
    "simplex",
    "torch_objective",
]
