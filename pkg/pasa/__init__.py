from .polyhedron import Face, Polyhedron, active_set, make_face
from .problems import Objective, quadratic_objective, rosenbrock_objective
from .projection import ProjectionResult, project, project_face
from .solver import PasaParams, PasaSolver, SolveResult, solve

__all__ = [
    "Face",
    "Objective",
    "PasaParams",
    "PasaSolver",
    "Polyhedron",
    "ProjectionResult",
    "SolveResult",
    "active_set",
    "make_face",
    "project",
    "project_face",
    "quadratic_objective",
    "rosenbrock_objective",
    "solve",
]

__version__ = "0.1.0"
