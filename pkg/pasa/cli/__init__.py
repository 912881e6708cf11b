from .main import main, run_cli
from .problem_file import (
    ProblemFile,
    format_problem,
    load_problem,
    parse_problem,
    read_problem,
)

__all__ = [
    "ProblemFile",
    "format_problem",
    "load_problem",
    "main",
    "parse_problem",
    "read_problem",
    "run_cli",
]
