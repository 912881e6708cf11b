"""The line-oriented problem file format.

    # comments and blank lines are ignored
    pasa-problem v1
    n 2
    m 4
    A
    1 0
    0 1
    -1 0
    0 -1
    b
    1 1 0 0
    objective quadratic
    Q
    1 0
    0 1
    c
    -2 -2
    x0
    3 3

The A and b sections are omitted when m = 0; Q and c appear only for the
quadratic objective (the other choice is `objective rosenbrock`).
"""

import numpy as np

from pasa.errors import InputError
from pasa.polyhedron import Polyhedron
from pasa.problems.objectives import quadratic_objective, rosenbrock_objective

HEADER = "pasa-problem v1"
OBJECTIVES = ("quadratic", "rosenbrock")


class ProblemFile(object):
    """The contents of a problem file

    Args:
        n, m: (int) dimensions
        A: an [m, n] np.ndarray
        b: an m-dim np.ndarray
        objective: (str) 'quadratic' or 'rosenbrock'
        Q, c: the quadratic data (None for rosenbrock)
        x0: the starting point
    """

    def __init__(self, n, m, A, b, objective, x0, Q=None, c=None):
        self.n = n
        self.m = m
        self.A = A
        self.b = b
        self.objective = objective
        self.x0 = x0
        self.Q = Q
        self.c = c

    def build(self):
        """Returns (Objective, Polyhedron, x0)"""
        poly = Polyhedron(self.A, self.b, n=self.n)
        if self.objective == "quadratic":
            obj = quadratic_objective(self.Q, self.c)
        else:
            obj = rosenbrock_objective(self.n)
        return obj, poly, self.x0.copy()


class _Lines(object):
    """Cursor over the meaningful (non-blank, comment-stripped) lines"""

    def __init__(self, text):
        self.lines = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                self.lines.append((lineno, line))
        self.pos = 0

    @property
    def lineno(self):
        if self.pos < len(self.lines):
            return self.lines[self.pos][0]
        return self.lines[-1][0] + 1 if self.lines else 1

    def next(self, expecting):
        if self.pos >= len(self.lines):
            msg = f"Unexpected end of file, expecting {expecting}."
            raise InputError(msg, self.lineno)
        lineno, line = self.lines[self.pos]
        self.pos += 1
        return lineno, line

    def keyword(self, word):
        lineno, line = self.next(f"'{word}'")
        tokens = line.split()
        if tokens[0] != word:
            raise InputError(f"Expected '{word}', found '{tokens[0]}'.", lineno)
        return lineno, tokens[1:]

    def count(self, word):
        lineno, rest = self.keyword(word)
        if len(rest) != 1:
            raise InputError(f"'{word}' takes exactly one integer.", lineno)
        try:
            value = int(rest[0])
        except ValueError:
            raise InputError(f"'{word}' must be an integer, not '{rest[0]}'.", lineno)
        if value < 0:
            raise InputError(f"'{word}' must be nonnegative.", lineno)
        return value

    def row(self, length, what):
        lineno, line = self.next(what)
        tokens = line.split()
        if len(tokens) != length:
            raise InputError(
                f"{what} must have {length} entries, found {len(tokens)}.", lineno
            )
        try:
            values = np.array([float(t) for t in tokens], dtype=np.float64)
        except ValueError as e:
            raise InputError(f"Malformed number in {what}: {e}.", lineno)
        if not np.all(np.isfinite(values)):
            raise InputError(f"{what} contains non-finite entries.", lineno)
        return values

    def block(self, word, n_rows, length):
        self.keyword(word)
        return np.array([self.row(length, f"row {i} of {word}") for i in range(n_rows)])

    def finish(self):
        if self.pos < len(self.lines):
            lineno, line = self.lines[self.pos]
            raise InputError(f"Unexpected trailing content '{line}'.", lineno)


def read_problem(text):
    """Parse problem file text into a ProblemFile (raises InputError with the
    offending line number)"""
    lines = _Lines(text)
    lineno, header = lines.next(f"'{HEADER}'")
    if header.split() != HEADER.split():
        raise InputError(f"Expected header '{HEADER}', found '{header}'.", lineno)
    n = lines.count("n")
    m = lines.count("m")
    if m > 0:
        A = lines.block("A", m, n)
        lines.keyword("b")
        b = lines.row(m, "b")
    else:
        A, b = np.zeros((0, n)), np.zeros(0)

    lineno, rest = lines.keyword("objective")
    if len(rest) != 1 or rest[0] not in OBJECTIVES:
        raise InputError(f"Unknown objective {' '.join(rest)!r}.", lineno)
    objective = rest[0]
    Q = c = None
    if objective == "quadratic":
        q_lineno = lines.lineno
        Q = lines.block("Q", n, n)
        if np.max(np.abs(Q - Q.T), initial=0.0) > 1e-12:
            raise InputError("Q must be symmetric.", q_lineno)
        lines.keyword("c")
        c = lines.row(n, "c")
    elif n < 2:
        raise InputError("The rosenbrock objective needs n >= 2.", lineno)

    lines.keyword("x0")
    x0 = lines.row(n, "x0")
    lines.finish()
    return ProblemFile(n, m, A, b, objective, x0, Q=Q, c=c)


def parse_problem(text):
    """Parse problem file text into (Objective, Polyhedron, x0)"""
    return read_problem(text).build()


def load_problem(path):
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise InputError(f"Cannot read problem file {path}: {e.strerror}.")
    return read_problem(text)


def _format_row(values):
    # repr gives the shortest string that parses back to the same double
    return " ".join(repr(float(v)) for v in values)


def format_problem(problem):
    """Emit a ProblemFile as text that read_problem parses back exactly"""
    out = [HEADER, f"n {problem.n}", f"m {problem.m}"]
    if problem.m > 0:
        out.append("A")
        out.extend(_format_row(row) for row in problem.A)
        out.append("b")
        out.append(_format_row(problem.b))
    out.append(f"objective {problem.objective}")
    if problem.objective == "quadratic":
        out.append("Q")
        out.extend(_format_row(row) for row in problem.Q)
        out.append("c")
        out.append(_format_row(problem.c))
    out.append("x0")
    out.append(_format_row(problem.x0))
    return "\n".join(out) + "\n"
