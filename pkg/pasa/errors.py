class PasaError(Exception):
    """Base class for all errors raised by pasa."""


class InputError(PasaError, ValueError):
    """Malformed input: dimension mismatch, invalid parameter or bad problem file.

    Args:
        msg: (str) the message
        line: (int) optional 1-based line number in a problem file
    """

    def __init__(self, msg, line=None):
        self.line = line
        if line is not None:
            msg = f"line {line}: {msg}"
        super().__init__(msg)


class InfeasibleError(PasaError):
    """The polyhedron (or a face of it) has no feasible point."""


class NonconvergenceError(PasaError):
    """An iteration cap was exceeded before an inner solve converged."""


class LineSearchError(PasaError):
    """The Armijo backtracking exceeded its cap without sufficient decrease."""


class DiagnosticError(PasaError):
    """A diagnostic quantity could not be computed (e.g. inconsistent system)."""


class StationarySignal(PasaError):
    """Raised by a phase step whose search direction vanishes.

    The caller is expected to verify stationarity and terminate.
    """
