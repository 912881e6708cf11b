import numpy as np
import torch

from pasa.errors import InputError
from pasa.utils import as_matrix, as_vector


class Objective(object):
    """A smooth objective f: R^n -> R with its gradient

    Args:
        value: a callable x -> f(x) (float)
        gradient: a callable x -> g(x) (n-dim array-like)
        dimension: (int) n
        lipschitz_hint: (float) an optional Lipschitz constant kappa of the
            gradient, used only by diagnostics and tests
        name: (str) a label for logs and CLI output

    Callbacks must be pure: the same x always gives the same value and
    gradient. Evaluation counts are kept in n_value_evals / n_gradient_evals.
    """

    def __init__(self, value, gradient, dimension, lipschitz_hint=None, name=None):
        self._value = value
        self._gradient = gradient
        self.dimension = int(dimension)
        self.lipschitz_hint = lipschitz_hint
        self.name = name or "objective"
        self.n_value_evals = 0
        self.n_gradient_evals = 0

    def __repr__(self):
        return f"Objective(name={self.name}, dimension={self.dimension})"

    def value(self, x):
        self.n_value_evals += 1
        return float(self._value(as_vector(x, n=self.dimension, name="x")))

    def gradient(self, x):
        self.n_gradient_evals += 1
        g = self._gradient(as_vector(x, n=self.dimension, name="x"))
        return as_vector(g, n=self.dimension, name="gradient")

    def gradient_error(self, x, h=1e-6):
        """Relative gap between g(x) and its central finite-difference estimate

        The step in coordinate i is h * (1 + |x_i|); the gap is measured in the
        inf-norm relative to max(1, ||g(x)||_inf).
        """
        x = as_vector(x, n=self.dimension, name="x")
        g = self.gradient(x)
        g_fd = np.zeros(self.dimension)
        for i in range(self.dimension):
            step = h * (1.0 + abs(x[i]))
            e = np.zeros(self.dimension)
            e[i] = step
            g_fd[i] = (self.value(x + e) - self.value(x - e)) / (2 * step)
        return float(np.max(np.abs(g - g_fd)) / max(1.0, np.max(np.abs(g))))

    def check_gradient(self, x, rel_tol=1e-5):
        """Raises an InputError if the gradient disagrees with finite
        differences of the value at x; returns the relative gap otherwise"""
        err = self.gradient_error(x)
        if err > rel_tol:
            raise InputError(
                f"Gradient of {self.name} disagrees with finite differences "
                f"(relative error {err:.3e} > {rel_tol:.1e})."
            )
        return err


def quadratic_objective(Q, c, constant=0.0, name="quadratic"):
    """f(x) = 1/2 x^T Q x + c^T x + constant with g(x) = Q x + c

    Example:
        >>> quadratic_objective(2 * np.eye(2), [-4, -4]).value([1, 1])
        -6.0
    """
    c = as_vector(c, name="c")
    n = c.shape[0]
    Q = as_matrix(Q, n_cols=n, name="Q")
    if Q.shape != (n, n):
        raise InputError(f"Q must be {n}x{n}, got shape {Q.shape}.")
    if np.max(np.abs(Q - Q.T), initial=0.0) > 1e-12:
        raise InputError("Q must be symmetric.")
    Q.setflags(write=False)
    c.setflags(write=False)

    obj = Objective(
        lambda x: 0.5 * x @ Q @ x + c @ x + constant,
        lambda x: Q @ x + c,
        n,
        lipschitz_hint=float(np.linalg.norm(Q, 2)) if n else 0.0,
        name=name,
    )
    obj.Q = Q
    obj.c = c
    return obj


def rosenbrock_objective(n=2):
    """f(x) = sum_{i<n} 100 (x_{i+1} - x_i^2)^2 + (1 - x_i)^2"""
    if n < 2:
        raise InputError(f"Rosenbrock needs n >= 2, not {n}.")

    def value(x):
        x = np.asarray(x, dtype=np.float64)
        return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (1.0 - x[:-1]) ** 2))

    def gradient(x):
        x = np.asarray(x, dtype=np.float64)
        inner = x[1:] - x[:-1] ** 2
        g = np.zeros_like(x)
        g[:-1] = -400.0 * x[:-1] * inner - 2.0 * (1.0 - x[:-1])
        g[1:] += 200.0 * inner
        return g

    return Objective(value, gradient, n, name=f"rosenbrock{n}")


def torch_objective(fn, n, lipschitz_hint=None, name="torch"):
    """An Objective whose gradient comes from torch.autograd

    Args:
        fn: a callable mapping a float64 torch.Tensor of shape [n] to a scalar
            tensor
        n: (int) the dimension
    """

    def value(x):
        with torch.no_grad():
            return fn(torch.as_tensor(np.asarray(x), dtype=torch.float64)).item()

    def gradient(x):
        X = torch.tensor(np.asarray(x), dtype=torch.float64, requires_grad=True)
        fn(X).backward()
        return X.grad.detach().numpy().copy()

    return Objective(value, gradient, n, lipschitz_hint=lipschitz_hint, name=name)
