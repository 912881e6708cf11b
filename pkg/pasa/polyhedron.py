import numpy as np

from pasa.errors import InputError
from pasa.utils import as_index_set, as_matrix, as_vector

ACT_TOL = 1e-10
FEAS_TOL = 1e-9


class Polyhedron(object):
    """The feasible set Omega = {x : A x <= b}

    Args:
        A: an [m, n] array-like constraint matrix (m = 0 means Omega = R^n)
        b: an m-dim array-like bound vector
        n: (int) the dimension; required only when m = 0 and A is empty

    Values are treated as immutable once constructed.
    """

    def __init__(self, A, b, n=None):
        b = as_vector(b, name="b") if np.size(b) else np.zeros(0)
        if np.size(A) == 0:
            if n is None:
                n = np.shape(A)[1] if np.ndim(A) == 2 else None
            if n is None:
                raise InputError("The dimension n is required when A is empty.")
            A = np.zeros((0, n))
        A = as_matrix(A, n_cols=n, name="A")
        if A.shape[0] != b.shape[0]:
            raise InputError(
                f"A has {A.shape[0]} rows but b has {b.shape[0]} entries."
            )
        self.A = A
        self.b = b
        self.A.setflags(write=False)
        self.b.setflags(write=False)

    @property
    def m(self):
        return self.A.shape[0]

    @property
    def n(self):
        return self.A.shape[1]

    def __repr__(self):
        return f"Polyhedron(m={self.m}, n={self.n})"

    def check_point(self, x, name="x"):
        return as_vector(x, n=self.n, name=name)

    def act_tols(self, act_tol=ACT_TOL):
        """Per-row activity tolerances act_tol * (1 + |b_i|)"""
        return act_tol * (1.0 + np.abs(self.b))


class Face(object):
    """A face of a polyhedron: rows in equality_rows pinned at equality, the
    remaining rows kept as inequalities

    Args:
        base: the Polyhedron
        equality_rows: an iterable of row indices (stored ascending, unique)
    """

    def __init__(self, base, equality_rows=()):
        self.base = base
        self.equality_rows = as_index_set(equality_rows, base.m)

    @property
    def A_eq(self):
        return self.base.A[list(self.equality_rows)]

    @property
    def b_eq(self):
        return self.base.b[list(self.equality_rows)]

    def contains(self, x, act_tol=ACT_TOL, feas_tol=FEAS_TOL):
        """Membership test with the activity/feasibility tolerances"""
        r = residual(self.base, x)
        if self.base.m == 0:
            return True
        E = list(self.equality_rows)
        tols = self.base.act_tols(act_tol)
        on_face = np.all(np.abs(r[E]) <= tols[E])
        mask = np.ones(self.base.m, dtype=bool)
        mask[E] = False
        return bool(on_face and np.all(r[mask] <= feas_tol))

    def grow(self, rows):
        """The face with rows added to the equality set; faces only shrink"""
        return Face(self.base, set(self.equality_rows) | set(rows))

    def __repr__(self):
        return f"Face(equality_rows={self.equality_rows}, base={self.base})"


def residual(poly, x):
    """Returns A x - b (empty when m = 0)"""
    x = poly.check_point(x)
    return poly.A @ x - poly.b


def active_set(poly, x, act_tol=ACT_TOL):
    """Indices i with (A x - b)_i >= -act_tol * (1 + |b_i|), ascending

    The complement is the free set F(x).
    """
    r = residual(poly, x)
    return tuple(int(i) for i in np.flatnonzero(r >= -poly.act_tols(act_tol)))


def free_set(poly, x, act_tol=ACT_TOL):
    active = set(active_set(poly, x, act_tol))
    return tuple(i for i in range(poly.m) if i not in active)


def is_feasible(poly, x, feas_tol=FEAS_TOL):
    """True iff max_i (A x - b)_i <= feas_tol"""
    r = residual(poly, x)
    return bool(r.size == 0 or np.max(r) <= feas_tol)


def make_face(poly, active):
    """The face Omega_k of poly keeping the rows in `active` at equality"""
    return Face(poly, active)
