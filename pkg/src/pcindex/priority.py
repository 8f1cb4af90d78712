"""Priority vectors: eigenvector and least-squares ranking methods.

Complete matrices support the principal-eigenvector method (EVM) and the
geometric-mean method (GMM).  Incomplete matrices support Harker's
auxiliary-matrix eigenvector method and the incomplete logarithmic
least-squares method (ILLS), which solves a graph-Laplacian system for
log-weights and reduces to GMM when nothing is missing.  All methods
return weights normalized to sum 1.
"""

from typing import NamedTuple

import numpy as np

from .core import NotComplete, NotIrreducible, PCError, is_complete
from .graph import build_graph, is_irreducible

__all__ = [
    "EigenResult",
    "NotConverged",
    "ReducibleInput",
    "SingularSystem",
    "principal_eigen",
    "evm",
    "gmm",
    "harker_matrix",
    "harker_rank",
    "ills",
]

EIGEN_TOL = 1e-13
EIGEN_MAX_ITER = 100000


class NotConverged(PCError):
    """Power iteration failed to converge within the iteration budget."""


class ReducibleInput(PCError):
    """The matrix is reducible; no unique positive principal pair exists."""


class SingularSystem(PCError):
    """The least-squares normal equations are singular."""


class EigenResult(NamedTuple):
    """Principal eigenvalue and its positive eigenvector (normalized to sum 1)."""

    value: float
    vector: np.ndarray


def _strongly_connected(pattern):
    """Strong connectivity of the directed nonzero pattern (boolean matrix)."""
    n = pattern.shape[0]
    for mat in (pattern, pattern.T):
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        stack = [0]
        while stack:
            v = stack.pop()
            nxt = np.flatnonzero(mat[v] & ~seen)
            seen[nxt] = True
            stack.extend(nxt.tolist())
        if not seen.all():
            return False
    return True


def principal_eigen(A, tol=EIGEN_TOL, max_iter=EIGEN_MAX_ITER):
    """Perron pair of a nonnegative irreducible matrix by power iteration.

    Iterates on A + I; the shift makes the dominant eigenvalue strictly
    separated in modulus even for periodic patterns (e.g. trees), so the
    iteration always converges for irreducible input.  The shift is
    subtracted from the reported eigenvalue.  Starts from the uniform
    vector for reproducibility; stops when the normalized iterate moves
    by at most ``tol`` relative to its largest entry.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("expected a square matrix, got shape %s" % (A.shape,))
    if (A < 0).any() or not np.isfinite(A).all():
        raise ValueError("matrix must be nonnegative and finite")
    n = A.shape[0]
    if not _strongly_connected(A > 0):
        raise ReducibleInput("matrix has a reducible nonzero pattern")
    M = A + np.eye(n)
    v = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        w = M @ v
        w /= w.sum()
        if np.max(np.abs(w - v)) <= tol * np.max(w):
            lam = float((M @ w).sum())  # w sums to 1, so this is the Rayleigh-like estimate
            return EigenResult(lam - 1.0, w)
        v = w
    raise NotConverged("power iteration did not converge in %d iterations" % max_iter)


def evm(m):
    """Eigenvector priorities of a complete matrix (principal right eigenvector)."""
    if not is_complete(m):
        raise NotComplete("the eigenvector method needs a complete matrix")
    return principal_eigen(m.values).vector


def gmm(m):
    """Geometric-mean priorities of a complete matrix: w_i ~ (prod_j c_ij)^(1/n)."""
    if not is_complete(m):
        raise NotComplete("the geometric-mean method needs a complete matrix")
    w = np.exp(np.log(m.values).mean(axis=1))
    return w / w.sum()


def harker_matrix(m):
    """Harker's auxiliary matrix B: missing -> 0, b_ii = 1 + (missing count in row i)."""
    d = m.defined
    B = np.where(d, m.values, 0.0)
    miss = (~d).sum(axis=1)
    np.fill_diagonal(B, 1.0 + miss)
    return B


def harker_rank(m):
    """Principal pair of Harker's auxiliary matrix (works on incomplete input).

    On complete input B equals the matrix itself, so this coincides with
    the plain eigenvector method.  The eigenvalue is n exactly when the
    defined entries admit a consistent completion.
    """
    if not is_irreducible(build_graph(m)):
        raise NotIrreducible("comparison graph is disconnected")
    return principal_eigen(harker_matrix(m))


def ills(m, diagonal="degree"):
    """Incomplete logarithmic least-squares priorities.

    Minimizes sum over defined i != j of (ln c_ij - x_i + x_j)^2 in the
    log-weights x, which yields the graph-Laplacian normal equations
    L x = g with L = degrees - adjacency over defined pairs and
    g_i = sum of ln c_ij over row i's defined entries.  The solution is
    anchored at x_1 = 0 by eliminating the first row and column, then
    exponentiated and normalized.  On a complete matrix this is exactly
    the geometric-mean vector; on a consistent matrix it reproduces
    every defined ratio.

    ``diagonal="missing"`` swaps the Laplacian diagonal for the count of
    missing entries per row.  That variant exists only so the two
    readings can be compared side by side; it does not minimize the
    criterion above and is not used anywhere else.
    """
    if not is_irreducible(build_graph(m)):
        raise NotIrreducible("comparison graph is disconnected")
    n = m.n
    off = m.defined.copy()
    np.fill_diagonal(off, False)
    deg = off.sum(axis=1)
    logs = np.zeros((n, n))
    logs[off] = np.log(m.values[off])
    g = logs.sum(axis=1)
    adj = off.astype(float)
    if diagonal == "degree":
        lap = np.diag(deg.astype(float)) - adj
    elif diagonal == "missing":
        lap = np.diag((n - 1.0) - deg) - adj
    else:
        raise ValueError("diagonal must be 'degree' or 'missing', got %r" % (diagonal,))
    try:
        x_rest = np.linalg.solve(lap[1:, 1:], g[1:])
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from None
    x = np.concatenate(([0.0], x_rest))
    w = np.exp(x)
    return w / w.sum()
