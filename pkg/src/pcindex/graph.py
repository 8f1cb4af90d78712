"""Graph view of a PC matrix: connectivity, simple cycles, simple paths, degrees.

Every defined comparison {i, j} is one undirected edge carrying the two
labels c_ij and c_ji = 1/c_ij.  A ranking is derivable exactly when this
graph is connected (the matrix is then called irreducible).  Cycles are
the carriers of inconsistency: the product of labels around a simple
cycle equals 1 iff the judgments along it are mutually consistent.
"""

from typing import NamedTuple

import numpy as np

from .core import PCError

__all__ = [
    "ComparisonGraph",
    "Cycle",
    "Path",
    "CycleCapExceeded",
    "NoPath",
    "build_graph",
    "is_irreducible",
    "enumerate_cycles",
    "enumerate_paths",
    "cycle_ratio",
    "cycle_inconsistency",
    "path_product",
    "degree_matrix",
]

# Beyond this size the number of simple cycles explodes; an explicit
# max_cycles cap is required from the caller.
FREE_ENUMERATION_LIMIT = 8


class CycleCapExceeded(PCError):
    """Cycle enumeration would exceed the allowed count."""


class NoPath(PCError):
    """No simple path exists between the requested vertices."""


class Cycle(NamedTuple):
    """Simple cycle in canonical form.

    ``vertices`` starts at the smallest vertex of the cycle and runs in
    the direction whose second vertex is smaller than its last, so each
    direction-equivalence class appears exactly once.
    """

    vertices: tuple


class Path(NamedTuple):
    """Simple path: distinct vertices, consecutive pairs are edges."""

    vertices: tuple


class ComparisonGraph:
    """Undirected labeled view of a PC matrix (one edge per defined pair)."""

    def __init__(self, n, values, defined):
        self.n = n
        self._values = values
        self._defined = defined
        edges = []
        adj = [[] for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if defined[i, j]:
                    edges.append((i, j))
                    adj[i].append(j)
                    adj[j].append(i)
        self.edges = tuple(edges)
        self._adj = tuple(tuple(sorted(a)) for a in adj)

    def has_edge(self, i, j):
        return i != j and bool(self._defined[i, j])

    def neighbors(self, i):
        return self._adj[i]

    def degree(self, i):
        return len(self._adj[i])

    def label(self, i, j):
        """The ratio c_ij for a defined ordered pair; KeyError otherwise."""
        if i == j or not self._defined[i, j]:
            raise KeyError("no comparison between %d and %d" % (i, j))
        return float(self._values[i, j])

    def __repr__(self):
        return "ComparisonGraph(n=%d, edges=%d)" % (self.n, len(self.edges))


def build_graph(m):
    """ComparisonGraph of a PCMatrix; edges are its defined pairs."""
    return ComparisonGraph(m.n, m.values, m.defined)


def is_irreducible(g):
    """True iff the comparison graph is connected.

    For reciprocal matrices every defined comparison contributes both
    directed arcs, so undirected connectivity coincides with strong
    connectivity of the directed labeling.
    """
    n = g.n
    seen = [False] * n
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        v = stack.pop()
        for u in g.neighbors(v):
            if not seen[u]:
                seen[u] = True
                count += 1
                stack.append(u)
    return count == n


def enumerate_cycles(g, min_len=3, max_cycles=None):
    """All simple cycles of length >= min_len, canonical, in lexicographic order.

    Each direction-equivalence class is returned once (a cycle and its
    reversal describe the same judgment loop; their ratios are mutual
    reciprocals and their inconsistency is identical).  The search fixes
    the smallest cycle vertex as the start and keeps the direction with
    second < last, which also makes the output order deterministic.

    With ``max_cycles=None`` enumeration is unlimited for n <= 8 and
    refused above (pass an explicit cap to override); when a cap is
    given, exceeding it raises CycleCapExceeded.
    """
    if min_len < 3:
        raise ValueError("min_len must be at least 3, got %r" % (min_len,))
    if max_cycles is None and g.n > FREE_ENUMERATION_LIMIT:
        raise CycleCapExceeded(
            "refusing unbounded cycle enumeration for n=%d > %d; pass max_cycles"
            % (g.n, FREE_ENUMERATION_LIMIT)
        )
    out = []
    adj = g._adj
    path = []
    on_path = set()

    def extend(v, start):
        for u in adj[v]:
            if u == start and len(path) >= min_len and path[1] < path[-1]:
                out.append(Cycle(tuple(path)))
                if max_cycles is not None and len(out) > max_cycles:
                    raise CycleCapExceeded(
                        "more than max_cycles=%d simple cycles" % max_cycles
                    )
            if u <= start or u in on_path:
                continue
            path.append(u)
            on_path.add(u)
            extend(u, start)
            path.pop()
            on_path.remove(u)

    for s in range(g.n):
        path[:] = [s]
        on_path = {s}
        extend(s, s)
    return out


def enumerate_paths(g, i, j):
    """All simple paths from i to j, in lexicographic vertex order.

    Includes the single-edge path when {i, j} is an edge.  Raises NoPath
    when the graph offers no route (it is then disconnected).
    """
    if i == j:
        raise ValueError("endpoints must differ")
    n = g.n
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError("vertex out of range")
    out = []
    adj = g._adj
    path = [i]
    on_path = {i}

    def extend(v):
        for u in adj[v]:
            if u == j:
                out.append(Path(tuple(path) + (j,)))
            elif u not in on_path:
                path.append(u)
                on_path.add(u)
                extend(u)
                path.pop()
                on_path.remove(u)

    extend(i)
    if not out:
        raise NoPath("no path between %d and %d" % (i, j))
    return out


def cycle_ratio(g, s):
    """Product of labels along the cycle divided by the closing label.

    Equals 1 exactly when the judgments along the cycle agree with the
    direct judgment between its endpoints.  Reversing the cycle maps the
    ratio to its reciprocal; rotations of the same cyclic sequence give
    the same value for reciprocal labels.
    """
    v = s.vertices
    r = 1.0
    for a, b in zip(v, v[1:]):
        r *= g.label(a, b)
    return r / g.label(v[0], v[-1])


def cycle_inconsistency(g, s):
    """min(|1 - R|, |1 - 1/R|) for the cycle ratio R; in [0, 1)."""
    r = cycle_ratio(g, s)
    return min(abs(1.0 - r), abs(1.0 - 1.0 / r))


def path_product(g, p):
    """Product of labels along a path (the induced indirect comparison)."""
    v = p.vertices
    r = 1.0
    for a, b in zip(v, v[1:]):
        r *= g.label(a, b)
    return r


def degree_matrix(g):
    """Diagonal integer matrix of vertex degrees (defined comparisons per row)."""
    d = np.zeros((g.n, g.n), dtype=int)
    for i in range(g.n):
        d[i, i] = g.degree(i)
    return d
