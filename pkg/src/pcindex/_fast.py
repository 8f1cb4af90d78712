"""Vectorized index evaluation for the robustness experiment.

The experiment evaluates the same fourteen indices on thousands of
matrices that all share one combinatorial skeleton: the complete graph
on n vertices, thinned edge by edge.  Everything combinatorial — the
canonical simple cycles, the simple paths per pair, and their signed
edge-incidence rows — is tabulated once per n against the complete
graph.  Each concrete matrix then reduces to a vector of C(n,2)
log-entries (upper triangle, lexicographic slot order) plus boolean
masks saying which comparisons are still present, and a whole removal
chain is evaluated with array arithmetic.

The tables are built by the ordinary public enumerators on a dummy
complete matrix, so the fast path cannot drift combinatorially from
what the reference functions would produce; the numeric agreement is
pinned separately by tests that run both routes on the same stream.
"""

import functools
from typing import NamedTuple

import numpy as np

from .core import PCMatrix
from .graph import build_graph, enumerate_cycles, enumerate_paths

__all__ = ["Tables", "get_tables", "consistent_logvals", "indices_for_masks"]


class Tables(NamedTuple):
    """Per-n combinatorial tables over the complete graph.

    ``pairs`` lists the upper-triangle slots in lexicographic order;
    ``iu``/``ju`` are the slot endpoints; ``binc`` is the n x E signed
    vertex-edge incidence.  Cycle and path rows hold signed hop counts
    per slot (so ``rows @ logvals`` is the log cycle ratio / path
    product), and the ``need`` words are bitmasks of the slots a cycle
    or path uses.  Paths are grouped by pair; ``path_starts`` are the
    reduceat boundaries in lexicographic pair order.
    """

    n: int
    pairs: tuple
    iu: np.ndarray
    ju: np.ndarray
    binc: np.ndarray
    cyc_rows: np.ndarray
    cyc_need: np.ndarray
    path_rows: np.ndarray
    path_need: np.ndarray
    path_starts: np.ndarray


@functools.lru_cache(maxsize=None)
def get_tables(n):
    """Build (or fetch cached) tables for size n using the public enumerators."""
    g = build_graph(PCMatrix(np.ones((n, n))))
    pairs = g.edges  # complete graph: all (i, j), i < j, lexicographic
    ecount = len(pairs)
    slot = {p: s for s, p in enumerate(pairs)}
    iu = np.array([p[0] for p in pairs])
    ju = np.array([p[1] for p in pairs])
    binc = np.zeros((n, ecount))
    for s, (i, j) in enumerate(pairs):
        binc[i, s] = 1.0
        binc[j, s] = -1.0

    def signed_row(hops):
        row = np.zeros(ecount)
        need = 0
        for a, b in hops:
            if a < b:
                s = slot[(a, b)]
                row[s] += 1.0
            else:
                s = slot[(b, a)]
                row[s] -= 1.0
            need |= 1 << s
        return row, need

    cyc_rows = []
    cyc_need = []
    for c in enumerate_cycles(g, 3):
        vs = c.vertices
        row, need = signed_row(list(zip(vs, vs[1:])) + [(vs[-1], vs[0])])
        cyc_rows.append(row)
        cyc_need.append(need)

    path_rows = []
    path_need = []
    starts = []
    for i, j in pairs:
        starts.append(len(path_rows))
        for p in enumerate_paths(g, i, j):
            vs = p.vertices
            row, need = signed_row(list(zip(vs, vs[1:])))
            path_rows.append(row)
            path_need.append(need)

    return Tables(
        n,
        tuple(pairs),
        iu,
        ju,
        binc,
        np.array(cyc_rows),
        np.array(cyc_need, dtype=np.uint64),
        np.array(path_rows),
        np.array(path_need, dtype=np.uint64),
        np.array(starts, dtype=np.intp),
    )


def consistent_logvals(t, logw):
    """Slot vector of a consistent matrix with hidden log-weights logw."""
    return logw[t.iu] - logw[t.ju]


def indices_for_masks(t, logvals, masks, alpha=0.5, beta=0.3):
    """All fourteen index values for each mask row, in canonical name order.

    ``logvals`` is the (E,) log-entry vector of the underlying complete
    matrix; ``masks`` is (R, E) boolean, True where the comparison is
    kept.  Every mask row must describe a connected graph.  Returns an
    (R, 14) float array whose columns follow INDEX_NAMES.
    """
    n = t.n
    ecount = len(t.pairs)
    masks = np.asarray(masks, dtype=bool)
    if masks.ndim == 1:
        masks = masks[None, :]
    rows = masks.shape[0]

    bits = (masks.astype(np.uint64) << np.arange(ecount, dtype=np.uint64)).sum(axis=1)
    cyc_ok = (t.cyc_need[None, :] & ~bits[:, None]) == 0
    path_ok = (t.path_need[None, :] & ~bits[:, None]) == 0

    logr = t.cyc_rows @ logvals
    r = np.exp(logr)
    ks = np.minimum(np.abs(1.0 - r), np.abs(1.0 - 1.0 / r))
    pi = np.exp(t.path_rows @ logvals)

    # log least-squares weights for every mask row in one batched solve
    w_edge = masks.astype(float)
    lap = np.einsum("ie,re,je->rij", t.binc, w_edge, t.binc)
    rhs = (w_edge * logvals[None, :]) @ t.binc.T
    x = np.zeros((rows, n))
    x[:, 1:] = np.linalg.solve(lap[:, 1:, 1:], rhs[:, 1:, None])[:, :, 0]
    w = np.exp(x)
    w /= w.sum(axis=1, keepdims=True)

    diffs = x[:, t.iu] - x[:, t.ju]
    res2 = np.where(masks, (logvals[None, :] - diffs) ** 2, 0.0)
    s = res2.sum(axis=1)
    m_alive = masks.sum(axis=1)
    den_def = np.where(masks, logvals[None, :] ** 2, 0.0).sum(axis=1)
    den_miss = np.where(masks, 0.0, diffs**2).sum(axis=1)
    gci1 = 2.0 * s / ((n - 1) * (n - 2))
    gci2 = s / m_alive
    lls = 2.0 * s
    re2 = _ratio_or_zero(s, den_def)
    re1 = _ratio_or_zero(s, den_def + den_miss)

    # dense matrices per row for the two spectral indices and GW
    b0 = np.zeros((rows, n, n))
    b0[:, t.iu, t.ju] = np.where(masks, np.exp(logvals)[None, :], 0.0)
    b0[:, t.ju, t.iu] = np.where(masks, np.exp(-logvals)[None, :], 0.0)
    deg = masks @ np.abs(t.binc).T  # (R, n) defined off-diagonal count per row
    diag = np.arange(n)

    harker = b0.copy()
    harker[:, diag, diag] = 1.0 + (n - 1) - deg
    stack = np.concatenate([harker, b0 / deg[:, :, None]], axis=0)
    rho = np.abs(np.linalg.eigvals(stack)).max(axis=1)
    ci = np.maximum(0.0, (rho[:rows] - n) / (n - 1))
    oliva = np.maximum(0.0, rho[rows:] - 1.0)

    vfull = b0.copy()
    vfull[:, diag, diag] = 1.0
    cstar = vfull / vfull.sum(axis=1)[:, None, :]
    dmask = np.zeros((rows, n, n), dtype=bool)
    dmask[:, t.iu, t.ju] = masks
    dmask[:, t.ju, t.iu] = masks
    dmask[:, diag, diag] = True
    om = np.where(dmask, w[:, :, None], 0.0)
    ostar = om / om.sum(axis=1)[:, None, :]
    gw = np.abs(cstar - ostar).sum(axis=(1, 2)) / n

    out = np.empty((rows, 14))
    for q in range(rows):
        alive = ks[cyc_ok[q]]
        if alive.size:
            kt = float(alive.max())
            i1 = float(alive.mean())
            i2 = float(np.sqrt((alive**2).sum()) / alive.size)
        else:
            kt = i1 = i2 = 0.0
        lo = np.minimum.reduceat(np.where(path_ok[q], pi, np.inf), t.path_starts)
        hi = np.maximum.reduceat(np.where(path_ok[q], pi, -np.inf), t.path_starts)
        sh = 2.0 / (n * (n - 1)) * float(((hi - lo) / ((1.0 + hi) * (1.0 + lo))).sum())
        out[q, 0] = kt
        out[q, 1] = i1
        out[q, 2] = i2
        out[q, 3] = alpha * kt + (1.0 - alpha) * i1
        out[q, 4] = beta * kt + beta * i1 + (1.0 - 2.0 * beta) * i2
        out[q, 5] = sh
    out[:, 6] = gci1
    out[:, 7] = gci2
    out[:, 8] = gw
    out[:, 9] = re1
    out[:, 10] = re2
    out[:, 11] = ci
    out[:, 12] = lls
    out[:, 13] = oliva
    return out


def _ratio_or_zero(num, den):
    safe = np.where(den > 0.0, den, 1.0)
    return np.where(den > 0.0, num / safe, 0.0)
