"""Robustness experiment: how much does each index move when comparisons vanish?

The protocol: draw hidden weights and build an exactly consistent
matrix, disturb every upper-triangle entry by a random coefficient
gamma in [1/d, d] for disturbance levels d = 1..d_max, then delete
comparisons one at a time — always picking uniformly among the
deletions that keep the comparison graph connected — so each disturbed
matrix owns a chain C_0 ⊃ C_1 ⊃ ... of incomplete samples.  For every
index the rescaled ordered distance between the complete matrix and
its k-removal sample is averaged over the whole matrix set, giving a
curve D(index, k); the summed absolute curve is the robustness score
(smaller means the index reacts less to missing data).

Runs are deterministic for a given seed regardless of worker count:
each base matrix owns the substream seeded by (seed, ordinal), and the
reduction over bases is a fixed-order sum.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from . import _fast
from .core import BadSize, NotComplete, NotIrreducible, PCError, PCMatrix, is_complete
from .graph import build_graph, is_irreducible
from .indices import INDEX_NAMES, BadParams, BlendParams, all_indices

__all__ = [
    "BadK",
    "ExperimentConfig",
    "DistanceTable",
    "gen_consistent",
    "disturb",
    "remove_comparisons",
    "rescaled_distance",
    "run_experiment",
    "total_distance",
    "distance_csv",
    "totals_csv",
    "ranking",
]


class BadK(PCError):
    """Removal count outside 0..(defined pairs - spanning tree size)."""


@dataclass(frozen=True)
class ExperimentConfig:
    """Knobs of one experiment run.

    alpha parametrizes the max/mean blend; beta is the shared leading
    weight of the max/mean/rms blend.  weight_range bounds the hidden
    weights (log-uniform on [1/weight_range, weight_range]), so
    consistent entries stay within weight_range**2.  gamma_dist picks
    how the disturbance coefficient is drawn on [1/d, d]; with
    independent_removals each k gets a fresh removal set instead of the
    default nested chain.
    """

    n: int = 7
    base_matrices: int = 1000
    d_max: int = 30
    removals_max: int = 15
    alpha: float = 0.5
    beta: float = 0.3
    seed: int = 0
    weight_range: float = 3.0
    gamma_dist: str = "uniform"
    independent_removals: bool = False

    def __post_init__(self):
        if self.n < 3:
            raise BadParams("n must be at least 3, got %r" % (self.n,))
        if self.base_matrices < 1:
            raise BadParams("base_matrices must be positive, got %r" % (self.base_matrices,))
        if self.d_max < 1:
            raise BadParams("d_max must be at least 1, got %r" % (self.d_max,))
        spare = self.n * (self.n - 1) // 2 - (self.n - 1)
        if not 0 <= self.removals_max <= spare:
            raise BadParams(
                "removals_max must lie in 0..%d for n=%d, got %r"
                % (spare, self.n, self.removals_max)
            )
        BlendParams(self.alpha, 0.0)
        BlendParams(self.beta, self.beta)
        if self.weight_range < 1.0:
            raise BadParams("weight_range must be >= 1, got %r" % (self.weight_range,))
        if self.gamma_dist not in ("uniform", "loguniform"):
            raise BadParams("gamma_dist must be 'uniform' or 'loguniform', got %r" % (self.gamma_dist,))
        if not isinstance(self.seed, int):
            raise BadParams("seed must be an integer, got %r" % (self.seed,))


@dataclass(frozen=True)
class DistanceTable:
    """Mean rescaled distances D[index][k] plus the per-index totals."""

    index_names: tuple
    removals_max: int
    d: np.ndarray  # (len(index_names), removals_max + 1)
    totals: np.ndarray  # (len(index_names),)

    def value(self, index, k):
        return float(self.d[self.index_names.index(index), k])

    def total(self, index):
        return float(self.totals[self.index_names.index(index)])


def gen_consistent(n, rng, weight_range=3.0):
    """Exactly consistent complete matrix from hidden log-uniform weights."""
    if n < 3:
        raise BadSize("need at least 3 alternatives, got %d" % n)
    span = math.log(weight_range)
    u = np.exp(rng.uniform(-span, span, n))
    return PCMatrix(u[:, None] / u[None, :])


def disturb(m, d, rng, dist="uniform"):
    """Multiply each upper-triangle entry by its own gamma drawn from [1/d, d].

    d = 1 leaves the matrix unchanged (gamma is identically 1, and the
    draws still consume the same amount of randomness, so streams stay
    aligned across disturbance levels).  No clipping to any scale.
    """
    if not is_complete(m):
        raise NotComplete("disturbance needs a complete matrix")
    if d < 1:
        raise BadParams("disturbance level must be >= 1, got %r" % (d,))
    iu = np.triu_indices(m.n, 1)
    if dist == "uniform":
        gamma = rng.uniform(1.0 / d, float(d), iu[0].size)
    elif dist == "loguniform":
        gamma = np.exp(rng.uniform(-math.log(d), math.log(d), iu[0].size))
    else:
        raise BadParams("dist must be 'uniform' or 'loguniform', got %r" % (dist,))
    v = m.values.copy()
    v[iu] *= gamma
    return PCMatrix(v, scale_s=m.scale_s)


def _bridges(n, adj):
    """Bridge edges of a connected undirected graph as a set of (min, max) pairs.

    Standard lowlink DFS, iterative so it never hits recursion limits.
    ``adj`` is indexable by vertex and yields neighbor iterables.
    """
    disc = [-1] * n
    low = [0] * n
    found = set()
    disc[0] = low[0] = 0
    timer = 1
    stack = [(0, -1, iter(adj[0]))]
    while stack:
        v, parent, neigh = stack[-1]
        descended = False
        for u in neigh:
            if u == parent:
                continue
            if disc[u] == -1:
                disc[u] = low[u] = timer
                timer += 1
                stack.append((u, v, iter(adj[u])))
                descended = True
                break
            low[v] = min(low[v], disc[u])
        if not descended:
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if low[v] > disc[p]:
                    found.add((min(p, v), max(p, v)))
    return found


def _chain_step(n, pairs, alive, rng):
    """Slot of the next comparison to drop: uniform over non-bridge live edges.

    Shared by the public removal operation and the fast experiment path
    so both consume the random stream identically.
    """
    adj = [[] for _ in range(n)]
    for s, (a, b) in enumerate(pairs):
        if alive[s]:
            adj[a].append(b)
            adj[b].append(a)
    bridges = _bridges(n, adj)
    cands = [s for s, p in enumerate(pairs) if alive[s] and p not in bridges]
    return cands[int(rng.integers(len(cands)))]


def remove_comparisons(m, k, rng):
    """Drop k comparisons, each step uniform among connectivity-preserving ones.

    Accepts incomplete (but irreducible) input so chains can be extended
    one removal at a time; the output always has exactly k fewer defined
    pairs and stays irreducible.
    """
    n = m.n
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    alive = np.array([m.defined[i, j] for i, j in pairs])
    spare = int(alive.sum()) - (n - 1)
    if not isinstance(k, (int, np.integer)) or k < 0 or k > spare:
        raise BadK("k must lie in 0..%d for this matrix, got %r" % (max(spare, 0), k))
    if not is_irreducible(build_graph(m)):
        raise NotIrreducible("comparison graph is disconnected")
    for _ in range(k):
        alive[_chain_step(n, pairs, alive, rng)] = False
    defined = np.ones((n, n), dtype=bool)
    for s, (i, j) in enumerate(pairs):
        defined[i, j] = defined[j, i] = alive[s]
    return PCMatrix(m.values.copy(), defined, scale_s=m.scale_s)


def rescaled_distance(index, c, c_k, alpha=0.5, beta=0.3):
    """(I(C) - I(C_k)) / max of the two, and 0 when both values are 0."""
    if index not in INDEX_NAMES:
        raise ValueError("unknown index %r" % (index,))
    a = all_indices(c, alpha=alpha, beta=beta)[index]
    b = all_indices(c_k, alpha=alpha, beta=beta)[index]
    top = max(a, b)
    return (a - b) / top if top > 0.0 else 0.0


def _chain_masks(n, pairs, removals_max, rng, independent):
    """Mask rows for k = 0..removals_max removals (nested chain by default)."""
    ecount = len(pairs)
    rows = np.ones((removals_max + 1, ecount), dtype=bool)
    if independent:
        for k in range(1, removals_max + 1):
            alive = np.ones(ecount, dtype=bool)
            for _ in range(k):
                alive[_chain_step(n, pairs, alive, rng)] = False
            rows[k] = alive
    else:
        alive = np.ones(ecount, dtype=bool)
        for k in range(1, removals_max + 1):
            alive[_chain_step(n, pairs, alive, rng)] = False
            rows[k] = alive
    return rows


def _stream_values(cfg, b):
    """Yield (d, masks, values) for base matrix b of the configured stream.

    ``values`` is the (removals_max + 1, 14) table of index values along
    the removal chain of disturbance level d.  The draw order per base
    is fixed: n weights, then per level E gammas followed by the removal
    choices — the public operations consume randomness the same way, so
    the two routes can be replayed against each other.
    """
    t = _fast.get_tables(cfg.n)
    rng = np.random.default_rng((cfg.seed, b))
    span = math.log(cfg.weight_range)
    logw = rng.uniform(-span, span, cfg.n)
    lv0 = _fast.consistent_logvals(t, logw)
    for d in range(1, cfg.d_max + 1):
        if cfg.gamma_dist == "uniform":
            lg = np.log(rng.uniform(1.0 / d, float(d), lv0.size))
        else:
            lg = rng.uniform(-math.log(d), math.log(d), lv0.size)
        masks = _chain_masks(cfg.n, t.pairs, cfg.removals_max, rng, cfg.independent_removals)
        vals = _fast.indices_for_masks(t, lv0 + lg, masks, cfg.alpha, cfg.beta)
        yield d, masks, vals


def _delta_rows(vals):
    """Rescaled distances of every chain row against row 0."""
    v0 = vals[0]
    top = np.maximum(vals, v0[None, :])
    out = np.zeros_like(vals)
    np.divide(v0[None, :] - vals, top, out=out, where=top > 0.0)
    return out


def _base_deltas(cfg, b):
    acc = np.zeros((cfg.removals_max + 1, len(INDEX_NAMES)))
    for _d, _masks, vals in _stream_values(cfg, b):
        acc += _delta_rows(vals)
    return acc


def run_experiment(cfg, threads=1):
    """Full distance table for the configured run.

    ``threads`` only spreads base matrices over worker processes; the
    result is bit-identical for any worker count because substreams are
    per-base and the reduction order is fixed.
    """
    _fast.get_tables(cfg.n)  # build once; forked workers inherit the cache
    acc = np.zeros((cfg.removals_max + 1, len(INDEX_NAMES)))
    if threads <= 1:
        for b in range(cfg.base_matrices):
            acc += _base_deltas(cfg, b)
    else:
        chunk = max(1, cfg.base_matrices // (threads * 8))
        with ProcessPoolExecutor(max_workers=threads) as ex:
            for part in ex.map(partial(_base_deltas, cfg), range(cfg.base_matrices), chunksize=chunk):
                acc += part
    d = (acc / (cfg.base_matrices * cfg.d_max)).T
    totals = np.abs(d).sum(axis=1)
    d.flags.writeable = False
    totals.flags.writeable = False
    return DistanceTable(tuple(INDEX_NAMES), cfg.removals_max, d, totals)


def total_distance(table, index):
    """Summed absolute distance curve of one index (smaller = more robust)."""
    return table.total(index)


def ranking(table):
    """(index, total) pairs sorted ascending by total, ties by name order."""
    order = sorted(range(len(table.index_names)), key=lambda i: (table.totals[i], i))
    return [(table.index_names[i], float(table.totals[i])) for i in order]


def _fmt(x):
    return "%.6g" % x


def distance_csv(table):
    """CSV text of the D(index, k) grid: header index,k,D; 6 significant digits."""
    lines = ["index,k,D"]
    for i, name in enumerate(table.index_names):
        for k in range(table.removals_max + 1):
            lines.append("%s,%d,%s" % (name, k, _fmt(table.d[i, k])))
    return "\n".join(lines) + "\n"


def totals_csv(table):
    """CSV text of the per-index totals: header index,total."""
    lines = ["index,total"]
    for i, name in enumerate(table.index_names):
        lines.append("%s,%s" % (name, _fmt(table.totals[i])))
    return "\n".join(lines) + "\n"
