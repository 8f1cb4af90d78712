"""Inconsistency indices for complete and incomplete PC matrices.

Two families are provided.  The classical suite (``classical_indices``)
applies to complete matrices only and serves as the reference the
incomplete-capable indices must reduce to.  The incomplete-capable
family works on any matrix whose comparison graph is connected and
falls into two groups: matrix-based indices built from simple cycles
and simple paths (max-cycle index, cycle means, their blends, and the
path-range index), and ranking-based indices built from residuals
between entries and derived weight ratios (two least-squares variants,
a column-scaling distance, two relative-error variants, the auxiliary
eigenvalue index, the optimal-completion least-squares value, and a
degree-scaled spectral-radius index).
"""

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

import numpy as np

from .core import NotComplete, NotIrreducible, PCError, defined_pairs, is_complete
from .graph import (
    build_graph,
    cycle_inconsistency,
    enumerate_cycles,
    enumerate_paths,
    is_irreducible,
    path_product,
)
from .priority import gmm, harker_rank, ills, principal_eigen

__all__ = [
    "INDEX_NAMES",
    "CLASSICAL_NAMES",
    "BadParams",
    "DegenerateDenominator",
    "BlendParams",
    "CycleIndices",
    "BlendValues",
    "classical_indices",
    "cycle_based_indices",
    "blend_indices",
    "sh_index_inc",
    "gci_inc",
    "gw_inc",
    "re_inc",
    "harker_ci",
    "lls_index",
    "oliva_index",
    "all_indices",
]

# Stable names used in CSV/JSON output, in canonical order.
INDEX_NAMES = (
    "Ktilde",
    "I1",
    "I2",
    "Ialpha",
    "Ialphabeta",
    "SH",
    "GCI1",
    "GCI2",
    "GW",
    "RE1",
    "RE2",
    "CI",
    "LLS",
    "Oliva",
)

CLASSICAL_NAMES = ("CI", "GCI", "K", "I1", "I2", "Ialpha", "Ialphabeta", "GW", "ISH", "RE")

DEFAULT_ALPHA = 0.5  # weight of the max-cycle term in the alpha blend
DEFAULT_BETA = 0.3  # shared weight of max and mean terms in the alpha-beta blend


class BadParams(PCError):
    """Blend parameters outside their valid range."""


class DegenerateDenominator(PCError):
    """A relative-error denominator vanished while the numerator did not."""


@dataclass(frozen=True)
class BlendParams:
    """Literal parameters for the two blended cycle indices.

    When passed explicitly, both formulas use these numbers as written:
    alpha*max + (1-alpha)*mean and alpha*max + beta*mean + (1-alpha-beta)*rms.
    When no BlendParams is given, each blend falls back to its own
    default: alpha = 0.5 for the first, alpha = beta = 0.3 for the second.
    """

    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA

    def __post_init__(self):
        if not (0.0 <= self.alpha <= 1.0):
            raise BadParams("alpha must lie in [0, 1], got %r" % (self.alpha,))
        if self.beta < 0.0:
            raise BadParams("beta must be nonnegative, got %r" % (self.beta,))
        if self.alpha + self.beta > 1.0:
            raise BadParams(
                "alpha + beta must not exceed 1, got %r + %r" % (self.alpha, self.beta)
            )


class CycleIndices(NamedTuple):
    """Max, mean, and scaled quadratic mean of cycle inconsistencies."""

    ktilde: float
    i1: float
    i2: float


class BlendValues(NamedTuple):
    ialpha: float
    ialphabeta: float


def _triad_k(c_ik, c_kj, c_ij):
    r = c_ik * c_kj / c_ij
    return min(abs(1.0 - r), abs(1.0 - 1.0 / r))


def classical_indices(m, p=None):
    """The ten reference indices of a complete matrix, as a name -> value map.

    CI = (lambda_max - n)/(n - 1); GCI = 2/((n-1)(n-2)) * sum over i<j of
    ln^2(c_ij w_j / w_i) with geometric-mean weights; K is the largest
    triad inconsistency and I1/I2 its mean and scaled quadratic mean over
    all C(n,3) triads; Ialpha and Ialphabeta blend them; GW scales every
    column to sum 1 and averages the absolute deviation from the priority
    vector; ISH ranges the one-intermediary products c_ik*c_kj over
    k = 1..n; RE is the share of residual energy after fitting the log
    matrix with row-mean differences.
    """
    if not is_complete(m):
        raise NotComplete("classical indices need a complete matrix")
    n = m.n
    v = m.values
    w = gmm(m)

    lam = principal_eigen(v).value
    ci = max(0.0, (lam - n) / (n - 1))

    ks = np.array(
        [_triad_k(v[i, k], v[k, j], v[i, j]) for i, k, j in combinations(range(n), 3)]
    )
    kmax = float(ks.max())
    i1 = float(ks.mean())
    i2 = float(np.sqrt((ks**2).sum()) / ks.size)
    ialpha, ialphabeta = _blend(kmax, i1, i2, p)

    e = v * w[None, :] / w[:, None]
    iu = np.triu_indices(n, 1)
    gci = 2.0 / ((n - 1) * (n - 2)) * float((np.log(e[iu]) ** 2).sum())

    cstar = v / v.sum(axis=0)[None, :]
    gw = float(np.abs(cstar - w[:, None]).sum()) / n

    prods = np.einsum("ik,kj->ijk", v, v)
    rmin = prods.min(axis=2)
    rmax = prods.max(axis=2)
    terms = (rmax - rmin) / ((1.0 + rmax) * (1.0 + rmin))
    ish = 2.0 / (n * (n - 1)) * float(terms[iu].sum())

    chat = np.log(v)
    delta = chat.mean(axis=1)
    resid = chat - (delta[:, None] - delta[None, :])
    denom = float((chat**2).sum())
    re = float((resid**2).sum()) / denom if denom > 0 else 0.0

    return {
        "CI": ci,
        "GCI": gci,
        "K": kmax,
        "I1": i1,
        "I2": i2,
        "Ialpha": ialpha,
        "Ialphabeta": ialphabeta,
        "GW": gw,
        "ISH": ish,
        "RE": re,
    }


def _blend(kmax, i1, i2, p):
    if p is None:
        ia = DEFAULT_ALPHA * kmax + (1.0 - DEFAULT_ALPHA) * i1
        iab = DEFAULT_BETA * kmax + DEFAULT_BETA * i1 + (1.0 - 2.0 * DEFAULT_BETA) * i2
    else:
        ia = p.alpha * kmax + (1.0 - p.alpha) * i1
        iab = p.alpha * kmax + p.beta * i1 + (1.0 - p.alpha - p.beta) * i2
    return ia, iab


def cycle_based_indices(m, max_cycles=None):
    """Max / mean / scaled quadratic mean of inconsistency over all simple cycles.

    The cycle set is empty exactly when the comparison graph is a tree;
    all three values are then 0 (a tree carries no redundancy, so the
    judgments cannot contradict each other).
    """
    g = build_graph(m)
    if not is_irreducible(g):
        raise NotIrreducible("comparison graph is disconnected")
    cycles = enumerate_cycles(g, 3, max_cycles=max_cycles)
    if not cycles:
        return CycleIndices(0.0, 0.0, 0.0)
    ks = np.array([cycle_inconsistency(g, s) for s in cycles])
    return CycleIndices(
        float(ks.max()),
        float(ks.mean()),
        float(np.sqrt((ks**2).sum()) / ks.size),
    )


def blend_indices(c, p=None):
    """Blend the three cycle statistics into the alpha and alpha-beta indices.

    ``c`` is a CycleIndices (or any (max, mean, rms) triple).  With
    ``p=None`` each blend uses its own default parameters (0.5, and
    0.3/0.3); an explicit BlendParams is applied literally to both.
    """
    kmax, i1, i2 = c
    ia, iab = _blend(kmax, i1, i2, p)
    return BlendValues(ia, iab)


def sh_index_inc(m):
    """Path-range index: averaged normalized spread of indirect comparisons.

    For each pair i < j the products along all simple paths from i to j
    form a range [r_lo, r_hi]; the pair contributes
    (r_hi - r_lo)/((1 + r_hi)(1 + r_lo)).  Consistent matrices give zero
    spread, as does any pair connected by a single path.
    """
    g = build_graph(m)
    if not is_irreducible(g):
        raise NotIrreducible("comparison graph is disconnected")
    n = m.n
    total = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            prods = [path_product(g, p) for p in enumerate_paths(g, i, j)]
            r_lo = min(prods)
            r_hi = max(prods)
            total += (r_hi - r_lo) / ((1.0 + r_hi) * (1.0 + r_lo))
    return 2.0 / (n * (n - 1)) * total


def _log_residuals(m, w):
    """ln(c_ij w_j / w_i) over defined upper-triangle pairs, as an array."""
    x = np.log(w)
    out = []
    v = m.values
    for i, j in defined_pairs(m):
        out.append(np.log(v[i, j]) - (x[i] - x[j]))
    return np.array(out)


def gci_inc(m, variant="v1"):
    """Geometric-consistency value from least-squares weights, two normalizations.

    variant="v1" divides the summed squared log-residuals by
    (n-1)(n-2)/2; variant="v2" divides by the number of defined pairs.
    They coincide on complete matrices only up to the constant ratio of
    those denominators.
    """
    if variant not in ("v1", "v2"):
        raise ValueError("variant must be 'v1' or 'v2', got %r" % (variant,))
    g = build_graph(m)
    if not is_irreducible(g):
        raise NotIrreducible("comparison graph is disconnected")
    w = ills(m)
    r = _log_residuals(m, w)
    s = float((r**2).sum())
    n = m.n
    if variant == "v1":
        return 2.0 * s / ((n - 1) * (n - 2))
    return s / r.size


def gw_inc(m):
    """Column-scaling distance computed over the defined cells only.

    The matrix and a weight-copy pattern (w_i placed at every defined
    cell) are both column-scaled over their defined cells, diagonal
    included, and the mean absolute difference is taken.  Equals the
    classical column-scaling distance on complete input.
    """
    if not is_irreducible(build_graph(m)):
        raise NotIrreducible("comparison graph is disconnected")
    return _gw_value(m, ills(m))


def _gw_value(m, w):
    n = m.n
    d = m.defined
    v = np.where(d, m.values, 0.0)
    omega = np.where(d, np.broadcast_to(w[:, None], (n, n)), 0.0)
    cstar = v / v.sum(axis=0)[None, :]
    ostar = omega / omega.sum(axis=0)[None, :]
    return float(np.abs(np.where(d, cstar - ostar, 0.0)).sum()) / n


def re_inc(m, variant="v1"):
    """Relative-error share of the least-squares fit, two denominators.

    The numerator is the squared log-residual energy over defined cells.
    variant="v1" adds, to the denominator, the log-ratio energy the
    fitted weights assign to the missing cells; variant="v2" uses the
    defined-cell log energy alone.  Both equal the classical
    relative-error index on complete input.
    """
    if variant not in ("v1", "v2"):
        raise ValueError("variant must be 'v1' or 'v2', got %r" % (variant,))
    if not is_irreducible(build_graph(m)):
        raise NotIrreducible("comparison graph is disconnected")
    return _re_value(m, ills(m), variant)


def _re_value(m, w, variant):
    n = m.n
    x = np.log(w)
    v = m.values
    num = 0.0
    den = 0.0
    for i, j in defined_pairs(m):
        num += (np.log(v[i, j]) - (x[i] - x[j])) ** 2
        den += np.log(v[i, j]) ** 2
    if variant == "v1":
        for i in range(n):
            for j in range(i + 1, n):
                if not m.defined[i, j]:
                    den += (x[i] - x[j]) ** 2
    if den <= 0.0:
        if num == 0.0:
            return 0.0
        raise DegenerateDenominator("zero denominator with nonzero residual energy")
    return float(num / den)


def harker_ci(m):
    """Consistency index from the auxiliary-matrix eigenvalue: (lam - n)/(n - 1).

    Exactly the classical CI on complete input; 0 whenever the defined
    entries admit a consistent completion.
    """
    n = m.n
    lam = harker_rank(m).value
    return max(0.0, (lam - n) / (n - 1))


def lls_index(m):
    """Least-squares criterion value at the optimal completion.

    Missing cells are filled with the fitted weight ratios, so they
    contribute nothing; the value is the summed squared log-residuals
    over all defined ordered pairs (twice the upper-triangle sum).
    """
    if not is_irreducible(build_graph(m)):
        raise NotIrreducible("comparison graph is disconnected")
    w = ills(m)
    r = _log_residuals(m, w)
    return 2.0 * float((r**2).sum())


def oliva_index(m):
    """Degree-scaled spectral-radius index.

    With missing entries set to 0 and the identity subtracted, the
    spectral radius of D^-1 (C - I) equals 1 exactly on consistent
    matrices (D is the degree matrix); the index is the excess over 1.
    """
    if not is_irreducible(build_graph(m)):
        raise NotIrreducible("comparison graph is disconnected")
    d = m.defined
    s = np.where(d, m.values, 0.0) - np.eye(m.n)
    off = d.copy()
    np.fill_diagonal(off, False)
    deg = off.sum(axis=1).astype(float)
    rho = principal_eigen(s / deg[:, None]).value
    return max(0.0, rho - 1.0)


def all_indices(m, alpha=0.5, beta=0.3, max_cycles=None):
    """All fourteen incomplete-capable indices as a name -> value map.

    ``alpha`` parametrizes the alpha blend and ``beta`` is the shared
    parameter of the alpha-beta blend (its two leading weights are both
    beta).  The least-squares weights are computed once and shared by
    the ranking-based indices; results are identical to calling the
    individual functions.
    """
    p_a = BlendParams(alpha, 0.0)
    p_b = BlendParams(beta, beta)
    if not is_irreducible(build_graph(m)):
        raise NotIrreducible("comparison graph is disconnected")
    n = m.n
    cyc = cycle_based_indices(m, max_cycles=max_cycles)
    blends_a = blend_indices(cyc, p_a)
    blends_b = blend_indices(cyc, p_b)
    w = ills(m)
    r = _log_residuals(m, w)
    s = float((r**2).sum())
    return {
        "Ktilde": cyc.ktilde,
        "I1": cyc.i1,
        "I2": cyc.i2,
        "Ialpha": blends_a.ialpha,
        "Ialphabeta": blends_b.ialphabeta,
        "SH": sh_index_inc(m),
        "GCI1": 2.0 * s / ((n - 1) * (n - 2)),
        "GCI2": s / max(r.size, 1),
        "GW": _gw_value(m, w),
        "RE1": _re_value(m, w, "v1"),
        "RE2": _re_value(m, w, "v2"),
        "CI": harker_ci(m),
        "LLS": 2.0 * s,
        "Oliva": oliva_index(m),
    }
