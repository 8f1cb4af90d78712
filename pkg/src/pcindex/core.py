"""Pairwise-comparison matrices: data model, validation, triads, text format.

A pairwise-comparison (PC) matrix is a square positive matrix C with
c_ii = 1 and c_ji = 1/c_ij, holding ratio judgments "alternative i is
c_ij times preferable to alternative j".  Entries may be missing (the
judgment was never elicited); missing entries always come in symmetric
pairs.  This module owns the matrix type plus parsing/serialization of
the plain-text file format used by the CLI.
"""

import re
from itertools import combinations
from typing import NamedTuple

import numpy as np

RECIPROCITY_RTOL = 1e-12

__all__ = [
    "MISSING",
    "PCMatrix",
    "Triad",
    "PCError",
    "NonSquare",
    "BadSize",
    "BadDiagonal",
    "ReciprocityViolation",
    "NonPositiveEntry",
    "MatrixSyntaxError",
    "NotComplete",
    "NotIrreducible",
    "validate",
    "is_complete",
    "defined_pairs",
    "list_triads",
    "parse_matrix",
    "serialize_matrix",
]


class PCError(Exception):
    """Base class for every error raised by this package."""


class NonSquare(PCError):
    """The candidate grid is not square."""


class BadSize(PCError):
    """Fewer than 3 alternatives (no triad or cycle can exist)."""


class BadDiagonal(PCError):
    """A diagonal entry is missing or differs from 1."""


class ReciprocityViolation(PCError):
    """c_ji does not match 1/c_ij, or only one of the two is defined."""

    def __init__(self, i, j, message=None):
        self.i = i
        self.j = j
        super().__init__(
            message
            or "entries (%d,%d) and (%d,%d) are not reciprocal"
            % (i + 1, j + 1, j + 1, i + 1)
        )


class NonPositiveEntry(PCError):
    """An entry is not a strictly positive finite ratio."""

    def __init__(self, i, j, message=None):
        self.i = i
        self.j = j
        super().__init__(
            message
            or "entry (%d,%d) must be a strictly positive finite ratio"
            % (i + 1, j + 1)
        )


class MatrixSyntaxError(PCError):
    """The matrix file text is malformed."""

    def __init__(self, line_no, message):
        self.line_no = line_no
        super().__init__("line %d: %s" % (line_no, message))


class NotComplete(PCError):
    """Operation requires a complete matrix but some entries are missing."""


class NotIrreducible(PCError):
    """Operation requires a connected comparison graph."""


class _MissingType:
    """Sentinel for an absent comparison; use the MISSING singleton."""

    _instance = None
    __slots__ = ()

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "MISSING"

    def __bool__(self):
        return False


MISSING = _MissingType()


class PCMatrix:
    """An immutable n x n positive reciprocal matrix with optional missing entries.

    The upper triangle is the single source of truth: the constructor
    rebuilds the diagonal (exactly 1) and the lower triangle (exact float
    reciprocals) from it, and mirrors the definedness mask.  Cell lookup
    returns either a float or the MISSING sentinel.

    The raw buffers are exposed read-only for numeric code: ``values``
    (float array; undefined slots hold NaN so stray arithmetic on them
    cannot pass silently - always consult ``defined``) and ``defined``
    (boolean mask, the authoritative record of which cells exist).

    Use :func:`validate` or :func:`parse_matrix` to build one from
    untrusted data; the constructor itself does not check reciprocity
    since it enforces it structurally.
    """

    def __init__(self, values, defined=None, scale_s=9.0):
        v = np.array(values, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise NonSquare("expected a square matrix, got shape %s" % (v.shape,))
        n = v.shape[0]
        if n < 3:
            raise BadSize("need at least 3 alternatives, got %d" % n)
        if defined is None:
            d = np.ones((n, n), dtype=bool)
        else:
            d = np.array(defined, dtype=bool)
            if d.shape != (n, n):
                raise NonSquare("mask shape %s does not match matrix" % (d.shape,))
        iu = np.triu_indices(n, 1)
        il = (iu[1], iu[0])
        d[il] = d[iu]
        np.fill_diagonal(d, True)
        v[il] = 1.0 / v[iu]
        np.fill_diagonal(v, 1.0)
        v[~d] = np.nan
        v.flags.writeable = False
        d.flags.writeable = False
        self._values = v
        self._defined = d
        self.scale_s = float(scale_s)
        off = d.copy()
        np.fill_diagonal(off, False)
        dv = v[off]
        self.exceeds_scale = bool(
            dv.size and ((dv > self.scale_s).any() or (dv < 1.0 / self.scale_s).any())
        )

    @property
    def n(self):
        return self._values.shape[0]

    @property
    def values(self):
        """Read-only float view; NaN marks undefined slots (see ``defined``)."""
        return self._values

    @property
    def defined(self):
        """Read-only boolean mask of defined cells (diagonal always True)."""
        return self._defined

    def is_defined(self, i, j):
        return bool(self._defined[i, j])

    def entry(self, i, j):
        """Return c_ij as a float, or MISSING."""
        if self._defined[i, j]:
            return float(self._values[i, j])
        return MISSING

    def __getitem__(self, ij):
        i, j = ij
        return self.entry(i, j)

    def __eq__(self, other):
        if not isinstance(other, PCMatrix):
            return NotImplemented
        return (
            self.n == other.n
            and self.scale_s == other.scale_s
            and np.array_equal(self._defined, other._defined)
            and np.array_equal(self._values, other._values, equal_nan=True)
        )

    def __hash__(self):
        return hash((self.n, self.scale_s, self._values.tobytes(), self._defined.tobytes()))

    def __repr__(self):
        total = self.n * (self.n - 1) // 2
        return "PCMatrix(n=%d, defined pairs=%d/%d)" % (
            self.n,
            len(defined_pairs(self)),
            total,
        )


class Triad(NamedTuple):
    """Three mutually compared alternatives i, k, j with all ratios defined."""

    i: int
    k: int
    j: int
    c_ik: float
    c_kj: float
    c_ij: float


def validate(grid, scale_s=9.0):
    """Check a candidate grid and return a PCMatrix.

    ``grid`` is any square sequence of rows whose cells are numbers,
    MISSING, or None (treated as missing).  Raises NonSquare, BadSize,
    BadDiagonal, NonPositiveEntry, or ReciprocityViolation.  The input
    is never mutated.
    """
    rows = [list(r) for r in grid]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NonSquare("grid rows have unequal lengths")
    if n < 3:
        raise BadSize("need at least 3 alternatives, got %d" % n)
    vals = np.ones((n, n), dtype=float)
    mask = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            cell = rows[i][j]
            if cell is None or cell is MISSING:
                continue
            if isinstance(cell, bool) or not isinstance(cell, (int, float, np.integer, np.floating)):
                raise NonPositiveEntry(
                    i, j, "entry (%d,%d) must be a number or MISSING" % (i + 1, j + 1)
                )
            vals[i, j] = float(cell)
            mask[i, j] = True
    for i in range(n):
        if not mask[i, i]:
            raise BadDiagonal("diagonal entry (%d,%d) is missing" % (i + 1, i + 1))
        if vals[i, i] != 1.0:
            raise BadDiagonal(
                "diagonal entry (%d,%d) must be exactly 1, got %r" % (i + 1, i + 1, vals[i, i])
            )
    for i in range(n):
        for j in range(n):
            if i != j and mask[i, j]:
                x = vals[i, j]
                if not np.isfinite(x) or x <= 0.0:
                    raise NonPositiveEntry(i, j)
    for i in range(n):
        for j in range(i + 1, n):
            if mask[i, j] != mask[j, i]:
                raise ReciprocityViolation(
                    i,
                    j,
                    "entries (%d,%d) and (%d,%d) must both be present or both missing"
                    % (i + 1, j + 1, j + 1, i + 1),
                )
            if mask[i, j]:
                expected = 1.0 / vals[i, j]
                if abs(vals[j, i] - expected) > RECIPROCITY_RTOL * max(
                    abs(vals[j, i]), abs(expected)
                ):
                    raise ReciprocityViolation(i, j)
    return PCMatrix(vals, mask, scale_s=scale_s)


def is_complete(m):
    """True iff no off-diagonal entry is missing."""
    return bool(m.defined.all())


def defined_pairs(m):
    """Unordered index pairs (i, j), i < j, with a defined comparison."""
    n = m.n
    d = m.defined
    return [(i, j) for i in range(n) for j in range(i + 1, n) if d[i, j]]


def list_triads(m):
    """All triads: unordered {i,k,j} with the three mutual comparisons defined.

    One Triad per unordered set, at the sorted orientation i < k < j;
    the inconsistency of a triad does not depend on the orientation
    chosen.  A complete matrix yields C(n,3) triads.
    """
    d = m.defined
    v = m.values
    out = []
    for p, q, r in combinations(range(m.n), 3):
        if d[p, q] and d[q, r] and d[p, r]:
            out.append(Triad(p, q, r, float(v[p, q]), float(v[q, r]), float(v[p, r])))
    return out


_FRACTION_RE = re.compile(r"^(\d+)/(\d+)$")


def _parse_token(tok):
    """One matrix token -> float or MISSING; raises ValueError on junk."""
    if tok == "?":
        return MISSING
    frac = _FRACTION_RE.match(tok)
    if frac:
        a, b = int(frac.group(1)), int(frac.group(2))
        if a == 0 or b == 0:
            raise ValueError("fraction %r must have positive integer parts" % tok)
        return a / b
    try:
        return float(tok)
    except ValueError:
        raise ValueError("bad token %r" % tok) from None


def parse_matrix(text, scale_s=9.0):
    """Parse the plain-text matrix format.

    Lines starting with '#' (after optional whitespace) and blank lines
    are skipped.  The first data line holds n; the next n data lines
    hold n whitespace-separated tokens each.  A token is a positive
    decimal, a fraction "a/b" of positive integers, or "?" for a missing
    comparison.  Reciprocal cells must agree within 1e-12 relative
    tolerance; the stored value is the upper-triangle token and the
    lower triangle is recomputed as its exact reciprocal.
    """
    data = []  # (line_no, content)
    for no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        data.append((no, stripped))
    if not data:
        raise MatrixSyntaxError(1, "empty input")
    no, head = data[0]
    try:
        n = int(head)
    except ValueError:
        raise MatrixSyntaxError(no, "expected the matrix size, got %r" % head) from None
    if n < 3:
        raise BadSize("need at least 3 alternatives, got %d (line %d)" % (n, no))
    if len(data) - 1 < n:
        raise MatrixSyntaxError(
            data[-1][0], "expected %d matrix rows, got %d" % (n, len(data) - 1)
        )
    if len(data) - 1 > n:
        raise MatrixSyntaxError(data[n + 1][0], "unexpected extra line after the matrix")
    grid = []
    for r in range(n):
        no, line = data[r + 1]
        toks = line.split()
        if len(toks) != n:
            raise MatrixSyntaxError(no, "expected %d tokens, got %d" % (n, len(toks)))
        row = []
        for tok in toks:
            try:
                row.append(_parse_token(tok))
            except ValueError as exc:
                raise MatrixSyntaxError(no, str(exc)) from None
        grid.append(row)
    return validate(grid, scale_s=scale_s)


def _format_value(x):
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def serialize_matrix(m):
    """Inverse of parse_matrix: parse(serialize(m)) == m exactly."""
    lines = [str(m.n)]
    for i in range(m.n):
        toks = []
        for j in range(m.n):
            if not m.defined[i, j]:
                toks.append("?")
            else:
                toks.append(_format_value(float(m.values[i, j])))
        lines.append(" ".join(toks))
    return "\n".join(lines) + "\n"
