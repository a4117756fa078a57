"""
Dense linear algebra over GF(2^m).

Row reduction picks as pivot the first nonzero entry in the current column
at or below the current row, so results are deterministic. ``EchelonBasis``
keeps an incrementally built reduced row echelon basis; nodes use it to
prune their memories and the innovation tracker uses it for span tests.
"""
from dataclasses import dataclass

import numpy as np

from ..exceptions import DomainError


@dataclass(frozen=True, eq=False)
class FieldMatrix:
    """Immutable matrix of field elements."""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.uint8, copy=True, ndmin=2)
        entries.setflags(write=False)
        object.__setattr__(self, 'entries', entries)

    @classmethod
    def from_rows(cls, rows):
        return cls(np.asarray(rows, dtype=np.uint8))

    @classmethod
    def zeros(cls, rows, cols):
        return cls(np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, n):
        return cls(np.eye(n, dtype=np.uint8))

    @property
    def shape(self):
        return self.entries.shape

    @property
    def rows(self):
        return self.entries.shape[0]

    @property
    def cols(self):
        return self.entries.shape[1]

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.entries, other.entries))

    def __hash__(self):
        return hash((self.shape, self.entries.tobytes()))


def _as_array(matrix):
    if isinstance(matrix, FieldMatrix):
        return matrix.entries
    return np.asarray(matrix, dtype=np.uint8)


def row_reduce(ctx, matrix, pivot_limit=None):
    """
    Reduced row echelon form of ``matrix``.

    Pivots are only taken in the first ``pivot_limit`` columns (all columns
    by default). Returns ``(reduced, pivot_columns)``.
    """
    work = np.array(_as_array(matrix), dtype=np.uint8, copy=True)
    if work.ndim != 2:
        raise DomainError("row reduction needs a two-dimensional matrix")
    rows, cols = work.shape
    limit = cols if pivot_limit is None else min(pivot_limit, cols)
    mul = ctx.mul_table
    pivots = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        candidates = np.flatnonzero(work[r:, c])
        if candidates.size == 0:
            continue
        p = r + int(candidates[0])
        if p != r:
            work[[r, p]] = work[[p, r]]
        work[r] = mul[ctx.inv_table[work[r, c]], work[r]]
        factors = work[:, c].copy()
        factors[r] = 0
        work ^= mul[factors[:, None], work[r][None, :]]
        pivots.append(c)
        r += 1
    return work, pivots


def rank(ctx, matrix):
    """Rank of ``matrix`` over the field of ``ctx``."""
    array = _as_array(matrix)
    if array.size == 0:
        return 0
    _, pivots = row_reduce(ctx, array)
    return len(pivots)


def solve(ctx, a, b):
    """
    Solve A X = B for square A.

    Returns the solution as a FieldMatrix, or ``None`` when A is singular.
    """
    a = _as_array(a)
    b = _as_array(b)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"coefficient matrix must be square, got {a.shape}")
    if b.ndim != 2 or b.shape[0] != a.shape[0]:
        raise DomainError(f"right-hand side shape {b.shape} does not match {a.shape}")
    k = a.shape[0]
    reduced, pivots = row_reduce(ctx, np.hstack([a, b]), pivot_limit=k)
    if len(pivots) < k:
        return None
    return FieldMatrix(reduced[:, k:])


class EchelonBasis:
    """
    Reduced row echelon basis grown one vector at a time.

    Every stored row has a 1 in its pivot column and zeros in the pivot
    columns of all other rows, so reducing a vector is a single vectorised
    elimination step. Pivots are restricted to the first ``pivot_limit``
    columns, which lets a basis of augmented rows [gamma | payload] be
    indexed by the gamma part only.
    """

    def __init__(self, ctx, width, pivot_limit=None):
        self.ctx = ctx
        self.width = width
        self.pivot_limit = width if pivot_limit is None else pivot_limit
        self._rows = np.zeros((max(4, min(width, 64)), width), dtype=np.uint8)
        self._pivots = []

    @property
    def rank(self):
        return len(self._pivots)

    @property
    def rows(self):
        return self._rows[:self.rank]

    @property
    def pivots(self):
        return tuple(self._pivots)

    def copy(self):
        clone = EchelonBasis(self.ctx, self.width, self.pivot_limit)
        clone._rows = self._rows.copy()
        clone._pivots = list(self._pivots)
        return clone

    def _fit(self, vector):
        vector = np.asarray(vector, dtype=np.uint8)
        if vector.shape[0] > self.width:
            if np.any(vector[self.width:]):
                self.widen(vector.shape[0])
            else:
                vector = vector[:self.width]
        if vector.shape[0] < self.width:
            vector = np.concatenate([vector, np.zeros(self.width - vector.shape[0], dtype=np.uint8)])
        return vector

    def widen(self, width):
        """Grow every stored row (and future vectors) to ``width`` columns."""
        if width <= self.width:
            return
        grown = np.zeros((self._rows.shape[0], width), dtype=np.uint8)
        grown[:, :self.width] = self._rows
        if self.pivot_limit == self.width:
            self.pivot_limit = width
        self._rows = grown
        self.width = width

    def reduce(self, vector):
        """Residual of ``vector`` after eliminating every pivot column."""
        vector = self._fit(vector)
        if not self._pivots:
            return vector.copy()
        factors = vector[self._pivots]
        if not factors.any():
            return vector.copy()
        return vector ^ self.ctx.combine(factors, self.rows)

    def contains(self, vector):
        return not self.reduce(vector)[:self.pivot_limit].any()

    def is_reduced(self):
        """Whether the stored rows carry an identity block in their pivot columns."""
        if not self._pivots:
            return True
        return bool(np.array_equal(self.rows[:, self._pivots], np.eye(self.rank, dtype=np.uint8)))

    def spans(self, vector):
        """
        Rebuild ``vector`` from its pivot-column entries and the stored rows.

        For reduced rows this is an exact membership certificate: the vector
        lies in the span iff the rebuilt vector equals it. Unlike ``contains``
        it does no elimination.
        """
        vector = self._fit(vector)
        if not self._pivots:
            return not vector.any()
        return bool(np.array_equal(self.ctx.combine(vector[self._pivots], self.rows), vector))

    def insert(self, vector):
        """Add ``vector`` if it extends the span; return whether it did."""
        residual = self.reduce(vector)
        nonzero = np.flatnonzero(residual[:self.pivot_limit])
        if nonzero.size == 0:
            return False
        pivot = int(nonzero[0])
        residual = self.ctx.scale(self.ctx.inv_table[residual[pivot]], residual)
        n = self.rank
        if n:
            factors = self._rows[:n, pivot].copy()
            if factors.any():
                self._rows[:n] ^= self.ctx.mul_table[factors[:, None], residual[None, :]]
        if n == self._rows.shape[0]:
            grown = np.zeros((2 * n, self.width), dtype=np.uint8)
            grown[:n] = self._rows
            self._rows = grown
        self._rows[n] = residual
        self._pivots.append(pivot)
        return True
