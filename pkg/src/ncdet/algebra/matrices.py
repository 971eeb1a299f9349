"""Dense matrices whose rows and columns keep their original 1-based labels.

Entries live in a read-only numpy object array (row-major, 0-based); every
operation returns a new matrix. Submatrices carry the labels of the matrix
they were cut from, so formulas written in original indices across nested
submatrices (``Q_pq(A^{ij})`` and friends) can be evaluated literally.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Callable, Iterable, Sequence, Tuple

import numpy as np

from ncdet.algebra.scalars import ScalarKind, conjugate, inverse, is_zero, norm, theta
from ncdet.exceptions import (
    DimensionMismatchError,
    UnknownLabelError,
    UnsupportedScalarError,
)


def _grid(rows: Sequence[Sequence], n_rows: int, n_cols: int) -> np.ndarray:
    grid = np.empty((n_rows, n_cols), dtype=object)
    for r in range(n_rows):
        for c in range(n_cols):
            grid[r, c] = rows[r][c]
    return grid


@dataclass(frozen=True)
class SubmatrixSpec:
    """Row and column labels to keep."""

    rows: frozenset
    cols: frozenset

    def __post_init__(self):
        object.__setattr__(self, "rows", frozenset(self.rows))
        object.__setattr__(self, "cols", frozenset(self.cols))
        if len(self.rows) != len(self.cols):
            raise DimensionMismatchError(
                f"submatrix spec is not square: {len(self.rows)} rows, {len(self.cols)} cols"
            )

    @property
    def order(self) -> int:
        return len(self.rows)


@dataclass(frozen=True, eq=False)
class LabeledMatrix:
    kind: ScalarKind
    row_labels: Tuple[int, ...]
    col_labels: Tuple[int, ...]
    entries: np.ndarray

    def __post_init__(self):
        rows = tuple(int(r) for r in self.row_labels)
        cols = tuple(int(c) for c in self.col_labels)
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise ValueError("labels must be distinct")
        if any(label < 1 for label in rows + cols):
            raise ValueError("labels must be positive")
        entries = self.entries
        if not isinstance(entries, np.ndarray) or entries.dtype != object:
            entries = _grid(entries, len(rows), len(cols))
        else:
            entries = entries.copy()
        if entries.shape != (len(rows), len(cols)):
            raise DimensionMismatchError(
                f"grid {entries.shape} does not match {len(rows)}x{len(cols)} labels"
            )
        entries.flags.writeable = False
        object.__setattr__(self, "row_labels", rows)
        object.__setattr__(self, "col_labels", cols)
        object.__setattr__(self, "entries", entries)

    # -- construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, kind: ScalarKind, rows: Sequence[Sequence], row_labels=None, col_labels=None):
        n_rows = len(rows)
        n_cols = len(rows[0]) if n_rows else (len(col_labels) if col_labels is not None else 0)
        if any(len(r) != n_cols for r in rows):
            raise DimensionMismatchError("ragged rows")
        row_labels = tuple(range(1, n_rows + 1)) if row_labels is None else tuple(row_labels)
        col_labels = tuple(range(1, n_cols + 1)) if col_labels is None else tuple(col_labels)
        return cls(kind, row_labels, col_labels, _grid(rows, n_rows, n_cols))

    @classmethod
    def identity(cls, kind: ScalarKind, n: int, labels: Sequence[int] | None = None):
        labels = tuple(range(1, n + 1)) if labels is None else tuple(labels)
        one, zero = kind.one(), kind.zero()
        rows = [[one if r == c else zero for c in range(n)] for r in range(n)]
        return cls.from_rows(kind, rows, labels, labels)

    @classmethod
    def zeros(cls, kind: ScalarKind, row_labels: Sequence[int], col_labels: Sequence[int]):
        zero = kind.zero()
        rows = [[zero] * len(col_labels) for _ in row_labels]
        return cls.from_rows(kind, rows, row_labels, col_labels)

    @classmethod
    def diagonal(cls, kind: ScalarKind, values: Sequence, labels: Sequence[int] | None = None):
        n = len(values)
        labels = tuple(range(1, n + 1)) if labels is None else tuple(labels)
        zero = kind.zero()
        rows = [[values[r] if r == c else zero for c in range(n)] for r in range(n)]
        return cls.from_rows(kind, rows, labels, labels)

    # -- access -------------------------------------------------------------

    @cached_property
    def _row_pos(self):
        return {label: pos for pos, label in enumerate(self.row_labels)}

    @cached_property
    def _col_pos(self):
        return {label: pos for pos, label in enumerate(self.col_labels)}

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    @property
    def n(self) -> int:
        return len(self.row_labels)

    @property
    def is_square(self) -> bool:
        return len(self.row_labels) == len(self.col_labels)

    def row_pos(self, label: int) -> int:
        try:
            return self._row_pos[label]
        except KeyError:
            raise UnknownLabelError(label, "row") from None

    def col_pos(self, label: int) -> int:
        try:
            return self._col_pos[label]
        except KeyError:
            raise UnknownLabelError(label, "column") from None

    def __getitem__(self, key):
        i, j = key
        return self.entries[self.row_pos(i), self.col_pos(j)]

    def row(self, i: int) -> list:
        return list(self.entries[self.row_pos(i), :])

    def col(self, j: int) -> list:
        return list(self.entries[:, self.col_pos(j)])

    def to_lists(self) -> list:
        return [list(r) for r in self.entries]

    def __eq__(self, other):
        if not isinstance(other, LabeledMatrix):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.row_labels == other.row_labels
            and self.col_labels == other.col_labels
            and self.shape == other.shape
            and all(x == y for x, y in zip(self.entries.flat, other.entries.flat))
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"LabeledMatrix({self.kind.value}, rows={self.row_labels}, "
            f"cols={self.col_labels}, entries={self.to_lists()})"
        )

    # -- structure ----------------------------------------------------------

    def restrict(self, rows: Iterable[int], cols: Iterable[int]) -> "LabeledMatrix":
        """Keep the given labels, in this matrix's storage order."""
        rows, cols = set(rows), set(cols)
        for label in rows:
            self.row_pos(label)
        for label in cols:
            self.col_pos(label)
        keep_r = [p for p, label in enumerate(self.row_labels) if label in rows]
        keep_c = [p for p, label in enumerate(self.col_labels) if label in cols]
        if keep_r and keep_c:
            block = self.entries[np.ix_(keep_r, keep_c)]
        else:
            block = np.empty((len(keep_r), len(keep_c)), dtype=object)
        return LabeledMatrix(
            self.kind,
            tuple(self.row_labels[p] for p in keep_r),
            tuple(self.col_labels[p] for p in keep_c),
            block,
        )

    def delete_rc(self, rows: Iterable[int], cols: Iterable[int]) -> "LabeledMatrix":
        rows, cols = set(rows), set(cols)
        for label in rows:
            self.row_pos(label)
        for label in cols:
            self.col_pos(label)
        return self.restrict(
            [r for r in self.row_labels if r not in rows],
            [c for c in self.col_labels if c not in cols],
        )

    def complement(self, spec: SubmatrixSpec) -> "LabeledMatrix":
        return self.delete_rc(spec.rows, spec.cols)

    def hermitian_dual(self) -> "LabeledMatrix":
        n_rows, n_cols = self.shape
        dual = [[conjugate(self.entries[r, c]) for r in range(n_rows)] for c in range(n_cols)]
        return LabeledMatrix(self.kind, self.col_labels, self.row_labels, _grid(dual, n_cols, n_rows))

    def is_hermitian(self) -> bool:
        return self.is_square and self == self.hermitian_dual()

    def permute(self, row_order: Sequence[int], col_order: Sequence[int]) -> "LabeledMatrix":
        """Reorder storage; each label travels with its row or column."""
        if sorted(row_order) != sorted(self.row_labels) or sorted(col_order) != sorted(self.col_labels):
            raise DimensionMismatchError("orders must be permutations of the labels")
        rp = [self.row_pos(label) for label in row_order]
        cp = [self.col_pos(label) for label in col_order]
        return LabeledMatrix(self.kind, tuple(row_order), tuple(col_order), self.entries[np.ix_(rp, cp)])

    def relabel(self, row_labels: Sequence[int], col_labels: Sequence[int]) -> "LabeledMatrix":
        return LabeledMatrix(self.kind, tuple(row_labels), tuple(col_labels), self.entries)

    def map(self, fn: Callable) -> "LabeledMatrix":
        rows = [[fn(x) for x in r] for r in self.entries]
        return LabeledMatrix.from_rows(self.kind, rows, self.row_labels, self.col_labels)

    # -- arithmetic ---------------------------------------------------------

    def __matmul__(self, other: "LabeledMatrix") -> "LabeledMatrix":
        return matmul(self, other)

    def __add__(self, other: "LabeledMatrix") -> "LabeledMatrix":
        self._check_same_shape(other)
        rows = [[x + y for x, y in zip(r, s)] for r, s in zip(self.entries, other.entries)]
        return LabeledMatrix.from_rows(self.kind, rows, self.row_labels, self.col_labels)

    def __sub__(self, other: "LabeledMatrix") -> "LabeledMatrix":
        self._check_same_shape(other)
        rows = [[x - y for x, y in zip(r, s)] for r, s in zip(self.entries, other.entries)]
        return LabeledMatrix.from_rows(self.kind, rows, self.row_labels, self.col_labels)

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionMismatchError(f"shapes differ: {self.shape} vs {other.shape}")


# -- module-level operations ---------------------------------------------------


def delete_rc(A: LabeledMatrix, rows: Iterable[int], cols: Iterable[int]) -> LabeledMatrix:
    rows, cols = set(rows), set(cols)
    if len(rows) != len(cols):
        raise DimensionMismatchError("delete_rc needs as many rows as columns")
    return A.delete_rc(rows, cols)


def complement(A: LabeledMatrix, spec: SubmatrixSpec) -> LabeledMatrix:
    return A.complement(spec)


def hermitian_dual(A: LabeledMatrix) -> LabeledMatrix:
    return A.hermitian_dual()


def is_hermitian(A: LabeledMatrix) -> bool:
    return A.is_hermitian()


def matmul(A: LabeledMatrix, B: LabeledMatrix) -> LabeledMatrix:
    """Positional product; rows keep A's labels, columns keep B's."""
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatchError(f"cannot multiply {A.shape} by {B.shape}")
    if A.kind != B.kind:
        raise DimensionMismatchError(f"scalar kinds differ: {A.kind.value} vs {B.kind.value}")
    if A.shape[1] == 0:
        return LabeledMatrix.zeros(A.kind, A.row_labels, B.col_labels)
    # object matmul multiplies a_rt * b_tc in that order
    return LabeledMatrix(A.kind, A.row_labels, B.col_labels, A.entries @ B.entries)


class ElementaryOp(str, Enum):
    SCALE = "scale"
    ADD = "add"


def row_op(A: LabeledMatrix, op: ElementaryOp, i: int, k: int | None, lam) -> LabeledMatrix:
    """SCALE: row i <- lam * row i.  ADD: row i <- row i + lam * row k.  lam acts from the left."""
    op = ElementaryOp(op)
    rows = A.to_lists()
    p = A.row_pos(i)
    if op is ElementaryOp.SCALE:
        rows[p] = [lam * x for x in rows[p]]
    else:
        if k is None or k == i:
            raise DimensionMismatchError("row addition needs a second, different row")
        q = A.row_pos(k)
        rows[p] = [x + lam * y for x, y in zip(rows[p], rows[q])]
    return LabeledMatrix.from_rows(A.kind, rows, A.row_labels, A.col_labels)


def col_op(A: LabeledMatrix, op: ElementaryOp, j: int, k: int | None, lam) -> LabeledMatrix:
    """SCALE: col j <- col j * lam.  ADD: col j <- col j + col k * lam.  lam acts from the right."""
    op = ElementaryOp(op)
    rows = A.to_lists()
    p = A.col_pos(j)
    if op is ElementaryOp.SCALE:
        for r in rows:
            r[p] = r[p] * lam
    else:
        if k is None or k == j:
            raise DimensionMismatchError("column addition needs a second, different column")
        q = A.col_pos(k)
        for r in rows:
            r[p] = r[p] + r[q] * lam
    return LabeledMatrix.from_rows(A.kind, rows, A.row_labels, A.col_labels)


def pivot_position(column: list, start: int, exact: bool) -> int | None:
    candidates = [p for p in range(start, len(column)) if not is_zero(column[p])]
    if not candidates:
        return None
    if exact:
        return candidates[0]
    return max(candidates, key=lambda p: norm(column[p]))


def determinant(A: LabeledMatrix):
    """Determinant over a commutative kind by Gaussian elimination."""
    if not A.kind.is_commutative:
        raise UnsupportedScalarError(f"determinant needs a commutative kind, got {A.kind.value}")
    if not A.is_square:
        raise DimensionMismatchError("determinant of a non-square matrix")
    m = A.to_lists()
    n = len(m)
    det = A.kind.one()
    for c in range(n):
        p = pivot_position([m[r][c] for r in range(n)], c, A.kind.is_exact)
        if p is None:
            return A.kind.zero()
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        pivot = m[c][c]
        det = det * pivot
        inv = inverse(pivot)
        for r in range(c + 1, n):
            factor = m[r][c] * inv
            if is_zero(factor):
                continue
            m[r] = [x - factor * y for x, y in zip(m[r], m[c])]
    return det


def theta_n(A: LabeledMatrix) -> LabeledMatrix:
    """Entrywise 2x2 complex image of a quaternionic matrix, block (p, q) = theta(a_pq)."""
    if not A.kind.is_quaternion:
        raise UnsupportedScalarError(f"theta_n needs a quaternion kind, got {A.kind.value}")
    n_rows, n_cols = A.shape
    rows = [[None] * (2 * n_cols) for _ in range(2 * n_rows)]
    for r in range(n_rows):
        for c in range(n_cols):
            block = theta(A.entries[r, c])
            for dr in range(2):
                for dc in range(2):
                    rows[2 * r + dr][2 * c + dc] = block[dr][dc]
    return LabeledMatrix.from_rows(A.kind.complex_kind, rows)
