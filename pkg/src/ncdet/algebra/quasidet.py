"""Quasideterminants, matrix inversion and their structural identities.

Two independent evaluations are provided. ``quasidet_block`` is the
definition |A|_ij = a_ij - r_i^j (A^{ij})^{-1} c_j^i and is what every
other module calls. ``quasidet_recursive`` expands through the inverses of
inner quasideterminants, needs a strictly stronger genericity condition, and
exists as an oracle for the first.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple

from ncdet.algebra.matrices import LabeledMatrix, SubmatrixSpec, pivot_position
from ncdet.algebra.scalars import Tolerance, close, inverse, is_zero
from ncdet.exceptions import DimensionMismatchError, QuasidetUndefinedError, SingularMatrixError


@dataclass(frozen=True)
class QuasidetResult:
    row: int
    col: int
    defined: bool
    value: object = None
    reason: Optional[str] = None

    def require(self):
        if not self.defined:
            raise QuasidetUndefinedError(self.row, self.col, self.reason or "A^{ij} not invertible")
        return self.value


def invert(A: LabeledMatrix) -> LabeledMatrix:
    """Inverse over a division scalar kind by Gauss-Jordan elimination.

    Rows are only ever multiplied from the left, so replaying the same
    operations on the identity yields A^{-1} without assuming commutativity.
    The inverse's rows carry A's column labels and its columns A's row labels.
    """
    if not A.is_square:
        raise DimensionMismatchError("inverse of a non-square matrix")
    n = A.n
    m = A.to_lists()
    e = LabeledMatrix.identity(A.kind, n).to_lists()
    for c in range(n):
        p = pivot_position([m[r][c] for r in range(n)], c, A.kind.is_exact)
        if p is None:
            raise SingularMatrixError(f"no invertible pivot in column {A.col_labels[c]}")
        if p != c:
            m[c], m[p] = m[p], m[c]
            e[c], e[p] = e[p], e[c]
        inv = inverse(m[c][c])
        m[c] = [inv * x for x in m[c]]
        e[c] = [inv * x for x in e[c]]
        for r in range(n):
            if r == c or is_zero(m[r][c]):
                continue
            factor = m[r][c]
            m[r] = [x - factor * y for x, y in zip(m[r], m[c])]
            e[r] = [x - factor * y for x, y in zip(e[r], e[c])]
    return LabeledMatrix.from_rows(A.kind, e, A.col_labels, A.row_labels)


def _require_square(A: LabeledMatrix, i: int, j: int):
    if not A.is_square or A.n < 1:
        raise DimensionMismatchError("quasideterminants need a non-empty square matrix")
    A.row_pos(i)
    A.col_pos(j)


def quasidet_block(A: LabeledMatrix, i: int, j: int) -> QuasidetResult:
    """|A|_ij = a_ij - r_i^j (A^{ij})^{-1} c_j^i."""
    _require_square(A, i, j)
    if A.n == 1:
        return QuasidetResult(i, j, True, A[i, j])
    sub = A.delete_rc({i}, {j})
    try:
        sub_inv = invert(sub)
    except SingularMatrixError:
        return QuasidetResult(i, j, False, reason="A^{ij} not invertible")
    value = A[i, j]
    for q in sub.col_labels:
        a_iq = A[i, q]
        for p in sub.row_labels:
            value = value - a_iq * sub_inv[q, p] * A[p, j]
    return QuasidetResult(i, j, True, value)


def quasidet(A: LabeledMatrix, i: int, j: int):
    """Value of |A|_ij; raises QuasidetUndefinedError when it does not exist."""
    return quasidet_block(A, i, j).require()


def quasidet_recursive(A: LabeledMatrix, i: int, j: int) -> QuasidetResult:
    """|A|_ij = a_ij - sum_{p != i, q != j} a_iq |A^{ij}|_pq^{-1} a_pj."""
    _require_square(A, i, j)
    memo: Dict[Tuple, Optional[object]] = {}

    def expand(M: LabeledMatrix, p: int, q: int):
        key = (M.row_labels, M.col_labels, p, q)
        if key in memo:
            return memo[key]
        if M.n == 1:
            memo[key] = M[p, q]
            return memo[key]
        sub = M.delete_rc({p}, {q})
        value = M[p, q]
        for r in sub.row_labels:
            for c in sub.col_labels:
                inner = expand(sub, r, c)
                if inner is None or is_zero(inner):
                    memo[key] = None
                    return None
                value = value - M[p, c] * inverse(inner) * M[r, q]
        memo[key] = value
        return value

    value = expand(A, i, j)
    if value is None:
        return QuasidetResult(i, j, False, reason="an inner quasideterminant is undefined or zero")
    return QuasidetResult(i, j, True, value)


class QuasiminorTable:
    """Memoized quasiminors of one matrix, keyed by the deleted labels."""

    def __init__(self, A: LabeledMatrix):
        self.A = A
        self._cache: Dict[Tuple, QuasidetResult] = {}

    def __call__(self, i: int, j: int, deleted_rows: Iterable[int] = (), deleted_cols: Iterable[int] = ()):
        key = (frozenset(deleted_rows), frozenset(deleted_cols), i, j)
        if key not in self._cache:
            self._cache[key] = quasidet_block(self.A.delete_rc(key[0], key[1]), i, j)
        return self._cache[key]


def _inverse_or_none(result: QuasidetResult):
    if not result.defined or is_zero(result.value):
        return None
    return inverse(result.value)


def check_homological(
    A: LabeledMatrix,
    i: int,
    j: int,
    l: int | None,
    s: int | None,
    k: int | None,
    t: int | None,
    tolerance: Tolerance | None = None,
    table: QuasiminorTable | None = None,
) -> Tuple[Optional[bool], Optional[bool]]:
    """Row relation -|A|_ij |A^{il}|_sj^{-1} = |A|_il |A^{ij}|_sl^{-1}  (s != i, l != j)
    and column relation -|A^{kj}|_it^{-1} |A|_ij = |A^{ij}|_kt^{-1} |A|_kj  (k != i, t != j).

    Each entry of the returned pair is None when a subexpression is undefined
    or a quasiminor to be inverted is zero, or when its labels were not given.
    """
    qd = table if table is not None else QuasiminorTable(A)
    a_ij = qd(i, j)

    row_ok = None
    if l is not None and s is not None:
        if s == i or l == j:
            raise DimensionMismatchError("row relation needs s != i and l != j")
        a_il = qd(i, l)
        inv_sj = _inverse_or_none(qd(s, j, {i}, {l}))
        inv_sl = _inverse_or_none(qd(s, l, {i}, {j}))
        if a_ij.defined and a_il.defined and inv_sj is not None and inv_sl is not None:
            row_ok = close(-a_ij.value * inv_sj, a_il.value * inv_sl, tolerance)

    col_ok = None
    if k is not None and t is not None:
        if k == i or t == j:
            raise DimensionMismatchError("column relation needs k != i and t != j")
        a_kj = qd(k, j)
        inv_it = _inverse_or_none(qd(i, t, {k}, {j}))
        inv_kt = _inverse_or_none(qd(k, t, {i}, {j}))
        if a_ij.defined and a_kj.defined and inv_it is not None and inv_kt is not None:
            col_ok = close(-inv_it * a_ij.value, inv_kt * a_kj.value, tolerance)

    return row_ok, col_ok


def schur_complement(A: LabeledMatrix, k: int) -> LabeledMatrix:
    """A11 - A12 A22^{-1} A21 for the leading k x k block A11 (labels of A11)."""
    if not A.is_square or not 0 < k <= A.n:
        raise DimensionMismatchError(f"block size {k} outside 1..{A.n}")
    r1, r2 = A.row_labels[:k], A.row_labels[k:]
    c1, c2 = A.col_labels[:k], A.col_labels[k:]
    a11 = A.restrict(r1, c1)
    if not r2:
        return a11
    a22_inv = invert(A.restrict(r2, c2))
    return a11 - A.restrict(r1, c2) @ a22_inv @ A.restrict(r2, c1)


def check_heredity(A: LabeledMatrix, k: int, i: int, j: int, tolerance: Tolerance | None = None) -> bool:
    """|A|_ij = |A11 - A12 A22^{-1} A21|_ij for i, j in the leading k labels."""
    if i not in A.row_labels[:k] or j not in A.col_labels[:k]:
        raise DimensionMismatchError(f"({i}, {j}) is not inside the leading {k}x{k} block")
    compressed = schur_complement(A, k)
    return close(quasidet(A, i, j), quasidet(compressed, i, j), tolerance)


def leading_pivot(A: LabeledMatrix, k: int) -> SubmatrixSpec:
    return SubmatrixSpec(A.row_labels[:k], A.col_labels[:k])


def sylvester_compress(A: LabeledMatrix, pivot: SubmatrixSpec) -> LabeledMatrix:
    """B = (b_pq) over the labels outside the pivot, b_pq the (p, q) quasideterminant
    of the pivot block bordered by row p and column q."""
    rows0 = [r for r in A.row_labels if r in pivot.rows]
    cols0 = [c for c in A.col_labels if c in pivot.cols]
    if len(rows0) != len(pivot.rows) or len(cols0) != len(pivot.cols):
        raise DimensionMismatchError("pivot labels are not all in the matrix")
    if rows0:
        invert(A.restrict(rows0, cols0))
    rest_r = [r for r in A.row_labels if r not in pivot.rows]
    rest_c = [c for c in A.col_labels if c not in pivot.cols]
    grid = [
        [quasidet(A.restrict(rows0 + [p], cols0 + [q]), p, q) for q in rest_c]
        for p in rest_r
    ]
    return LabeledMatrix.from_rows(A.kind, grid, rest_r, rest_c)


def check_sylvester(
    A: LabeledMatrix, pivot: SubmatrixSpec, i: int, j: int, tolerance: Tolerance | None = None
) -> bool:
    if i in pivot.rows or j in pivot.cols:
        raise DimensionMismatchError(f"({i}, {j}) lies in the pivot block")
    compressed = sylvester_compress(A, pivot)
    return close(quasidet(A, i, j), quasidet(compressed, i, j), tolerance)
