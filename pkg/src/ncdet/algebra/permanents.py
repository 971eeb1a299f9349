"""Double permanents and the polynomial expansion of quaternionic quasideterminants.

A monomial m_{I,J}(A) = a_{i1 j2} ~a_{i2 j2} a_{i2 j3} ... ~a_{ik jk} a_{ik j1}
is a path from i1 to j1 that alternates plain and conjugated entries. Summing
monomials over orderings with fixed heads gives the double permanent pi_ij;
summing pi_ij(B) over the square submatrices B through a_ij, weighted by
(-1)^{K(B)-1} nu(B^c), gives nu(A^{ij}) |A|_ij as a polynomial.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb, factorial
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from ncdet.algebra.dets import nu_via_moore
from ncdet.algebra.matrices import LabeledMatrix, SubmatrixSpec
from ncdet.algebra.scalars import conjugate
from ncdet.constants import PERMANENT_MAX_N
from ncdet.exceptions import CapExceededError, DimensionMismatchError


def entry_token(row: int, col: int) -> str:
    if row < 10 and col < 10:
        return f"a{row}{col}"
    return f"a{row},{col}"


def _labels_token(labels: Sequence[int]) -> str:
    if all(label < 10 for label in labels):
        return "".join(str(label) for label in labels)
    return ",".join(str(label) for label in labels)


@dataclass(frozen=True)
class MonomialPath:
    """(row, col, conjugated) steps of m_{I,J}; conjugation sits on every second step."""

    steps: Tuple[Tuple[int, int, bool], ...]

    @classmethod
    def from_orderings(cls, I: Sequence[int], J: Sequence[int]) -> "MonomialPath":
        I, J = tuple(I), tuple(J)
        k = len(I)
        if k == 0 or len(J) != k:
            raise DimensionMismatchError("orderings must be non-empty and of equal length")
        if len(set(I)) != k or len(set(J)) != k:
            raise DimensionMismatchError("orderings must not repeat labels")
        if k == 1:
            return cls(((I[0], J[0], False),))
        steps = [(I[0], J[1], False)]
        for t in range(1, k):
            steps.append((I[t], J[t], True))
            steps.append((I[t], J[(t + 1) % k], False))
        return cls(tuple(steps))

    @property
    def order(self) -> int:
        return (len(self.steps) + 1) // 2

    @property
    def start(self) -> int:
        return self.steps[0][0]

    @property
    def end(self) -> int:
        return self.steps[-1][1]

    def evaluate(self, A: LabeledMatrix):
        value = A.kind.one()
        for row, col, conj in self.steps:
            entry = A[row, col]
            value = value * (conjugate(entry) if conj else entry)
        return value

    def word(self) -> str:
        return " ".join(("~" if conj else "") + entry_token(row, col) for row, col, conj in self.steps)


def monomial_value(A: LabeledMatrix, I: Sequence[int], J: Sequence[int]):
    return MonomialPath.from_orderings(I, J).evaluate(A)


def _orderings_with_head(labels: Sequence[int], head: int) -> Iterator[Tuple[int, ...]]:
    rest = sorted(label for label in labels if label != head)
    for tail in permutations(rest):
        yield (head,) + tail


def _check_cap(n: int, max_n: int, what: str):
    if n > max_n:
        raise CapExceededError(what, n, max_n)


def permanent_paths(rows: Sequence[int], cols: Sequence[int], i: int, j: int) -> List[MonomialPath]:
    """Monomials of pi_ij over the given labels: I outer, J inner, both lexicographic."""
    if i not in rows or j not in cols:
        raise DimensionMismatchError(f"({i}, {j}) is not an entry of the block")
    return [
        MonomialPath.from_orderings(I, J)
        for I in _orderings_with_head(rows, i)
        for J in _orderings_with_head(cols, j)
    ]


def double_permanent(A: LabeledMatrix, i: int, j: int, max_n: int = PERMANENT_MAX_N):
    """pi_ij(A): sum of m_{I,J}(A) over orderings with i1 = i and j1 = j."""
    if not A.is_square:
        raise DimensionMismatchError("double permanent of a non-square matrix")
    A.row_pos(i)
    A.col_pos(j)
    _check_cap(A.n, max_n, "double permanent")
    total = A.kind.zero()
    for path in permanent_paths(A.row_labels, A.col_labels, i, j):
        total = total + path.evaluate(A)
    return total


def submatrix_specs(
    rows: Sequence[int], cols: Sequence[int], i: int, j: int
) -> Iterator[SubmatrixSpec]:
    """Square blocks through a_ij: by order, then row subset, then column subset."""
    other_rows = sorted(r for r in rows if r != i)
    other_cols = sorted(c for c in cols if c != j)
    for k in range(1, min(len(rows), len(cols)) + 1):
        for extra_rows in combinations(other_rows, k - 1):
            for extra_cols in combinations(other_cols, k - 1):
                yield SubmatrixSpec({i, *extra_rows}, {j, *extra_cols})


class ExpansionTables:
    """nu of sub-blocks, double permanents and Q values of one matrix, shared across entries.

    Keys are label sets of ``matrix``; a table must not be reused for another matrix.
    """

    def __init__(self, matrix: LabeledMatrix, max_n: int = PERMANENT_MAX_N):
        self.matrix = matrix
        self.max_n = max_n
        self._nu: Dict[Tuple[FrozenSet[int], FrozenSet[int]], object] = {}
        self._pi: Dict[Tuple[FrozenSet[int], FrozenSet[int], int, int], object] = {}
        self._q: Dict[Tuple, object] = {}

    def nu(self, rows: Iterable[int], cols: Iterable[int]):
        key = (frozenset(rows), frozenset(cols))
        if key not in self._nu:
            self._nu[key] = nu_via_moore(self.matrix.restrict(*key))
        return self._nu[key]

    def permanent(self, rows: Iterable[int], cols: Iterable[int], i: int, j: int):
        key = (frozenset(rows), frozenset(cols), i, j)
        if key not in self._pi:
            block = self.matrix.restrict(key[0], key[1])
            self._pi[key] = double_permanent(block, i, j, max_n=self.max_n)
        return self._pi[key]


def _tables_for(A: LabeledMatrix, tables: Optional[ExpansionTables], max_n: int) -> ExpansionTables:
    if tables is None:
        return ExpansionTables(A, max_n)
    if tables.matrix is not A:
        raise ValueError("expansion tables belong to a different matrix")
    return tables


def rhs_theorem33(
    A: LabeledMatrix,
    i: int,
    j: int,
    conjugate_permanents: bool = False,
    max_n: int = PERMANENT_MAX_N,
    tables: Optional[ExpansionTables] = None,
):
    """sum over blocks B through a_ij of (-1)^{K(B)-1} nu(B^c) pi_ij(B).

    With ``conjugate_permanents`` every pi_ij(B) is replaced by its conjugate.
    Pass the same ``tables`` for every entry of A to share nu and pi values.
    """
    if not A.is_square:
        raise DimensionMismatchError("expansion of a non-square matrix")
    A.row_pos(i)
    A.col_pos(j)
    _check_cap(A.n, max_n, "quasideterminant expansion")
    tables = _tables_for(A, tables, max_n)
    total = A.kind.zero()
    for spec in submatrix_specs(A.row_labels, A.col_labels, i, j):
        pi = tables.permanent(spec.rows, spec.cols, i, j)
        if conjugate_permanents:
            pi = conjugate(pi)
        rest_rows = [r for r in A.row_labels if r not in spec.rows]
        rest_cols = [c for c in A.col_labels if c not in spec.cols]
        term = tables.nu(rest_rows, rest_cols) * pi
        total = total + term if spec.order % 2 else total - term
    return total


def q_polynomial(
    A: LabeledMatrix, i: int, j: int, hermitian: bool = False, tables: Optional[ExpansionTables] = None
):
    """Q_ij(A) = nu(A^{ij}) a_ij - sum_{p != i, q != j} a_iq conj(Q_pq(A^{ij})) a_pj.

    With ``hermitian`` the conjugate is replaced by Q_qp(A^{ij}) whenever
    A^{ij} is Hermitian. Values are memoized in ``tables``.
    """
    if not A.is_square or A.n < 1:
        raise DimensionMismatchError("Q polynomial needs a non-empty square matrix")
    A.row_pos(i)
    A.col_pos(j)
    tables = _tables_for(A, tables, PERMANENT_MAX_N)
    memo = tables._q

    def q(M: LabeledMatrix, p: int, s: int):
        key = (frozenset(M.row_labels), frozenset(M.col_labels), p, s, hermitian)
        if key in memo:
            return memo[key]
        if M.n == 1:
            memo[key] = M[p, s]
            return memo[key]
        sub = M.delete_rc({p}, {s})
        use_hermitian = hermitian and sub.is_hermitian()
        value = tables.nu(sub.row_labels, sub.col_labels) * M[p, s]
        for r in sub.row_labels:
            for c in sub.col_labels:
                inner = q(sub, c, r) if use_hermitian else conjugate(q(sub, r, c))
                value = value - M[p, c] * inner * M[r, s]
        memo[key] = value
        return value

    return q(A, i, j)


def mu_count(n: int) -> int:
    """Number of monomials in the expansion of an order-n quasideterminant."""
    if n < 1:
        raise ValueError("mu is defined for n >= 1")
    mu = 1
    for m in range(2, n + 1):
        mu = 1 + (m - 1) ** 2 * mu
    return mu


def monomial_census(n: int) -> Dict[int, int]:
    """Monomials contributed by blocks of each order k: C(n-1, k-1)^2 ((k-1)!)^2."""
    return {k: comb(n - 1, k - 1) ** 2 * factorial(k - 1) ** 2 for k in range(1, n + 1)}


@dataclass(frozen=True)
class PathTerm:
    sign_exponent: int
    spec: SubmatrixSpec
    complement_rows: Tuple[int, ...]
    complement_cols: Tuple[int, ...]
    path: MonomialPath

    @property
    def sign(self) -> int:
        return -1 if self.sign_exponent % 2 else 1

    def coefficient_token(self) -> str:
        if not self.complement_rows:
            return "1"
        if len(self.complement_rows) == 1:
            return f"nu({entry_token(self.complement_rows[0], self.complement_cols[0])})"
        return f"nu(A[{_labels_token(self.complement_rows)};{_labels_token(self.complement_cols)}])"

    def to_text(self) -> str:
        return f"{'+' if self.sign > 0 else '-'} {self.coefficient_token()} {self.path.word()}"

    def evaluate(self, A: LabeledMatrix):
        coefficient = nu_via_moore(A.restrict(self.complement_rows, self.complement_cols))
        value = coefficient * self.path.evaluate(A)
        return value if self.sign > 0 else -value


def enumerate_paths(n: int, i: int, j: int, max_n: int = PERMANENT_MAX_N) -> List[PathTerm]:
    """Every monomial of the order-n expansion at (i, j), in a fixed deterministic order."""
    if n < 1:
        raise ValueError("n must be positive")
    if not (1 <= i <= n and 1 <= j <= n):
        raise DimensionMismatchError(f"({i}, {j}) outside 1..{n}")
    _check_cap(n, max_n, "path enumeration")
    labels = tuple(range(1, n + 1))
    terms = []
    for spec in submatrix_specs(labels, labels, i, j):
        rows, cols = sorted(spec.rows), sorted(spec.cols)
        rest_rows = tuple(r for r in labels if r not in spec.rows)
        rest_cols = tuple(c for c in labels if c not in spec.cols)
        for path in permanent_paths(rows, cols, i, j):
            terms.append(PathTerm(spec.order - 1, spec, rest_rows, rest_cols, path))
    return terms


def format_terms(terms: Sequence[PathTerm]) -> List[str]:
    return [term.to_text() for term in terms]


def evaluate_terms(A: LabeledMatrix, terms: Sequence[PathTerm]):
    total = A.kind.zero()
    for term in terms:
        total = total + term.evaluate(A)
    return total
