"""Noncommutative determinants built from quasideterminants.

Predeterminants D_{I,J} and the basic one Delta, the Gauss UDL decomposition
and Dieudonne's predeterminant, the Moore determinant of (Hermitian)
quaternionic matrices, Study's determinant through the complex embedding,
and the quaternionic norm nu in its recursive and polynomial forms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, List, Sequence, Tuple

from ncdet.algebra.matrices import LabeledMatrix, determinant, theta_n
from ncdet.algebra.quasidet import quasidet, quasidet_block
from ncdet.algebra.scalars import conjugate, inverse, is_zero, norm, real_part
from ncdet.constants import MOORE_MAX_N
from ncdet.exceptions import (
    CapExceededError,
    DimensionMismatchError,
    QuasidetUndefinedError,
    SingularMatrixError,
    UnsupportedScalarError,
)


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation taking sorted(seq) to seq, by cycle counting."""
    rank = {label: pos for pos, label in enumerate(sorted(seq))}
    perm = [rank[label] for label in seq]
    seen = [False] * len(perm)
    cycles = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycles += 1
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
    return -1 if (len(perm) - cycles) % 2 else 1


@dataclass(frozen=True)
class Ordering:
    seq: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(int(x) for x in self.seq))
        if len(set(self.seq)) != len(self.seq):
            raise ValueError(f"ordering repeats a label: {self.seq}")

    def parity(self) -> int:
        return permutation_sign(self.seq)

    @classmethod
    def identity(cls, labels: Sequence[int]) -> "Ordering":
        return cls(tuple(sorted(labels)))

    @classmethod
    def all(cls, labels: Sequence[int]) -> Iterator["Ordering"]:
        for seq in permutations(sorted(labels)):
            yield cls(seq)

    def __iter__(self):
        return iter(self.seq)

    def __len__(self):
        return len(self.seq)


def predet(A: LabeledMatrix, I: Ordering, J: Ordering):
    """D_{I,J}(A) = |A|_{i1 j1} |A^{i1 j1}|_{i2 j2} ... a_{in jn}, multiplied left to right."""
    if sorted(I.seq) != sorted(A.row_labels) or sorted(J.seq) != sorted(A.col_labels):
        raise DimensionMismatchError("orderings must be permutations of the matrix labels")
    value = A.kind.one()
    current = A
    for depth, (i, j) in enumerate(zip(I, J), start=1):
        result = quasidet_block(current, i, j)
        if not result.defined:
            raise QuasidetUndefinedError(i, j, result.reason, depth=depth)
        value = value * result.value
        current = current.delete_rc({i}, {j})
    return value


def delta(A: LabeledMatrix):
    """Basic predeterminant: both orderings ascending."""
    return predet(A, Ordering.identity(A.row_labels), Ordering.identity(A.col_labels))


@dataclass(frozen=True)
class UDLFactors:
    U: LabeledMatrix
    D: LabeledMatrix
    L: LabeledMatrix

    @property
    def diagonal(self) -> List:
        return [self.D.entries[p, p] for p in range(self.D.n)]

    def product(self) -> LabeledMatrix:
        return self.U @ self.D @ self.L


def gauss_udl(A: LabeledMatrix) -> UDLFactors:
    """A = U D L with U upper and L lower unitriangular, eliminating from the bottom-right.

    The k-th diagonal entry of D is the (k, k) quasideterminant of the trailing
    submatrix on the labels k..n.
    """
    if not A.is_square:
        raise DimensionMismatchError("UDL decomposition of a non-square matrix")
    kind, n = A.kind, A.n
    m = A.to_lists()
    one, zero = kind.one(), kind.zero()
    u = [[one if r == c else zero for c in range(n)] for r in range(n)]
    l = [[one if r == c else zero for c in range(n)] for r in range(n)]
    y = [zero] * n
    for k in reversed(range(n)):
        y[k] = m[k][k]
        if k == 0:
            break
        if is_zero(y[k]):
            raise SingularMatrixError(
                f"y_{A.row_labels[k]} is zero: trailing submatrix from label {A.row_labels[k]} is singular"
            )
        inv = inverse(y[k])
        for p in range(k):
            u[p][k] = m[p][k] * inv
            l[k][p] = inv * m[k][p]
        for p in range(k):
            left = u[p][k]
            m[p] = [m[p][q] - left * m[k][q] if q < k else m[p][q] for q in range(n)]
    rows, cols = A.row_labels, A.col_labels
    return UDLFactors(
        U=LabeledMatrix.from_rows(kind, u, rows, rows),
        D=LabeledMatrix.diagonal(kind, y).relabel(rows, cols),
        L=LabeledMatrix.from_rows(kind, l, cols, cols),
    )


def dieudonne_pre(A: LabeledMatrix):
    """Product of D's diagonal in the Gauss decomposition, top to bottom."""
    value = A.kind.one()
    for y in gauss_udl(A).diagonal:
        value = value * y
    return value


def dieudonne_sq(A: LabeledMatrix):
    """Squared Dieudonne determinant nu(Delta(A)); exact for rational kinds."""
    return norm(delta(A))


def dieudonne(A: LabeledMatrix) -> float:
    return math.sqrt(float(dieudonne_sq(A)))


def _cycles(perm: Sequence[int], leader: str) -> List[List[int]]:
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = []
        x = start
        while not seen[x]:
            seen[x] = True
            cycle.append(x)
            x = perm[x]
        if leader == "max":
            top = cycle.index(max(cycle))
            cycle = cycle[top:] + cycle[:top]
        cycles.append(cycle)
    cycles.sort(key=lambda c: c[0], reverse=True)
    return cycles


def moore(A: LabeledMatrix, leader: str = "min", max_n: int = MOORE_MAX_N):
    """Moore determinant: sum over S_n of p(sigma) times the cycle products of sigma.

    Each cycle starts at its smallest element (``leader="max"``: its largest),
    cycles are ordered by decreasing leaders and factors multiply in that
    written order. Indices are storage positions of A.
    """
    if not A.is_square:
        raise DimensionMismatchError("Moore determinant of a non-square matrix")
    if leader not in ("min", "max"):
        raise ValueError(f"leader must be 'min' or 'max', got {leader!r}")
    n = A.n
    if n > max_n:
        raise CapExceededError("moore", n, max_n)
    a = A.entries
    total = A.kind.zero()
    for perm in permutations(range(n)):
        cycles = _cycles(perm, leader)
        term = A.kind.one()
        for cycle in cycles:
            for pos, k in enumerate(cycle):
                term = term * a[k, cycle[(pos + 1) % len(cycle)]]
        if (n - len(cycles)) % 2:
            total = total - term
        else:
            total = total + term
    return total


def study(A: LabeledMatrix):
    """S(A) = det theta_n(A), returned as a real."""
    if not A.kind.is_quaternion:
        raise UnsupportedScalarError(f"Study determinant needs a quaternion kind, got {A.kind.value}")
    return real_part(determinant(theta_n(A)))


def nu_via_moore(A: LabeledMatrix, max_n: int = MOORE_MAX_N):
    """nu(A) = M(A A*); total, nu of the 0x0 matrix is 1."""
    if A.n == 0:
        return A.kind.real(1)
    return real_part(moore(A @ A.hermitian_dual(), max_n=max_n))


def nu_matrix(A: LabeledMatrix):
    """nu(A) = nu(|A|_11) nu(A^{11}) down the leading labels; needs a generic A."""
    if not A.is_square:
        raise DimensionMismatchError("norm of a non-square matrix")
    if A.n == 0:
        return A.kind.real(1)
    i, j = A.row_labels[0], A.col_labels[0]
    return norm(quasidet(A, i, j)) * nu_matrix(A.delete_rc({i}, {j}))


def nu_2x2_closed_form(A: LabeledMatrix):
    """nu(a11)nu(a22) + nu(a12)nu(a21) - a12 ~a22 a21 ~a11 - a11 ~a21 a22 ~a12."""
    if A.shape != (2, 2):
        raise DimensionMismatchError("closed form is for 2x2 matrices")
    (a11, a12), (a21, a22) = A.to_lists()
    value = (
        norm(a11) * norm(a22)
        + norm(a12) * norm(a21)
        - a12 * conjugate(a22) * a21 * conjugate(a11)
        - a11 * conjugate(a21) * a22 * conjugate(a12)
    )
    return real_part(value)
