from itertools import combinations
from typing import Optional

import numpy as np

from ncdet import logger
from ncdet.algebra.dets import gauss_udl, nu_via_moore
from ncdet.algebra.matrices import LabeledMatrix
from ncdet.algebra.scalars import ScalarKind, is_zero
from ncdet.constants import DEFAULT_SEED
from ncdet.entity.config_entity import GeneratorConfig
from ncdet.exceptions import DegenerateStreamError, SingularMatrixError

# Above this order only the leading structure of A and A A* is checked
FULL_CHECK_MAX_N = 5


def all_square_submatrices_invertible(A: LabeledMatrix) -> bool:
    for k in range(1, A.n + 1):
        for rows in combinations(A.row_labels, k):
            for cols in combinations(A.col_labels, k):
                if is_zero(nu_via_moore(A.restrict(rows, cols))):
                    return False
    return True


def leading_structure_invertible(A: LabeledMatrix) -> bool:
    """Every y_k of A and of A A* is nonzero."""
    for M in (A, A @ A.hermitian_dual()):
        try:
            factors = gauss_udl(M)
        except SingularMatrixError:
            return False
        if any(is_zero(y) for y in factors.diagonal):
            return False
    return True


def is_generic(A: LabeledMatrix) -> bool:
    if A.n <= FULL_CHECK_MAX_N:
        return all_square_submatrices_invertible(A)
    return leading_structure_invertible(A)


class RandomMatrixGenerator:
    """Seeded source of random matrices over one scalar kind.

    Exact kinds draw integer components uniformly from [low, high]; f64 kinds
    draw uniform floats from the same interval. The stream is a numpy
    ``default_rng(seed)``, so a (seed, call sequence) pair fixes every sample.
    """

    def __init__(self, kind: ScalarKind, seed: int = DEFAULT_SEED, config: Optional[GeneratorConfig] = None):
        self.kind = ScalarKind(kind)
        self.seed = seed
        self.config = config or GeneratorConfig()
        self.rng = np.random.default_rng(seed)

    def _components(self, count: int) -> list:
        low, high = self.config.low, self.config.high
        if self.kind.is_exact:
            return [int(x) for x in self.rng.integers(low, high, size=count, endpoint=True)]
        return [float(x) for x in self.rng.uniform(low, high, size=count)]

    def scalar(self):
        return self.kind.from_components(self._components(self.kind.arity))

    def real(self):
        return self.kind.embed(self._components(1)[0])

    def nonzero_scalar(self):
        for _ in range(self.config.resample_limit):
            x = self.scalar()
            if not is_zero(x):
                return x
        raise DegenerateStreamError(self.seed, self.config.resample_limit)

    def raw(self, n: int, hermitian: bool = False) -> LabeledMatrix:
        if n < 1:
            raise ValueError(f"n must be positive, got {n}")
        if not hermitian:
            rows = [[self.scalar() for _ in range(n)] for _ in range(n)]
            return LabeledMatrix.from_rows(self.kind, rows)
        rows = [[None] * n for _ in range(n)]
        for p in range(n):
            rows[p][p] = self.real()
            for q in range(p + 1, n):
                rows[p][q] = self.scalar()
        for p in range(n):
            for q in range(p):
                rows[p][q] = rows[q][p].conjugate() if self.kind.arity > 1 else rows[q][p]
        return LabeledMatrix.from_rows(self.kind, rows)

    def _generic(self, n: int, hermitian: bool) -> LabeledMatrix:
        for attempt in range(1, self.config.resample_limit + 1):
            A = self.raw(n, hermitian=hermitian)
            if is_generic(A):
                return A
            logger.debug(f"degenerate sample {attempt} (seed={self.seed}, n={n}), resampling")
        raise DegenerateStreamError(self.seed, self.config.resample_limit)

    def generic(self, n: int) -> LabeledMatrix:
        return self._generic(n, hermitian=False)

    def generic_hermitian(self, n: int) -> LabeledMatrix:
        return self._generic(n, hermitian=True)


def random_generic_matrix(seed: int, n: int, kind: ScalarKind, config: Optional[GeneratorConfig] = None) -> LabeledMatrix:
    return RandomMatrixGenerator(kind, seed, config).generic(n)
