from pathlib import Path

import pytest
from hypothesis import strategies as st

from ncdet.algebra.matrices import LabeledMatrix
from ncdet.algebra.scalars import Complex, Quaternion, ScalarKind
from ncdet.components.generator import RandomMatrixGenerator

RQ = ScalarKind.RATIONAL_QUATERNION
RC = ScalarKind.RATIONAL_COMPLEX
RAT = ScalarKind.RATIONAL
FQ = ScalarKind.F64_QUATERNION

GOLDEN_DIR = Path(__file__).parent / "golden"


def q(a=0, b=0, c=0, d=0) -> Quaternion:
    return Quaternion(a, b, c, d)


ONE = q(1)
I_, J_, K_ = q(0, 1), q(0, 0, 1), q(0, 0, 0, 1)


def qmatrix(rows, row_labels=None, col_labels=None) -> LabeledMatrix:
    """Rational-quaternion matrix; plain integers become real quaternions."""
    rows = [[x if isinstance(x, Quaternion) else q(x) for x in row] for row in rows]
    return LabeledMatrix.from_rows(RQ, rows, row_labels, col_labels)


def rmatrix(rows) -> LabeledMatrix:
    from fractions import Fraction

    return LabeledMatrix.from_rows(RAT, [[Fraction(x) for x in row] for row in rows])


def cmatrix(rows) -> LabeledMatrix:
    return LabeledMatrix.from_rows(RC, [[Complex(*x) for x in row] for row in rows])


def read_golden(name: str):
    return (GOLDEN_DIR / name).read_text().splitlines()


small_ints = st.integers(min_value=-9, max_value=9)
quaternions = st.builds(Quaternion, small_ints, small_ints, small_ints, small_ints)
nonzero_quaternions = quaternions.filter(lambda h: not h.is_zero())


@pytest.fixture
def generator():
    return RandomMatrixGenerator(RQ, seed=42)


@pytest.fixture
def generic3(generator):
    return generator.generic(3)


@pytest.fixture
def generic4():
    return RandomMatrixGenerator(RQ, seed=7).generic(4)


@pytest.fixture
def hermitian3():
    return RandomMatrixGenerator(RQ, seed=11).generic_hermitian(3)


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    """Run inside a scratch directory so artifacts/ lands there."""
    monkeypatch.chdir(tmp_path)
    return tmp_path
