import pytest

from conftest import FQ, RAT, RC, RQ
from ncdet.algebra.quasidet import quasidet_block
from ncdet.algebra.scalars import Quaternion, is_zero
from ncdet.components.generator import (
    RandomMatrixGenerator,
    all_square_submatrices_invertible,
    is_generic,
    leading_structure_invertible,
    random_generic_matrix,
)
from ncdet.entity.config_entity import GeneratorConfig
from ncdet.exceptions import DegenerateStreamError


def test_same_seed_same_matrix():
    assert random_generic_matrix(42, 3, RQ) == random_generic_matrix(42, 3, RQ)
    assert random_generic_matrix(42, 3, RQ) != random_generic_matrix(43, 3, RQ)


def test_components_stay_in_range():
    A = RandomMatrixGenerator(RQ, seed=0, config=GeneratorConfig(low=-2, high=2)).raw(4)
    for h in A.entries.flat:
        assert all(-2 <= p <= 2 for p in h.parts)
        assert all(p.denominator == 1 for p in h.parts)


def test_generic_samples_have_every_quasideterminant(generic3):
    assert is_generic(generic3)
    for i in generic3.row_labels:
        for j in generic3.col_labels:
            assert quasidet_block(generic3, i, j).defined


def test_one_by_one_is_nonzero():
    A = RandomMatrixGenerator(RQ, seed=9).generic(1)
    assert isinstance(A[1, 1], Quaternion)
    assert not is_zero(A[1, 1])


def test_hermitian_samples(hermitian3):
    assert hermitian3.is_hermitian()
    assert is_generic(hermitian3)
    for label in hermitian3.row_labels:
        assert hermitian3[label, label].is_real()


@pytest.mark.parametrize("kind", [RC, RAT, FQ])
def test_other_kinds(kind):
    A = RandomMatrixGenerator(kind, seed=4).generic(3)
    assert A.kind is kind
    assert all_square_submatrices_invertible(A)
    assert RandomMatrixGenerator(kind, seed=4).generic_hermitian(2).is_hermitian()


def test_float_components():
    A = RandomMatrixGenerator(FQ, seed=2).raw(2)
    assert all(isinstance(p, float) for h in A.entries.flat for p in h.parts)


def test_degenerate_stream_raises_with_seed():
    zeros = GeneratorConfig(low=0, high=0, resample_limit=3)
    generator = RandomMatrixGenerator(RQ, seed=17, config=zeros)
    with pytest.raises(DegenerateStreamError) as excinfo:
        generator.generic(2)
    assert excinfo.value.seed == 17
    assert excinfo.value.attempts == 3
    with pytest.raises(DegenerateStreamError):
        generator.nonzero_scalar()


def test_leading_structure_check(generic4):
    assert leading_structure_invertible(generic4)
    singular = RandomMatrixGenerator(RQ, seed=1, config=GeneratorConfig(low=1, high=1)).raw(3)
    assert not leading_structure_invertible(singular)
    assert not is_generic(singular)


def test_large_orders_use_the_leading_check():
    A = RandomMatrixGenerator(RQ, seed=8).generic(6)
    assert A.n == 6
    assert leading_structure_invertible(A)


def test_raw_rejects_empty():
    with pytest.raises(ValueError):
        RandomMatrixGenerator(RQ).raw(0)
