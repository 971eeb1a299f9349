from fractions import Fraction

import pytest

from conftest import I_, J_, K_, ONE, RQ, cmatrix, q, qmatrix, rmatrix
from ncdet.algebra.dets import (
    Ordering,
    delta,
    dieudonne,
    dieudonne_pre,
    dieudonne_sq,
    gauss_udl,
    moore,
    nu_2x2_closed_form,
    nu_matrix,
    nu_via_moore,
    permutation_sign,
    predet,
    study,
)
from ncdet.algebra.matrices import LabeledMatrix, determinant
from ncdet.algebra.quasidet import quasidet
from ncdet.algebra.scalars import Complex, conjugate, inverse, norm
from ncdet.components.generator import RandomMatrixGenerator
from ncdet.exceptions import (
    CapExceededError,
    DimensionMismatchError,
    QuasidetUndefinedError,
    SingularMatrixError,
    UnsupportedScalarError,
)


@pytest.mark.parametrize(
    "seq, sign",
    [((1, 2, 3), 1), ((2, 1, 3), -1), ((2, 3, 1), 1), ((3, 2, 1), -1), ((4, 2), -1), ((), 1)],
)
def test_permutation_sign(seq, sign):
    assert permutation_sign(seq) == sign


def test_orderings():
    assert Ordering((2, 1)).parity() == -1
    assert Ordering.identity([3, 1, 2]).seq == (1, 2, 3)
    assert len(list(Ordering.all([1, 2, 3]))) == 6
    with pytest.raises(ValueError):
        Ordering((1, 1))


def test_predet_one_by_one():
    assert predet(qmatrix([[K_]]), Ordering((1,)), Ordering((1,))) == K_


def test_predet_diagonal():
    A = qmatrix([[I_, 0, 0], [0, J_, 0], [0, 0, K_]])
    assert delta(A) == I_ * J_ * K_


def test_predet_commutative_two_by_two_is_det():
    A = rmatrix([[1, 2], [3, 4]])
    assert predet(A, Ordering((1, 2)), Ordering((1, 2))) == determinant(A)
    assert predet(A, Ordering((2, 1)), Ordering((1, 2))) == -determinant(A)


def test_predet_rejects_foreign_orderings():
    A = rmatrix([[1, 2], [3, 4]])
    with pytest.raises(DimensionMismatchError):
        predet(A, Ordering((1, 3)), Ordering((1, 2)))


def test_predet_reports_undefined_factor():
    E = LabeledMatrix.identity(RQ, 2)
    with pytest.raises(QuasidetUndefinedError) as excinfo:
        predet(E, Ordering((1, 2)), Ordering((2, 1)))
    assert excinfo.value.depth == 1


def test_delta_of_identity():
    assert delta(LabeledMatrix.identity(RQ, 4)) == ONE


def test_gauss_udl_two_by_two():
    a11, a12, a21, a22 = q(1, 2, 0, 1), q(0, 1, 1, 0), q(2, 0, 0, -1), q(1, 0, 3, 0)
    A = qmatrix([[a11, a12], [a21, a22]])
    factors = gauss_udl(A)
    inv22 = inverse(a22)
    assert factors.diagonal == [a11 - a12 * inv22 * a21, a22]
    assert factors.U.to_lists() == [[ONE, a12 * inv22], [q(), ONE]]
    assert factors.L.to_lists() == [[ONE, q()], [inv22 * a21, ONE]]
    assert factors.product() == A


def test_gauss_udl_diagonal():
    A = qmatrix([[I_, 0], [0, 2]])
    factors = gauss_udl(A)
    assert factors.U == LabeledMatrix.identity(RQ, 2)
    assert factors.L == LabeledMatrix.identity(RQ, 2)
    assert factors.D == A


def test_gauss_udl_reconstructs(generic4):
    assert gauss_udl(generic4).product() == generic4


def test_gauss_udl_singular_trailing_block():
    with pytest.raises(SingularMatrixError):
        gauss_udl(qmatrix([[1, 1], [1, 0]]))


def test_dieudonne_pre_equals_delta(generic3, generic4):
    assert dieudonne_pre(generic3) == delta(generic3)
    assert dieudonne_pre(generic4) == delta(generic4)
    assert dieudonne_pre(qmatrix([[2, 0], [0, 3]])) == q(6)


def test_dieudonne_norm_ignores_orderings(generic3):
    expected = dieudonne_sq(generic3)
    for I in Ordering.all(generic3.row_labels):
        for J in Ordering.all(generic3.col_labels):
            assert norm(predet(generic3, I, J)) == expected


def test_dieudonne_one_by_one():
    h = q(1, 2, 3, 4)
    assert dieudonne_sq(qmatrix([[h]])) == 30
    assert dieudonne(qmatrix([[q(3, 0, 4, 0)]])) == pytest.approx(5.0)
    assert dieudonne_sq(LabeledMatrix.identity(RQ, 3)) == 1


def test_moore_small_cases():
    h = q(1, 2, -1, 3)
    assert moore(qmatrix([[h]])) == h
    assert moore(qmatrix([[2, 0, 0], [0, 3, 0], [0, 0, 5]])) == q(30)
    H = qmatrix([[2, h], [conjugate(h), 7]])
    assert moore(H) == q(14 - norm(h))


def test_moore_three_by_three_cycle_order():
    # the 3-cycle (1 2 3) is written a12 a23 a31, its inverse a13 a32 a21
    A = qmatrix([[0, I_, 0], [0, 0, J_], [K_, 0, 0]])
    assert moore(A) == I_ * J_ * K_
    assert moore(A, leader="max") == K_ * I_ * J_


def test_moore_hermitian_matches_delta(hermitian3):
    M = moore(hermitian3)
    assert delta(hermitian3) == M
    assert M.is_real()
    assert moore(hermitian3, leader="max") == M


def test_hermitian_delta_equals_diagonal_predeterminants(hermitian3):
    d = delta(hermitian3)
    assert d.is_real()
    for I in Ordering.all(hermitian3.row_labels):
        assert predet(hermitian3, I, I) == d


def test_hermitian_sign_rule_holds_for_every_pair_at_order_two():
    H = qmatrix([[2, q(1, 1, 0, 2)], [q(1, -1, 0, -2), -3]])
    d = delta(H)
    assert d == q(-12)
    for I in Ordering.all((1, 2)):
        for J in Ordering.all((1, 2)):
            assert I.parity() * J.parity() * predet(H, I, J) == d


def test_hermitian_sign_rule_breaks_off_the_diagonal():
    mismatches = 0
    for seed in (11, 12, 13):
        H = RandomMatrixGenerator(RQ, seed=seed).generic_hermitian(3)
        d = delta(H)
        for I in Ordering.all(H.row_labels):
            for J in Ordering.all(H.col_labels):
                value = predet(H, I, J)
                assert norm(value) == norm(d)
                if I.parity() * J.parity() * value != d:
                    assert I != J
                    mismatches += 1
    assert mismatches > 0


def test_moore_cap_and_leader():
    A = LabeledMatrix.identity(RQ, 3)
    with pytest.raises(CapExceededError):
        moore(A, max_n=2)
    with pytest.raises(ValueError):
        moore(A, leader="first")


def test_moore_commutative_is_det():
    A = rmatrix([[2, 0, 1], [1, 3, 2], [1, 1, 2]])
    assert moore(A) == determinant(A) == 6


def test_study_small_cases():
    assert study(qmatrix([[q(1, 2, 3, 4)]])) == 30
    assert study(LabeledMatrix.identity(RQ, 3)) == 1
    with pytest.raises(UnsupportedScalarError):
        study(cmatrix([[(1, 0)]]))


def test_study_is_moore_of_a_a_star(generic3):
    assert study(generic3) == moore(generic3 @ generic3.hermitian_dual()).a
    assert study(generic3) > 0


def test_study_vanishes_on_singular():
    A = qmatrix([[I_, J_], [K_ * I_, K_ * J_]])
    assert study(A) == 0
    assert nu_via_moore(A) == 0


def test_norm_forms_agree(generic3, generic4):
    for A in (generic3, generic4):
        assert nu_matrix(A) == nu_via_moore(A) == dieudonne_sq(A) == study(A)


def test_norm_one_by_one_and_identity():
    assert nu_via_moore(qmatrix([[q(1, 2, 3, 4)]])) == 30
    assert nu_matrix(qmatrix([[q(1, 2, 3, 4)]])) == 30
    assert nu_via_moore(LabeledMatrix.identity(RQ, 4)) == 1
    empty = LabeledMatrix.identity(RQ, 0)
    assert nu_via_moore(empty) == 1
    assert nu_matrix(empty) == 1


def test_norm_two_by_two_closed_form():
    for seed in range(10):
        A = RandomMatrixGenerator(RQ, seed=seed).raw(2)
        assert nu_2x2_closed_form(A) == nu_via_moore(A)


def test_norm_is_multiplicative():
    gen = RandomMatrixGenerator(RQ, seed=3)
    A, B = gen.raw(3), gen.raw(3)
    assert nu_via_moore(A @ B) == nu_via_moore(A) * nu_via_moore(B)


def test_norm_of_quasidet_factorization(generic3):
    assert nu_via_moore(generic3) == norm(quasidet(generic3, 2, 3)) * nu_via_moore(generic3.delete_rc({2}, {3}))
    assert nu_via_moore(generic3.hermitian_dual()) == nu_via_moore(generic3)


def test_norm_real_kind():
    A = rmatrix([[1, 2], [3, 4]])
    assert nu_via_moore(A) == 4
    assert nu_matrix(A) == 4
    assert nu_via_moore(rmatrix([[Fraction(1, 2)]])) == Fraction(1, 4)


def test_complex_kind_study_analogue():
    A = cmatrix([[(1, 1), (2, 0)], [(0, 1), (3, -1)]])
    assert nu_via_moore(A) == norm(determinant(A))
    assert moore(A) == determinant(A) != Complex(0, 0)
