import math
import warnings

import numpy as np
import pytest
from hypothesis import given

from quatlefteig.cxlift import (
    QuatMatrix2,
    complexify,
    decomplexify,
    det4,
    from_quaternion_vector,
    hermitian,
    scale_right,
    sdet,
    sdet_shift,
    sdet_shift_triangular,
    split,
    to_quaternion_vector,
    warn_if_near_triangular,
)
from quatlefteig.errors import DomainError
from quatlefteig.quat import I, J, K, ONE, ZERO, Quaternion, mul, random_quaternion
from strategies import matrices, quaternions, small_coord

ROT = QuatMatrix2.from_rows([[0, -1], [1, 0]])


def test_complexify_identity():
    assert np.array_equal(complexify(QuatMatrix2.identity()), np.eye(4))


def test_complexify_j_identity():
    expected = np.array([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]])
    assert np.array_equal(complexify(QuatMatrix2.diag(J, J)), expected)


def test_complexify_i_k_diagonal():
    # k = -j i, so k splits as z' = 0, z = -i
    X, Y = split(QuatMatrix2.diag(I, K))
    assert np.array_equal(X, np.diag([1j, 0]))
    assert np.array_equal(Y, np.diag([0, -1j]))
    M = complexify(QuatMatrix2.diag(I, K))
    assert np.array_equal(M, np.block([[X, -Y.conj()], [Y, X.conj()]]))


@given(matrices())
def test_complexify_block_structure_and_round_trip(A):
    M = complexify(A)
    X, Y = M[:2, :2], M[2:, :2]
    assert np.array_equal(M[:2, 2:], -Y.conj())
    assert np.array_equal(M[2:, 2:], X.conj())
    assert decomplexify(M) == A


@given(matrices(small_coord), matrices(small_coord))
def test_complexify_is_a_ring_homomorphism(A, B):
    assert np.allclose(complexify(A @ B), complexify(A) @ complexify(B), atol=1e-12, rtol=0)
    assert np.allclose(complexify(A + B), complexify(A) + complexify(B), atol=1e-15, rtol=0)


@given(matrices(), quaternions(), quaternions())
def test_complexify_acts_like_the_matrix_on_vectors(A, u1, u2):
    u = (u1, u2)
    lhs = from_quaternion_vector(A.apply(u))
    rhs = complexify(A) @ from_quaternion_vector(u)
    assert np.allclose(lhs, rhs, atol=1e-11)


@given(quaternions(), quaternions())
def test_quaternion_vector_round_trip(u1, u2):
    assert to_quaternion_vector(from_quaternion_vector((u1, u2))) == (u1, u2)


@given(matrices())
def test_lift_eigenvalues_come_in_conjugate_pairs(A):
    ev = np.linalg.eigvals(complexify(A))
    tol = 1e-6 * (1 + max(abs(ev)))
    for lam in ev:
        assert min(abs(ev - lam.conjugate())) <= tol


@given(matrices())
def test_det4_matches_numpy(A):
    M = complexify(A)
    ref = np.linalg.det(M)
    assert abs(det4(M) - ref) <= 1e-10 * max(1.0, abs(ref))
    # the lift determinant is real and non-negative
    assert abs(ref.imag) <= 1e-9 * max(1.0, abs(ref))


@pytest.mark.parametrize(
    "A, expected",
    [
        (QuatMatrix2.identity(), 1.0),
        (QuatMatrix2.diag(Quaternion(1, 1, 0, 0), Quaternion(0, 0, 3, 4)), math.sqrt(2) * 5),
        (QuatMatrix2.from_rows([[1, 1], [1, 1]]), 0.0),
    ],
)
def test_sdet_examples(A, expected):
    assert sdet(A) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize(
    "A, q",
    [(QuatMatrix2.identity(), ONE), (QuatMatrix2.diag(I, J), I), (ROT, K)],
)
def test_sdet_shift_vanishes_at_left_eigenvalues(A, q):
    assert sdet_shift(A, q) <= 1e-12


@given(matrices(small_coord), matrices(small_coord))
def test_sdet_is_multiplicative(A, B):
    assert sdet(A @ B) == pytest.approx(sdet(A) * sdet(B), rel=1e-9, abs=1e-12)


@given(matrices())
def test_sdet_is_non_negative_and_consistent(A):
    assert sdet(A) >= 0.0
    assert sdet(A) == sdet_shift(A, ZERO)


def test_singular_matrices_have_zero_sdet():
    rng = np.random.default_rng(3)
    for _ in range(50):
        a, b, t = (random_quaternion(rng) for _ in range(3))
        # second row is t times the first
        A = QuatMatrix2(a, b, mul(t, a), mul(t, b))
        assert sdet(A) <= 1e-12 * (1 + A.max_norm() ** 2)


def test_sdet_shift_against_the_triangularised_formula():
    rng = np.random.default_rng(20240)
    for _ in range(1000):
        A = QuatMatrix2(*(random_quaternion(rng) for _ in range(4)))
        q = random_quaternion(rng)
        direct = sdet(A - QuatMatrix2.diag(q, q))
        assert abs(sdet_shift(A, q) - direct) <= 1e-9 * max(1.0, direct)
        assert abs(sdet_shift_triangular(A, q) - direct) <= 1e-9 * max(1.0, direct)


def test_triangularised_formula_excludes_q_equal_a():
    A = QuatMatrix2.from_rows([[I, J], [K, ONE]])
    with pytest.raises(DomainError):
        sdet_shift_triangular(A, I)


def test_triangularity_is_exact():
    assert QuatMatrix2.diag(I, J).is_triangular()
    assert QuatMatrix2.from_rows([[1, 0], [5, 2]]).is_triangular()
    assert not QuatMatrix2.from_rows([[1, 1e-300], [5, 2]]).is_triangular()


def test_near_triangular_warning():
    A = QuatMatrix2.from_rows([[1, 1e-7], [1e-7, 2]])
    with pytest.warns(RuntimeWarning, match="nearly triangular"):
        warn_if_near_triangular(A)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        warn_if_near_triangular(ROT)


@given(matrices(), quaternions(), quaternions(), quaternions())
def test_matrix_action_is_right_linear(A, u1, u2, q):
    u = (u1, u2)
    lhs = A.apply(scale_right(u, q))
    rhs = scale_right(A.apply(u), q)
    scale = 1 + A.max_norm() * max(u1.norm(), u2.norm()) * q.norm()
    assert all((x - y).norm() <= 1e-12 * scale for x, y in zip(lhs, rhs))


@given(matrices(small_coord), quaternions(small_coord), quaternions(small_coord))
def test_star_is_the_hermitian_adjoint(A, u1, v1):
    u, v = (u1, v1), (v1, u1)
    lhs = hermitian(A.apply(u), v)
    rhs = hermitian(u, A.star().apply(v))
    assert (lhs - rhs).norm() <= 1e-12


def test_from_rows_accepts_mixed_entries():
    A = QuatMatrix2.from_rows([[1, 1j], [[0, 0, 1, 0], K]])
    assert A == QuatMatrix2(ONE, I, J, K)
    assert QuatMatrix2.from_rows(A.to_nested()) == A
