import math
import warnings

import numpy as np
import pytest
from hypothesis import assume, given

from quatlefteig.cxlift import QuatMatrix2
from quatlefteig.errors import DomainError
from quatlefteig.lefteig2 import (
    EigenPair,
    Finite,
    InfiniteAffine,
    contains,
    eigenvalue_set_from_json,
    eigenvector_for,
    from_solutions,
    left_eigenvalues,
    normalized_verify,
    verify,
)
from quatlefteig.quat import I, J, K, ONE, ZERO, Quaternion, inverse, mul, random_quaternion, sample_omega
from quatlefteig.uniquad import companion_coefficients, solve
from strategies import matrices

ROT = QuatMatrix2.from_rows([[0, -1], [1, 0]])


def same_values(found, expected, tol=1e-10):
    return len(found) == len(expected) and all(any((f - e).norm() <= tol for f in found) for e in expected)


def random_non_triangular(rng):
    while True:
        A = QuatMatrix2(*(random_quaternion(rng) for _ in range(4)))
        if mul(A.b, A.c).norm() > 1e-3:
            return A


# -- frozen examples -----------------------------------------------------------
def test_diagonal_example():
    assert left_eigenvalues(QuatMatrix2.diag(I, J)) == Finite((I, J))


def test_repeated_diagonal_is_deduplicated():
    assert left_eigenvalues(QuatMatrix2.diag(K, K)) == Finite((K,))


def test_lower_triangular_uses_the_diagonal():
    A = QuatMatrix2.from_rows([[I, 0], [5, J]])
    assert left_eigenvalues(A) == Finite((I, J))


def test_swap_matrix():
    eigs = left_eigenvalues(QuatMatrix2.from_rows([[0, 1], [1, 0]]))
    assert isinstance(eigs, Finite)
    assert same_values(eigs.values, [ONE, -ONE])


def test_rotation_has_the_unit_pure_sphere():
    eigs = left_eigenvalues(ROT)
    assert eigs == InfiniteAffine(ZERO, -ONE)
    for w in sample_omega(100, 4):
        assert eigs.contains(w)
    assert not eigs.contains(ONE)
    assert not eigs.contains(I * 1.01)


def test_mixed_matrix_is_finite_and_verified():
    A = QuatMatrix2.from_rows([[1, I], [J, K]])
    eigs = left_eigenvalues(A)
    assert isinstance(eigs, Finite)
    assert 1 <= len(eigs.values) <= 2
    for q in eigs.values:
        assert normalized_verify(A, q) <= 1e-10
        assert eigenvector_for(A, q).residual(A) <= 1e-10


def test_eigenvector_of_diagonal():
    pair = eigenvector_for(QuatMatrix2.diag(I, J), I)
    # unique up to a right scalar
    assert pair.vector[0].norm() == pytest.approx(1.0, abs=1e-12)
    assert pair.vector[1].norm() <= 1e-12
    assert pair.residual(QuatMatrix2.diag(I, J)) <= 1e-12


def test_eigenvector_of_rotation_at_k():
    u1, u2 = eigenvector_for(ROT, K).vector
    assert (u2 + mul(K, u1)).norm() <= 1e-12
    assert u1.norm() > 0.1
    # the hand-derived vector (1, -k) is also an eigenvector
    assert EigenPair(K, (ONE, -K)).residual(ROT) == 0.0


def test_eigenvector_of_identity():
    pair = eigenvector_for(QuatMatrix2.identity(), ONE)
    assert math.isclose(math.hypot(pair.vector[0].norm(), pair.vector[1].norm()), 1.0)
    assert pair.residual(QuatMatrix2.identity()) <= 1e-15


def test_eigenvector_rejects_non_eigenvalues():
    with pytest.raises(DomainError, match="not a left eigenvalue"):
        eigenvector_for(QuatMatrix2.diag(I, J), K)


@pytest.mark.parametrize(
    "A, q, expected",
    [(QuatMatrix2.identity(), ONE, 0.0), (QuatMatrix2.diag(I, J), J, 0.0)],
)
def test_verify_examples(A, q, expected):
    assert verify(A, q) == pytest.approx(expected, abs=1e-15)


def test_verify_is_bounded_away_from_zero_off_the_spectrum():
    assert verify(QuatMatrix2.diag(I, J), K) >= 1.0


def test_verify_on_the_rotation_sphere():
    for w in sample_omega(100, 9):
        assert verify(ROT, w) <= 1e-9


def test_near_triangular_matrices_warn():
    A = QuatMatrix2.from_rows([[1, 1e-7], [1e-7, 2]])
    with pytest.warns(RuntimeWarning):
        eigs = left_eigenvalues(A)
    for q in eigs.values:
        assert normalized_verify(A, q) <= 1e-6


def test_from_solutions_rejects_unknown_types():
    with pytest.raises(TypeError):
        from_solutions(ROT, object())


@pytest.mark.parametrize("eigs", [Finite((I, Quaternion(1, -2, 0.5, 3))), InfiniteAffine(Quaternion(1, 2), K * 3)])
def test_json_round_trip(eigs):
    assert eigenvalue_set_from_json(eigs.to_json()) == eigs


def test_json_shapes():
    assert left_eigenvalues(ROT).to_json() == {"kind": "affine_sphere", "center": [0.0] * 4, "factor": [-1.0, 0, 0, 0]}
    with pytest.raises(DomainError):
        eigenvalue_set_from_json({"kind": "cone"})


def test_contains():
    assert contains(Finite((I, J)), J)
    assert not contains(Finite((I, J)), K)
    assert contains(InfiniteAffine(ONE, I * 2), ONE + J * 2)


# -- properties ----------------------------------------------------------------
def test_reduction_consistency():
    rng = np.random.default_rng(77)
    for _ in range(200):
        A = random_non_triangular(rng)
        a1, a0 = companion_coefficients(A)
        assert a1 == mul(inverse(A.b), A.a - A.d)
        assert a0 == -mul(inverse(A.b), A.c)
        s, _ = solve(a1, a0)
        image = [A.a + mul(A.b, p) for p in s.solutions]
        assert same_values(left_eigenvalues(A).values, image, 1e-8)


def test_first_diagonal_entry_is_never_an_eigenvalue():
    # q = a would force b c = 0
    rng = np.random.default_rng(78)
    for _ in range(200):
        A = random_non_triangular(rng)
        assert normalized_verify(A, A.a) > 1e-6
        assert all((q - A.a).norm() > 1e-9 for q in left_eigenvalues(A).values)


@given(matrices())
def test_soundness(A):
    assume(A.is_triangular() or mul(A.b, A.c).norm() > 1e-6)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        eigs = left_eigenvalues(A)
    values = eigs.sample(20, 0) if isinstance(eigs, InfiniteAffine) else eigs.values
    scale = 1 + A.max_norm()
    for q in values:
        assert normalized_verify(A, q) <= 1e-6
        pair = eigenvector_for(A, q)
        assert pair.residual(A) <= 1e-8 * scale


def test_soundness_on_sphere_matrices():
    # b^-1 (a - d) = t and -b^-1 c = s real with t^2 < 4 s give a sphere
    rng = np.random.default_rng(79)
    for _ in range(20):
        a, b = random_quaternion(rng), random_quaternion(rng)
        t = float(rng.uniform(-2, 2))
        s = t * t / 4 + float(rng.uniform(0.1, 2))
        A = QuatMatrix2(a, b, b * -s, a - b * t)
        eigs = left_eigenvalues(A)
        assert isinstance(eigs, InfiniteAffine)
        for q in eigs.sample(100, 1):
            assert normalized_verify(A, q) <= 1e-9
            assert eigenvector_for(A, q).residual(A) <= 1e-8 * (1 + A.max_norm())
            assert contains(eigs, q)
