import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quatlefteig.errors import DomainError
from quatlefteig.quat import (
    I,
    J,
    K,
    ONE,
    ZERO,
    ComplexPair,
    Quaternion,
    conjugate_by,
    inverse,
    left_matrix,
    mul,
    right_matrix,
    sample_omega,
    scalar_product_h0,
    similar,
    to_quaternion,
)
from strategies import nonzero_quaternions, pure_quaternions, quaternions, seeds


def close(p, q, tol=1e-12):
    return (p - q).norm() <= tol


# -- frozen examples -----------------------------------------------------------
@pytest.mark.parametrize(
    "a, b, expected",
    [
        (I, J, K),
        (J, I, -K),
        (J, K, I),
        (K, I, J),
        (I, I, -ONE),
        (Quaternion(1, 2, 3, 4), Quaternion(5, 6, 7, 8), Quaternion(-60, 12, 30, 24)),
    ],
)
def test_hamilton_product(a, b, expected):
    assert mul(a, b) == expected
    assert a * b == expected


def test_ijk_is_minus_one():
    assert mul(mul(I, J), K) == -ONE


@pytest.mark.parametrize(
    "q, expected",
    [
        (I, -I),
        (Quaternion(2), Quaternion(0.5)),
        (Quaternion(1, 1, 1, 1), Quaternion(0.25, -0.25, -0.25, -0.25)),
    ],
)
def test_inverse_examples(q, expected):
    assert close(inverse(q), expected)


def test_inverse_of_zero_is_a_domain_error():
    with pytest.raises(DomainError, match="non-invertible"):
        inverse(ZERO)


@pytest.mark.parametrize(
    "p, q, expected",
    [
        (Quaternion(1, 2), Quaternion(1, 0, 2), True),
        (I, -I, True),
        (Quaternion(1), Quaternion(2), False),
    ],
)
def test_similar_examples(p, q, expected):
    assert similar(p, q) is expected


def test_similar_rejects_negative_tolerance():
    with pytest.raises(DomainError):
        similar(I, J, -1.0)


@pytest.mark.parametrize(
    "q, r, expected",
    [(I, I, 1.0), (I, J, 0.0), (Quaternion(0, 2, 0, 1), K, 1.0)],
)
def test_scalar_product_examples(q, r, expected):
    assert scalar_product_h0(q, r) == pytest.approx(expected, abs=1e-15)


def test_scalar_product_needs_pure_inputs():
    with pytest.raises(DomainError):
        scalar_product_h0(ONE, I)


def test_sample_omega_single_point_squares_to_minus_one():
    (w,) = sample_omega(1, 123)
    assert close(mul(w, w), -ONE)


def test_sample_omega_is_deterministic():
    assert sample_omega(3, 7) == sample_omega(3, 7)
    assert sample_omega(3, 7) != sample_omega(3, 8)


def test_sample_omega_mean_is_near_zero():
    pts = np.array([q.to_list() for q in sample_omega(1000, 1)])
    assert np.all(np.abs(pts.mean(axis=0)) <= 0.1)


def test_sample_omega_needs_positive_count():
    with pytest.raises(DomainError):
        sample_omega(0, 1)


@given(seeds, st.integers(min_value=1, max_value=50))
def test_sample_omega_lands_on_the_unit_pure_sphere(seed, count):
    for w in sample_omega(count, seed):
        assert abs(w.re) <= 1e-12
        assert abs(w.norm() - 1.0) <= 1e-12


def test_split_convention_matches_the_product():
    # q = z' + j z must hold with the library's own multiplication
    for q in (I, J, K, Quaternion(1, 2, 3, 4), Quaternion(-0.5, 0.25, -2, 7)):
        pair = ComplexPair.from_quaternion(q)
        zp = Quaternion.from_complex(pair.zprime)
        z = Quaternion.from_complex(pair.z)
        assert close(zp + mul(J, z), q)
        assert pair.to_quaternion() == q
        assert to_quaternion(pair.zprime, pair.z) == q


def test_k_splits_with_minus_i():
    assert ComplexPair.from_quaternion(K) == ComplexPair(0j, -1j)


# -- invariants ----------------------------------------------------------------
@given(nonzero_quaternions())
def test_inverse_is_two_sided(q):
    tol = 1e-12 * max(1.0, q.norm())
    assert close(mul(q, inverse(q)), ONE, tol)
    assert close(mul(inverse(q), q), ONE, tol)


@given(pure_quaternions())
def test_pure_squares_are_negative_reals(xi):
    sq = mul(xi, xi)
    assert sq.re < 0
    assert sq.pure().norm() <= 1e-12 * max(1.0, xi.norm2())
    assert sq.re == pytest.approx(-xi.norm2(), rel=1e-12)


@given(quaternions(), quaternions())
def test_norm_is_multiplicative(p, q):
    assert mul(p, q).norm() == pytest.approx(p.norm() * q.norm(), rel=1e-12, abs=1e-12)


@given(quaternions(), quaternions())
def test_conjugation_reverses_products(p, q):
    assert close(mul(p, q).conj(), mul(q.conj(), p.conj()), 1e-12 * (1 + p.norm() * q.norm()))


@given(quaternions(), quaternions(), quaternions())
def test_product_is_associative(p, q, r):
    lhs = mul(mul(p, q), r)
    rhs = mul(p, mul(q, r))
    assert close(lhs, rhs, 1e-12 * (1 + p.norm() * q.norm() * r.norm()))


@given(quaternions(), quaternions())
def test_multiplication_matrices(a, v):
    assert np.allclose(left_matrix(a) @ v.to_array(), mul(a, v).to_array(), atol=1e-12)
    assert np.allclose(right_matrix(a) @ v.to_array(), mul(v, a).to_array(), atol=1e-12)


@given(quaternions(), nonzero_quaternions())
def test_conjugates_are_similar(p, q):
    assert similar(p, conjugate_by(q, p), 1e-10 * (1 + p.norm()))


@given(st.lists(quaternions(st.integers(-2, 2).map(float)), min_size=3, max_size=8))
def test_similarity_is_an_equivalence_on_exact_samples(qs):
    for p in qs:
        assert similar(p, p, 0.0)
        for q in qs:
            assert similar(p, q, 0.0) == similar(q, p, 0.0)
            for r in qs:
                if similar(p, q, 0.0) and similar(q, r, 0.0):
                    assert similar(p, r, 0.0)


@given(pure_quaternions(), pure_quaternions())
def test_scalar_product_is_symmetric_and_matches_dot(q, r):
    dot = q.x * r.x + q.y * r.y + q.z * r.z
    assert scalar_product_h0(q, r) == pytest.approx(scalar_product_h0(r, q), abs=1e-12)
    assert scalar_product_h0(q, r) == pytest.approx(dot, abs=1e-12)
    assert scalar_product_h0(q, q) > 0


def _orthogonal_unit(xi):
    # a unit pure quaternion orthogonal to xi, from a cross product
    v = np.array([xi.x, xi.y, xi.z])
    e = np.eye(3)[int(np.argmin(np.abs(v)))]
    w = np.cross(v, e)
    return Quaternion(0.0, *(w / np.linalg.norm(w)))


@given(pure_quaternions())
def test_a_pure_vector_orthogonal_to_all_sphere_differences_vanishes(xi):
    # constructive form: omega orthogonal to xi and omega' the basis vector
    # with the largest component along xi; then <xi, omega - omega'> != 0
    omega = _orthogonal_unit(xi)
    omega_p = max((I, J, K), key=lambda b: abs(scalar_product_h0(xi, b)))
    assert abs(scalar_product_h0(xi, omega)) <= 1e-12 * xi.norm()
    assert abs(scalar_product_h0(xi, omega - omega_p)) >= xi.norm() / math.sqrt(3) * (1 - 1e-12)
    assert math.isclose(omega.norm(), 1.0)


def test_quaternion_arithmetic_with_scalars():
    q = Quaternion(1, 2, 3, 4)
    assert q * 2 == Quaternion(2, 4, 6, 8)
    assert 2 * q == q * 2
    assert q / 2 == Quaternion(0.5, 1, 1.5, 2)
    assert q + 1 == Quaternion(2, 2, 3, 4)
    assert 1 - q == Quaternion(0, -2, -3, -4)
    assert q.conj() == Quaternion(1, -2, -3, -4)
    assert q.norm2() == 30.0
    assert q.pure() == Quaternion(0, 2, 3, 4)


def test_json_shape_round_trip():
    q = Quaternion(1.5, -2, 0, 3)
    assert q.to_list() == [1.5, -2.0, 0.0, 3.0]
    assert Quaternion.from_seq(q.to_list()) == q
