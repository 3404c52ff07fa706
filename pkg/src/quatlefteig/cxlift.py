"""Complex 4x4 lift of 2x2 quaternionic matrices and Study's determinant.

A quaternionic matrix is split entrywise as ``A = X + j Y`` with complex
``X, Y``; acting on ``H^2`` as a right vector space it becomes the complex
matrix ``[[X, -conj(Y)], [Y, conj(X)]]`` on ``C^4``.  A quaternion vector
``u = (u1, u2)`` with ``u_k = x_k + j y_k`` corresponds to the complex vector
``(x_1, x_2, y_1, y_2)``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .errors import DomainError
from .quat import ONE, ZERO, ComplexPair, Quaternion, inverse, mul

#: a 4x4 complex128 numpy array
ComplexMatrix4 = np.ndarray

QuatVector = tuple[Quaternion, Quaternion]


@dataclass(frozen=True, slots=True)
class QuatMatrix2:
    """The matrix ``[[a, b], [c, d]]`` over the quaternions."""

    a: Quaternion
    b: Quaternion
    c: Quaternion
    d: Quaternion

    @classmethod
    def identity(cls) -> "QuatMatrix2":
        return cls(ONE, ZERO, ZERO, ONE)

    @classmethod
    def diag(cls, a, d) -> "QuatMatrix2":
        return cls(_q(a), ZERO, ZERO, _q(d))

    @classmethod
    def from_rows(cls, rows) -> "QuatMatrix2":
        """Build from ``[[a, b], [c, d]]`` whose entries are quaternions,
        4-sequences or real numbers."""
        try:
            (a, b), (c, d) = rows
        except (TypeError, ValueError) as exc:
            raise DomainError("a 2x2 matrix must be [[a, b], [c, d]]") from exc
        return cls(_q(a), _q(b), _q(c), _q(d))

    def to_nested(self) -> list:
        return [[self.a.to_list(), self.b.to_list()], [self.c.to_list(), self.d.to_list()]]

    def entries(self) -> tuple[Quaternion, Quaternion, Quaternion, Quaternion]:
        return (self.a, self.b, self.c, self.d)

    def __add__(self, other: "QuatMatrix2") -> "QuatMatrix2":
        return QuatMatrix2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other: "QuatMatrix2") -> "QuatMatrix2":
        return QuatMatrix2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __matmul__(self, other: "QuatMatrix2") -> "QuatMatrix2":
        return QuatMatrix2(
            mul(self.a, other.a) + mul(self.b, other.c),
            mul(self.a, other.b) + mul(self.b, other.d),
            mul(self.c, other.a) + mul(self.d, other.c),
            mul(self.c, other.b) + mul(self.d, other.d),
        )

    def shift(self, q: Quaternion) -> "QuatMatrix2":
        """``A - q I``."""
        return QuatMatrix2(self.a - q, self.b, self.c, self.d - q)

    def left_scale(self, q: Quaternion) -> "QuatMatrix2":
        """``q A`` (every entry multiplied by ``q`` on the left)."""
        return QuatMatrix2(*(mul(q, e) for e in self.entries()))

    def star(self) -> "QuatMatrix2":
        """Conjugate transpose."""
        return QuatMatrix2(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())

    def apply(self, u: QuatVector) -> QuatVector:
        u1, u2 = u
        return (mul(self.a, u1) + mul(self.b, u2), mul(self.c, u1) + mul(self.d, u2))

    def is_triangular(self) -> bool:
        # exact: b c = 0 in a division algebra iff b = 0 or c = 0
        return self.b.is_zero() or self.c.is_zero()

    def max_norm(self) -> float:
        return max(e.norm() for e in self.entries())

    def distance(self, other: "QuatMatrix2") -> float:
        """Largest entrywise quaternion distance."""
        return (self - other).max_norm()


def _q(value) -> Quaternion:
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, (int, float)):
        return Quaternion(float(value))
    if isinstance(value, complex):
        return Quaternion.from_complex(value)
    return Quaternion.from_seq(value)


# -- quaternion vectors --------------------------------------------------------
def scale_right(u: QuatVector, q: Quaternion) -> QuatVector:
    """``u q`` for a column vector ``u`` in the right H-module H^2."""
    return (mul(u[0], q), mul(u[1], q))


def vec_sub(u: QuatVector, v: QuatVector) -> QuatVector:
    return (u[0] - v[0], u[1] - v[1])


def vec_norm(u: QuatVector) -> float:
    return math.sqrt(u[0].norm2() + u[1].norm2())


def hermitian(u: QuatVector, v: QuatVector) -> Quaternion:
    """``u* v = conj(u1) v1 + conj(u2) v2``."""
    return mul(u[0].conj(), v[0]) + mul(u[1].conj(), v[1])


def to_quaternion_vector(v: Sequence[complex]) -> QuatVector:
    """``(x', x, y', y)`` in C^4 to ``(x' + j y', x + j y)`` in H^2."""
    xp, x, yp, y = (complex(t) for t in v)
    return (ComplexPair(xp, yp).to_quaternion(), ComplexPair(x, y).to_quaternion())


def from_quaternion_vector(u: QuatVector) -> np.ndarray:
    """Inverse of :func:`to_quaternion_vector`."""
    p1 = ComplexPair.from_quaternion(u[0])
    p2 = ComplexPair.from_quaternion(u[1])
    return np.array([p1.zprime, p2.zprime, p1.z, p2.z], dtype=np.complex128)


# -- complexification ----------------------------------------------------------
def split(A: QuatMatrix2) -> tuple[np.ndarray, np.ndarray]:
    """The complex blocks ``X, Y`` with ``A = X + j Y``."""
    X = np.empty((2, 2), dtype=np.complex128)
    Y = np.empty((2, 2), dtype=np.complex128)
    for (r, s), e in zip(((0, 0), (0, 1), (1, 0), (1, 1)), A.entries()):
        pair = ComplexPair.from_quaternion(e)
        X[r, s] = pair.zprime
        Y[r, s] = pair.z
    return X, Y


def complexify(A: QuatMatrix2) -> ComplexMatrix4:
    X, Y = split(A)
    return np.block([[X, -Y.conj()], [Y, X.conj()]])


def decomplexify(M: ComplexMatrix4) -> QuatMatrix2:
    """Read ``X`` and ``Y`` back from the left block column and form ``X + j Y``."""
    M = np.asarray(M)
    X, Y = M[:2, :2], M[2:, :2]
    return QuatMatrix2(*(ComplexPair(X[r, s], Y[r, s]).to_quaternion() for r in (0, 1) for s in (0, 1)))


def det4(M: ComplexMatrix4) -> complex:
    """Determinant of a 4x4 complex matrix via LU with partial pivoting."""
    return kernels.lu_det(M)


def sdet(A: QuatMatrix2) -> float:
    """Study's determinant ``|det(complexify(A))|^(1/2)``."""
    return math.sqrt(abs(det4(complexify(A))))


def sdet_shift(A: QuatMatrix2, q: Quaternion) -> float:
    """``sdet(A - q I)``; zero exactly when ``q`` is a left eigenvalue of ``A``."""
    return sdet(A.shift(q))


def sdet_shift_triangular(A: QuatMatrix2, q: Quaternion) -> float:
    """``|a - q| |(d - q) - c (a - q)^-1 b|``, valid when ``q != a``."""
    aq = A.a - q
    if aq.is_zero():
        raise DomainError("triangularised formula needs q != a")
    schur = (A.d - q) - mul(mul(A.c, inverse(aq)), A.b)
    return aq.norm() * schur.norm()


def warn_if_near_triangular(A: QuatMatrix2, threshold: float = 1e-12) -> None:
    if not A.is_triangular() and mul(A.b, A.c).norm() < threshold:
        warnings.warn(
            "matrix is nearly triangular (|bc| < %g); the quadratic reduction is ill-conditioned" % threshold,
            RuntimeWarning,
            stacklevel=3,
        )
