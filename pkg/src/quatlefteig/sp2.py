"""2x2 symplectic (quaternionic unitary) matrices and their left spectra.

``A`` is symplectic when ``A* A = I``.  Such a matrix is either diagonal with
unit entries, or

    [[alpha, -conj(beta) gamma], [beta, beta conj(alpha) conj(beta) gamma / |beta|^2]]

with ``|alpha|^2 + |beta|^2 = 1``, ``beta != 0`` and ``|gamma| = 1``.  Its left
eigenvalues all have norm 1, and it has infinitely many of them exactly when
it is a rotation ``[[q cos t, -q sin t], [q sin t, q cos t]]`` with
``|q| = 1`` and ``sin t != 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .cxlift import QuatMatrix2
from .errors import ConsistencyError, DomainError
from .lefteig2 import EigenvalueSet, InfiniteAffine, left_eigenvalues
from .quat import Quaternion, inverse, mul, random_unit

FORM_TOL = 1e-12
SYMPLECTIC_TOL = 1e-8
#: |beta| at or below this is treated as the diagonal branch
DIAGONAL_BETA_TOL = 1e-12
GAMMA_HEALTH_TOL = 1e-6
DIAGONAL_PROBABILITY = 0.1


@dataclass(frozen=True)
class Diagonal:
    alpha: Quaternion
    delta: Quaternion

    def validate(self, tol: float = FORM_TOL) -> None:
        for name, v in (("alpha", self.alpha), ("delta", self.delta)):
            if abs(v.norm() - 1.0) > tol:
                raise DomainError(f"diagonal form needs |{name}| = 1, got {v.norm()!r}")


@dataclass(frozen=True)
class General:
    alpha: Quaternion
    beta: Quaternion
    gamma: Quaternion

    def validate(self, tol: float = FORM_TOL) -> None:
        if self.beta.is_zero():
            raise DomainError("general form needs beta != 0")
        if abs(self.alpha.norm2() + self.beta.norm2() - 1.0) > tol:
            raise DomainError("general form needs |alpha|^2 + |beta|^2 = 1")
        if abs(self.gamma.norm() - 1.0) > tol:
            raise DomainError("general form needs |gamma| = 1")


SymplecticForm = Union[Diagonal, General]


@dataclass(frozen=True)
class RotationForm:
    """``L_q`` composed with the real rotation by ``theta``."""

    q: Quaternion
    theta: float

    def to_matrix(self) -> QuatMatrix2:
        c, s = math.cos(self.theta), math.sin(self.theta)
        return QuatMatrix2(self.q * c, self.q * (-s), self.q * s, self.q * c)

    def to_json(self) -> dict:
        return {"q": self.q.to_list(), "theta": self.theta}

    @classmethod
    def from_json(cls, obj: dict) -> "RotationForm":
        return cls(Quaternion.from_seq(obj["q"]), float(obj["theta"]))


def is_symplectic(A: QuatMatrix2, tol: float = SYMPLECTIC_TOL) -> bool:
    if tol < 0:
        raise DomainError("tol must be non-negative")
    return symplectic_defect(A) <= tol


def symplectic_defect(A: QuatMatrix2) -> float:
    """Largest entrywise deviation of ``A* A`` from the identity."""
    return (A.star() @ A).distance(QuatMatrix2.identity())


def from_form(f: SymplecticForm) -> QuatMatrix2:
    f.validate()
    if isinstance(f, Diagonal):
        return QuatMatrix2.diag(f.alpha, f.delta)
    alpha, beta, gamma = f.alpha, f.beta, f.gamma
    b = -mul(beta.conj(), gamma)
    d = mul(mul(mul(beta, alpha.conj()), beta.conj()), gamma) * (1.0 / beta.norm2())
    return QuatMatrix2(alpha, b, beta, d)


def to_form(A: QuatMatrix2) -> SymplecticForm:
    if not is_symplectic(A, SYMPLECTIC_TOL):
        raise DomainError("matrix is not symplectic (A*A deviates from I by %.3g)" % symplectic_defect(A))
    alpha, beta = A.a, A.c
    if beta.norm() <= DIAGONAL_BETA_TOL:
        return Diagonal(_unit(alpha), _unit(A.d))
    col = math.sqrt(alpha.norm2() + beta.norm2())
    alpha, beta = alpha * (1.0 / col), beta * (1.0 / col)
    gamma = -mul(inverse(beta.conj()), A.b)
    if abs(gamma.norm() - 1.0) > GAMMA_HEALTH_TOL:
        raise DomainError("recovered gamma has norm %.12g, expected 1" % gamma.norm())
    return General(alpha, beta, _unit(gamma))


def _unit(q: Quaternion) -> Quaternion:
    return q * (1.0 / q.norm())


def rotation(q: Quaternion, theta: float) -> QuatMatrix2:
    return RotationForm(q, theta).to_matrix()


def rotation_form_of(A: QuatMatrix2) -> RotationForm:
    """Read ``(q, theta)`` off a matrix on the rotation locus.

    ``sin(theta) = |beta|``, ``q = beta / |beta|`` and
    ``cos(theta) = Re(conj(beta) alpha) / |beta|``.
    """
    alpha, beta = A.a, A.c
    nb = beta.norm()
    if nb == 0.0:
        raise DomainError("beta = 0: diagonal matrices are not rotations with sin(theta) != 0")
    q = beta * (1.0 / nb)
    cos_t = mul(beta.conj(), alpha).re / nb
    return RotationForm(q, math.atan2(nb, cos_t))


def classify_spectrum(A: QuatMatrix2) -> tuple[EigenvalueSet, Optional[RotationForm]]:
    if not is_symplectic(A, SYMPLECTIC_TOL):
        raise DomainError("matrix is not symplectic (A*A deviates from I by %.3g)" % symplectic_defect(A))
    eigs = left_eigenvalues(A)
    if not isinstance(eigs, InfiniteAffine):
        return eigs, None
    form = rotation_form_of(A)
    gap = form.to_matrix().distance(A)
    if gap > 1e-8:
        raise ConsistencyError("infinite left spectrum but the matrix is %.3g away from its rotation form" % gap)
    return eigs, form


def random_symplectic(seed: int) -> QuatMatrix2:
    """Deterministic random element of Sp(2) for a given seed.

    With probability 0.1 a diagonal matrix with uniform unit entries;
    otherwise ``(alpha, beta)`` uniform on the unit sphere of ``H^2`` and
    ``gamma`` uniform on the unit quaternions.
    """
    rng = np.random.default_rng(seed)
    if rng.random() < DIAGONAL_PROBABILITY:
        return from_form(Diagonal(random_unit(rng), random_unit(rng)))
    v = rng.standard_normal(8)
    v /= np.linalg.norm(v)
    alpha, beta = Quaternion(*v[:4]), Quaternion(*v[4:])
    return from_form(General(alpha, beta, random_unit(rng)))
