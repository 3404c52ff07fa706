"""Left eigenvalues of 2x2 quaternionic matrices.

``q`` is a left eigenvalue of ``A`` when ``A u = q u`` for some nonzero
``u`` in ``H^2``.  Triangular matrices (``b c = 0``) have their diagonal
entries as left eigenvalues.  Otherwise ``q = a + b p`` where ``p`` solves
``p^2 + a1 p + a0 = 0`` with ``a1 = b^-1 (a - d)`` and ``a0 = -b^-1 c``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union


from . import eig4
from .cxlift import (
    QuatMatrix2,
    QuatVector,
    complexify,
    sdet,
    sdet_shift,
    to_quaternion_vector,
    vec_norm,
    vec_sub,
    warn_if_near_triangular,
)
from .errors import DomainError, NumericalError
from .quat import Quaternion, mul, sample_omega
from .uniquad import Finite as FiniteSolutions
from .uniquad import InfiniteSphere, companion_coefficients, solve

#: ``sdet_shift / (1 + sdet)`` below this counts as "is an eigenvalue"
EIGEN_RTOL = 1e-6


@dataclass(frozen=True)
class Finite:
    values: tuple[Quaternion, ...]

    kind = "finite"

    def to_json(self) -> dict:
        return {"kind": "finite", "values": [v.to_list() for v in self.values]}


@dataclass(frozen=True)
class InfiniteAffine:
    """``{center + factor * omega : omega in Omega}``."""

    center: Quaternion
    factor: Quaternion

    kind = "affine_sphere"

    def point(self, omega: Quaternion) -> Quaternion:
        return self.center + mul(self.factor, omega)

    def sample(self, count: int, seed: int) -> list[Quaternion]:
        return [self.point(w) for w in sample_omega(count, seed)]

    def contains(self, q: Quaternion, tol: float = 1e-8) -> bool:
        w = mul(self.factor.inverse(), q - self.center)
        return abs(w.re) <= tol and abs(w.pure().norm() - 1.0) <= tol

    def to_json(self) -> dict:
        return {"kind": "affine_sphere", "center": self.center.to_list(), "factor": self.factor.to_list()}


EigenvalueSet = Union[Finite, InfiniteAffine]


def eigenvalue_set_from_json(obj: dict) -> EigenvalueSet:
    kind = obj.get("kind")
    if kind == "finite":
        return Finite(tuple(Quaternion.from_seq(v) for v in obj["values"]))
    if kind == "affine_sphere":
        return InfiniteAffine(Quaternion.from_seq(obj["center"]), Quaternion.from_seq(obj["factor"]))
    raise DomainError(f"unknown eigenvalue set kind {kind!r}")


@dataclass(frozen=True)
class EigenPair:
    value: Quaternion
    vector: QuatVector

    def residual(self, A: QuatMatrix2) -> float:
        Au = A.apply(self.vector)
        qu = (mul(self.value, self.vector[0]), mul(self.value, self.vector[1]))
        return vec_norm(vec_sub(Au, qu))


def left_eigenvalues(A: QuatMatrix2) -> EigenvalueSet:
    if A.is_triangular():
        values = (A.a,) if A.a == A.d else (A.a, A.d)
        return Finite(values)
    warn_if_near_triangular(A)
    a1, a0 = companion_coefficients(A)
    solutions, _ = solve(a1, a0)
    return from_solutions(A, solutions)


def from_solutions(A: QuatMatrix2, solutions) -> EigenvalueSet:
    """Map a solution set of the companion equation through ``q = a + b p``."""
    if isinstance(solutions, InfiniteSphere):
        return InfiniteAffine(A.a + A.b * solutions.center, A.b * solutions.radius)
    if isinstance(solutions, FiniteSolutions):
        return Finite(tuple(A.a + mul(A.b, p) for p in solutions.solutions))
    raise TypeError(type(solutions))


def verify(A: QuatMatrix2, q: Quaternion) -> float:
    """``sdet(A - q I)``, zero exactly at left eigenvalues."""
    return sdet_shift(A, q)


def normalized_verify(A: QuatMatrix2, q: Quaternion) -> float:
    return sdet_shift(A, q) / (1.0 + sdet(A))


def eigenvector_for(A: QuatMatrix2, q: Quaternion) -> EigenPair:
    """A nonzero ``u`` with ``A u = q u``.

    The null space of ``A - q I`` (a right H-subspace) is found through its
    complex lift; any nonzero lift null vector gives an eigenvector.
    """
    if normalized_verify(A, q) > EIGEN_RTOL:
        raise DomainError("not a left eigenvalue: sdet(A - qI) is bounded away from zero")
    B = complexify(A.shift(q))
    try:
        vecs = eig4.eigenvectors(B, 0.0)
    except NumericalError as exc:
        raise DomainError("not a left eigenvalue: empty null space at tolerance") from exc
    u = to_quaternion_vector(vecs[0])
    n = vec_norm(u)
    u = (u[0] * (1.0 / n), u[1] * (1.0 / n))
    pair = EigenPair(q, u)
    if pair.residual(A) > 1e-8:
        raise DomainError("not a left eigenvalue: eigenvector residual %.3g" % pair.residual(A))
    return pair


def contains(eigs: EigenvalueSet, q: Quaternion, tol: float = 1e-8) -> bool:
    if isinstance(eigs, InfiniteAffine):
        return eigs.contains(q, tol)
    return any((q - v).norm() <= tol for v in eigs.values)
