"""Eigenvalues and eigenvectors of 4x4 complex matrices.

The characteristic polynomial comes from the Faddeev-LeVerrier recursion, its
roots from Durand-Kerner iteration, and eigenvectors from a null space
computed by Gaussian elimination.  Root clusters decide coincidences such as
"lambda1 = lambda2"; :data:`CLUSTER_RTOL` is the single knob for that.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .cxlift import ComplexMatrix4, QuatVector, from_quaternion_vector, to_quaternion_vector
from .errors import DomainError, NumericalError

__all__ = [
    "CLUSTER_RTOL",
    "ComplexPolynomial",
    "RootCluster",
    "Spectrum4",
    "char_poly",
    "roots",
    "eigenvectors",
    "to_quaternion_vector",
    "from_quaternion_vector",
    "conjugate_partner",
]

#: roots closer than ``CLUSTER_RTOL * max(|root|, scale)`` are the same
#: eigenvalue, ``scale`` being the polynomial's root scale
CLUSTER_RTOL = 1e-7
#: pivots below ``NULLSPACE_RTOL * scale`` count as zero
NULLSPACE_RTOL = 1e-8
DK_MAXITER = 500
DK_STEP_RTOL = 1e-14
EPS = kernels.EPS


def cluster_tol(root: complex, scale: float = 1.0) -> float:
    return CLUSTER_RTOL * max(abs(root), scale)


@dataclass(frozen=True)
class ComplexPolynomial:
    """Monic polynomial, coefficients lowest degree first."""

    coefficients: tuple[complex, ...]

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coefficients)
        if len(coeffs) < 2:
            raise DomainError("polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise DomainError("polynomial must be monic")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, z: complex) -> complex:
        v = 0j
        for c in reversed(self.coefficients):
            v = v * z + c
        return v

    def derivative(self, order: int = 1) -> list[complex]:
        """Coefficients (lowest first) of the ``order``-th derivative; not monic."""
        c = list(self.coefficients)
        for _ in range(order):
            c = [k * c[k] for k in range(1, len(c))]
        return c

    def root_scale(self) -> float:
        """``max |c_k|^(1/(n-k))``, within a factor 2 of the largest root modulus."""
        n = self.degree
        return max(abs(c) ** (1.0 / (n - k)) for k, c in enumerate(self.coefficients[:-1]))

    def max_abs_coefficient(self) -> float:
        return max(abs(c) for c in self.coefficients)

    def rounding_bound(self, z: complex) -> float:
        """Running error bound for Horner evaluation at ``z``."""
        b = 0.0
        az = abs(z)
        for c in reversed(self.coefficients):
            b = b * az + abs(c)
        return 8.0 * EPS * b

    def as_array(self) -> np.ndarray:
        return np.array(self.coefficients, dtype=np.complex128)


def _horner(coeffs, z):
    v = 0j
    for c in reversed(coeffs):
        v = v * z + c
    return v


@dataclass(frozen=True)
class RootCluster:
    center: complex
    indices: tuple[int, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class Spectrum4:
    """Roots with multiplicity plus their partition into clusters.

    ``roots`` repeats each refined cluster centre once per member, so equal
    eigenvalues compare exactly equal.  ``raw_roots`` keeps the iterates.
    """

    roots: tuple[complex, ...]
    clusters: tuple[RootCluster, ...]
    raw_roots: tuple[complex, ...] = field(default=(), repr=False)
    iterations: int = 0
    scale: float = 1.0

    def tol(self, root: complex) -> float:
        return cluster_tol(root, self.scale)

    def centers(self) -> list[complex]:
        return [c.center for c in self.clusters]

    def is_conjugation_closed(self) -> bool:
        for cl in self.clusters:
            target = cl.center.conjugate()
            partner = min(self.clusters, key=lambda other: abs(other.center - target))
            if abs(partner.center - target) > self.tol(target) or partner.multiplicity != cl.multiplicity:
                return False
        return True


# ---------------------------------------------------------------------------
def char_poly(M: ComplexMatrix4) -> ComplexPolynomial:
    """``det(lambda I - M)`` via the Faddeev-LeVerrier recursion."""
    M = np.asarray(M, dtype=np.complex128)
    n = M.shape[0]
    coeffs = [0j] * (n + 1)
    coeffs[n] = 1.0 + 0j
    ident = np.eye(n, dtype=np.complex128)
    Mk = np.zeros_like(M)
    for k in range(1, n + 1):
        Mk = M @ Mk + coeffs[n - k + 1] * ident
        coeffs[n - k] = complex(-np.trace(M @ Mk) / k)
    return ComplexPolynomial(tuple(coeffs))


def _initial_guesses(p: ComplexPolynomial) -> np.ndarray:
    n = p.degree
    r = 1.0 + max(abs(c) for c in p.coefficients[:-1])
    return np.array([r * cmath.exp(1j * (2 * math.pi * k / n + 0.4)) for k in range(n)])


def _newton_polish(coeffs, dcoeffs, z, steps):
    fz = _horner(coeffs, z)
    for _ in range(steps):
        d = _horner(dcoeffs, z)
        if d == 0:
            break
        cand = z - fz / d
        fc = _horner(coeffs, cand)
        if abs(fc) >= abs(fz):
            break
        z, fz = cand, fc
    return z


def _inclusion_radius(p: ComplexPolynomial, z: np.ndarray, i: int) -> float:
    den = 1.0 + 0j
    for j in range(len(z)):
        if j != i:
            den *= z[i] - z[j]
    num = abs(p(z[i])) + p.rounding_bound(z[i])
    if den == 0:
        return math.inf
    return len(z) * num / abs(den)


def _cluster(p: ComplexPolynomial, z: np.ndarray) -> list[list[int]]:
    n = len(z)
    scale = p.root_scale()
    radii = [_inclusion_radius(p, z, i) for i in range(n)]
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            dist = abs(z[i] - z[j])
            close = dist <= max(cluster_tol(z[i], scale), cluster_tol(z[j], scale))
            overlap = dist <= radii[i] + radii[j]
            if close or overlap:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])


def _refine_center(p: ComplexPolynomial, z: np.ndarray, members: list[int]) -> complex:
    m = len(members)
    center = complex(np.mean(z[members]))
    if m == 1:
        return complex(z[members[0]])
    # an m-fold root is a simple root of the (m-1)-th derivative
    dm = p.derivative(m - 1)
    dm1 = p.derivative(m)
    return _newton_polish(dm, dm1, center, 4)


def roots(p: ComplexPolynomial) -> Spectrum4:
    """All roots of a monic polynomial, clustered by multiplicity.

    Raises :class:`NumericalError` when Durand-Kerner does not settle within
    the iteration cap.
    """
    if p.coefficients[-1] != 1:
        raise DomainError("polynomial must be monic")
    coeffs = p.as_array()
    z, iters = kernels.durand_kerner(coeffs, _initial_guesses(p), DK_MAXITER, DK_STEP_RTOL)
    if iters < 0:
        resid = max(abs(p(zi)) for zi in z)
        raise NumericalError("Durand-Kerner did not converge in %d iterations" % DK_MAXITER, best=z, residual=resid)
    dcoeffs = p.derivative(1)
    z = np.array([_newton_polish(p.coefficients, dcoeffs, zi, 2) for zi in z])
    groups = _cluster(p, z)
    out = np.empty(len(z), dtype=np.complex128)
    clusters = []
    for g in groups:
        center = _refine_center(p, z, g)
        out[g] = center
        clusters.append(RootCluster(center, tuple(g)))
    return Spectrum4(
        tuple(complex(v) for v in out), tuple(clusters), tuple(complex(v) for v in z), iters, p.root_scale()
    )


# ---------------------------------------------------------------------------
def _orthonormalize(basis: np.ndarray) -> np.ndarray:
    if basis.shape[1] == 0:
        return basis
    q, _ = np.linalg.qr(basis)
    return q


def eigenvectors(M: ComplexMatrix4, lam: complex, rtol: float = NULLSPACE_RTOL) -> list[np.ndarray]:
    """Orthonormal basis of the numerical null space of ``M - lam I``.

    Raises :class:`NumericalError` if the null space is empty at tolerance.
    """
    M = np.asarray(M, dtype=np.complex128)
    B = M - lam * np.eye(M.shape[0])
    scale = max(float(np.max(np.abs(M))), abs(lam), 1e-300)
    basis = _orthonormalize(kernels.nullspace(B, rtol * scale))
    if basis.shape[1] == 0:
        raise NumericalError("not an eigenvalue at tolerance: %r" % (lam,))
    return [basis[:, k].copy() for k in range(basis.shape[1])]


def eigen_residual(M: ComplexMatrix4, lam: complex, v: np.ndarray) -> float:
    M = np.asarray(M)
    return float(np.linalg.norm(M @ v - lam * v))


def conjugate_partner(v: np.ndarray) -> np.ndarray:
    """Complex image of ``u j``: a conj(lambda)-eigenvector when ``v`` is a lambda-eigenvector
    of a complexified matrix."""
    v = np.asarray(v)
    return np.concatenate([-v[2:].conj(), v[:2].conj()])


def quaternion_eigenvector(v: np.ndarray) -> QuatVector:
    return to_quaternion_vector(v)
