"""Quaternion arithmetic and the pure-quaternion geometry built on it.

Quaternions are immutable values ``w + x i + y j + z k`` with
``i^2 = j^2 = k^2 = ijk = -1``.  Pure quaternions (zero real part) form a
3-dimensional Euclidean space with scalar product ``<q, r> = -Re(q r)``; its
unit sphere is the set ``Omega`` of square roots of -1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DomainError

#: Relative threshold on the real part for membership in the pure quaternions.
PURE_RTOL = 1e-12


@dataclass(frozen=True, slots=True)
class Quaternion:
    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    # construction --------------------------------------------------------
    @classmethod
    def from_seq(cls, seq: Iterable[float]) -> "Quaternion":
        vals = [float(v) for v in seq]
        if len(vals) != 4:
            raise DomainError(f"a quaternion needs 4 components, got {len(vals)}")
        return cls(*vals)

    @classmethod
    def from_complex(cls, value: complex) -> "Quaternion":
        """Embed ``a + b i`` in C as ``a + b i`` in H."""
        value = complex(value)
        return cls(value.real, value.imag, 0.0, 0.0)

    @classmethod
    def real(cls, value: float) -> "Quaternion":
        return cls(float(value), 0.0, 0.0, 0.0)

    def to_list(self) -> list[float]:
        return [self.w, self.x, self.y, self.z]

    def to_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def __iter__(self):
        return iter((self.w, self.x, self.y, self.z))

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Quaternion(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return mul(other, self)

    def __truediv__(self, other):
        # Only division by real scalars: left and right quotients differ in H.
        if isinstance(other, (int, float)):
            return Quaternion(self.w / other, self.x / other, self.y / other, self.z / other)
        return NotImplemented

    # structure -----------------------------------------------------------
    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self) -> float:
        return math.hypot(self.w, self.x, self.y, self.z)

    @property
    def re(self) -> float:
        return self.w

    def pure(self) -> "Quaternion":
        """Projection onto the pure quaternions."""
        return Quaternion(0.0, self.x, self.y, self.z)

    def inverse(self) -> "Quaternion":
        return inverse(self)

    def is_zero(self) -> bool:
        return self.w == 0.0 and self.x == 0.0 and self.y == 0.0 and self.z == 0.0

    def is_pure(self, rtol: float = PURE_RTOL) -> bool:
        return abs(self.w) <= rtol * max(1.0, self.norm())

    def is_complex(self, tol: float = 0.0) -> bool:
        """True if the j and k coefficients vanish (within ``tol``)."""
        return math.hypot(self.y, self.z) <= tol

    def as_complex(self) -> complex:
        return complex(self.w, self.x)

    def __repr__(self):
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


def _coerce(value) -> Quaternion | None:
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, (int, float)):
        return Quaternion(float(value))
    if isinstance(value, complex):
        return Quaternion.from_complex(value)
    return None


ZERO = Quaternion()
ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product ``a b``."""
    return Quaternion(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )


def left_matrix(a: Quaternion) -> np.ndarray:
    """Real 4x4 matrix of ``v -> a v`` on coordinates ``(w, x, y, z)``."""
    w, x, y, z = a
    return np.array([[w, -x, -y, -z], [x, w, -z, y], [y, z, w, -x], [z, -y, x, w]])


def right_matrix(a: Quaternion) -> np.ndarray:
    """Real 4x4 matrix of ``v -> v a``."""
    w, x, y, z = a
    return np.array([[w, -x, -y, -z], [x, w, z, -y], [y, -z, w, x], [z, y, -x, w]])


def inverse(q: Quaternion) -> Quaternion:
    n2 = q.norm2()
    if n2 == 0.0:
        raise DomainError("non-invertible: the zero quaternion has no inverse")
    return Quaternion(q.w / n2, -q.x / n2, -q.y / n2, -q.z / n2)


def similar(p: Quaternion, q: Quaternion, tol: float = 1e-12) -> bool:
    """Whether ``p`` and ``q`` lie in the same similarity class ``{r q r^-1}``.

    Two quaternions are similar exactly when they share norm and real part.
    """
    if tol < 0:
        raise DomainError("tol must be non-negative")
    return abs(p.norm() - q.norm()) <= tol and abs(p.re - q.re) <= tol


def scalar_product_h0(q: Quaternion, r: Quaternion) -> float:
    """Euclidean scalar product ``-Re(q r)`` of two pure quaternions."""
    for name, v in (("q", q), ("r", r)):
        if not v.is_pure():
            raise DomainError(f"{name} is not a pure quaternion (real part {v.w!r})")
    return -mul(q, r).w


def conjugate_by(q: Quaternion, value: Quaternion) -> Quaternion:
    """Return ``q value q^-1``."""
    return mul(mul(q, value), inverse(q))


def sample_omega(count: int, seed: int) -> list[Quaternion]:
    """Draw ``count`` points uniformly from the unit sphere of pure quaternions.

    Normalised standard Gaussian triples from ``numpy.random.default_rng(seed)``;
    the same seed always yields the same list.
    """
    if count < 1:
        raise DomainError("count must be >= 1")
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((count, 3))
    norms = np.linalg.norm(pts, axis=1)
    # a zero draw has probability zero, but never divide by it
    while np.any(norms == 0.0):
        bad = norms == 0.0
        pts[bad] = rng.standard_normal((int(bad.sum()), 3))
        norms = np.linalg.norm(pts, axis=1)
    pts /= norms[:, None]
    return [Quaternion(0.0, float(a), float(b), float(c)) for a, b, c in pts]


def random_quaternion(rng: np.random.Generator, scale: float = 1.0) -> Quaternion:
    """Quaternion with i.i.d. normal components of standard deviation ``scale``."""
    return Quaternion(*(scale * rng.standard_normal(4)))


def random_unit(rng: np.random.Generator) -> Quaternion:
    """Quaternion drawn uniformly from the unit 3-sphere."""
    v = rng.standard_normal(4)
    return Quaternion(*(v / np.linalg.norm(v)))


@dataclass(frozen=True, slots=True)
class ComplexPair:
    """The pair ``(z', z)`` in C^2 standing for the quaternion ``z' + j z``.

    With ``q = w + x i + y j + c k`` this gives ``z' = w + x i`` and
    ``z = y - c i`` (because ``j i = -k``).
    """

    zprime: complex
    z: complex

    @classmethod
    def from_quaternion(cls, q: Quaternion) -> "ComplexPair":
        return cls(complex(q.w, q.x), complex(q.y, -q.z))

    def to_quaternion(self) -> Quaternion:
        zp, z = complex(self.zprime), complex(self.z)
        return Quaternion(zp.real, zp.imag, z.real, -z.imag)


def to_quaternion(zprime: complex, z: complex) -> Quaternion:
    """``zprime + j z`` as a quaternion."""
    return ComplexPair(zprime, z).to_quaternion()
