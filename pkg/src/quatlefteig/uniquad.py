"""The unilateral quadratic ``p^2 + a1 p + a0 = 0`` over the quaternions.

Solutions are the privileged right eigenvalues of the companion matrix
``M = [[-a1, -a0], [1, 0]]``: right eigenvalues whose eigenvector can be
scaled to ``(p, 1)``.  The complex right eigenvalues of ``M`` are the
eigenvalues of its complex lift; every lift eigenvector ``(q', q)`` with
complex eigenvalue ``lam`` yields the solution ``q lam q^-1``.

The equation has one, two, or infinitely many solutions.  The infinite case
happens exactly when ``a1, a0`` are real, ``a0 != 0`` and
``a1^2 - 4 a0 < 0``; the solutions then form the sphere
``-a1/2 + (sqrt(4 a0 - a1^2)/2) * omega`` with ``omega`` a unit pure
quaternion.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import eig4
from .cxlift import QuatMatrix2, QuatVector, complexify, to_quaternion_vector
from .errors import ConsistencyError, DomainError, NumericalError
from .quat import ONE, ZERO, Quaternion, conjugate_by, left_matrix, mul, right_matrix, sample_omega

#: pure part below ``REAL_RTOL`` times the coefficient scale certifies a coefficient as real
REAL_RTOL = 1e-9
#: discriminant threshold relative to the coefficient scale
DISC_RTOL = 1e-9
#: privileged eigenvalues closer than ``DEDUP_RTOL`` times the coefficient scale are merged
DEDUP_RTOL = 1e-7
#: a quartic within this (relative) distance of a square counts as one
SQUARE_RTOL = 1e-10
#: a fourfold real cluster splits into two real doubles above this discriminant
SPLIT_RTOL = 1e-12
#: a double non-real eigenvalue whose restricted matrix is this close to scalar is a sphere
SCALAR_RTOL = 1e-9
#: two non-real eigenvalues closer than this fraction of their imaginary parts are refined together
CLOSE_RTOL = 1e-2
#: restricted eigenvectors closer than this (sine of their angle) form a Jordan block
JORDAN_SIN = 1e-6

DISTINCT_FOUR = "distinct-four"
REAL_EIGENVALUE = "real-eigenvalue"
DOUBLE_NONREAL = "double-nonreal"
DOUBLE_NONREAL_DEFECTIVE = "double-nonreal-defective"


def companion(a1: Quaternion, a0: Quaternion) -> QuatMatrix2:
    return QuatMatrix2(-a1, -a0, ONE, ZERO)


@dataclass(frozen=True)
class Finite:
    solutions: tuple[Quaternion, ...]

    kind = "finite"

    def to_json(self) -> dict:
        return {"kind": "finite", "solutions": [s.to_list() for s in self.solutions]}


@dataclass(frozen=True)
class InfiniteSphere:
    """``{center + radius * omega : omega in Omega}``."""

    center: float
    radius: float

    kind = "sphere"

    def __post_init__(self):
        if not self.radius > 0:
            raise DomainError("sphere radius must be positive")

    def point(self, omega: Quaternion) -> Quaternion:
        return Quaternion(self.center) + omega * self.radius

    def sample(self, count: int, seed: int) -> list[Quaternion]:
        return [self.point(w) for w in sample_omega(count, seed)]

    def to_json(self) -> dict:
        return {"kind": "sphere", "center": self.center, "radius": self.radius}


SolutionSet = Union[Finite, InfiniteSphere]


def solution_set_from_json(obj: dict) -> SolutionSet:
    kind = obj.get("kind")
    if kind == "finite":
        return Finite(tuple(Quaternion.from_seq(s) for s in obj["solutions"]))
    if kind == "sphere":
        return InfiniteSphere(float(obj["center"]), float(obj["radius"]))
    raise DomainError(f"unknown solution set kind {kind!r}")


@dataclass(frozen=True)
class HuangSoFlags:
    """Coefficient conditions that together hold exactly for a sphere of solutions."""

    a1_real: bool
    a0_real: bool
    a0_nonzero: bool
    delta_negative: bool

    @property
    def infinite(self) -> bool:
        return self.a1_real and self.a0_real and self.a0_nonzero and self.delta_negative

    def to_json(self) -> dict:
        return {
            "a1_real": self.a1_real,
            "a0_real": self.a0_real,
            "a0_nonzero": self.a0_nonzero,
            "delta_negative": self.delta_negative,
        }


@dataclass(frozen=True)
class ClassificationReport:
    case_tag: str
    eigenvalues: tuple[complex, ...]
    multiplicities: tuple[int, ...]
    eigenspace_dims: tuple[int, ...]
    huang_so: HuangSoFlags
    discriminant: float = field(default=math.nan)

    def to_json(self) -> dict:
        return {
            "case": self.case_tag,
            "eigenvalues": [[z.real, z.imag] for z in self.eigenvalues],
            "multiplicities": list(self.multiplicities),
            "eigenspace_dims": list(self.eigenspace_dims),
            "huang_so": self.huang_so.to_json(),
            "discriminant": self.discriminant,
        }


def coefficient_scale(a1: Quaternion, a0: Quaternion) -> float:
    """``max(|a1|, sqrt|a0|)``, the size of the solutions."""
    return max(a1.norm(), math.sqrt(a0.norm()))


def is_real_coefficient(a: Quaternion, scale: float) -> bool:
    """Pure part within ``REAL_RTOL * scale`` (pass ``scale^2`` for ``a0``)."""
    return a.pure().norm() <= REAL_RTOL * scale


def discriminant_threshold(a1: Quaternion, a0: Quaternion) -> float:
    return DISC_RTOL * max(a1.norm2(), a0.norm())


def huang_so_flags(a1: Quaternion, a0: Quaternion) -> HuangSoFlags:
    R = coefficient_scale(a1, a0)
    a1_real = is_real_coefficient(a1, R)
    a0_real = is_real_coefficient(a0, R * R)
    disc = a1.re * a1.re - 4.0 * a0.re
    return HuangSoFlags(
        a1_real=a1_real,
        a0_real=a0_real,
        a0_nonzero=not a0.is_zero(),
        delta_negative=disc < -discriminant_threshold(a1, a0),
    )


def privileged_from_eigenvector(v: QuatVector, lam: complex) -> Quaternion:
    """The solution ``q lam q^-1`` carried by a companion eigenvector ``v = (q', q)``."""
    first, second = v
    scale = max(first.norm(), second.norm())
    if scale == 0.0:
        raise DomainError("zero vector is not an eigenvector")
    if second.norm() <= 1e-12 * scale:
        raise NumericalError("degenerate eigenvector: second coordinate vanishes", best=v)
    return conjugate_by(second, Quaternion.from_complex(lam))


def residual(p: Quaternion, a1: Quaternion, a0: Quaternion) -> float:
    return (mul(p, p) + mul(a1, p) + a0).norm()


def residual_tolerance(a1: Quaternion, a0: Quaternion) -> float:
    return 1e-8 * (1.0 + a1.norm() + a0.norm())


def polish(p: Quaternion, a1: Quaternion, a0: Quaternion, steps: int = 2) -> Quaternion:
    """Newton steps on ``p^2 + a1 p + a0``, each kept only if the residual drops.

    Solutions next to a near-double root of the characteristic polynomial
    (for instance ``a0`` tiny next to ``a1``) are only known to about
    ``sqrt(eps)`` from the roots; one step brings them to full accuracy.
    """
    r = residual(p, a1, a0)
    for _ in range(steps):
        if r == 0.0:
            break
        jac = left_matrix(p) + right_matrix(p) + left_matrix(a1)
        f = (mul(p, p) + mul(a1, p) + a0).to_array()
        try:
            step = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError:
            break
        cand = p + Quaternion(*map(float, step))
        rc = residual(cand, a1, a0)
        if not rc < r:
            break
        p, r = cand, rc
    return p


def _dedup(values: list[Quaternion], scale: float) -> list[Quaternion]:
    out: list[Quaternion] = []
    for v in values:
        if all((v - u).norm() > DEDUP_RTOL * scale for u in out):
            out.append(v)
    return out


def _resolve_fourfold(p: eig4.ComplexPolynomial, spectrum: eig4.Spectrum4) -> eig4.Spectrum4:
    """Look inside a single fourfold cluster through the square root of the quartic.

    The lifted characteristic polynomial is ``f conj(f)`` for a complex
    quadratic ``f``; when all four roots are real it is ``f^2``.  Two double
    roots ``sqrt(D)/2`` apart then scatter by about ``sqrt(eps)`` and merge
    into one cluster, while ``f`` itself still separates them.
    """
    if len(spectrum.clusters) != 1:
        return spectrum
    c0, c1, c2, c3, _ = p.coefficients
    b1 = c3 / 2.0
    b0 = (c2 - b1 * b1) / 2.0
    S = p.root_scale()
    if S == 0.0:
        return spectrum
    if abs(2.0 * b1 * b0 - c1) > SQUARE_RTOL * S**3 or abs(b0 * b0 - c0) > SQUARE_RTOL * S**4:
        return spectrum
    b1, b0 = b1.real, b0.real
    D = b1 * b1 - 4.0 * b0
    scale = max(b1 * b1, abs(b0))
    if D > SPLIT_RTOL * scale:
        big = -(b1 + math.copysign(math.sqrt(D), b1)) / 2.0
        centers = (complex(big), complex(b0 / big))
    elif D < -DISC_RTOL * scale:
        half = math.sqrt(-D) / 2.0
        centers = (complex(-b1 / 2.0, half), complex(-b1 / 2.0, -half))
    else:
        return spectrum
    clusters = (eig4.RootCluster(centers[0], (0, 1)), eig4.RootCluster(centers[1], (2, 3)))
    roots = (centers[0], centers[0], centers[1], centers[1])
    return eig4.Spectrum4(roots, clusters, spectrum.raw_roots, spectrum.iterations, spectrum.scale)


def _refine_double(Mt: np.ndarray, c1: complex, c2: complex, scale: float):
    """Rayleigh-Ritz on the invariant subspace of two nearby (or equal) eigenvalues.

    Eigenvectors of nearly equal eigenvalues are ill-determined one at a
    time, while their joint invariant subspace is not.  Returns
    ``("scalar", None)`` when the restriction is a multiple of the identity
    (a two-dimensional eigenspace), ``("jordan", [(lam, x)])`` for a single
    eigenvector, and ``("split", [(lam1, x1), (lam2, x2)])`` otherwise.
    """
    I4 = np.eye(4)
    _, _, vh = np.linalg.svd((Mt - c1 * I4) @ (Mt - c2 * I4))
    V = vh[2:].conj().T
    B = V.conj().T @ Mt @ V
    half = (B[0, 0] + B[1, 1]) / 2.0
    if np.linalg.norm(B - half * np.eye(2)) <= SCALAR_RTOL * scale:
        return "scalar", None
    mu, W = np.linalg.eig(B)
    W = W / np.linalg.norm(W, axis=0)
    if abs(np.linalg.det(W)) <= JORDAN_SIN:
        return "jordan", [(complex(half), V @ W[:, 0])]
    return "split", [(complex(mu[k]), V @ W[:, k]) for k in range(2)]


def _close_pair(pairs) -> bool:
    if len(pairs) == 1:
        return pairs[0][0].multiplicity == 2
    (u1, _), (u2, _) = pairs
    return abs(u1.center - u2.center) <= CLOSE_RTOL * min(u1.center.imag, u2.center.imag)


def _pair_clusters(spectrum: eig4.Spectrum4):
    """Split clusters into real ones and (upper, lower) conjugate pairs."""
    real, upper, lower = [], [], []
    for cl in spectrum.clusters:
        c = cl.center
        # real: no farther from its own conjugate than the clustering tolerance
        if 2.0 * abs(c.imag) <= spectrum.tol(c):
            real.append(cl)
        elif c.imag > 0:
            upper.append(cl)
        else:
            lower.append(cl)
    pairs = []
    remaining = list(lower)
    for cl in upper:
        if not remaining:
            raise NumericalError("spectrum of the complex lift is not closed under conjugation")
        target = cl.center.conjugate()
        partner = min(remaining, key=lambda o: abs(o.center - target))
        if partner.multiplicity != cl.multiplicity or abs(partner.center - target) > spectrum.tol(target):
            raise NumericalError("spectrum of the complex lift is not closed under conjugation")
        remaining.remove(partner)
        pairs.append((cl, partner))
    if remaining:
        raise NumericalError("spectrum of the complex lift is not closed under conjugation")
    return real, pairs


def analyze(a1: Quaternion, a0: Quaternion):
    """Run the eigenvector method and return ``(solutions, report)``.

    ``solutions`` is the list of privileged eigenvalues in the finite case and
    ``None`` in the sphere case.  No consistency check against the coefficient
    conditions is made here; see :func:`solve`.
    """
    # p = s p' turns the equation into one with coefficient scale near 1;
    # a power of two keeps the rescaling exact
    R = coefficient_scale(a1, a0)
    e = round(math.log2(R)) if 0.0 < R < math.inf else 0
    s = math.ldexp(1.0, e)
    b1 = Quaternion(*(math.ldexp(c, -e) for c in a1))
    b0 = Quaternion(*(math.ldexp(c, -2 * e) for c in a0))
    Mt = complexify(companion(b1, b0))
    chi = eig4.char_poly(Mt)
    spectrum = _resolve_fourfold(chi, eig4.roots(chi))
    real, pairs = _pair_clusters(spectrum)

    eigvals: list[complex] = []
    mults: list[int] = []
    dims: list[int] = []
    found: list[Quaternion] = []

    for cl in real:
        lam = complex(cl.center.real, 0.0)
        eigvals.append(lam)
        mults.append(cl.multiplicity)
        try:
            dims.append(len(eig4.eigenvectors(Mt, lam)))
        except NumericalError:
            dims.append(0)
        # every quaternion similar to a real number is that number
        found.append(Quaternion(lam.real))

    sphere = False
    split = False
    if pairs and _close_pair(pairs):
        ups = [up.center for up, _ in pairs]
        kind, parts = _refine_double(Mt, ups[0], ups[-1], coefficient_scale(b1, b0))
        if kind == "split":
            split = True
            for lam, x in parts:
                eigvals.extend((lam, lam.conjugate()))
                mults.extend((1, 1))
                dims.extend((1, 1))
                found.append(privileged_from_eigenvector(to_quaternion_vector(x), lam))
        else:
            sphere = kind == "scalar"
            center = parts[0][0] if parts else sum(ups) / len(ups)
            d = 2 if sphere else 1
            eigvals.extend((center, center.conjugate()))
            mults.extend((2, 2))
            dims.extend((d, d))
            if parts:
                found.append(privileged_from_eigenvector(to_quaternion_vector(parts[0][1]), center))
        pairs = pairs[:1]
    else:
        for up, low in pairs:
            for cl in (up, low):
                vecs = eig4.eigenvectors(Mt, cl.center)
                eigvals.append(cl.center)
                mults.append(cl.multiplicity)
                dims.append(len(vecs))
                if len(vecs) >= 2:
                    sphere = True
                elif cl is up:
                    # v j is an eigenvector for the conjugate and carries the same
                    # solution, so the lower member adds nothing but rounding noise
                    found.append(privileged_from_eigenvector(to_quaternion_vector(vecs[0]), cl.center))

    if real:
        tag = REAL_EIGENVALUE
    elif split:
        tag = DISTINCT_FOUR
    elif len(pairs) == 1 and sphere:
        tag = DOUBLE_NONREAL
    elif len(pairs) == 1:
        tag = DOUBLE_NONREAL_DEFECTIVE
    else:
        tag = DISTINCT_FOUR

    if sphere and tag != DOUBLE_NONREAL:
        raise NumericalError("two-dimensional eigenspace outside the double non-real case")

    flags = huang_so_flags(a1, a0)
    disc = a1.re * a1.re - 4.0 * a0.re
    report = ClassificationReport(tag, tuple(z * s for z in eigvals), tuple(mults), tuple(dims), flags, disc)
    if tag == DOUBLE_NONREAL:
        return None, report
    return _dedup([polish(p * s, a1, a0) for p in found], R), report


def solve(a1: Quaternion, a0: Quaternion) -> tuple[SolutionSet, ClassificationReport]:
    """Solve ``p^2 + a1 p + a0 = 0`` and classify the solution set.

    Raises :class:`ConsistencyError` if the eigenvalue structure and the
    coefficient conditions disagree, and :class:`NumericalError` when the
    eigensolver fails or a solution misses the residual tolerance.
    """
    solutions, report = analyze(a1, a0)
    infinite = report.case_tag == DOUBLE_NONREAL
    if infinite != report.huang_so.infinite:
        raise ConsistencyError(
            "case %s disagrees with coefficient flags %s" % (report.case_tag, report.huang_so.to_json())
        )
    if infinite:
        t, s = a1.re, a0.re
        # adding 0.0 turns -0.0 into 0.0
        return InfiniteSphere(-t / 2.0 + 0.0, math.sqrt(4.0 * s - t * t) / 2.0), report

    if not 1 <= len(solutions) <= 2:
        raise ConsistencyError("finite case produced %d solutions" % len(solutions))
    tol = residual_tolerance(a1, a0)
    for p in solutions:
        r = residual(p, a1, a0)
        if r > tol:
            raise NumericalError("solution residual %.3g exceeds %.3g" % (r, tol), best=p, residual=r)
    return Finite(tuple(solutions)), report


def membership(s: SolutionSet, p: Quaternion, tol: float = 1e-8) -> bool:
    if isinstance(s, InfiniteSphere):
        return abs(p.re - s.center) <= tol and abs(p.pure().norm() - s.radius) <= tol
    return any((p - q).norm() <= tol for q in s.solutions)


def companion_coefficients(A: QuatMatrix2) -> tuple[Quaternion, Quaternion]:
    """``a1 = b^-1 (a - d)`` and ``a0 = -b^-1 c`` for a non-triangular matrix."""
    if A.b.is_zero():
        raise DomainError("b = 0: the matrix is triangular, no companion equation")
    binv = A.b.inverse()
    return mul(binv, A.a - A.d), -mul(binv, A.c)


def sphere_residuals(s: InfiniteSphere, a1: Quaternion, a0: Quaternion, count: int, seed: int) -> np.ndarray:
    return np.array([residual(p, a1, a0) for p in s.sample(count, seed)])
