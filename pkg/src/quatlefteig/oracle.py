"""Brute-force cross-checks that share no code path with the eigenvector method.

``search_solutions`` minimises ``|p^2 + a1 p + a0|^2`` over R^4 from many
random starts and clusters the converged points; ``left_eig_residual`` tests
a candidate left eigenvalue through Study's determinant alone.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .cxlift import QuatMatrix2, sdet, sdet_shift
from .errors import DomainError
from .quat import Quaternion, mul

CONVERGED_RESIDUAL = 1e-7
CLUSTER_RADIUS = 1e-4
MAXITER = 500
FD_STEP = 1e-6


@dataclass(frozen=True)
class ResidualLandscape:
    starts: int
    minima: tuple[tuple[Quaternion, float], ...]
    cluster_radius: float
    converged: int = 0

    @property
    def points(self) -> list[Quaternion]:
        return [p for p, _ in self.minima]

    def __len__(self):
        return len(self.minima)


def quadratic_residual(p: Quaternion, a1: Quaternion, a0: Quaternion) -> float:
    return (mul(p, p) + mul(a1, p) + a0).norm()


def _ball_starts(rng: np.random.Generator, count: int, radius: float) -> np.ndarray:
    direction = rng.standard_normal((count, 4))
    direction /= np.linalg.norm(direction, axis=1)[:, None]
    r = radius * rng.random(count) ** 0.25
    return direction * r[:, None]


def search_solutions(a1: Quaternion, a0: Quaternion, starts: int = 200, seed: int = 0) -> ResidualLandscape:
    """Multistart local minimisation of the squared residual.

    Start points are uniform in the ball of radius ``1 + |a1| + |a0|``, which
    contains every solution.  Points with residual at most 1e-7 are clustered
    greedily (lowest residual first) with radius 1e-4.
    """
    if starts < 10:
        raise DomainError("search_solutions needs at least 10 starts")
    rng = np.random.default_rng(seed)
    radius = 1.0 + a1.norm() + a0.norm()
    x0 = _ball_starts(rng, starts, radius)
    pts, res = kernels.lm_multistart(x0, a1.to_array(), a0.to_array(), MAXITER, FD_STEP)
    good = np.flatnonzero(res <= CONVERGED_RESIDUAL)
    # sort by residual, then coordinates, so clustering is order independent
    order = good[np.lexsort((pts[good, 3], pts[good, 2], pts[good, 1], pts[good, 0], res[good]))]
    reps = np.empty((len(order), 4))
    rep_res = []
    m = 0
    for k in order:
        if m == 0 or np.min(np.linalg.norm(reps[:m] - pts[k], axis=1)) > CLUSTER_RADIUS:
            reps[m] = pts[k]
            rep_res.append(float(res[k]))
            m += 1
    minima = tuple((Quaternion(*map(float, reps[i])), rep_res[i]) for i in range(m))
    return ResidualLandscape(starts, minima, CLUSTER_RADIUS, converged=len(good))


def angular_spread(landscape: ResidualLandscape, center: float) -> float:
    """Largest angle (radians) between the pure directions of two minima about ``center``."""
    dirs = []
    for p, _ in landscape.minima:
        v = np.array([p.x, p.y, p.z])
        n = np.linalg.norm(v)
        if n > 0 and abs(p.w - center) < 1e-3 * max(1.0, n):
            dirs.append(v / n)
    if len(dirs) < 2:
        return 0.0
    D = np.array(dirs)
    cosines = np.clip(D @ D.T, -1.0, 1.0)
    return float(np.arccos(cosines.min()))


def left_eig_residual(A: QuatMatrix2, q: Quaternion) -> float:
    """``sdet(A - q I) / (1 + sdet(A))``."""
    return sdet_shift(A, q) / (1.0 + sdet(A))


def matches(landscape: ResidualLandscape, points, tol: float = 1e-5) -> bool:
    """Every minimum is near one of ``points`` and every point near a minimum."""
    pts = list(points)
    mins = landscape.points
    if not pts or not mins:
        return not pts and not mins
    near = lambda u, v: (u - v).norm() <= tol  # noqa: E731
    return all(any(near(m, p) for p in pts) for m in mins) and all(any(near(m, p) for m in mins) for p in pts)


def landscape_distance_to(landscape: ResidualLandscape, p: Quaternion) -> float:
    return min(((m - p).norm() for m in landscape.points), default=math.inf)
