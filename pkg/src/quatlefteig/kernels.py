"""Hot numeric kernels, each in a numba and a pure-numpy flavour.

The numba versions are written as scalar loops and compiled with ``@njit``;
the numpy versions vectorise the same arithmetic.  The module-level names
(``durand_kerner``, ``nullspace``, ``lu_det``, ``lm_multistart``) point at the
numba flavour unless numba is missing or the environment variable
``QUATLEFTEIG_NUMBA`` is set to ``0``/``false``/``no``.  Both flavours stay
importable as ``*_numba`` / ``*_numpy`` so they can be benchmarked against
each other.
"""
from __future__ import annotations

import os

import numpy as np

EPS = float(np.finfo(float).eps)

try:  # pragma: no cover - exercised implicitly
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False


def _numba_requested() -> bool:
    flag = os.environ.get("QUATLEFTEIG_NUMBA", "1").strip().lower()
    return flag not in ("0", "false", "no", "off")


USE_NUMBA = HAVE_NUMBA and _numba_requested()


def _jit(func):
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=True)(func)


# ---------------------------------------------------------------------------
# quaternion product on arrays of shape (..., 4)
# ---------------------------------------------------------------------------
def qmul_numpy(a, b):
    aw, ax, ay, az = np.moveaxis(np.asarray(a, dtype=float), -1, 0)
    bw, bx, by, bz = np.moveaxis(np.asarray(b, dtype=float), -1, 0)
    return np.stack(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
        axis=-1,
    )


def _qmul_into(a, b, out):
    out[0] = a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
    out[1] = a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2]
    out[2] = a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1]
    out[3] = a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]


_qmul_into_jit = _jit(_qmul_into)


# ---------------------------------------------------------------------------
# Durand-Kerner (Weierstrass) iteration for a monic polynomial
# ---------------------------------------------------------------------------
def _dk_loop(coeffs, z, maxiter, step_rtol):
    n = z.shape[0]
    deg = coeffs.shape[0] - 1
    w = np.empty(n, dtype=np.complex128)
    for it in range(maxiter):
        done = True
        for i in range(n):
            zi = z[i]
            azi = abs(zi)
            v = coeffs[deg]
            bound = abs(coeffs[deg])
            for k in range(deg - 1, -1, -1):
                v = v * zi + coeffs[k]
                bound = bound * azi + abs(coeffs[k])
            den = 1.0 + 0.0j
            for j in range(n):
                if j != i:
                    den *= zi - z[j]
            if den == 0:
                den = complex(EPS * (1.0 + azi), 0.0)
            w[i] = v / den
            if abs(w[i]) > step_rtol * (1.0 + azi) and abs(v) > 8.0 * EPS * bound:
                done = False
        if done:
            return it
        for i in range(n):
            z[i] -= w[i]
    return -1


_dk_loop_jit = _jit(_dk_loop)


def durand_kerner_numba(coeffs, z0, maxiter=500, step_rtol=1e-14):
    """Run the simultaneous iteration from ``z0``.

    ``coeffs`` are lowest degree first and monic.  Returns ``(roots, iters)``
    with ``iters == -1`` when the cap was hit.
    """
    z = np.array(z0, dtype=np.complex128)
    it = _dk_loop_jit(np.asarray(coeffs, dtype=np.complex128), z, maxiter, step_rtol)
    return z, it


def durand_kerner_numpy(coeffs, z0, maxiter=500, step_rtol=1e-14):
    c = np.asarray(coeffs, dtype=np.complex128)
    z = np.array(z0, dtype=np.complex128)
    high_first = c[::-1]
    abs_high_first = np.abs(high_first)
    for it in range(maxiter):
        v = np.polyval(high_first, z)
        bound = np.polyval(abs_high_first, np.abs(z))
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        den = diff.prod(axis=1)
        den = np.where(den == 0, EPS * (1.0 + np.abs(z)), den)
        w = v / den
        converged = (np.abs(w) <= step_rtol * (1.0 + np.abs(z))) | (np.abs(v) <= 8.0 * EPS * bound)
        if converged.all():
            return z, it
        z = z - w
    return z, -1


# ---------------------------------------------------------------------------
# null space by Gaussian elimination with complete pivoting
# ---------------------------------------------------------------------------
def _nullspace_loop(B, tol):
    n = B.shape[0]
    U = B.copy()
    perm = np.arange(n)
    rank = 0
    for k in range(n):
        best = -1.0
        pi = k
        pj = k
        for i in range(k, n):
            for j in range(k, n):
                a = abs(U[i, j])
                if a > best:
                    best = a
                    pi = i
                    pj = j
        if best <= tol:
            break
        if pi != k:
            for j in range(n):
                t = U[k, j]
                U[k, j] = U[pi, j]
                U[pi, j] = t
        if pj != k:
            for i in range(n):
                t = U[i, k]
                U[i, k] = U[i, pj]
                U[i, pj] = t
            tp = perm[k]
            perm[k] = perm[pj]
            perm[pj] = tp
        for i in range(k + 1, n):
            f = U[i, k] / U[k, k]
            for j in range(k, n):
                U[i, j] -= f * U[k, j]
        rank += 1
    nfree = n - rank
    basis = np.zeros((n, nfree), dtype=np.complex128)
    x = np.zeros(n, dtype=np.complex128)
    for f in range(nfree):
        col = rank + f
        for m in range(n):
            x[m] = 0.0
        x[col] = 1.0
        for i in range(rank - 1, -1, -1):
            s = U[i, col]
            for j in range(i + 1, rank):
                s += U[i, j] * x[j]
            x[i] = -s / U[i, i]
        for m in range(n):
            basis[perm[m], f] = x[m]
    return basis


_nullspace_loop_jit = _jit(_nullspace_loop)


def nullspace_numba(B, tol):
    """Columns spanning the numerical null space of ``B``.

    Pivots of magnitude ``<= tol`` are treated as zero.  The basis is not
    orthonormalised.
    """
    return _nullspace_loop_jit(np.ascontiguousarray(B, dtype=np.complex128), float(tol))


def nullspace_numpy(B, tol):
    U = np.array(B, dtype=np.complex128)
    n = U.shape[0]
    perm = np.arange(n)
    rank = 0
    for k in range(n):
        sub = np.abs(U[k:, k:])
        pi, pj = np.unravel_index(np.argmax(sub), sub.shape)
        if sub[pi, pj] <= tol:
            break
        pi += k
        pj += k
        U[[k, pi]] = U[[pi, k]]
        U[:, [k, pj]] = U[:, [pj, k]]
        perm[[k, pj]] = perm[[pj, k]]
        factors = U[k + 1:, k] / U[k, k]
        U[k + 1:, k:] -= np.outer(factors, U[k, k:])
        rank += 1
    nfree = n - rank
    basis = np.zeros((n, nfree), dtype=np.complex128)
    for f in range(nfree):
        x = np.zeros(n, dtype=np.complex128)
        x[rank + f] = 1.0
        for i in range(rank - 1, -1, -1):
            x[i] = -(U[i, rank + f] + U[i, i + 1:rank] @ x[i + 1:rank]) / U[i, i]
        basis[perm, f] = x
    return basis


# ---------------------------------------------------------------------------
# determinant by LU with partial pivoting
# ---------------------------------------------------------------------------
def _lu_det_loop(M):
    n = M.shape[0]
    U = M.copy()
    det = 1.0 + 0.0j
    for k in range(n):
        pi = k
        best = abs(U[k, k])
        for i in range(k + 1, n):
            if abs(U[i, k]) > best:
                best = abs(U[i, k])
                pi = i
        if best == 0.0:
            return 0.0 + 0.0j
        if pi != k:
            for j in range(n):
                t = U[k, j]
                U[k, j] = U[pi, j]
                U[pi, j] = t
            det = -det
        det *= U[k, k]
        for i in range(k + 1, n):
            f = U[i, k] / U[k, k]
            for j in range(k + 1, n):
                U[i, j] -= f * U[k, j]
    return det


_lu_det_loop_jit = _jit(_lu_det_loop)


def lu_det_numba(M):
    return complex(_lu_det_loop_jit(np.ascontiguousarray(M, dtype=np.complex128)))


def lu_det_numpy(M):
    # LAPACK getrf: the same LU with partial pivoting
    return complex(np.linalg.det(np.asarray(M, dtype=np.complex128)))


# ---------------------------------------------------------------------------
# Levenberg-Marquardt on r(p) = p^2 + a1 p + a0 from many starting points
# ---------------------------------------------------------------------------
#: reject steps whose acceleration is large relative to the velocity
GEO_ALPHA = 0.75


def _quad_res(p, a1, a0, pp, ap, out):
    _qmul_into_jit(p, p, pp)
    _qmul_into_jit(a1, p, ap)
    for m in range(4):
        out[m] = pp[m] + ap[m] + a0[m]


_quad_res_jit = _jit(_quad_res)


def _solve4(A, b, x):
    # Gaussian elimination with partial pivoting on a 4x4 real system.
    n = 4
    M = A.copy()
    r = b.copy()
    for k in range(n):
        pi = k
        best = abs(M[k, k])
        for i in range(k + 1, n):
            if abs(M[i, k]) > best:
                best = abs(M[i, k])
                pi = i
        if best == 0.0:
            return False
        if pi != k:
            for j in range(n):
                t = M[k, j]
                M[k, j] = M[pi, j]
                M[pi, j] = t
            t = r[k]
            r[k] = r[pi]
            r[pi] = t
        for i in range(k + 1, n):
            f = M[i, k] / M[k, k]
            for j in range(k, n):
                M[i, j] -= f * M[k, j]
            r[i] -= f * r[k]
    for i in range(n - 1, -1, -1):
        s = r[i]
        for j in range(i + 1, n):
            s -= M[i, j] * x[j]
        x[i] = s / M[i, i]
    return True


_solve4_jit = _jit(_solve4)


def _lm_loop(starts, a1, a0, maxiter, h, out_pts, out_res):
    n = starts.shape[0]
    na1 = np.sqrt(a1[0] ** 2 + a1[1] ** 2 + a1[2] ** 2 + a1[3] ** 2)
    na0 = np.sqrt(a0[0] ** 2 + a0[1] ** 2 + a0[2] ** 2 + a0[3] ** 2)
    r = np.empty(4)
    rn = np.empty(4)
    rp = np.empty(4)
    rm = np.empty(4)
    pp = np.empty(4)
    ap = np.empty(4)
    J = np.empty((4, 4))
    A = np.empty((4, 4))
    g = np.empty(4)
    g2 = np.empty(4)
    d = np.empty(4)
    acc_d = np.empty(4)
    p = np.empty(4)
    q = np.empty(4)
    for s in range(n):
        for m in range(4):
            p[m] = starts[s, m]
        mu = 1e-3
        _quad_res_jit(p, a1, a0, pp, ap, r)
        f = r[0] ** 2 + r[1] ** 2 + r[2] ** 2 + r[3] ** 2
        for it in range(maxiter):
            np_ = np.sqrt(p[0] ** 2 + p[1] ** 2 + p[2] ** 2 + p[3] ** 2)
            floor = 8.0 * EPS * (np_ * np_ + na1 * np_ + na0)
            if np.sqrt(f) <= floor:
                break
            for k in range(4):
                for m in range(4):
                    q[m] = p[m]
                q[k] = p[k] + h
                _quad_res_jit(q, a1, a0, pp, ap, rp)
                q[k] = p[k] - h
                _quad_res_jit(q, a1, a0, pp, ap, rm)
                for m in range(4):
                    J[m, k] = (rp[m] - rm[m]) / (2.0 * h)
            tr = 0.0
            for a in range(4):
                g[a] = 0.0
                for m in range(4):
                    g[a] -= J[m, a] * r[m]
                for b in range(4):
                    acc = 0.0
                    for m in range(4):
                        acc += J[m, a] * J[m, b]
                    A[a, b] = acc
                tr += A[a, a]
            damp = mu * (tr / 4.0 + 1e-300)
            for a in range(4):
                A[a, a] += damp
            if not _solve4_jit(A, g, d):
                break
            # geodesic acceleration: second-order term of r along d
            for m in range(4):
                q[m] = p[m] + d[m]
            _quad_res_jit(q, a1, a0, pp, ap, rn)
            for a in range(4):
                acc = 0.0
                for m in range(4):
                    acc += J[m, a] * (rn[m] - r[m])
                for b in range(4):
                    for m in range(4):
                        acc -= J[m, a] * J[m, b] * d[b]
                g2[a] = -2.0 * acc
            if not _solve4_jit(A, g2, acc_d):
                break
            nd = np.sqrt(d[0] ** 2 + d[1] ** 2 + d[2] ** 2 + d[3] ** 2)
            na = np.sqrt(acc_d[0] ** 2 + acc_d[1] ** 2 + acc_d[2] ** 2 + acc_d[3] ** 2)
            if 2.0 * na > GEO_ALPHA * nd:
                mu *= 4.0
                if mu > 1e20:
                    break
                continue
            for m in range(4):
                d[m] += 0.5 * acc_d[m]
                q[m] = p[m] + d[m]
            _quad_res_jit(q, a1, a0, pp, ap, rn)
            fn = rn[0] ** 2 + rn[1] ** 2 + rn[2] ** 2 + rn[3] ** 2
            if fn < f:
                step = np.sqrt(d[0] ** 2 + d[1] ** 2 + d[2] ** 2 + d[3] ** 2)
                for m in range(4):
                    p[m] = q[m]
                    r[m] = rn[m]
                f = fn
                mu = max(mu / 3.0, 1e-15)
                if step <= 1e-15 * (1.0 + np_):
                    break
            else:
                mu *= 4.0
                if mu > 1e20:
                    break
        for m in range(4):
            out_pts[s, m] = p[m]
        out_res[s] = np.sqrt(f)


_lm_loop_jit = _jit(_lm_loop)


def lm_multistart_numba(starts, a1, a0, maxiter=500, h=1e-6):
    """Minimise ``|p^2 + a1 p + a0|^2`` from every row of ``starts``.

    Levenberg-Marquardt with geodesic acceleration, which keeps the steps
    long in the curved, nearly flat valleys that appear next to a sphere of
    solutions.

    Returns the final points ``(n, 4)`` and their residual norms ``(n,)``.
    """
    starts = np.ascontiguousarray(starts, dtype=float)
    pts = np.empty_like(starts)
    res = np.empty(starts.shape[0])
    _lm_loop_jit(starts, np.asarray(a1, dtype=float), np.asarray(a0, dtype=float), maxiter, h, pts, res)
    return pts, res


def _solve_batch(A, b):
    try:
        return np.linalg.solve(A, b[..., None])[..., 0]
    except np.linalg.LinAlgError:
        return np.stack([np.linalg.lstsq(Ai, bi, rcond=None)[0] for Ai, bi in zip(A, b)])


def lm_multistart_numpy(starts, a1, a0, maxiter=500, h=1e-6):
    a1 = np.asarray(a1, dtype=float)
    a0 = np.asarray(a0, dtype=float)
    p = np.array(starts, dtype=float)
    n = p.shape[0]
    na1, na0 = np.linalg.norm(a1), np.linalg.norm(a0)

    def resid(x):
        return qmul_numpy(x, x) + qmul_numpy(np.broadcast_to(a1, x.shape), x) + a0

    r = resid(p)
    f = np.einsum("ij,ij->i", r, r)
    mu = np.full(n, 1e-3)
    active = np.ones(n, dtype=bool)
    eye = np.eye(4)
    for _ in range(maxiter):
        pn = np.linalg.norm(p, axis=1)
        floor = 8.0 * EPS * (pn * pn + na1 * pn + na0)
        active &= np.sqrt(f) > floor
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        pa = p[idx]
        J = np.empty((idx.size, 4, 4))
        for k in range(4):
            e = np.zeros(4)
            e[k] = h
            J[:, :, k] = (resid(pa + e) - resid(pa - e)) / (2.0 * h)
        A = np.einsum("nmi,nmj->nij", J, J)
        g = -np.einsum("nmi,nm->ni", J, r[idx])
        tr = np.trace(A, axis1=1, axis2=2)
        A = A + (mu[idx] * (tr / 4.0 + 1e-300))[:, None, None] * eye
        d = _solve_batch(A, g)
        # geodesic acceleration: second-order term of r along d
        r2 = resid(pa + d) - r[idx] - np.einsum("nmi,ni->nm", J, d)
        acc_d = _solve_batch(A, -2.0 * np.einsum("nmi,nm->ni", J, r2))
        curved = 2.0 * np.linalg.norm(acc_d, axis=1) > GEO_ALPHA * np.linalg.norm(d, axis=1)
        d = d + 0.5 * acc_d
        q = pa + d
        rn = resid(q)
        fn = np.einsum("ij,ij->i", rn, rn)
        better = (fn < f[idx]) & ~curved
        acc = idx[better]
        step = np.linalg.norm(d[better], axis=1)
        p[acc] = q[better]
        r[acc] = rn[better]
        f[acc] = fn[better]
        mu[acc] = np.maximum(mu[acc] / 3.0, 1e-15)
        rej = idx[~better]
        mu[rej] *= 4.0
        stalled = np.zeros(n, dtype=bool)
        stalled[acc[step <= 1e-15 * (1.0 + pn[acc])]] = True
        stalled[rej[mu[rej] > 1e20]] = True
        active &= ~stalled
    return p, np.sqrt(f)


# ---------------------------------------------------------------------------
# backend selection
# ---------------------------------------------------------------------------
if USE_NUMBA:
    durand_kerner = durand_kerner_numba
    nullspace = nullspace_numba
    lu_det = lu_det_numba
    lm_multistart = lm_multistart_numba
    BACKEND = "numba"
else:
    durand_kerner = durand_kerner_numpy
    nullspace = nullspace_numpy
    lu_det = lu_det_numpy
    lm_multistart = lm_multistart_numpy
    BACKEND = "numpy"
