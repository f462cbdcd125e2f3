"""Integer and F_p inner loops, compiled with numba when available.

Set ``LOGJET_DISABLE_JIT=1`` to force the pure-numpy implementations.  Both
paths must return identical arrays; ``tests/test_kernels.py`` checks this and
``benchmarks/bench_kernels.py`` times them against each other.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_JIT = numba is not None and os.environ.get("LOGJET_DISABLE_JIT", "0") not in ("1", "true", "yes")

# p * p * P must stay inside int64 for the modular kernels
INT64_SAFE = 2**62


def _njit(fn):
    if numba is None:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


# ---------------------------------------------------------------------------
# lattice points of a box satisfying integer relations


def np_box_solutions(relations: np.ndarray, bounds: np.ndarray) -> np.ndarray:
    """All ``v`` with ``0 <= v <= bounds`` and ``relations @ v == 0``, lexicographic."""
    s = bounds.shape[0]
    if s == 0:
        return np.zeros((1, 0), dtype=np.int64)
    pts = np.indices(tuple(int(b) + 1 for b in bounds), dtype=np.int64).reshape(s, -1).T
    if relations.shape[0] == 0:
        return np.ascontiguousarray(pts)
    keep = np.all(pts @ relations.T == 0, axis=1)
    return np.ascontiguousarray(pts[keep])


def _nb_box_solutions(relations, bounds):
    s = bounds.shape[0]
    r = relations.shape[0]
    total = 1
    for i in range(s):
        total *= bounds[i] + 1
    cur = np.zeros(s, dtype=np.int64)
    acc = np.zeros(r, dtype=np.int64)
    keep = np.zeros(total, dtype=np.bool_)
    count = 0
    for idx in range(total):
        ok = True
        for k in range(r):
            if acc[k] != 0:
                ok = False
                break
        if ok:
            keep[idx] = True
            count += 1
        # odometer step, last coordinate fastest; acc tracks relations @ cur
        pos = s - 1
        while pos >= 0:
            if cur[pos] < bounds[pos]:
                cur[pos] += 1
                for k in range(r):
                    acc[k] += relations[k, pos]
                break
            for k in range(r):
                acc[k] -= relations[k, pos] * cur[pos]
            cur[pos] = 0
            pos -= 1
    out = np.zeros((count, s), dtype=np.int64)
    cur[:] = 0
    row = 0
    for idx in range(total):
        if keep[idx]:
            for i in range(s):
                out[row, i] = cur[i]
            row += 1
        pos = s - 1
        while pos >= 0:
            if cur[pos] < bounds[pos]:
                cur[pos] += 1
                break
            cur[pos] = 0
            pos -= 1
    return out


nb_box_solutions = _njit(_nb_box_solutions)


def box_solutions(relations, bounds) -> np.ndarray:
    rel = np.ascontiguousarray(np.asarray(relations, dtype=np.int64).reshape(-1, len(bounds)))
    b = np.ascontiguousarray(np.asarray(bounds, dtype=np.int64))
    if USE_JIT and b.shape[0] > 0:
        return nb_box_solutions(rel, b)
    return np_box_solutions(rel, b)


# ---------------------------------------------------------------------------
# invariant factors of a matrix over F_p[t]/t^P


def _nb_inv_mod(a, p):
    # extended Euclid; a is nonzero mod p
    r0, r1 = p, a % p
    s0, s1 = 0, 1
    while r1 != 0:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    return s0 % p


nb_inv_mod = _njit(_nb_inv_mod)


def _nb_series_inverse(u, n, p):
    out = np.zeros(n, dtype=np.int64)
    inv0 = nb_inv_mod(u[0], p)
    out[0] = inv0
    for k in range(1, n):
        acc = 0
        for j in range(1, k + 1):
            acc = (acc + u[j] * out[k - j]) % p
        out[k] = (-acc * inv0) % p
    return out


nb_series_inverse = _njit(_nb_series_inverse)


def _nb_modp_invariant_factors(mat, p):
    A = mat.copy()
    rows, cols, P = A.shape
    exps = np.zeros(min(rows, cols), dtype=np.int64)
    n_exp = 0
    for k in range(min(rows, cols)):
        best_v = P
        bi = -1
        bj = -1
        for i in range(k, rows):
            for j in range(k, cols):
                v = P
                for d in range(P):
                    if A[i, j, d] != 0:
                        v = d
                        break
                if v < best_v:
                    best_v = v
                    bi = i
                    bj = j
        if best_v == P:
            break
        if bi != k:
            for j in range(cols):
                for d in range(P):
                    tmp = A[k, j, d]
                    A[k, j, d] = A[bi, j, d]
                    A[bi, j, d] = tmp
        if bj != k:
            for i in range(rows):
                for d in range(P):
                    tmp = A[i, k, d]
                    A[i, k, d] = A[i, bj, d]
                    A[i, bj, d] = tmp
        v = best_v
        n = P - v
        uinv = nb_series_inverse(A[k, k, v:], n, p)
        for i in range(k + 1, rows):
            # q = (A[i,k] / t^v) * uinv  mod t^(P-v)
            q = np.zeros(n, dtype=np.int64)
            for a in range(n):
                ea = A[i, k, v + a]
                if ea == 0:
                    continue
                for b in range(n - a):
                    q[a + b] = (q[a + b] + ea * uinv[b]) % p
            for j in range(k, cols):
                for a in range(n):
                    if q[a] == 0:
                        continue
                    for b in range(v, P - a):
                        if A[k, j, b] != 0:
                            A[i, j, a + b] = (A[i, j, a + b] - q[a] * A[k, j, b]) % p
        for j in range(k + 1, cols):
            for d in range(P):
                A[k, j, d] = 0
        exps[n_exp] = v
        n_exp += 1
    return exps[:n_exp]


nb_modp_invariant_factors = _njit(_nb_modp_invariant_factors)


def _np_mul_trunc(a: np.ndarray, b: np.ndarray, n: int, p: int) -> np.ndarray:
    out = np.zeros(n, dtype=np.int64)
    for k in np.flatnonzero(a[:n]):
        m = n - k
        out[k:] = (out[k:] + a[k] * b[:m]) % p
    return out


def np_modp_invariant_factors(mat: np.ndarray, p: int) -> np.ndarray:
    A = np.array(mat, dtype=np.int64) % p
    rows, cols, P = A.shape
    exps = []
    for k in range(min(rows, cols)):
        block = A[k:, k:, :]
        nz = block != 0
        vals = np.where(nz.any(axis=2), nz.argmax(axis=2), P)
        v = int(vals.min()) if vals.size else P
        if v == P:
            break
        bi, bj = np.unravel_index(int(np.argmin(vals)), vals.shape)  # row-major tie break
        bi += k
        bj += k
        A[[k, bi]] = A[[bi, k]]
        A[:, [k, bj]] = A[:, [bj, k]]
        n = P - v
        unit = A[k, k, v:]
        uinv = np.zeros(n, dtype=np.int64)
        uinv[0] = pow(int(unit[0]), -1, p)
        for d in range(1, n):
            uinv[d] = (-int(np.dot(unit[1:d + 1] % p, uinv[d - 1::-1][:d] % p) % p) * int(uinv[0])) % p
        for i in range(k + 1, rows):
            q = _np_mul_trunc(A[i, k, v:], uinv, n, p)
            if not q.any():
                continue
            for j in range(k, cols):
                # row_i -= q * row_k, only terms below degree P survive
                prod = _np_mul_trunc(q, A[k, j, v:], n, p)
                A[i, j, v:] = (A[i, j, v:] - prod) % p
        A[k, k + 1:, :] = 0
        exps.append(v)
    return np.array(exps, dtype=np.int64)


def modp_invariant_factors(mat, p: int) -> np.ndarray:
    """Pivot exponents (in elimination order) of an ``rows x cols x P`` residue array."""
    A = np.ascontiguousarray(np.asarray(mat, dtype=np.int64) % p)
    if A.size == 0:
        return np.zeros(0, dtype=np.int64)
    if USE_JIT:
        return nb_modp_invariant_factors(A, np.int64(p))
    return np_modp_invariant_factors(A, p)


def modp_fits(p: int, P: int) -> bool:
    return p * p * max(P, 1) < INT64_SAFE


def warmup() -> None:
    """Compile (or load from cache) every jitted kernel on a tiny input."""
    box_solutions(np.zeros((1, 1), dtype=np.int64), np.ones(1, dtype=np.int64))
    m = np.zeros((1, 1, 2), dtype=np.int64)
    m[0, 0, 1] = 1
    modp_invariant_factors(m, 5)
