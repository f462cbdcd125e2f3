"""Integer matrices: Smith normal form, kernels and lattice projections.

Entries are Python ints throughout; intermediate growth is expected.
"""

from __future__ import annotations

from typing import Sequence

IntMatrix = list[list[int]]


def _identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _copy(M: Sequence[Sequence[int]]) -> IntMatrix:
    return [[int(x) for x in row] for row in M]


def smith_form(M: Sequence[Sequence[int]], ncols: int | None = None):
    """Return ``(D, U, V)`` with ``U @ M @ V == D`` and ``U``, ``V`` unimodular.

    ``D`` is diagonal with nonnegative entries, each dividing the next.
    ``ncols`` gives the column count when ``M`` has no rows.
    """
    A = _copy(M)
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row_dst += k * row_src
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, k):
        for row in A:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        # smallest nonzero entry in the remaining block becomes the pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(t, i, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(t, j, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility: pivot must divide the rest of the block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % A[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return A, U, V


def smith_normal_form(M: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[list[int], int]:
    """Diagonal entries ``d_1 | d_2 | ...`` (length ``min(rows, cols)``) and the rank."""
    D, _, _ = smith_form(M, ncols)
    k = min(len(D), len(D[0]) if D else 0)
    diag = [D[i][i] for i in range(k)]
    return diag, sum(1 for d in diag if d)


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(A))]


def transpose(A: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def rank(M: Sequence[Sequence[int]], ncols: int | None = None) -> int:
    return smith_normal_form(M, ncols)[1]


def hermite_rows(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows`` (zero rows dropped)."""
    A = _copy(rows)
    if not A:
        return []
    n = len(A[0])
    r = 0
    for c in range(n):
        while True:
            nz = [i for i in range(r, len(A)) if A[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[p] = A[p], A[r]
            changed = False
            for i in range(r + 1, len(A)):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    changed = changed or A[i][c] != 0
            if not changed:
                break
        if r < len(A) and A[r][c]:
            if A[r][c] < 0:
                A[r] = [-a for a in A[r]]
            for i in range(r):
                q = A[i][c] // A[r][c]
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
            r += 1
    return [row for row in A[:r]]


def integer_kernel(M: Sequence[Sequence[int]], ncols: int) -> IntMatrix:
    """A basis (as rows, Hermite reduced) of ``{x in Z^ncols : M x = 0}``."""
    if ncols == 0:
        return []
    D, U, V = smith_form(M, ncols)
    k = min(len(D), ncols)
    nonzero = {i for i in range(k) if D[i][i]}
    basis = [[V[r][j] for r in range(ncols)] for j in range(ncols) if j not in nonzero]
    return hermite_rows(basis)


def saturated_quotient(subgroup_cols: Sequence[Sequence[int]], ambient_dim: int) -> IntMatrix:
    """Integer projection ``Z^k -> Z^(k - r)`` with kernel ``span_Q(S) ∩ Z^k``.

    ``subgroup_cols`` is the list of generating vectors of ``S``.  The result
    is a list of ``k - r`` rows; applying them to a vector gives its image.
    """
    if not subgroup_cols:
        return _identity(ambient_dim)
    S = transpose(subgroup_cols)  # k x |S|
    D, U, _ = smith_form(S)
    r = sum(1 for i in range(min(len(D), len(D[0]))) if D[i][i])
    return [list(U[i]) for i in range(r, ambient_dim)]
