"""Exact linear algebra over a field (row reduction with Fractions or F_p)."""

from __future__ import annotations

from typing import Sequence

from .fields import QQ, Field, FieldElem


def row_echelon(M: Sequence[Sequence[object]], field: Field = QQ) -> tuple[list[list[FieldElem]], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    A = [[field(x) for x in row] for row in M]
    if not A:
        return A, []
    n = len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, pivots


def field_matrix_rank(M: Sequence[Sequence[object]], field: Field = QQ) -> int:
    return len(row_echelon(M, field)[1])


def nullspace(M: Sequence[Sequence[object]], ncols: int, field: Field = QQ) -> list[list[FieldElem]]:
    """Basis of ``{x : M x = 0}`` as a list of vectors."""
    if not M:
        return [[field(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, pivots = row_echelon(M, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row_idx, pc in enumerate(pivots):
            v[pc] = -R[row_idx][f]
        basis.append(v)
    return basis
