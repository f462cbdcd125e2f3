"""Finitely presented modules over L[t]/t^P and their invariant factors.

A module is given by a relation matrix (rows are relations, columns are
generators) with truncated-series entries.  Over the local PID L[[t]] every
such module splits as a sum of cyclic pieces L[t]/t^e plus a free part, and
everything downstream (Betti numbers, Fitting orders, dimensions) is read off
from the exponents.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Sequence

import numpy as np

from . import _kernels
from .algebra import QQ, Field, Poly, TruncSeries
from .algebra.linalg import field_matrix_rank
from .algebra.parse import parse_series, poly_to_series
from .logscheme import PrecisionError

MODES = ("jet", "arc")
ORACLE_LIMIT = 6


@dataclass(frozen=True)
class PresentedModule:
    generators: int
    relations: tuple[tuple[TruncSeries, ...], ...]
    precision: int
    mode: str = "jet"
    field: Field = QQ
    # exact polynomial lifts of the entries, when known; used to decide the
    # rank over L((t)) for the arc-mode guard
    exact: tuple[tuple[Poly, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(tuple(r) for r in self.relations))
        if self.exact is not None:
            object.__setattr__(self, "exact", tuple(tuple(r) for r in self.exact))
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.generators < 0:
            raise ValueError("generator count must be nonnegative")
        for row in self.relations:
            if len(row) != self.generators:
                raise ValueError(f"relation row of length {len(row)} on {self.generators} generators")
            for e in row:
                if e.precision != self.precision:
                    raise ValueError(f"entry precision {e.precision} differs from module precision {self.precision}")

    @classmethod
    def from_polys(cls, rows: Sequence[Sequence[Poly]], generators: int, precision: int,
                   mode: str = "jet", field: Field = QQ) -> PresentedModule:
        rows = [list(r) for r in rows]
        series = [[poly_to_series(p, precision) for p in r] for r in rows]
        return cls(generators, series, precision, mode, field, rows)

    @classmethod
    def from_expressions(cls, rows: Sequence[Sequence[str]], generators: int, precision: int,
                         mode: str = "jet", field: Field = QQ) -> PresentedModule:
        polys = [[parse_series(x, precision, field)[1] for x in r] for r in rows]
        return cls.from_polys(polys, generators, precision, mode, field)

    @property
    def n_relations(self) -> int:
        return len(self.relations)

    def truncated(self, precision: int) -> PresentedModule:
        rel = [[e.truncate(precision) for e in r] for r in self.relations]
        return PresentedModule(self.generators, rel, precision, self.mode, self.field, self.exact)

    def at_precision(self, precision: int) -> PresentedModule:
        """Recompute entries at another precision (needs exact lifts to go up)."""
        if precision <= self.precision:
            return self.truncated(precision)
        if self.exact is None:
            raise PrecisionError("raising precision needs the exact entries")
        return PresentedModule.from_polys(self.exact, self.generators, precision, self.mode, self.field)

    def matrix_str(self) -> list[list[str]]:
        return [[str(e) for e in r] for r in self.relations]


@dataclass(frozen=True)
class InvariantFactors:
    """Exponents of the torsion summands L[t]/t^e (descending, zeros included) plus free rank.

    ``exponents`` only contains pivots found below the working precision; a
    generator with no pivot is free at this precision.
    """

    exponents: tuple[int, ...]
    free_rank: int
    generators: int
    precision: int
    mode: str = "jet"
    exact_rank: int | None = None

    def factors_at(self, m: int) -> list[int]:
        """All ``generators`` cyclic exponents seen at order ``m`` (free counts as m+1)."""
        return [min(e, m + 1) for e in self.exponents] + [m + 1] * self.free_rank


def _pivot_exponents(M: PresentedModule) -> list[int]:
    if not M.relations or M.generators == 0:
        return []
    p = M.field.char
    if p and _kernels.modp_fits(p, M.precision):
        arr = np.array([[[int(c) for c in e.coeffs] for e in r] for r in M.relations], dtype=np.int64)
        return [int(x) for x in _kernels.modp_invariant_factors(arr, p)]
    return generic_pivot_exponents(M)


def generic_pivot_exponents(M: PresentedModule) -> list[int]:
    """Elimination with field-coefficient series; same pivot rule as the compiled kernel."""
    P = M.precision
    A = [list(r) for r in M.relations]
    rows, cols = len(A), M.generators
    out = []
    for k in range(min(rows, cols)):
        best = (P, -1, -1)
        for i in range(k, rows):
            for j in range(k, cols):
                v = A[i][j].valuation()
                if v < best[0]:
                    best = (v, i, j)
        v, bi, bj = best
        if v == P:
            break
        A[k], A[bi] = A[bi], A[k]
        for r in A:
            r[k], r[bj] = r[bj], r[k]
        uinv = A[k][k].shift_down(v).unit_inverse()
        for i in range(k + 1, rows):
            if A[i][k].is_zero():
                continue
            q = (A[i][k].shift_down(v) * uinv).extend_by_zero(P)
            A[i] = [a - q * b for a, b in zip(A[i], A[k])]
        zero = TruncSeries.t_power(P, P, M.field)
        for j in range(k + 1, cols):
            A[k][j] = zero
        out.append(v)
    return out


def exact_rank(M: PresentedModule) -> int | None:
    """Rank of the exact lifts over L((t)), or None without lifts.

    A nonzero k-minor has degree at most k * maxdeg, so its t-adic valuation
    is below that; diagonalizing at one more than that precision sees every
    pivot of the exact matrix.
    """
    if M.exact is None:
        return None
    if not M.exact or M.generators == 0:
        return 0
    maxdeg = max((p.degree() for r in M.exact for p in r), default=-1)
    if maxdeg < 0:
        return 0
    Q = min(len(M.exact), M.generators) * maxdeg + 1
    return len(_pivot_exponents(PresentedModule.from_polys(M.exact, M.generators, Q, "jet", M.field)))


def diagonalize(M: PresentedModule) -> InvariantFactors:
    piv = _pivot_exponents(M)
    return InvariantFactors(tuple(sorted(piv, reverse=True)), M.generators - len(piv), M.generators,
                            M.precision, M.mode, exact_rank(M) if M.mode == "arc" else None)


# --- guard and derived numbers --------------------------------------------


@dataclass(frozen=True)
class GuardResult:
    ok: bool
    reason: str = ""
    suggested_precision: int | None = None


def stabilization_guard(inv: InvariantFactors, P: int | None = None) -> GuardResult:
    """Is the arc-mode decomposition stable under raising the precision?

    Needs every torsion exponent of the exact module to show up as a pivot
    (checked against the exact rank when lifts are known) and a margin
    ``P > sum(e) + max(e)``.
    """
    P = inv.precision if P is None else P
    if inv.exact_rank is not None and len(inv.exponents) < inv.exact_rank:
        return GuardResult(False, f"{inv.exact_rank - len(inv.exponents)} torsion factor(s) "
                                  f"vanish to precision {P}", 2 * P)
    need = sum(inv.exponents) + max(inv.exponents, default=0)
    if P <= need:
        return GuardResult(False, f"precision {P} does not exceed sum(e) + max(e) = {need}", 2 * P)
    return GuardResult(True)


def _check_order(inv: InvariantFactors, m: int) -> None:
    if m < 0:
        raise ValueError("order m must be nonnegative")
    if inv.mode == "jet":
        if m + 1 > inv.precision:
            raise PrecisionError(f"order {m} needs precision {m + 1}, module has {inv.precision}")
        return
    g = stabilization_guard(inv)
    if not g.ok:
        raise PrecisionError(f"raise precision to {g.suggested_precision}: {g.reason}")
    if m + 1 > inv.precision:
        raise PrecisionError(f"order {m} needs precision {m + 1}, module has {inv.precision}")


def betti_number(inv: InvariantFactors, m: int) -> int:
    """Summands free over L[t]/t^(m+1)."""
    _check_order(inv, m)
    return inv.free_rank + sum(1 for e in inv.exponents if e >= m + 1)


def fitting_order(inv: InvariantFactors, i: int, m: int) -> int:
    """t-adic order of the i-th Fitting ideal at order m, in ``0 .. m+1``."""
    _check_order(inv, m)
    if i < 0:
        raise ValueError("Fitting index must be nonnegative")
    fac = sorted(inv.factors_at(m), reverse=True)
    return min(m + 1, sum(fac[i:]))


def module_dimension_over_L(inv: InvariantFactors, m: int) -> int:
    d = betti_number(inv, m)
    return d * (m + 1) + sum(e for e in inv.exponents if e <= m)


# --- oracles ------------------------------------------------------------------


def _det(mat: list[list[TruncSeries]], one: TruncSeries) -> TruncSeries:
    n = len(mat)
    total = one * 0
    for perm in permutations(range(n)):
        sign = 1
        for a in range(n):
            for b in range(a + 1, n):
                if perm[a] > perm[b]:
                    sign = -sign
        term = one
        for r, c in enumerate(perm):
            term = term * mat[r][c]
        total = total + term if sign > 0 else total - term
    return total


def fitting_order_oracle(M: PresentedModule, i: int, m: int) -> int:
    """Minimum valuation of all (G-i)-minors of the order-m matrix, capped at m+1."""
    if m + 1 > M.precision:
        raise PrecisionError(f"order {m} needs precision {m + 1}, module has {M.precision}")
    if M.n_relations > ORACLE_LIMIT or M.generators > ORACLE_LIMIT:
        raise ValueError(f"minor oracle is limited to {ORACLE_LIMIT}x{ORACLE_LIMIT} matrices")
    k = M.generators - i
    if k <= 0:
        return 0
    if k > M.n_relations:
        return m + 1
    P = m + 1
    A = [[e.truncate(P) for e in r] for r in M.relations]
    one = TruncSeries.t_power(0, P, M.field)
    best = P
    for rows in combinations(range(M.n_relations), k):
        for cols in combinations(range(M.generators), k):
            d = _det([[A[r][c] for c in cols] for r in rows], one)
            best = min(best, d.valuation())
            if best == 0:
                return 0
    return best


def dimension_oracle(M: PresentedModule, m: int) -> int:
    """L-dimension of the cokernel at order m by plain linear algebra."""
    if m + 1 > M.precision:
        raise PrecisionError(f"order {m} needs precision {m + 1}, module has {M.precision}")
    P = m + 1
    G = M.generators
    vecs = []
    for row in M.relations:
        trunc = [e.truncate(P) for e in row]
        for k in range(P):
            v = []
            for e in trunc:
                sh = e.shift_up(k)
                v.extend(sh.coeffs)
            vecs.append(v)
    return G * P - (field_matrix_rank(vecs, M.field) if vecs else 0)
