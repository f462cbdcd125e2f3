import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logjets.algebra import QQ, Field, Poly
from logjets.logscheme import PrecisionError
from logjets.module_decomp import (PresentedModule, betti_number, diagonalize, dimension_oracle,
                                   fitting_order, fitting_order_oracle, generic_pivot_exponents,
                                   module_dimension_over_L, stabilization_guard)

from helpers import SEED, fixture

F5 = Field(5)
T = ("t",)


def tpoly(coeffs, fld):
    return Poly(T, {(k,): c for k, c in enumerate(coeffs) if c}, fld)


def random_module(rng, fld=F5, P=8, max_rows=4, max_cols=5, sparsity=0.5):
    G = rng.randint(1, max_cols)
    R = rng.randint(0, max_rows)
    rows = []
    for _ in range(R):
        row = []
        for _ in range(G):
            if rng.random() < sparsity:
                row.append(Poly.zero(T, fld))
                continue
            v = rng.randint(0, P)
            row.append(tpoly([0] * v + [rng.randint(1, 4)] + [rng.randint(0, 4) for _ in range(2)], fld))
        rows.append(row)
    return PresentedModule.from_polys(rows, G, P, "jet", fld)


def cusp_module(P=12):
    return PresentedModule.from_expressions([["-3*t^4", "2*t^3"]], 2, P, "arc")


def test_diagonalize_examples():
    inv = diagonalize(cusp_module())
    assert inv.exponents == (3,) and inv.free_rank == 1
    inv = diagonalize(PresentedModule.from_expressions([["0", "0"]], 2, 5))
    assert inv.exponents == () and inv.free_rank == 2
    inv = diagonalize(PresentedModule.from_expressions([["1", "0"], ["0", "t^2"]], 2, 5))
    assert sorted(inv.exponents) == [0, 2] and inv.free_rank == 0


def test_betti_and_fitting_examples():
    inv = diagonalize(cusp_module())
    assert betti_number(inv, 5) == 1
    assert all(fitting_order(inv, 1, m) == 3 for m in range(3, 8))
    low = diagonalize(PresentedModule.from_expressions([["-3*t^4", "2*t^3"]], 2, 3))
    assert betti_number(low, 2) == 2
    free = diagonalize(PresentedModule.from_expressions([], 2, 6))
    assert [betti_number(free, m) for m in range(6)] == [2] * 6
    assert fitting_order(free, 1, 4) == 5
    zero = diagonalize(PresentedModule.from_expressions([["1"]], 1, 4))
    assert fitting_order(zero, 0, 3) == 0


def test_dimension_examples():
    inv = diagonalize(cusp_module())
    assert module_dimension_over_L(inv, 5) == 9
    free = diagonalize(PresentedModule.from_expressions([], 2, 3))
    assert module_dimension_over_L(free, 0) == 2
    jet = diagonalize(PresentedModule.from_expressions([["-3*t^4", "2*t^3"]], 2, 3))
    assert module_dimension_over_L(jet, 2) == 6


def test_oracle_examples():
    M = cusp_module()
    assert fitting_order_oracle(M, 1, 5) == 3
    assert fitting_order_oracle(PresentedModule.from_expressions([["1", "0"], ["0", "1"]], 2, 3), 0, 2) == 0
    zero = PresentedModule.from_expressions([["0", "0"], ["0", "0"]], 2, 4)
    assert fitting_order_oracle(zero, 1, 3) == 4


def test_oracle_size_limit():
    M = PresentedModule.from_expressions([["t"] * 7], 7, 3)
    with pytest.raises(ValueError, match="limited"):
        fitting_order_oracle(M, 0, 1)


def test_guard_examples():
    assert stabilization_guard(diagonalize(cusp_module())).ok
    g = stabilization_guard(diagonalize(cusp_module(3)))
    assert not g.ok and g.suggested_precision == 6
    zero = PresentedModule.from_expressions([["0", "0"]], 2, 4, "arc")
    assert stabilization_guard(diagonalize(zero)).ok


def test_arc_mode_refuses_unstable_answers():
    inv = diagonalize(cusp_module(3))
    with pytest.raises(PrecisionError, match="raise precision to 6"):
        betti_number(inv, 1)


def test_jet_mode_order_limit():
    inv = diagonalize(PresentedModule.from_expressions([["t"]], 1, 3))
    with pytest.raises(PrecisionError):
        betti_number(inv, 3)


def test_fitting_matches_minor_oracle_random():
    rng = random.Random(SEED)
    for _ in range(200):
        M = random_module(rng)
        inv = diagonalize(M)
        for m in range(8):
            for i in range(M.generators + 1):
                assert fitting_order(inv, i, m) == fitting_order_oracle(M, i, m), (M.matrix_str(), i, m)


def test_fitting_matches_oracle_over_rationals():
    rng = random.Random(SEED + 1)
    for _ in range(40):
        M = random_module(rng, QQ, P=5, max_rows=3, max_cols=3)
        inv = diagonalize(M)
        for m in range(5):
            for i in range(M.generators + 1):
                assert fitting_order(inv, i, m) == fitting_order_oracle(M, i, m)


def test_dimension_matches_linear_algebra_random():
    rng = random.Random(SEED + 2)
    for _ in range(100):
        M = random_module(rng)
        inv = diagonalize(M)
        for m in range(8):
            assert module_dimension_over_L(inv, m) == dimension_oracle(M, m)


def test_kernel_and_generic_elimination_agree():
    rng = random.Random(SEED + 3)
    for _ in range(100):
        M = random_module(rng)
        assert sorted(generic_pivot_exponents(M), reverse=True) == list(diagonalize(M).exponents)


def _permuted(M, rng):
    rows = [list(r) for r in M.exact]
    rng.shuffle(rows)
    perm = list(range(M.generators))
    rng.shuffle(perm)
    rows = [[r[j] for j in perm] for r in rows]
    return PresentedModule.from_polys(rows, M.generators, M.precision, M.mode, M.field)


def _unimodular(M, rng):
    fld = M.field
    rows = [list(r) for r in M.exact]
    G = M.generators
    for _ in range(4):
        if len(rows) >= 2:
            i, j = rng.sample(range(len(rows)), 2)
            q = tpoly([rng.randint(0, 4) for _ in range(3)], fld)
            rows[i] = [a + q * b for a, b in zip(rows[i], rows[j])]
        if G >= 2:
            i, j = rng.sample(range(G), 2)
            q = tpoly([rng.randint(0, 4) for _ in range(3)], fld)
            for r in rows:
                r[i] = r[i] + q * r[j]
        if rows:
            # scale a row by a unit series
            u = tpoly([rng.randint(1, 4), rng.randint(0, 4), rng.randint(0, 4)], fld)
            k = rng.randrange(len(rows))
            rows[k] = [u * a for a in rows[k]]
    return PresentedModule.from_polys(rows, G, M.precision, M.mode, fld)


def test_invariance_under_permutations_and_unimodular_changes():
    rng = random.Random(SEED + 4)
    for _ in range(100):
        M = random_module(rng)
        base = diagonalize(M)
        for other in (_permuted(M, rng), _unimodular(M, rng)):
            inv = diagonalize(other)
            assert (inv.exponents, inv.free_rank) == (base.exponents, base.free_rank)


@settings(max_examples=60)
@given(st.integers(0, 10 ** 6))
def test_betti_nonincreasing_and_fitting_nondecreasing(seed):
    rng = random.Random(seed)
    M = random_module(rng)
    inv = diagonalize(M)
    d = [betti_number(inv, m) for m in range(8)]
    assert all(a >= b for a, b in zip(d, d[1:]))
    for i in range(M.generators + 1):
        E = [fitting_order(inv, i, m) for m in range(8)]
        assert all(a <= b for a, b in zip(E, E[1:]))


def test_fixture_modules_stable_at_doubled_precision():
    for name in ("cusp_module",):
        M = fixture(name).module
        a, b = diagonalize(M), diagonalize(M.at_precision(2 * M.precision))
        assert stabilization_guard(a).ok
        assert a.exponents == b.exponents and a.free_rank == b.free_rank
        for m in range(M.precision):
            assert betti_number(a, m) == betti_number(b, m)
            for i in range(M.generators + 1):
                assert fitting_order(a, i, m) == fitting_order(b, i, m)
