from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from logjets.monoid import (MonoidError, MonoidHom, MonoidMap, MonoidPresentation, decompose_hom,
                            enumerate_homs_to_N, faces, gp_rank, hilbert_basis_dual,
                            irreducible_elements, is_sharp, quotient_by_face, relative_invariants)

from helpers import NODE_Q, TORIC_Q

N1 = MonoidPresentation.free(("T",))
N2 = MonoidPresentation.free(("A", "B"))
TRIV = MonoidPresentation((), (), dim=0)


def brute_homs(Q, bound, only_irreducible=True):
    """Box filter; the bound applies to irreducible generators (all of them if not sharp)."""
    if only_irreducible and is_sharp(Q):
        irr = {Q.images[Q.index(n)] for n in irreducible_elements(Q)}
        mask = [g in irr for g in Q.images]
    else:
        mask = [True] * Q.size
    box = [bound if m else 6 * bound for m in mask]
    out = []
    for v in product(*(range(b + 1) for b in box)):
        if all(sum(r * x for r, x in zip(rel, v)) == 0 for rel in Q.relations):
            out.append(v)
    return sorted(out)


def brute_reducible(Q, j, limit=6):
    """Is generator j a sum of >= 2 generators (coefficients up to limit)?"""
    g = Q.images[j]
    for n in product(range(limit + 1), repeat=Q.size):
        if sum(n) < 2:
            continue
        if all(sum(c * Q.images[i][k] for i, c in enumerate(n)) == g[k] for k in range(Q.dim)):
            return True
    return False


def test_gp_rank_examples():
    assert gp_rank(N2) == 2
    assert gp_rank(TORIC_Q) == 2
    assert gp_rank(N1) == 1


def test_irreducibles_examples():
    assert irreducible_elements(N2) == ["A", "B"]
    assert irreducible_elements(TORIC_Q) == ["X", "Z", "Y"]
    assert irreducible_elements(NODE_Q) == ["U", "V"]


def test_sharpness_examples():
    assert is_sharp(N2)
    assert not is_sharp(MonoidPresentation(("P", "M"), ((1,), (-1,))))
    assert is_sharp(TRIV)
    with pytest.raises(MonoidError):
        irreducible_elements(MonoidPresentation(("P", "M"), ((1,), (-1,))))


def test_hom_enumeration_examples():
    assert [h.values for h in enumerate_homs_to_N(N1, 2)] == [(0,), (1,), (2,)]
    homs = [h.values for h in enumerate_homs_to_N(TORIC_Q, 2)]
    assert sorted(homs) == sorted([(0, 0, 0), (2, 1, 0), (1, 1, 1), (0, 1, 2), (2, 2, 2)])
    assert homs == sorted(homs)
    node = [h.values for h in enumerate_homs_to_N(NODE_Q, 1)]
    assert node == [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 2)]
    assert enumerate_homs_to_N(TRIV, 3) == [MonoidHom((), TRIV)]


def test_hilbert_basis_examples():
    assert [h.values for h in hilbert_basis_dual(N2)] == [(0, 1), (1, 0)]
    assert [h.values for h in hilbert_basis_dual(TORIC_Q)] == [(0, 1, 2), (1, 1, 1), (2, 1, 0)]
    assert [h.values for h in hilbert_basis_dual(N1)] == [(1,)]


def test_hilbert_basis_is_minimal_and_generates():
    basis = hilbert_basis_dual(TORIC_Q)
    for h in brute_homs(TORIC_Q, 6):
        assert decompose_hom(basis, h) is not None
    for b in basis:
        others = [x for x in basis if x != b]
        assert decompose_hom(others, b.values) is None


def test_quotient_by_face_examples():
    q = quotient_by_face(TORIC_Q, [])
    assert (q.gp_rank, q.irreducible_count) == (2, 3)
    q = quotient_by_face(TORIC_Q, ["X"])
    assert (q.gp_rank, q.irreducible_count) == (1, 1)
    q = quotient_by_face(TORIC_Q, ["X", "Y", "Z"])
    assert (q.gp_rank, q.irreducible_count) == (0, 0)


def test_non_face_is_rejected():
    with pytest.raises(MonoidError, match="face"):
        quotient_by_face(TORIC_Q, ["Z"])
    with pytest.raises(MonoidError):
        quotient_by_face(NODE_Q, ["T"])


def test_faces_of_node():
    assert faces(NODE_Q) == [(), ("U",), ("V",), ("U", "V", "T")]


def test_relative_invariants_examples():
    phi = MonoidMap(N1, NODE_Q, ((0, 0, 1),))
    r = relative_invariants(phi)
    assert (r.kernel_rank, r.irreducible_count, r.relative_gp_rank) == (0, 2, 1)
    ident = MonoidMap(N2, N2, ((1, 0), (0, 1)))
    r = relative_invariants(ident)
    assert (r.kernel_rank, r.irreducible_count, r.relative_gp_rank) == (0, 0, 0)
    r = relative_invariants(MonoidMap(N1, TRIV, ((),)))
    assert r.kernel_rank == 1


def test_monoid_map_checks_relations():
    with pytest.raises(MonoidError):
        MonoidMap(TORIC_Q, N1, ((1,), (0,), (0,)))


def test_hom_respects_relations():
    with pytest.raises(MonoidError):
        MonoidHom((1, 0, 0), TORIC_Q)


# random small lattice monoids ----------------------------------------------

vectors = st.lists(st.integers(-2, 3), min_size=2, max_size=2).filter(any)
monoids = st.lists(vectors, min_size=1, max_size=4).map(
    lambda vs: MonoidPresentation(tuple(f"g{i}" for i in range(len(vs))), tuple(tuple(v) for v in vs)))


@given(monoids, st.integers(0, 3))
def test_hom_enumeration_matches_box_filter(Q, bound):
    assert [h.values for h in enumerate_homs_to_N(Q, bound)] == brute_homs(Q, bound)


@given(monoids)
def test_hilbert_basis_generates_small_homs(Q):
    if not is_sharp(Q):
        return
    basis = hilbert_basis_dual(Q)
    for h in brute_homs(Q, 4):
        assert decompose_hom(basis, h) is not None


@given(monoids)
def test_irreducibles_match_brute_force(Q):
    if not is_sharp(Q):
        return
    irr = set(irreducible_elements(Q))
    seen = set()
    for j, name in enumerate(Q.names):
        if Q.images[j] in seen:
            continue
        seen.add(Q.images[j])
        assert (name in irr) == (not brute_reducible(Q, j))


@given(monoids)
def test_face_quotient_extremes(Q):
    if not is_sharp(Q):
        return
    q0 = quotient_by_face(Q, [])
    assert (q0.gp_rank, q0.irreducible_count) == (gp_rank(Q), len(irreducible_elements(Q)))
    qa = quotient_by_face(Q, Q.names)
    assert (qa.gp_rank, qa.irreducible_count) == (0, 0)


@given(monoids, st.permutations(range(4)), st.sampled_from([((1, 0), (0, 1)), ((1, 1), (0, 1)), ((2, 1), (1, 1))]))
def test_gp_rank_invariances(Q, perm, U):
    perm = [p for p in perm if p < Q.size]
    P = MonoidPresentation(tuple(Q.names[p] for p in perm), tuple(Q.images[p] for p in perm))
    assert gp_rank(P) == gp_rank(Q)
    V = MonoidPresentation(Q.names, tuple(tuple(sum(U[i][k] * g[k] for k in range(2)) for i in range(2))
                                          for g in Q.images))
    assert gp_rank(V) == gp_rank(Q)
