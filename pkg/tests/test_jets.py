import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from logjets.algebra import QQ, Poly, parse_poly
from logjets.jets import (MonomialMap, component_index_pushforward, eval_space_components,
                          hasse_schmidt_equations, log_jet_component_presentation,
                          ordinary_jet_presentation, stratum_fiber_dimension,
                          truncation_fiber_dimension)
from logjets.logscheme import JetPoint, ValidationError, plain_var
from logjets.monoid import MonoidError, MonoidPresentation

from helpers import affine_space, axes, cusp, fixture, scheme, toric_q


def strs(polys):
    return [str(p) for p in polys]


def test_hasse_schmidt_examples():
    uv = parse_poly("u*v", ("u", "v"))
    assert strs(hasse_schmidt_equations(uv, 1)) == ["u_0*v_0", "u_0*v_1 + u_1*v_0"]
    assert strs(hasse_schmidt_equations(parse_poly("x", ("x",)), 2)) == ["x_0", "x_1", "x_2"]
    cusp_f = cusp().equations[0]
    assert strs(hasse_schmidt_equations(cusp_f, 0)) == ["-x_0^3 + y_0^2"]
    assert strs(hasse_schmidt_equations(cusp_f, 1)) == ["-x_0^3 + y_0^2", "-3*x_0^2*x_1 + 2*y_0*y_1"]


def test_ordinary_jets_examples():
    node = scheme(("u", "v"), ["u*v"])
    p = ordinary_jet_presentation(node, 2)
    assert strs(p.equations) == ["u_0*v_0", "u_0*v_1 + u_1*v_0", "u_0*v_2 + u_1*v_1 + u_2*v_0"]
    a1 = scheme(("x",), [])
    p = ordinary_jet_presentation(a1, 3)
    assert p.n_variables == 4 and p.n_equations == 0


def test_log_component_examples():
    A1 = affine_space(1)
    for c in range(4):
        p = log_jet_component_presentation(A1, (c,), 1, 3)
        assert p.n_variables == 4 and p.n_equations == 0
    p = log_jet_component_presentation(toric_q(), (2, 2, 2), 1, 0)
    assert p.variables == ("u_x_0", "u_y_0", "u_z_0")
    assert strs(p.equations) == ["u_x_0*u_y_0 - u_z_0^2"]
    p = log_jet_component_presentation(axes(), (1, 1), 1, 2)
    assert p.n_variables == 6 and strs(p.equations) == ["u_u_0*u_v_0"]


def test_component_index_must_be_a_hom():
    with pytest.raises(MonoidError):
        log_jet_component_presentation(toric_q(), (1, 1, 2), 1, 0)
    with pytest.raises(ValidationError):
        log_jet_component_presentation(toric_q(), None, 1, 0)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("m", range(6))
def test_affine_space_components_are_affine_spaces(n, m):
    s = affine_space(n)
    for c in itertools.product(range(3), repeat=n):
        p = log_jet_component_presentation(s, c, 1, m)
        assert p.n_variables == n * (m + 1) and p.n_equations == 0


@pytest.mark.parametrize("m", range(5))
def test_log_smooth_expected_dimension_is_constant(m):
    s = toric_q()
    dims = {log_jet_component_presentation(s, (a, b, c), 1, m).expected_dimension
            for a, b, c in [(0, 0, 0), (2, 1, 0), (2, 2, 2), (0, 2, 4), (4, 3, 2)]}
    assert dims == {2 * (m + 1)}


def test_r_larger_than_m_collapses_positive_contacts():
    s = affine_space(2)
    p = log_jet_component_presentation(s, (1, 2), 3, 1)
    assert all(str(img) == "0" for _, img in p.underlying_map)


def test_eval_space_examples():
    comps = eval_space_components(affine_space(1), 2)
    assert [c.contact for c in comps] == [(0,), (1,), (2,)]
    assert [strs(img for _, img in c.underlying_map) for c in comps] == [["u_x1_0"], ["0"], ["0"]]
    comps = {c.contact: c for c in eval_space_components(affine_space(2), 1)}
    assert strs(img for _, img in comps[(1, 1)].underlying_map) == ["0", "0"]
    comps = eval_space_components(toric_q(), 4)
    assert all((c.contact[0] + c.contact[2]) == 2 * c.contact[1] for c in comps)
    assert all(c.n_variables == 3 and c.n_equations == 1 for c in comps)


def test_eval_space_axes_pullback():
    # components of the axes are those of A^2 cut down by the pulled-back u*v
    s = axes()
    A2 = scheme(("u", "v"), [], MonoidPresentation.free(("U", "V")), {"U": "u", "V": "v"}, True)
    comps = eval_space_components(s, 2)
    assert len(comps) == 9
    ambient = {c.contact: c for c in eval_space_components(A2, 2)}
    uv = parse_poly("u*v", ("u", "v"))
    for comp in comps:
        amb = ambient[comp.contact]
        images = dict(amb.underlying_map)
        pulled = uv.substitute(images, amb.variables)
        expected = [] if pulled.is_zero() else [str(pulled)]
        assert strs(comp.equations) == expected


@given(st.lists(st.integers(-3, 3), min_size=6, max_size=6), st.integers(0, 4))
def test_hasse_schmidt_cauchy_product(cs, m):
    V = ("x", "y")
    f = Poly(V, {(1, 0): cs[0], (0, 2): cs[1], (0, 0): cs[2]}, QQ)
    g = Poly(V, {(2, 0): cs[3], (1, 1): cs[4], (0, 1): cs[5]}, QQ)
    F, Gs, FG = (hasse_schmidt_equations(h, m) for h in (f, g, f * g))
    ring = tuple(plain_var(x, j) for x in V for j in range(m + 1))
    for k in range(m + 1):
        conv = sum((F[i].in_ring(ring) * Gs[k - i].in_ring(ring) for i in range(k + 1)), Poly.zero(ring, QQ))
        assert FG[k].in_ring(ring) == conv


def test_truncation_fibers_of_log_smooth_examples():
    A2 = affine_space(2)
    for c in itertools.product(range(3), repeat=2):
        for m in range(5):
            assert truncation_fiber_dimension(A2, c, 1, m) == 2
    Q = toric_q()
    for c in [(0, 0, 0), (2, 2, 2), (2, 1, 0), (0, 1, 2)]:
        for m in range(5):
            assert truncation_fiber_dimension(Q, c, 1, m) == 2


def test_truncation_fibers_need_log_smoothness_without_point():
    with pytest.raises(ValidationError):
        truncation_fiber_dimension(axes(), (1, 1), 1, 1)


def _axes_jet(m, u, v):
    vals = {}
    for x, coeffs in (("u", u), ("v", v)):
        for j in range(m + 1):
            vals[plain_var(x, j)] = QQ(coeffs[j] if j < len(coeffs) else 0)
    return JetPoint(m, 0, None, vals)


@pytest.mark.parametrize("m", range(1, 5))
def test_r0_strata_dimensions(m):
    s = axes()
    # rank one stratum: u = 0, v a unit; rank two: both zero
    assert stratum_fiber_dimension(s, _axes_jet(m, [0], [1, 1])) == m
    assert stratum_fiber_dimension(s, _axes_jet(m, [0], [0])) == 2 * m
    assert stratum_fiber_dimension(s, _axes_jet(m, [0], [3, 0, 2])) == m


def test_r0_presentation_on_axes_fixture():
    doc = fixture("axes")
    p = log_jet_component_presentation(doc.scheme, None, 0, 2)
    assert p.variables[:3] == ("a_u", "w_u_1", "w_u_2")
    assert p.n_equations == 3


def test_pushforward_examples():
    A1 = affine_space(1)
    for d in (1, 2, 5):
        phi = MonomialMap.from_images(A1, A1, {"x1": parse_poly(f"x1^{d}", ("x1",))})
        assert [component_index_pushforward(phi, (q,)) for q in range(4)] == [(d * q,) for q in range(4)]
    doc = fixture("blowup")
    assert component_index_pushforward(doc.map, (2, 3)) == (5, 3)
    ident = MonomialMap(("a", "b"), ("a", "b"), ((1, 0), (0, 1)))
    assert component_index_pushforward(ident, (4, 7)) == (4, 7)


def test_pushforward_rejects_non_monomials():
    A1 = affine_space(1)
    with pytest.raises(ValidationError):
        MonomialMap.from_images(A1, A1, {"x1": parse_poly("x1 + x1^2", ("x1",))})


def test_pushforward_functorial(rng):
    for _ in range(100):
        n1, n2, n3 = (rng.randint(1, 3) for _ in range(3))
        names = [tuple(f"{k}{i}" for i in range(n)) for k, n in zip("abc", (n1, n2, n3))]
        psi = MonomialMap(names[0], names[1], [[rng.randint(0, 3) for _ in range(n1)] for _ in range(n2)])
        phi = MonomialMap(names[1], names[2], [[rng.randint(0, 3) for _ in range(n2)] for _ in range(n3)])
        c = [rng.randint(0, 5) for _ in range(n1)]
        assert (component_index_pushforward(phi.compose(psi), c)
                == component_index_pushforward(phi, component_index_pushforward(psi, c)))
