"""Jet equations and component presentations of log jet / evaluation spaces.

Substituting a truncated series for every coordinate and collecting the
coefficients of ``t^0 .. t^m`` gives the jet equations (Hasse-Schmidt
coordinates).  On a chart coordinate with contact order ``c`` a log jet of
parameter ``r`` looks like ``t^(r c) * (u_0 + u_1 t + ... + u_m t^m)``; monoid
relations then constrain the unit parts in full (all ``m + 1`` coefficients),
while the remaining ideal generators only see ``t^0 .. t^m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .algebra import Field, Poly, TruncSeries
from .algebra.linalg import field_matrix_rank
from .logscheme import (JetPoint, LogArc, LogChartScheme, PrecisionError, ValidationError,
                        plain_var, r0_scale_var, r0_unit_var, unit_var)
from .monoid import MonoidError, MonoidHom, enumerate_homs_to_N


@dataclass(frozen=True)
class ComponentDescriptor:
    """One component of a (log) jet space as a closed subscheme of affine space."""

    contact: tuple[int, ...] | None
    r: int
    order: int
    variables: tuple[str, ...]
    equations: tuple[Poly, ...]
    underlying_map: tuple[tuple[str, Poly], ...]

    @property
    def n_variables(self) -> int:
        return len(self.variables)

    @property
    def n_equations(self) -> int:
        return len(self.equations)

    @property
    def expected_dimension(self) -> int:
        return self.n_variables - self.n_equations


def _series_of_vars(names: Sequence[str], ring: Sequence[str], fld: Field, precision: int,
                    zero: Poly) -> TruncSeries:
    coeffs = [Poly.var(n, ring, fld) for n in names]
    return TruncSeries(coeffs, precision, zero)


def _nonzero(polys):
    return [p for p in polys if not p.is_zero()]


def hasse_schmidt_equations(f: Poly, m: int) -> list[Poly]:
    """Coefficients of ``t^0 .. t^m`` in ``f(sum_j x_j t^j)``."""
    ring = tuple(plain_var(x, j) for x in f.variables for j in range(m + 1))
    zero = Poly.zero(ring, f.field)
    subs = {x: _series_of_vars([plain_var(x, j) for j in range(m + 1)], ring, f.field, m + 1, zero)
            for x in f.variables}
    one = TruncSeries.constant(Poly.constant(1, ring, f.field), m + 1, zero)
    return list(f.evaluate(subs, one=one).coeffs)


def ordinary_jet_presentation(s: LogChartScheme, m: int) -> ComponentDescriptor:
    ring = tuple(plain_var(x, j) for x in s.variables for j in range(m + 1))
    eqs = []
    for f in s.equations:
        eqs.extend(e.in_ring(ring) for e in hasse_schmidt_equations(f, m))
    umap = tuple((x, Poly.var(plain_var(x, 0), ring, s.field)) for x in s.variables)
    return ComponentDescriptor(None, 0, m, ring, tuple(_nonzero(eqs)), umap)


def _contact_values(s: LogChartScheme, c) -> tuple[int, ...]:
    if isinstance(c, MonoidHom):
        if c.monoid != s.monoid:
            raise MonoidError("contact vector belongs to a different monoid")
        return c.values
    c = tuple(int(x) for x in c)
    MonoidHom(c, s.monoid)  # raises if a relation is violated
    return c


def _split(rel: Sequence[int]) -> tuple[list[int], list[int]]:
    return [max(k, 0) for k in rel], [max(-k, 0) for k in rel]


def log_jet_component_presentation(s: LogChartScheme, c, r: int, m: int) -> ComponentDescriptor:
    if r < 0 or m < 0:
        raise ValueError("r and m must be nonnegative")
    if r == 0:
        if c is not None:
            raise ValidationError(["r = 0 log jets have no contact index"])
        return _r0_presentation(s, m)
    if c is None:
        raise ValidationError(["r >= 1 log jets need a contact index"])
    c = _contact_values(s, c)
    gen = s.generator_of
    fld = s.field
    P = m + 1
    ring = []
    for x in s.variables:
        mk = unit_var if x in gen else plain_var
        ring.extend(mk(x, j) for j in range(P))
    ring = tuple(ring)
    zero = Poly.zero(ring, fld)
    one = TruncSeries.constant(Poly.constant(1, ring, fld), P, zero)

    units = {}
    subs = {}
    umap = []
    for x in s.variables:
        if x in gen:
            u = _series_of_vars([unit_var(x, j) for j in range(P)], ring, fld, P, zero)
            units[gen[x]] = u
            k = r * c[s.monoid.index(gen[x])]
            subs[x] = u.shift_up(k)
            umap.append((x, zero if k > 0 else Poly.var(unit_var(x, 0), ring, fld)))
        else:
            subs[x] = _series_of_vars([plain_var(x, j) for j in range(P)], ring, fld, P, zero)
            umap.append((x, Poly.var(plain_var(x, 0), ring, fld)))

    eqs = []
    for rel in s.monoid.relations:
        pos, neg = _split(rel)
        lhs, rhs = one, one
        for g, a, b in zip(s.monoid.names, pos, neg):
            if a:
                lhs = lhs * units[g] ** a
            if b:
                rhs = rhs * units[g] ** b
        eqs.extend((lhs - rhs).coeffs)
    for f in s.unmatched_equations():
        eqs.extend(f.evaluate(subs, one=one).coeffs)
    return ComponentDescriptor(c, r, m, ring, tuple(_nonzero(eqs)), tuple(umap))


def _r0_presentation(s: LogChartScheme, m: int) -> ComponentDescriptor:
    gen = s.generator_of
    fld = s.field
    P = m + 1
    ring = []
    for x in s.variables:
        if x in gen:
            ring.append(r0_scale_var(x))
            ring.extend(r0_unit_var(x, j) for j in range(1, P))
        else:
            ring.extend(plain_var(x, j) for j in range(P))
    ring = tuple(ring)
    zero = Poly.zero(ring, fld)
    one_p = Poly.constant(1, ring, fld)
    one = TruncSeries.constant(one_p, P, zero)
    subs, units, umap = {}, {}, []
    for x in s.variables:
        if x in gen:
            w = TruncSeries([one_p] + [Poly.var(r0_unit_var(x, j), ring, fld) for j in range(1, P)], P, zero)
            units[gen[x]] = w
            a = Poly.var(r0_scale_var(x), ring, fld)
            subs[x] = w * a
            umap.append((x, a))
        else:
            subs[x] = _series_of_vars([plain_var(x, j) for j in range(P)], ring, fld, P, zero)
            umap.append((x, Poly.var(plain_var(x, 0), ring, fld)))
    eqs = []
    # the chart section is a group hom gp Q -> 1 + t A[t]/t^(m+1)
    for rel in s.monoid.relations:
        pos, neg = _split(rel)
        lhs, rhs = one, one
        for g, a, b in zip(s.monoid.names, pos, neg):
            if a:
                lhs = lhs * units[g] ** a
            if b:
                rhs = rhs * units[g] ** b
        eqs.extend((lhs - rhs).coeffs[1:])
    for f in s.equations:
        eqs.extend(f.evaluate(subs, one=one).coeffs)
    return ComponentDescriptor(None, 0, m, ring, tuple(_nonzero(eqs)), tuple(umap))


def eval_space_components(s: LogChartScheme, bound: int, r: int = 1) -> list[ComponentDescriptor]:
    """Order-0 log jet components, one per contact index with values at most ``bound``."""
    if r < 1:
        raise ValueError("evaluation spaces use r >= 1")
    return [log_jet_component_presentation(s, h, r, 0) for h in enumerate_homs_to_N(s.monoid, bound)]


# --- points and local dimensions ------------------------------------------


def jacobian_rank(equations: Sequence[Poly], variables: Sequence[str], point: Mapping[str, object],
                  fld: Field) -> int:
    rows = []
    for f in equations:
        rows.append([f.diff(v).evaluate(point) if not f.diff(v).is_zero() else fld.zero for v in variables])
    return field_matrix_rank(rows, fld) if rows else 0


def check_point(pres: ComponentDescriptor, values: Mapping[str, object], fld: Field) -> None:
    missing = [v for v in pres.variables if v not in values]
    if missing:
        raise ValidationError([f"point has no value for {', '.join(missing)}"])
    bad = [str(f) for f in pres.equations if f.evaluate(values) != 0]
    if bad:
        raise ValidationError([f"point is not on the component: {e} != 0" for e in bad])


def local_dimension(pres: ComponentDescriptor, point: JetPoint, fld: Field) -> int:
    """Dimension of the Zariski tangent space of the presentation at ``point``."""
    vals = point.as_dict()
    check_point(pres, vals, fld)
    return pres.n_variables - jacobian_rank(pres.equations, pres.variables, vals, fld)


def jet_point_from_arc(s: LogChartScheme, a: LogArc, m: int) -> JetPoint:
    """Coordinates of the order-``m`` log jet of ``a`` on its component."""
    series = a.series
    P = a.precision
    gen = s.generator_of
    vals = {}
    if a.r >= 1:
        if a.contact is None:
            raise ValidationError(["log arcs with r >= 1 need a contact vector"])
        for x in s.variables:
            ser = series[x]
            if x in gen:
                k = a.r * a.contact[gen[x]]
                if k + m + 1 > P:
                    raise PrecisionError(f"unit part of {x} to order {m} needs precision {k + m + 1}, arc has {P}")
                unit = ser.shift_down(k)
                for j in range(m + 1):
                    vals[unit_var(x, j)] = unit.coeffs[j]
            else:
                if m + 1 > P:
                    raise PrecisionError(f"order {m} needs precision {m + 1}, arc has {P}")
                for j in range(m + 1):
                    vals[plain_var(x, j)] = ser.coeffs[j]
        return JetPoint(m, a.r, a.contact.values, vals)
    if m + 1 > P:
        raise PrecisionError(f"order {m} needs precision {m + 1}, arc has {P}")
    for x in s.variables:
        ser = series[x]
        if x in gen:
            vals.update(_r0_lift(x, ser.coeffs[:m + 1], s.field))
        else:
            for j in range(m + 1):
                vals[plain_var(x, j)] = ser.coeffs[j]
    return JetPoint(m, 0, None, vals)


def _r0_lift(x: str, coeffs: Sequence, fld: Field) -> dict:
    m = len(coeffs) - 1
    out = {}
    if coeffs[0] == 0:
        if any(c != 0 for c in coeffs):
            raise ValidationError([f"{x}: jet with zero constant term and nonzero higher terms "
                                   "does not lift to an r = 0 log jet"])
        out[r0_scale_var(x)] = fld.zero
        for j in range(1, m + 1):
            out[r0_unit_var(x, j)] = fld.zero
        return out
    out[r0_scale_var(x)] = coeffs[0]
    for j in range(1, m + 1):
        out[r0_unit_var(x, j)] = coeffs[j] / coeffs[0]
    return out


def ordinary_jet_point(a: LogArc, m: int) -> JetPoint:
    if m + 1 > a.precision:
        raise PrecisionError(f"order {m} needs precision {m + 1}, arc has {a.precision}")
    vals = {}
    for x, ser in a.series.items():
        for j in range(m + 1):
            vals[plain_var(x, j)] = ser.coeffs[j]
    return JetPoint(m, 0, None, vals)


def vertex_jet_point(s: LogChartScheme, p: JetPoint, generators: Sequence[str] | None = None) -> JetPoint:
    """Multiply the unit parts of ``generators`` (default: all chart generators) by ``t``.

    The result has zero unit constants there, i.e. it sits over the vertex of
    the characteristic monoid.  It lies on the same component when the
    monoid relations are homogeneous in the chosen generators; callers
    check this with :func:`check_point`.
    """
    if p.r < 1:
        raise ValidationError(["vertex points are defined for r >= 1 jets"])
    var = s.variable_of
    chosen = s.monoid.names if generators is None else tuple(generators)
    vals = p.as_dict()
    fld = s.field
    for g in chosen:
        x = var[g]
        old = [vals[unit_var(x, j)] for j in range(p.order + 1)]
        new = [fld.zero] + old[:-1]
        for j, c in enumerate(new):
            vals[unit_var(x, j)] = c
    return JetPoint(p.order, p.r, p.contact, vals)


def truncation_fiber_dimension(s: LogChartScheme, c, r: int, m: int, arc: LogArc | None = None) -> int:
    """``dim(component at m+1) - dim(component at m)``.

    With an arc, both dimensions are tangent-space dimensions at the arc's jets
    (which must be smooth points); without one the scheme must be asserted log
    smooth and the presentations' variable/equation counts are compared.
    """
    lo = log_jet_component_presentation(s, c, r, m)
    hi = log_jet_component_presentation(s, c, r, m + 1)
    if arc is not None:
        return (local_dimension(hi, jet_point_from_arc(s, arc, m + 1), s.field)
                - local_dimension(lo, jet_point_from_arc(s, arc, m), s.field))
    if not s.log_smooth:
        raise ValidationError(["truncation fibers without a point need a log smooth assertion"])
    return hi.expected_dimension - lo.expected_dimension


def stratum_fiber_dimension(s: LogChartScheme, jet: JetPoint) -> int:
    """Dimension of the fiber of r = 0 log jets over an ordinary jet.

    ``jet`` gives ordinary jet coordinates ``x_j``.  The fiber's tangent space
    is cut out by the component equations together with the differentials of
    the map to ordinary jets.
    """
    m = jet.order
    pres = log_jet_component_presentation(s, None, 0, m)
    vals = jet.as_dict()
    gen = s.generator_of
    lift = {}
    for x in s.variables:
        coeffs = [vals[plain_var(x, j)] for j in range(m + 1)]
        if x in gen:
            lift.update(_r0_lift(x, coeffs, s.field))
        else:
            for j in range(m + 1):
                lift[plain_var(x, j)] = coeffs[j]
    check_point(pres, lift, s.field)
    ring = pres.variables
    zero = Poly.zero(ring, s.field)
    map_coords = []
    for x in s.variables:
        if x in gen:
            a = Poly.var(r0_scale_var(x), ring, s.field)
            map_coords.append(a)
            map_coords.extend(a * Poly.var(r0_unit_var(x, j), ring, s.field) for j in range(1, m + 1))
        else:
            map_coords.extend(Poly.var(plain_var(x, j), ring, s.field) for j in range(m + 1))
    return pres.n_variables - jacobian_rank(list(pres.equations) + map_coords, ring, lift, s.field)


# --- component index maps ---------------------------------------------------


@dataclass(frozen=True)
class MonomialMap:
    """Target chart coordinates as monomials in source chart coordinates.

    ``exponents[k][i]`` is the power of ``source[i]`` in ``target[k]``.
    """

    source: tuple[str, ...]
    target: tuple[str, ...]
    exponents: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "target", tuple(self.target))
        object.__setattr__(self, "exponents", tuple(tuple(int(e) for e in row) for row in self.exponents))
        if len(self.exponents) != len(self.target):
            raise ValueError("one exponent row per target coordinate is required")
        for row in self.exponents:
            if len(row) != len(self.source) or any(e < 0 for e in row):
                raise ValueError(f"exponent row {row} is not a monomial in {self.source}")

    @classmethod
    def from_images(cls, source: LogChartScheme, target: LogChartScheme, images: Mapping[str, Poly]) -> MonomialMap:
        """Build from polynomial images of the target chart coordinates."""
        src = source.chart_variables()
        rows = []
        for y in target.chart_variables():
            if y not in images:
                raise ValidationError([f"no image given for target chart coordinate {y}"])
            p = images[y]
            if len(p.terms) != 1:
                raise ValidationError([f"image of {y} is not a monomial: {p}"])
            (exp, c), = p.terms.items()
            if c != 1:
                raise ValidationError([f"image of {y} has coefficient {c}"])
            row = [0] * len(src)
            for v, e in zip(p.variables, exp):
                if e:
                    if v not in src:
                        raise ValidationError([f"image of {y} involves non-chart variable {v}"])
                    row[src.index(v)] = e
            rows.append(tuple(row))
        extra = [y for y in images if y not in target.chart_variables()]
        if extra:
            raise ValidationError([f"{y} is not a chart coordinate of the target" for y in extra])
        return cls(tuple(src), tuple(target.chart_variables()), tuple(rows))

    def compose(self, inner: MonomialMap) -> MonomialMap:
        """``self ∘ inner``: first ``inner``, then ``self``."""
        if inner.target != self.source:
            raise ValueError("maps do not compose")
        rows = []
        for row in self.exponents:
            rows.append(tuple(sum(row[j] * inner.exponents[j][i] for j in range(len(self.source)))
                              for i in range(len(inner.source))))
        return MonomialMap(inner.source, self.target, tuple(rows))


def component_index_pushforward(phi: MonomialMap, c: Sequence[int]) -> tuple[int, ...]:
    """Contact index of the image component: ``c'_k = sum_i A[k][i] c_i``."""
    c = tuple(int(x) for x in c)
    if len(c) != len(phi.source):
        raise ValueError(f"contact vector {c} does not match source coordinates {phi.source}")
    return tuple(sum(a * x for a, x in zip(row, c)) for row in phi.exponents)
