"""Affine log schemes presented by a monomial chart, and arcs on them.

A chart sends each monoid generator to a distinct coordinate variable.  Every
monoid relation must be witnessed by a binomial among the listed ideal
generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .algebra import QQ, Field, Poly, TruncSeries, poly_eval_series
from .algebra.intmat import hermite_rows, smith_normal_form
from .algebra.parse import poly_to_series
from .monoid import (MonoidError, MonoidHom, MonoidMap, MonoidPresentation, RelativeInvariants,
                     faces, gp_rank, irreducible_elements, is_sharp, quotient_by_face,
                     relative_invariants)


class ValidationError(ValueError):
    """Raised with the full list of problems found."""

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class PrecisionError(ValueError):
    pass


# coordinate names on jet and component presentations
def plain_var(x: str, j: int) -> str:
    return f"{x}_{j}"


def unit_var(x: str, j: int) -> str:
    return f"u_{x}_{j}"


def r0_scale_var(x: str) -> str:
    return f"a_{x}"


def r0_unit_var(x: str, j: int) -> str:
    return f"w_{x}_{j}"


@dataclass(frozen=True)
class BaseChart:
    """Chart of the base for relative computations: ``R -> Q`` plus a base coordinate.

    ``point_face`` lists the base generators that are units at the base point;
    the default (empty) is a log point where every base generator vanishes.
    """

    monoid: MonoidPresentation
    map: MonoidMap
    variable: str | None = None
    point_face: tuple[str, ...] = ()


@dataclass(frozen=True)
class LogChartScheme:
    variables: tuple[str, ...]
    equations: tuple[Poly, ...]
    monoid: MonoidPresentation
    chart: tuple[tuple[str, str], ...]  # (generator, variable) in generator order
    log_smooth: bool = False
    field: Field = QQ
    base: BaseChart | None = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "equations", tuple(e.in_ring(self.variables) for e in self.equations))
        if isinstance(self.chart, Mapping):
            object.__setattr__(self, "chart", tuple(self.chart.items()))
        order = {g: i for i, g in enumerate(self.monoid.names)}
        object.__setattr__(self, "chart", tuple(sorted(self.chart, key=lambda gv: order.get(gv[0], len(order)))))

    @property
    def generator_of(self) -> dict[str, str]:
        return {v: g for g, v in self.chart}

    @property
    def variable_of(self) -> dict[str, str]:
        return dict(self.chart)

    def chart_variables(self) -> list[str]:
        return [v for _, v in self.chart]

    def non_chart_variables(self) -> list[str]:
        charted = set(self.chart_variables())
        return [v for v in self.variables if v not in charted]

    def is_chart_variable(self, x: str) -> bool:
        return x in self.generator_of

    def generator_exponents(self, exp: Sequence[int]) -> list[int] | None:
        """Rewrite a monomial in chart variables as a generator vector (None if not chartable)."""
        gen = self.generator_of
        out = [0] * self.monoid.size
        for x, e in zip(self.variables, exp):
            if e:
                if x not in gen:
                    return None
                out[self.monoid.index(gen[x])] += e
        return out

    def matched_binomials(self) -> list[tuple[int, list[int]]]:
        """Ideal generators of the form ``c(x^a - x^b)`` with ``a - b`` a monoid relation.

        Returns ``(equation index, generator-coordinate difference)`` pairs.
        """
        out = []
        for i, f in enumerate(self.equations):
            if len(f.terms) != 2:
                continue
            (e1, c1), (e2, c2) = f.sorted_terms()
            if c1 + c2 != 0:
                continue
            a = self.generator_exponents(e1)
            b = self.generator_exponents(e2)
            if a is None or b is None:
                continue
            diff = [x - y for x, y in zip(a, b)]
            if any(self.monoid.element(diff)):
                continue
            out.append((i, diff))
        return out

    def binomial(self, rel: Sequence[int]) -> Poly:
        """``x^(rel+) - x^(rel-)`` with the larger monomial first."""
        var = self.variable_of
        pos = [0] * len(self.variables)
        neg = [0] * len(self.variables)
        for g, k in zip(self.monoid.names, rel):
            idx = self.variables.index(var[g])
            if k > 0:
                pos[idx] = k
            elif k < 0:
                neg[idx] = -k
        p = Poly(self.variables, {tuple(pos): 1, tuple(neg): -1}, self.field)
        lead = p.sorted_terms()[0][1]
        return p if lead == 1 else -p

    def unmatched_equations(self) -> list[Poly]:
        matched = {i for i, _ in self.matched_binomials()}
        return [f for i, f in enumerate(self.equations) if i not in matched]


def _lattice_contains(basis: Sequence[Sequence[int]], vec: Sequence[int]) -> bool:
    h1 = hermite_rows([list(b) for b in basis])
    h2 = hermite_rows([list(b) for b in basis] + [list(vec)])
    return h1 == h2


def scheme_problems(s: LogChartScheme) -> list[str]:
    problems = []
    gens = s.monoid.names
    charted_gens = [g for g, _ in s.chart]
    charted_vars = [v for _, v in s.chart]
    for g in charted_gens:
        if g not in gens:
            problems.append(f"chart uses unknown monoid generator {g!r}")
    for g in gens:
        if g not in charted_gens:
            problems.append(f"monoid generator {g!r} is not sent to a variable "
                            "(only charts sending each generator to its own variable are supported)")
    if len(set(charted_gens)) != len(charted_gens):
        problems.append("a monoid generator appears twice in the chart")
    dup = sorted({v for v in charted_vars if charted_vars.count(v) > 1})
    if dup:
        problems.append(f"duplicate chart variables: {', '.join(dup)}")
    for v in charted_vars:
        if v not in s.variables:
            problems.append(f"chart variable {v!r} is not a scheme variable")
    if not is_sharp(s.monoid):
        problems.append(f"monoid {s.monoid.names} is not sharp")
    if problems:
        return problems
    found = [d for _, d in s.matched_binomials()]
    for rel in s.monoid.relations:
        if not _lattice_contains(found, rel):
            problems.append(f"missing binomial {s.binomial(rel)} for monoid relation "
                            f"{_format_relation(s.monoid, rel)}")
    if s.base is not None:
        b = s.base
        if b.map.target != s.monoid:
            problems.append("base map does not land in the scheme's monoid")
        if b.variable is not None and b.variable not in s.variables:
            problems.append(f"base variable {b.variable!r} is not a scheme variable")
        for g in b.point_face:
            if g not in b.monoid.names:
                problems.append(f"base point face uses unknown generator {g!r}")
    return problems


def _format_relation(Q: MonoidPresentation, rel: Sequence[int]) -> str:
    def side(sign):
        parts = []
        for g, k in zip(Q.names, rel):
            k = sign * k
            if k > 0:
                parts.append(g if k == 1 else f"{k}{g}")
        return " + ".join(parts) or "0"
    return f"{side(1)} = {side(-1)}"


def validate_scheme(s: LogChartScheme) -> None:
    problems = scheme_problems(s)
    if problems:
        raise ValidationError(problems)


@dataclass(frozen=True)
class LogArc:
    """A series point with log parameter ``r`` and (for ``r >= 1``) a contact vector.

    The coordinates are exact polynomials in ``t``; ``precision`` says how many
    coefficients are treated as known.
    """

    precision: int
    r: int
    polys: tuple[tuple[str, Poly], ...]
    contact: MonoidHom | None = None

    def __post_init__(self):
        if isinstance(self.polys, Mapping):
            object.__setattr__(self, "polys", tuple(self.polys.items()))
        if self.precision < 1:
            raise PrecisionError("arc precision must be positive")
        if self.r < 0:
            raise ValueError("log parameter r must be nonnegative")

    @property
    def series(self) -> dict[str, TruncSeries]:
        return {x: poly_to_series(p, self.precision) for x, p in self.polys}

    def poly(self, x: str) -> Poly:
        return dict(self.polys)[x]

    def with_precision(self, precision: int) -> LogArc:
        return LogArc(precision, self.r, self.polys, self.contact)

    def rescaled(self, lam) -> LogArc:
        """Substitute ``t -> lam * t``."""
        out = {}
        for x, p in self.polys:
            out[x] = Poly(p.variables, {e: c * (p.field(lam) ** e[0]) for e, c in p.terms.items()}, p.field)
        return LogArc(self.precision, self.r, out, self.contact)


def arc_problems(s: LogChartScheme, a: LogArc) -> list[str]:
    problems = []
    names = dict(a.polys)
    for x in s.variables:
        if x not in names:
            problems.append(f"no series given for variable {x!r}")
    for x in names:
        if x not in s.variables:
            problems.append(f"series given for unknown variable {x!r}")
    if problems:
        return problems
    P = a.precision
    series = a.series
    if a.r >= 1:
        if a.contact is None:
            problems.append("log arcs with r >= 1 need a contact vector")
            return problems
        if a.contact.monoid != s.monoid:
            problems.append("contact vector belongs to a different monoid")
            return problems
        gen = s.generator_of
        for x in s.chart_variables():
            k = a.r * a.contact[gen[x]]
            v = series[x].valuation()
            if v == P:
                problems.append(f"{x} vanishes to precision {P}: no finite contact order")
            elif k >= P:
                problems.append(f"{x}: contact order {k} is not determined at precision {P}")
            elif v != k:
                problems.append(f"{x}: valuation {v} differs from r*c({gen[x]}) = {k}")
    else:
        if a.contact is not None:
            problems.append("r = 0 arcs carry no contact vector")
        for x in s.chart_variables():
            v = series[x].valuation()
            if 0 < v < P:
                problems.append(f"{x}: an r = 0 arc needs each chart coordinate to be 0 or a unit, "
                                f"valuation is {v}")
    for f in s.equations:
        val = poly_eval_series(f, series)
        v = val.valuation()
        if v < P:
            problems.append(f"equation {f} = {val} is nonzero at order t^{v}")
    return problems


def validate_arc(s: LogChartScheme, a: LogArc) -> None:
    problems = arc_problems(s, a)
    if problems:
        raise ValidationError(problems)


def truncate_arc(s: LogChartScheme, a: LogArc, m: int) -> LogArc:
    """Keep coefficients through ``t^m``."""
    if m + 1 > a.precision:
        raise PrecisionError(f"cannot truncate a precision-{a.precision} arc to order {m}")
    if a.r >= 1 and a.contact is not None:
        gen = s.generator_of
        for x in s.chart_variables():
            if a.r * a.contact[gen[x]] >= m + 1:
                raise PrecisionError(f"contact not determined at this order: {x} has contact "
                                     f"{a.r * a.contact[gen[x]]} > m = {m}")
    out = {}
    for x, p in a.polys:
        out[x] = Poly(p.variables, {e: c for e, c in p.terms.items() if e[0] <= m}, p.field)
    return LogArc(m + 1, a.r, out, a.contact)


@dataclass(frozen=True)
class JetPoint:
    """A closed point of a component presentation: values of its coordinates."""

    order: int
    r: int
    contact: tuple[int, ...] | None
    values: tuple[tuple[str, object], ...]

    def __post_init__(self):
        if isinstance(self.values, Mapping):
            object.__setattr__(self, "values", tuple(self.values.items()))

    def as_dict(self) -> dict:
        return dict(self.values)


def unit_constants(s: LogChartScheme, p: JetPoint) -> dict[str, object]:
    vals = p.as_dict()
    out = {}
    for g, x in s.chart:
        name = r0_scale_var(x) if p.r == 0 else unit_var(x, 0)
        if name not in vals:
            raise ValidationError([f"jet point has no coordinate {name}"])
        out[g] = vals[name]
    return out


def jet_face(s: LogChartScheme, p: JetPoint) -> tuple[str, ...]:
    """Chart generators whose unit part has nonzero constant term at ``p``."""
    return tuple(g for g, c in unit_constants(s, p).items() if c != 0)


def char_monoid_at_jet(s: LogChartScheme, p: JetPoint) -> tuple[int, int]:
    """``(rk gp M̄, #irreducibles)`` of the characteristic monoid at ``p``."""
    q = quotient_by_face(s.monoid, jet_face(s, p))
    return q.gp_rank, q.irreducible_count


def relative_face(s: LogChartScheme, p: JetPoint) -> tuple[str, ...]:
    """Face of the jet point compatible with the base point.

    Start from the face spanned by the generators with invertible unit part.
    When it would make a base generator that vanishes at the base point
    invertible, shrink it: take every face inside it whose preimage in the
    base is exactly the base point's face, and intersect the maximal ones.
    """
    if s.base is None:
        raise ValidationError(["relative invariants need a base chart"])
    Q = s.monoid
    phi = s.base.map
    upper = set(quotient_by_face(Q, jet_face(s, p)).face)
    base_face = set(s.base.point_face)

    def preimage(F):
        out = set()
        for g, img in zip(phi.source.names, phi.images):
            if all(Q.names[j] in F for j, k in enumerate(img) if k):
                out.add(g)
        return out

    candidates = [set(F) for F in faces(Q) if set(F) <= upper and preimage(F) == base_face]
    if not candidates:
        raise ValidationError([f"no face of {Q.names} at this jet point is compatible with the base point"])
    maximal = [F for F in candidates if not any(F < G for G in candidates)]
    inter = set.intersection(*maximal)
    return tuple(g for g in Q.names if g in inter)


def relative_char_monoid_at_jet(s: LogChartScheme, p: JetPoint) -> RelativeInvariants:
    """Relative invariants of ``M̄_base -> M̄_jet`` after passing to the faces."""
    Q = s.monoid
    b = s.base
    qf = quotient_by_face(Q, relative_face(s, p))
    rf = quotient_by_face(b.monoid, b.point_face)
    keep_q = [Q.index(g) for g in qf.quotient.names]
    images = []
    for g in rf.quotient.names:
        img = b.map.images[b.monoid.index(g)]
        images.append(tuple(img[j] for j in keep_q))
    return relative_invariants(MonoidMap(rf.quotient, qf.quotient, tuple(images)))
