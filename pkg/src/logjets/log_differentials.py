"""Log Kähler differentials of a chart-presented scheme and their pullback to arcs.

Generators are ``dlog_x`` for chart coordinates and ``dx`` for the rest.  A
monoid relation gives a constant row; an ideal generator ``f`` gives the row of
``df`` with ``dx = x dlog_x`` on chart coordinates.  Rows are reduced only by
rewriting with the chart binomials, never by a Gröbner basis.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Poly
from .logscheme import LogArc, LogChartScheme, ValidationError, validate_scheme
from .module_decomp import PresentedModule


@dataclass(frozen=True)
class LogDiffPresentation:
    scheme: LogChartScheme
    labels: tuple[str, ...]
    rows: tuple[tuple[Poly, ...], ...]
    row_origins: tuple[str, ...]

    @property
    def generators(self) -> int:
        return len(self.labels)

    def render(self) -> list[str]:
        out = []
        for origin, row in zip(self.row_origins, self.rows):
            terms = []
            for lab, c in zip(self.labels, row):
                if c.is_zero():
                    continue
                cs = str(c)
                if cs == "1":
                    terms.append(lab)
                elif cs == "-1":
                    terms.append(f"-{lab}")
                elif len(c.terms) > 1:
                    terms.append(f"({cs})*{lab}")
                else:
                    terms.append(f"{cs}*{lab}")
            body = ""
            for k, term in enumerate(terms):
                neg = term.startswith("-")
                if k == 0:
                    body = term
                else:
                    body += f" - {term[1:]}" if neg else f" + {term}"
            out.append(f"{body or '0'}    [{origin}]")
        return out


def _labels(s: LogChartScheme) -> list[str]:
    return [f"dlog_{x}" for x in s.chart_variables()] + [f"d{x}" for x in s.non_chart_variables()]


def _rewrite_rules(s: LogChartScheme) -> list[tuple[tuple[int, ...], tuple[int, ...], object]]:
    # leading monomial -> (other monomial, ratio) for each matched chart binomial
    rules = []
    for i, _ in s.matched_binomials():
        (lead, c1), (other, c2) = s.equations[i].sorted_terms()
        rules.append((lead, other, -c2 / c1))
    return rules


def reduce_by_binomials(p: Poly, rules) -> Poly:
    """Rewrite leading monomials of chart binomials until none divides a term."""
    work = dict(p.terms)
    done: dict = {}
    while work:
        exp = max(work, key=lambda e: (sum(e), e))
        c = work.pop(exp)
        for lead, other, ratio in rules:
            if all(a >= b for a, b in zip(exp, lead)):
                new = tuple(a - b + o for a, b, o in zip(exp, lead, other))
                s = work.get(new, 0) + c * ratio
                if s == 0:
                    work.pop(new, None)
                else:
                    work[new] = s
                break
        else:
            done[exp] = c
    return Poly(p.variables, done, p.field)


def build_log_differentials(s: LogChartScheme) -> LogDiffPresentation:
    validate_scheme(s)
    labels = _labels(s)
    V = s.variables
    fld = s.field
    zero = Poly.zero(V, fld)
    rows, origins = [], []
    for rel in s.monoid.relations:
        row = [Poly.constant(k, V, fld) for k in rel] + [zero] * len(s.non_chart_variables())
        rows.append(tuple(row))
        origins.append("monoid relation " + " ".join(str(k) for k in rel))
    rules = _rewrite_rules(s)
    for f in s.equations:
        row = []
        for x in s.chart_variables():
            row.append(reduce_by_binomials(Poly.var(x, V, fld) * f.diff(x), rules))
        for x in s.non_chart_variables():
            row.append(reduce_by_binomials(f.diff(x), rules))
        rows.append(tuple(row))
        origins.append(f"d({f})")
    return LogDiffPresentation(s, tuple(labels), tuple(rows), tuple(origins))


def relative_log_differentials(s: LogChartScheme) -> LogDiffPresentation:
    """Absolute presentation plus ``dlog`` of every base generator and ``d(base variable)``."""
    if s.base is None:
        raise ValidationError(["relative differentials need a base chart"])
    abs_ = build_log_differentials(s)
    V = s.variables
    fld = s.field
    b = s.base
    rows = list(abs_.rows)
    origins = list(abs_.row_origins)
    n_free = len(s.non_chart_variables())
    zero = Poly.zero(V, fld)
    for g, img in zip(b.monoid.names, b.map.images):
        rows.append(tuple([Poly.constant(k, V, fld) for k in img] + [zero] * n_free))
        origins.append(f"base generator {g}")
    if b.variable is not None:
        row = [zero] * abs_.generators
        if b.variable in s.generator_of:
            row[s.chart_variables().index(b.variable)] = Poly.var(b.variable, V, fld)
        else:
            row[len(s.chart_variables()) + s.non_chart_variables().index(b.variable)] = Poly.constant(1, V, fld)
        rows.append(tuple(row))
        origins.append(f"d({b.variable}) = 0")
    return LogDiffPresentation(s, abs_.labels, tuple(rows), tuple(origins))


def restrict_along_arc(omega: LogDiffPresentation, a: LogArc) -> PresentedModule:
    """Evaluate every coefficient at the arc; the exact polynomials are kept as lifts."""
    images = dict(a.polys)
    fld = omega.scheme.field
    rows = []
    for row in omega.rows:
        rows.append([c.substitute(images, ("t",)) if not c.is_zero() else Poly.zero(("t",), fld) for c in row])
    return PresentedModule.from_polys(rows, omega.generators, a.precision, "arc", fld)


def jacobian_matrix(s: LogChartScheme) -> list[list[Poly]]:
    """Ordinary Jacobian ``(df_i/dx_j)``; equals the log presentation for trivial charts."""
    return [[f.diff(x) for x in s.variables] for f in s.equations]


def row_valuations(M: PresentedModule) -> list[list[int]]:
    return [[e.valuation() for e in r] for r in M.relations]

