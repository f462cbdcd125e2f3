"""Embedding dimension of log jet spaces: the formula and a tangent-space oracle.

The formula reads

    d_m (m + 1) + ord Fitt^{d_m} - rk gp M̄ + N - dim α°

with d_m and the Fitting order taken from the log differentials restricted
along the arc, (rk, N) from the characteristic monoid at the jet point, and
the last term always 0 (closed points only).  The oracle is the Zariski
tangent space of the explicit component presentation at the same point.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .algebra import QQ, Poly
from .jets import (ComponentDescriptor, check_point, jacobian_rank, jet_point_from_arc,
                   log_jet_component_presentation, ordinary_jet_point, ordinary_jet_presentation)
from .logscheme import (JetPoint, LogArc, LogChartScheme, ValidationError, char_monoid_at_jet,
                        jet_face, plain_var, r0_scale_var, r0_unit_var, relative_char_monoid_at_jet,
                        relative_face, unit_var, validate_arc)
from .log_differentials import build_log_differentials, relative_log_differentials, restrict_along_arc
from .module_decomp import InvariantFactors, betti_number, diagonalize, fitting_order
from .monoid import MonoidPresentation, gp_rank, irreducible_elements


@dataclass(frozen=True)
class EmbDimReport:
    m: int
    betti: int
    fitting_order: int
    gp_rank: int
    irreducibles: int
    residue_dim: int
    value: int
    flag: str  # "equality" | "upper bound" | "interpretation"
    face: tuple[str, ...] = ()
    invariant_factors: tuple[int, ...] = ()
    free_rank: int = 0
    oracle: int | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def match(self) -> bool | None:
        return None if self.oracle is None else self.oracle == self.value

    def recomputed(self) -> int:
        return (self.betti * (self.m + 1) + self.fitting_order - self.gp_rank
                + self.irreducibles - self.residue_dim)

    def as_dict(self) -> dict:
        return {
            "m": self.m, "d_m": self.betti, "fitting_order": self.fitting_order,
            "rk_gp": self.gp_rank, "N": self.irreducibles, "dim_residue": self.residue_dim,
            "formula": self.value, "flag": self.flag, "face": list(self.face),
            "invariant_factors": list(self.invariant_factors), "free_rank": self.free_rank,
            "oracle": self.oracle, "match": self.match, "notes": list(self.notes),
        }


def default_jet_point(s: LogChartScheme, a: LogArc, m: int) -> JetPoint:
    if not s.chart:
        return ordinary_jet_point(a, m)
    return jet_point_from_arc(s, a, m)


def component_for(s: LogChartScheme, a: LogArc, m: int) -> ComponentDescriptor:
    if not s.chart:
        return ordinary_jet_presentation(s, m)
    if a.r == 0:
        return log_jet_component_presentation(s, None, 0, m)
    return log_jet_component_presentation(s, a.contact, a.r, m)


def _module_numbers(inv: InvariantFactors, m: int) -> tuple[int, int]:
    d = betti_number(inv, m)
    return d, fitting_order(inv, d, m)


def embdim_formula(s: LogChartScheme, a: LogArc, m: int, point: JetPoint | None = None) -> EmbDimReport:
    """Evaluate the formula at the order-m jet of ``a`` (or at an explicit ``point`` on its component)."""
    validate_arc(s, a)
    inv = diagonalize(restrict_along_arc(build_log_differentials(s), a))
    d, ordf = _module_numbers(inv, m)
    p = default_jet_point(s, a, m) if point is None else point
    if s.chart:
        rk, N = char_monoid_at_jet(s, p)
        face = jet_face(s, p)
    else:
        rk, N, face = 0, 0, ()
    notes = ["d_m, Fitting order: log differentials restricted along the arc",
             "rk, N: characteristic monoid at the jet point (face of nonvanishing unit constants)",
             "dim of residue field: 0 at closed points"]
    value = d * (m + 1) + ordf - rk + N
    return EmbDimReport(m, d, ordf, rk, N, 0, value, "equality" if s.log_smooth else "upper bound",
                        face, inv.exponents, inv.free_rank, None, tuple(notes))


def embdim_oracle(pres: ComponentDescriptor, p: JetPoint, fld=None) -> int:
    """``#variables - rank(Jacobian at p)`` on the component presentation."""
    fld = fld or (pres.equations[0].field if pres.equations else QQ)
    vals = p.as_dict()
    check_point(pres, vals, fld)
    return pres.n_variables - jacobian_rank(pres.equations, pres.variables, vals, fld)


def embdim_with_oracle(s: LogChartScheme, a: LogArc, m: int, point: JetPoint | None = None) -> EmbDimReport:
    rep = embdim_formula(s, a, m, point)
    p = default_jet_point(s, a, m) if point is None else point
    orc = embdim_oracle(component_for(s, a, m), p, s.field)
    return replace(rep, oracle=orc)


def embdim_relative(s: LogChartScheme, a: LogArc, m: int, point: JetPoint | None = None) -> EmbDimReport:
    """Relative version: differentials over the base, monoid invariants of M̄_base -> M̄_jet."""
    if s.base is None:
        raise ValidationError(["relative embedding dimension needs a base chart"])
    validate_arc(s, a)
    inv = diagonalize(restrict_along_arc(relative_log_differentials(s), a))
    d, ordf = _module_numbers(inv, m)
    p = default_jet_point(s, a, m) if point is None else point
    rel = relative_char_monoid_at_jet(s, p)
    value = d * (m + 1) + ordf - rel.relative_gp_rank + rel.correction_count
    notes = ("interpretation: characteristic monoids at the jet point taken on the face "
             "compatible with the base point",
             f"kernel rank {rel.kernel_rank}, relative irreducibles {rel.irreducible_count}",
             "no check that the arc's base coordinate matches a structural base series")
    return EmbDimReport(m, d, ordf, rel.relative_gp_rank, rel.correction_count, 0, value,
                        "interpretation", relative_face(s, p), inv.exponents, inv.free_rank, None, notes)


def relative_fiber_oracle(s: LogChartScheme, a: LogArc, m: int, point: JetPoint | None = None) -> int:
    """Tangent space of the component fiber over the base jet.

    The component presentation gets extra equations fixing every coefficient
    of the base coordinate; the result is ``#variables - rank`` of the stacked
    Jacobian.  Reported next to the relative formula, not used to compute it.
    """
    if s.base is None or s.base.variable is None:
        raise ValidationError(["fiber oracle needs a base variable"])
    pres = component_for(s, a, m)
    p = default_jet_point(s, a, m) if point is None else point
    vals = p.as_dict()
    check_point(pres, vals, s.field)
    x = s.base.variable
    names = {plain_var(x, j) for j in range(m + 1)} | {unit_var(x, j) for j in range(m + 1)}
    names |= {r0_scale_var(x)} | {r0_unit_var(x, j) for j in range(1, m + 1)}
    fixed = [v for v in pres.variables if v in names]
    extra = [Poly.var(v, pres.variables, s.field) for v in fixed]
    return pres.n_variables - jacobian_rank(list(pres.equations) + extra, pres.variables, vals, s.field)


def logpoint_cotangent_dims(Q: MonoidPresentation) -> tuple[int, int]:
    """``(rk gp Q, #irreducibles)``: dimensions of the two terms of the log cotangent complex at a log point."""
    return gp_rank(Q), len(irreducible_elements(Q))
