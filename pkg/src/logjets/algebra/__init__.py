from .fields import QQ, Field, FieldElem, ModP
from .intmat import integer_kernel, smith_form, smith_normal_form
from .linalg import field_matrix_rank, nullspace
from .parse import ExpressionError, parse_poly, parse_series
from .poly import Poly
from .series import TruncSeries


def poly_eval_series(f: Poly, assignment: dict) -> TruncSeries:
    """Evaluate ``f`` at truncated series sharing one precision."""
    missing = [v for v in f.used_variables() if v not in assignment]
    if missing:
        raise KeyError(f"no series assigned to {', '.join(missing)}")
    used = {v: assignment[v] for v in f.used_variables()}
    precisions = {s.precision for s in used.values()}
    if len(precisions) > 1:
        raise ValueError(f"series precisions differ: {sorted(precisions)}")
    P = precisions.pop() if precisions else next(iter(assignment.values())).precision
    return f.evaluate(used, one=TruncSeries.t_power(0, P, f.field))


def series_valuation(s: TruncSeries) -> int:
    return s.valuation()


def series_unit_inverse(s: TruncSeries) -> TruncSeries:
    return s.unit_inverse()


__all__ = [
    "QQ", "Field", "FieldElem", "ModP", "Poly", "TruncSeries", "ExpressionError",
    "integer_kernel", "smith_form", "smith_normal_form", "field_matrix_rank", "nullspace",
    "parse_poly", "parse_series", "poly_eval_series", "series_valuation", "series_unit_inverse",
]
