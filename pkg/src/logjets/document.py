"""JSON input documents: parsing into schemes, arcs, modules and maps.

Every block rejects unknown keys.  Expression errors are reported with the
JSON path of the offending string and the column inside it.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Any

from .algebra import QQ, ExpressionError, Field, Poly, parse_poly
from .algebra.parse import parse_series
from .jets import MonomialMap
from .logscheme import BaseChart, LogArc, LogChartScheme, ValidationError
from .module_decomp import MODES, PresentedModule
from .monoid import MonoidError, MonoidHom, MonoidMap, MonoidPresentation

TOP_KEYS = ("name", "description", "field", "monoid", "scheme", "arc", "module", "map", "task")
TASK_KEYS = ("m", "bound", "component", "r", "relative", "vertex")


class DocumentError(ValidationError):
    pass


def _keys(block: Any, allowed, where: str, required=()) -> dict:
    if not isinstance(block, dict):
        raise DocumentError([f"{where}: expected an object"])
    unknown = sorted(k for k in block if k not in allowed)
    problems = [f"{where}: unknown key {k!r}" for k in unknown]
    problems += [f"{where}: missing key {k!r}" for k in required if k not in block]
    if problems:
        raise DocumentError(problems)
    return block


def _expr(text: Any, variables, fld: Field, where: str) -> Poly:
    if not isinstance(text, str):
        raise DocumentError([f"{where}: expected an expression string"])
    try:
        return parse_poly(text, variables, fld)
    except ExpressionError as e:
        raise DocumentError([f"{where}: column {e.column}: {e.message}"]) from None


def _int_list(v: Any, where: str) -> list[int]:
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise DocumentError([f"{where}: expected a list of integers"])
    return list(v)


def parse_field(block: Any) -> Field:
    if block is None:
        return QQ
    _keys(block, ("char",), "field")
    try:
        return Field(int(block.get("char", 0)))
    except ValueError as e:
        raise DocumentError([f"field: {e}"]) from None


def parse_monoid(block: Any, where: str = "monoid") -> MonoidPresentation:
    if block is None:
        return MonoidPresentation((), (), dim=0)
    _keys(block, ("generators", "images", "dim"), where, ("generators", "images"))
    names = block["generators"]
    images = block["images"]
    if isinstance(images, dict):
        images = [images.get(g) for g in names]
    if not isinstance(names, list) or not isinstance(images, list) or len(names) != len(images):
        raise DocumentError([f"{where}: one image vector per generator is required"])
    imgs = [_int_list(v, f"{where}.images[{i}]") for i, v in enumerate(images)]
    try:
        return MonoidPresentation(tuple(names), tuple(tuple(v) for v in imgs), block.get("dim", -1))
    except (MonoidError, ValueError) as e:
        raise DocumentError([f"{where}: {e}"]) from None


def _base(block: Any, Q: MonoidPresentation) -> BaseChart:
    _keys(block, ("monoid", "map", "variable", "point_face"), "scheme.base", ("monoid", "map"))
    R = parse_monoid(block["monoid"], "scheme.base.monoid")
    mp = block["map"]
    if isinstance(mp, dict):
        missing = [g for g in R.names if g not in mp]
        if missing:
            raise DocumentError([f"scheme.base.map: no image for {', '.join(missing)}"])
        rows = []
        for g in R.names:
            img = mp[g]
            if isinstance(img, dict):
                bad = [h for h in img if h not in Q.names]
                if bad:
                    raise DocumentError([f"scheme.base.map.{g}: unknown generator {bad[0]!r}"])
                rows.append(tuple(int(img.get(h, 0)) for h in Q.names))
            else:
                rows.append(tuple(_int_list(img, f"scheme.base.map.{g}")))
    else:
        rows = [tuple(_int_list(v, "scheme.base.map")) for v in mp]
    try:
        phi = MonoidMap(R, Q, tuple(rows))
    except (MonoidError, ValueError) as e:
        raise DocumentError([f"scheme.base.map: {e}"]) from None
    return BaseChart(R, phi, block.get("variable"), tuple(block.get("point_face", ())))


def parse_scheme(block: Any, Q: MonoidPresentation, fld: Field, name: str = "") -> LogChartScheme:
    _keys(block, ("variables", "equations", "chart", "log_smooth", "base"), "scheme", ("variables",))
    variables = tuple(block["variables"])
    eqs = [_expr(e, variables, fld, f"scheme.equations[{i}]") for i, e in enumerate(block.get("equations", []))]
    chart = block.get("chart", {})
    if not isinstance(chart, dict):
        raise DocumentError(["scheme.chart: expected an object mapping generators to variables"])
    base = _base(block["base"], Q) if block.get("base") is not None else None
    return LogChartScheme(variables, tuple(eqs), Q, tuple(chart.items()), bool(block.get("log_smooth", False)),
                          fld, base, name)


def parse_arc(block: Any, s: LogChartScheme) -> LogArc:
    _keys(block, ("r", "precision", "series", "contact"), "arc", ("precision", "series"))
    P = block["precision"]
    r = block.get("r", 1 if s.chart else 0)
    series = block["series"]
    if not isinstance(series, dict):
        raise DocumentError(["arc.series: expected an object mapping variables to series"])
    polys = {}
    for x, text in series.items():
        if not isinstance(text, str):
            raise DocumentError([f"arc.series.{x}: expected an expression string"])
        try:
            polys[x] = parse_series(text, P, s.field)[1]
        except ExpressionError as e:
            raise DocumentError([f"arc.series.{x}: column {e.column}: {e.message}"]) from None
    contact = None
    if "contact" in block and block["contact"] is not None:
        c = block["contact"]
        if isinstance(c, dict):
            c = [c.get(g, 0) for g in s.monoid.names]
        try:
            contact = MonoidHom(tuple(_int_list(c, "arc.contact")), s.monoid)
        except MonoidError as e:
            raise DocumentError([f"arc.contact: {e}"]) from None
    return LogArc(P, r, tuple(polys.items()), contact)


def parse_module(block: Any, fld: Field) -> PresentedModule:
    _keys(block, ("generators", "precision", "mode", "relations"), "module", ("generators", "precision"))
    mode = block.get("mode", "jet")
    if mode not in MODES:
        raise DocumentError([f"module.mode: expected one of {MODES}"])
    G, P = block["generators"], block["precision"]
    rows = []
    for i, row in enumerate(block.get("relations", [])):
        if len(row) != G:
            raise DocumentError([f"module.relations[{i}]: {len(row)} entries for {G} generators"])
        rows.append([_expr(x, ("t",), fld, f"module.relations[{i}][{j}]") for j, x in enumerate(row)])
    return PresentedModule.from_polys(rows, G, P, mode, fld)


def parse_map(block: Any, fld: Field) -> MonomialMap:
    _keys(block, ("source", "target", "images", "exponents"), "map", ("source", "target"))
    src, tgt = tuple(block["source"]), tuple(block["target"])
    if "exponents" in block:
        return MonomialMap(src, tgt, tuple(tuple(_int_list(r, "map.exponents")) for r in block["exponents"]))
    imgs = block.get("images", {})
    rows = []
    for y in tgt:
        if y not in imgs:
            raise DocumentError([f"map.images: no image for {y}"])
        p = _expr(imgs[y], src, fld, f"map.images.{y}")
        if len(p.terms) != 1 or next(iter(p.terms.values())) != 1:
            raise DocumentError([f"map.images.{y}: {p} is not a monomial"])
        rows.append(next(iter(p.terms)))
    return MonomialMap(src, tgt, tuple(rows))


@dataclass
class InputDocument:
    name: str
    raw: dict
    field: Field
    monoid: MonoidPresentation | None
    scheme: LogChartScheme | None
    arc: LogArc | None
    module: PresentedModule | None
    map: MonomialMap | None
    task: dict

    def require(self, what: str):
        v = getattr(self, what)
        if v is None:
            raise DocumentError([f"input has no {what} block"])
        return v


def load_document(text: str, name: str = "") -> InputDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError([f"line {e.lineno} column {e.colno}: {e.msg}"]) from None
    _keys(raw, TOP_KEYS, "document")
    name = raw.get("name", name)
    fld = parse_field(raw.get("field"))
    Q = parse_monoid(raw["monoid"]) if "monoid" in raw else None
    scheme = None
    if "scheme" in raw:
        scheme = parse_scheme(raw["scheme"], Q or parse_monoid(None), fld, name)
    arc = None
    if "arc" in raw:
        if scheme is None:
            raise DocumentError(["arc block needs a scheme block"])
        arc = parse_arc(raw["arc"], scheme)
    module = parse_module(raw["module"], fld) if "module" in raw else None
    mp = parse_map(raw["map"], fld) if "map" in raw else None
    task = _keys(raw.get("task", {}), TASK_KEYS, "task")
    return InputDocument(name, raw, fld, Q, scheme, arc, module, mp, dict(task))


def load_path(path: str) -> InputDocument:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return load_document(text, os.path.splitext(os.path.basename(path))[0])


def contact_from_text(text: str, Q: MonoidPresentation) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise DocumentError([f"--component {text!r}: expected comma-separated integers"]) from None
    if len(vals) != Q.size:
        raise DocumentError([f"--component {text!r}: {Q.size} values expected ({', '.join(Q.names)})"])
    return vals

