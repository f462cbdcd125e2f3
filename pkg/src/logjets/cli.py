"""``logjets`` command line.

Exit codes: 0 success, 1 oracle mismatch, 2 parse/validation error,
3 precision guard failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from typing import Any, Sequence

from . import __version__
from .document import DocumentError, InputDocument, contact_from_text, load_path
from .embdim import (embdim_formula, embdim_oracle, embdim_relative, component_for, default_jet_point,
                     logpoint_cotangent_dims, relative_fiber_oracle)
from .jets import (component_index_pushforward, eval_space_components, jet_point_from_arc,
                   log_jet_component_presentation, ordinary_jet_presentation, vertex_jet_point)
from .logscheme import PrecisionError, ValidationError, validate_arc, validate_scheme
from .log_differentials import (build_log_differentials, relative_log_differentials, restrict_along_arc,
                                row_valuations)
from .module_decomp import (ORACLE_LIMIT, betti_number, diagonalize, dimension_oracle, exact_rank,
                            fitting_order, fitting_order_oracle, module_dimension_over_L,
                            stabilization_guard)
from .monoid import (MonoidError, dual_extreme_rays, enumerate_homs_to_N, faces, gp_rank,
                     hilbert_basis_dual, irreducible_elements, is_sharp, quotient_by_face)

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_PRECISION = 0, 1, 2, 3


# --- rendering ------------------------------------------------------------------


def _scalar(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _render(value: Any, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                out.append(f"{pad}{k}:")
                _render(v, indent + 1, out)
            else:
                out.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)) and not _flat(item):
                out.append(f"{pad}-")
                _render(item, indent + 1, out)
            else:
                out.append(f"{pad}- {_inline(item)}")
    else:
        out.append(pad + _scalar(value))


def _flat(v: Any) -> bool:
    # short scalar lists (and lists of them) print on one line
    if isinstance(v, list):
        return all((isinstance(x, list) and _flat(x))
                   or (not isinstance(x, (dict, list)) and len(_scalar(x)) <= 24) for x in v)
    return False


def _inline(v: Any) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}" if not v else "{" + ", ".join(f"{k}: {_inline(x)}" for k, x in v.items()) + "}"
    return _scalar(v)


def render_text(report: dict) -> str:
    out: list[str] = []
    _render(report, 0, out)
    return "\n".join(out) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    return render_text(report)


# --- commands ---------------------------------------------------------------


def _task(doc: InputDocument, args, key: str, default=None):
    v = getattr(args, key, None)
    if v is not None:
        return v
    return doc.task.get(key, default)


def _orders(spec) -> list[int]:
    if isinstance(spec, int):
        return [spec]
    if isinstance(spec, list):
        return [int(x) for x in spec]
    text = str(spec)
    if ".." in text:
        a, b = text.split("..")
        return list(range(int(a), int(b) + 1))
    return [int(x) for x in text.split(",")]


def _component(doc: InputDocument, args):
    c = _task(doc, args, "component")
    s = doc.require("scheme")
    if c is None:
        return None
    if isinstance(c, str):
        return contact_from_text(c, s.monoid)
    return tuple(int(x) for x in c)


def _presentation_dict(p) -> dict:
    return {
        "contact": list(p.contact) if p.contact is not None else None,
        "r": p.r,
        "m": p.order,
        "n_variables": p.n_variables,
        "n_equations": p.n_equations,
        "variables": list(p.variables),
        "equations": [str(e) for e in p.equations],
        "underlying_map": {x: str(v) for x, v in p.underlying_map},
    }


def cmd_monoid(doc: InputDocument, args) -> tuple[dict, int]:
    Q = doc.require("monoid")
    bound = _task(doc, args, "bound", 2)
    res: dict = {
        "generators": list(Q.names),
        "images": [list(v) for v in Q.images],
        "relations": [list(r) for r in Q.relations],
        "gp_rank": gp_rank(Q),
        "sharp": is_sharp(Q),
    }
    if res["sharp"]:
        irr = irreducible_elements(Q)
        homs = enumerate_homs_to_N(Q, bound)
        res.update({
            "irreducibles": irr,
            "N": len(irr),
            "dual_extreme_rays": [list(r) for r in dual_extreme_rays(Q)],
            "hilbert_basis_dual": [list(h.values) for h in hilbert_basis_dual(Q)],
            "hom_bound": bound,
            "hom_count": len(homs),
            "homs": [list(h.values) for h in homs],
            "faces": [{"face": list(F), "gp_rank": quotient_by_face(Q, F).gp_rank,
                       "N": quotient_by_face(Q, F).irreducible_count} for F in faces(Q)],
            "logpoint_cotangent_dims": list(logpoint_cotangent_dims(Q)),
        })
    return res, EXIT_OK


def cmd_evsp(doc: InputDocument, args) -> tuple[dict, int]:
    s = doc.require("scheme")
    validate_scheme(s)
    bound = _task(doc, args, "bound", 2)
    r = _task(doc, args, "r", 1)
    comps = eval_space_components(s, bound, r)
    phi = doc.require("map") if args.pushforward else None
    out = []
    for c in comps:
        d = _presentation_dict(c)
        d["index"] = dict(zip(s.monoid.names, c.contact))
        if phi is not None:
            d["pushforward"] = list(component_index_pushforward(phi, c.contact))
        out.append(d)
    return {"bound": bound, "r": r, "component_count": len(out), "components": out}, EXIT_OK


def cmd_jets(doc: InputDocument, args) -> tuple[dict, int]:
    s = doc.require("scheme")
    validate_scheme(s)
    m = _task(doc, args, "m", 0)
    r = _task(doc, args, "r", 1 if s.chart else 0)
    if not s.chart:
        pres = ordinary_jet_presentation(s, m)
        kind = "ordinary jets"
    elif r == 0:
        pres = log_jet_component_presentation(s, None, 0, m)
        kind = "log jets, r = 0"
    else:
        c = _component(doc, args)
        if c is None:
            raise ValidationError(["r >= 1 log jets need --component"])
        pres = log_jet_component_presentation(s, c, r, m)
        kind = f"log jets, r = {r}"
    d = _presentation_dict(pres)
    d["kind"] = kind
    d["expected_dimension"] = pres.expected_dimension
    return d, EXIT_OK


def _module_from_doc(doc: InputDocument, args):
    if doc.module is not None and not args.relative:
        return doc.module
    s = doc.require("scheme")
    a = doc.require("arc")
    validate_arc(s, a)
    omega = relative_log_differentials(s) if args.relative else build_log_differentials(s)
    return restrict_along_arc(omega, a)


def cmd_module(doc: InputDocument, args) -> tuple[dict, int]:
    M = _module_from_doc(doc, args)
    inv = diagonalize(M)
    res: dict = {
        "generators": M.generators,
        "precision": M.precision,
        "mode": M.mode,
        "relations": M.matrix_str(),
        "invariant_factors": list(inv.exponents),
        "free_rank": inv.free_rank,
        "exact_rank": inv.exact_rank,
    }
    code = EXIT_OK
    if M.mode == "arc":
        g = stabilization_guard(inv)
        res["guard"] = {"ok": g.ok, "reason": g.reason or None, "suggested_precision": g.suggested_precision}
        if not g.ok:
            return res, EXIT_PRECISION
        if M.exact is not None:
            inv2 = diagonalize(M.at_precision(2 * M.precision))
            res["doubled_precision_agrees"] = inv2.exponents == inv.exponents and inv2.free_rank == inv.free_rank
    m_spec = _task(doc, args, "m")
    orders = _orders(m_spec) if m_spec is not None else list(range(M.precision))
    small = M.n_relations <= ORACLE_LIMIT and M.generators <= ORACLE_LIMIT
    table = []
    for m in orders:
        d = betti_number(inv, m)
        row = {
            "m": m,
            "d_m": d,
            "fitting_orders": [fitting_order(inv, i, m) for i in range(M.generators + 1)],
            "dimension": module_dimension_over_L(inv, m),
        }
        if args.oracle:
            row["dimension_oracle"] = dimension_oracle(M, m)
            if row["dimension_oracle"] != row["dimension"]:
                code = EXIT_MISMATCH
            if small:
                row["fitting_orders_oracle"] = [fitting_order_oracle(M, i, m) for i in range(M.generators + 1)]
                if row["fitting_orders_oracle"] != row["fitting_orders"]:
                    code = EXIT_MISMATCH
        table.append(row)
    res["orders"] = table
    return res, code


def cmd_jacobian(doc: InputDocument, args) -> tuple[dict, int]:
    s = doc.require("scheme")
    omega = relative_log_differentials(s) if args.relative else build_log_differentials(s)
    res: dict = {"generators": list(omega.labels), "rows": omega.render()}
    if doc.arc is not None:
        validate_arc(s, doc.arc)
        M = restrict_along_arc(omega, doc.arc)
        res["restricted"] = {
            "precision": M.precision,
            "matrix": M.matrix_str(),
            "valuations": row_valuations(M),
            "exact_rank": exact_rank(M),
        }
    return res, EXIT_OK


def cmd_embdim(doc: InputDocument, args) -> tuple[dict, int]:
    s = doc.require("scheme")
    a = doc.require("arc")
    validate_scheme(s)
    m_spec = _task(doc, args, "m")
    if m_spec is None:
        raise ValidationError(["embdim needs -m"])
    relative = args.relative or bool(doc.task.get("relative", False))
    vertex = args.vertex or bool(doc.task.get("vertex", False))
    code = EXIT_OK
    reports = []
    for m in _orders(m_spec):
        point = None
        if vertex:
            point = vertex_jet_point(s, jet_point_from_arc(s, a, m))
        if relative:
            rep = embdim_relative(s, a, m, point)
            if args.oracle:
                rep = replace(rep, oracle=relative_fiber_oracle(s, a, m, point))
        else:
            rep = embdim_formula(s, a, m, point)
            if args.oracle:
                p = point or default_jet_point(s, a, m)
                rep = replace(rep, oracle=embdim_oracle(component_for(s, a, m), p, s.field))
        d = rep.as_dict()
        d["recomputed"] = rep.recomputed()
        if rep.match is False:
            code = EXIT_MISMATCH
        reports.append(d)
    return {"relative": relative, "vertex": vertex, "reports": reports}, code


COMMANDS = {
    "monoid": (cmd_monoid, "monoid invariants, homs to N, Hilbert basis, faces"),
    "evsp": (cmd_evsp, "evaluation-space components"),
    "jets": (cmd_jets, "one jet / log jet component presentation"),
    "module": (cmd_module, "invariant factors, Betti numbers, Fitting orders"),
    "jacobian": (cmd_jacobian, "log differential presentation and its restriction to the arc"),
    "embdim": (cmd_embdim, "embedding dimension formula (and oracle)"),
}


TASK_ECHO = {
    "monoid": ("bound",),
    "evsp": ("bound", "r", "pushforward"),
    "jets": ("m", "component", "r"),
    "module": ("m", "oracle", "relative"),
    "jacobian": ("relative",),
    "embdim": ("m", "oracle", "relative", "vertex"),
}

PROVENANCE = {
    "monoid": ("relations: integer kernel of the generator matrix",
               "irreducibles: exact decomposition search inside a weight bound",
               "homs: box enumeration with irreducible generator values <= bound",
               "faces: quotient by the span of the face, irreducibles of the image monoid"),
    "evsp": ("one component per hom to N with irreducible generator values <= bound",
             "chart coordinates with positive contact map to 0 on the underlying scheme"),
    "jets": ("monoid relations impose the full order 0..m unit identity",
             "other ideal generators impose the coefficients of t^0..t^m"),
    "module": ("invariant factors: minimal-valuation pivoting, row-major ties",
               "d_m = free + #{e >= m+1}; Fitting order = min(m+1, sum of the smallest G-i factors)",
               "arc mode: exact-rank check plus P > sum(e) + max(e)"),
    "jacobian": ("rows: monoid relations, then df with dx = x dlog_x on chart coordinates",
                 "rows reduced only by the chart binomials"),
    "embdim": ("formula: d_m (m+1) + ord Fitt^{d_m} - rk + N - 0",
               "oracle: #variables - Jacobian rank of the component presentation at the jet point",
               "relative reports follow the face rule and are flagged as an interpretation"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="JSON input document")
    common.add_argument("--format", choices=("text", "json"), default="text")
    p = argparse.ArgumentParser(prog="logjets", description="Log jet spaces of chart-presented schemes.")
    p.add_argument("--version", action="version", version=f"logjets {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_)
        if name in ("monoid", "evsp"):
            sp.add_argument("--bound", type=int)
        if name == "evsp":
            sp.add_argument("--pushforward", action="store_true", help="map indices through the map block")
        if name in ("evsp", "jets"):
            sp.add_argument("-r", type=int, dest="r")
        if name in ("jets", "module", "embdim"):
            sp.add_argument("-m", dest="m", help="order, a list 2,3 or a range 2..8" if name != "jets" else "order")
        if name == "jets":
            sp.add_argument("--component", help="contact index, comma separated")
        if name in ("module", "embdim"):
            sp.add_argument("--oracle", action="store_true")
        if name in ("module", "jacobian", "embdim"):
            sp.add_argument("--relative", action="store_true")
        if name == "embdim":
            sp.add_argument("--vertex", action="store_true", help="use the jet point over the monoid vertex")
    return p


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    if args.command == "jets" and args.m is not None:
        if not args.m.isdigit():
            print(f"error: -m {args.m!r}: expected a nonnegative integer", file=stderr)
            return EXIT_INVALID
        args.m = int(args.m)
    fn = COMMANDS[args.command][0]
    try:
        doc = load_path(args.file)
        results, code = fn(doc, args)
    except (DocumentError, ValidationError, MonoidError) as e:
        problems = getattr(e, "problems", [str(e)])
        for msg in problems:
            print(f"error: {msg}", file=stderr)
        return EXIT_INVALID
    except PrecisionError as e:
        print(f"precision: {e}", file=stderr)
        return EXIT_PRECISION
    except OSError as e:
        print(f"error: {e}", file=stderr)
        return EXIT_INVALID
    relevant = TASK_ECHO[args.command]
    task = {k: v for k, v in doc.task.items() if k in relevant}
    for k in relevant:
        v = getattr(args, k, None)
        if v not in (None, False):
            task[k] = v
    report = {
        "command": args.command,
        "input": doc.name,
        "field": str(doc.field),
        "task": task,
        "results": results,
        "provenance": list(PROVENANCE[args.command]),
    }
    stdout.write(render(report, args.format))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
