"""Small builders shared by the test modules."""

import os

from logjets.algebra import QQ, parse_poly
from logjets.algebra.parse import parse_series
from logjets.document import load_path
from logjets.logscheme import LogArc, LogChartScheme
from logjets.monoid import MonoidHom, MonoidPresentation

# PASS/FAIL lines from the acceptance tests, echoed in the terminal summary
ACCEPTANCE = []

SEED = int(os.environ.get("LOGJET_SEED", "20240611"))
FIXTURES = os.path.abspath(os.path.join(os.path.dirname(__file__), os.pardir, "fixtures"))

TRIVIAL = MonoidPresentation((), (), dim=0)
TORIC_Q = MonoidPresentation(("X", "Z", "Y"), ((1, 1), (1, 0), (1, -1)))
NODE_Q = MonoidPresentation(("U", "V", "T"), ((1, 0), (0, 1), (1, 1)))


def fixture(name):
    return load_path(os.path.join(FIXTURES, name + ".json"))


def scheme(variables, equations, monoid=TRIVIAL, chart=(), log_smooth=False, field=QQ, base=None):
    variables = tuple(variables)
    eqs = [parse_poly(e, variables, field) for e in equations]
    return LogChartScheme(variables, eqs, monoid, tuple(dict(chart).items()), log_smooth, field, base)


def affine_space(n, log_smooth=True):
    names = [f"x{i}" for i in range(1, n + 1)]
    Q = MonoidPresentation.free([f"G{i}" for i in range(1, n + 1)])
    return scheme(names, [], Q, {g: x for g, x in zip(Q.names, names)}, log_smooth)


def toric_q():
    return scheme(("x", "y", "z"), ["x*y - z^2"], TORIC_Q, {"X": "x", "Z": "z", "Y": "y"}, True)


def axes():
    return scheme(("u", "v"), ["u*v"], MonoidPresentation.free(("U", "V")), {"U": "u", "V": "v"})


def cusp():
    return scheme(("x", "y"), ["y^2 - x^3"])


def arc(s, series, precision, r=0, contact=None):
    polys = {x: parse_series(text, precision, s.field)[1] for x, text in series.items()}
    c = None if contact is None else MonoidHom(tuple(contact), s.monoid)
    return LogArc(precision, r, tuple(polys.items()), c)
