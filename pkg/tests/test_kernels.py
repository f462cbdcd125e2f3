import os
import subprocess
import sys

import numpy as np
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from logjets import _kernels


@given(st.integers(1, 4), st.integers(0, 3), st.data())
def test_box_solutions_paths_agree(s, r, data):
    rel = data.draw(arrays(np.int64, (r, s), elements=st.integers(-3, 3)))
    bounds = data.draw(arrays(np.int64, (s,), elements=st.integers(0, 4)))
    a = _kernels.np_box_solutions(rel, bounds)
    b = _kernels.nb_box_solutions(rel, bounds)
    assert np.array_equal(a, b)


def test_box_solutions_are_solutions():
    rel = np.array([[1, -2, 1]], dtype=np.int64)
    pts = _kernels.box_solutions(rel, np.array([4, 4, 4]))
    assert all(int(v @ rel[0]) == 0 for v in pts)
    assert len(pts) == 13  # a + c = 2b inside [0, 4]^3
    assert [tuple(v) for v in pts] == sorted(tuple(v) for v in pts)


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 4), st.integers(1, 4), st.integers(1, 7), st.data())
def test_modp_paths_agree(p, r, c, P, data):
    mat = data.draw(arrays(np.int64, (r, c, P), elements=st.integers(0, p - 1)))
    a = _kernels.np_modp_invariant_factors(mat.copy(), p)
    b = _kernels.nb_modp_invariant_factors(mat.copy(), np.int64(p))
    assert np.array_equal(a, b)


def test_fallback_flag_is_honoured():
    code = "from logjets import _kernels; print(_kernels.USE_JIT)"
    env = dict(os.environ, LOGJET_DISABLE_JIT="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"


def test_numpy_fallback_gives_same_module_results():
    code = ("import random, sys; sys.path.insert(0, 'tests');"
            "from test_module_decomp import random_module;"
            "from logjets.module_decomp import diagonalize;"
            "rng = random.Random(7);"
            "print([diagonalize(random_module(rng)).exponents for _ in range(30)])")
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    outs = []
    for flag in ("0", "1"):
        env = dict(os.environ, LOGJET_DISABLE_JIT=flag)
        proc = subprocess.run([sys.executable, "-c", code], env=env, cwd=root, capture_output=True,
                              text=True, check=True)
        outs.append(proc.stdout)
    assert outs[0] == outs[1]
