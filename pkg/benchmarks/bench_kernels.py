"""Time the compiled kernels against the numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both paths are called directly, so ``LOGJET_DISABLE_JIT`` does not matter
here.  Compilation happens in a warmup call before timing.
"""

import argparse
import timeit

import numpy as np

from logjets import _kernels


def box_case(n, bound):
    rel = np.array([[1, -2, 1] + [0] * (n - 3), [0, 1, -1, 1] + [0] * (n - 4)], dtype=np.int64)
    return rel, np.full(n, bound, dtype=np.int64)


def modp_case(rng, r, c, P, p=5):
    mat = rng.integers(0, p, size=(r, c, P), dtype=np.int64)
    # push valuations up so the elimination does some work
    for i in range(r):
        for j in range(c):
            mat[i, j, : rng.integers(0, P)] = 0
    return mat, p


def bench(label, fn_np, fn_nb, args, repeat):
    a, b = fn_np(*args), fn_nb(*args)
    assert np.array_equal(a, b), label
    t_np = min(timeit.repeat(lambda: fn_np(*args), number=1, repeat=repeat))
    t_nb = min(timeit.repeat(lambda: fn_nb(*args), number=1, repeat=repeat))
    print(f"{label:<34} numpy {t_np * 1e3:9.3f} ms   numba {t_nb * 1e3:9.3f} ms   x{t_np / t_nb:7.1f}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels.numba is None:
        raise SystemExit("numba is not installed")
    _kernels.warmup()
    rng = np.random.default_rng(0)
    for n, bound in ((4, 8), (5, 8), (6, 6)):
        bench(f"box_solutions n={n} bound={bound}", _kernels.np_box_solutions, _kernels.nb_box_solutions,
              box_case(n, bound), args.repeat)
    for r, c, P in ((4, 5, 8), (8, 8, 16), (16, 16, 24)):
        mat, p = modp_case(rng, r, c, P)
        bench(f"modp_invariant_factors {r}x{c} P={P}",
              lambda m, q: _kernels.np_modp_invariant_factors(m.copy(), q),
              lambda m, q: _kernels.nb_modp_invariant_factors(m.copy(), np.int64(q)),
              (mat, p), args.repeat)


if __name__ == "__main__":
    main()
