"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints one line per kernel with the per-call time of each backend and the
speed-up, plus the end-to-end cost of one optimizer objective evaluation.
"""
import argparse
import os
import timeit

import numpy as np

from rkforge import _kernels
from rkforge.tableau import TABLE46_PARAMS, builtin, family_core
from rkforge.metrics import error_profile_poly
from rkforge.rooted_trees import tree_table


def cases():
    core = family_core(TABLE46_PARAMS)
    A, c, B = core.A, core.c, core.B
    tt = tree_table(7)
    coef = error_profile_poly(A, B, 6)
    pair = builtin("table46")
    x = np.array([1.0, 0.0])

    def rot(t, y):
        return np.array([-y[1], y[0]])

    Afill = A.copy()
    return {
        "a85_residual": lambda k: k.a85_residual(c, A),
        "fill_rows": lambda k: k.fill_rows(c, Afill),
        "elementary_weights(order<=7)": lambda k: k.elementary_weights(A, tt.child_ptr, tt.child_idx),
        "variation": lambda k: k.variation(B),
        "poly_max(1001 grid)": lambda k: k.poly_max(coef, 1001, 1e-8),
        "rk_step(rotation)": lambda k: k.rk_step(rot, 0.0, x, 0.1, pair.A, pair.c, pair.b, pair.d_basis, None, 8),
    }


def time_call(fn, repeat):
    n = max(1, repeat)
    return min(timeit.repeat(fn, number=n, repeat=5)) / n


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=200)
    args = ap.parse_args()
    py = _kernels.python_backend
    cy = _kernels.compiled_backend
    if cy is None:
        print("compiled backend not built; only the Python timings are shown")
    print(f"{'kernel':32s} {'python [us]':>12s} {'cython [us]':>12s} {'speed-up':>9s}")
    for name, fn in cases().items():
        t_py = time_call(lambda: fn(py), args.repeat) * 1e6
        if cy is None:
            print(f"{name:32s} {t_py:12.2f}")
            continue
        t_cy = time_call(lambda: fn(cy), args.repeat) * 1e6
        print(f"{name:32s} {t_py:12.2f} {t_cy:12.2f} {t_py / t_cy:8.1f}x")

    # whole objective evaluation through the active backend
    from rkforge.optimize import ObjectiveSpec, evaluate

    x0 = TABLE46_PARAMS.as_array()
    for kind in "AB":
        spec = ObjectiveSpec(kind)
        t = time_call(lambda: evaluate(spec, x0), args.repeat // 4) * 1e6
        print(f"objective {kind} via {_kernels.BACKEND} backend: {t:.1f} us/eval")
    if os.environ.get("RKFORGE_PURE_PYTHON"):
        print("(RKFORGE_PURE_PYTHON is set)")


if __name__ == "__main__":
    main()
