"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5] [--n 1024]

For each hot kernel the script checks that both backends agree, then reports
the best wall time of ``--repeat`` runs and the speed-up.
"""

import argparse
import time

import numpy as np

from jacobiuniv import _kernels
from jacobiuniv.measure import make_model_bulk
from jacobiuniv.orthopoly import default_rule, jacobi_recurrence


def best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(n):
    table = jacobi_recurrence(0.5, -0.25, n + 1)
    rule = default_rule(make_model_bulk(1.0), n)
    xs = np.linspace(-0.99, 0.99, 512)
    ys = xs[::-1].copy()
    args = (table.diag, table.offdiag, table.p0)
    return {
        f"rkpw ({len(rule.nodes)} nodes -> {n})":
            lambda k: k.rkpw(rule.nodes, rule.weights, n),
        f"recur_eval (n={n}, 512 points)":
            lambda k: k.recur_eval(*args, n, xs),
        f"kernel_sum (n={n}, 512 pairs)":
            lambda k: k.kernel_sum(*args, n, xs, ys),
    }


def agree(a, b):
    if isinstance(a, tuple):
        return all(agree(u, v) for u, v in zip(a, b))
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    return bool(np.allclose(a, b, rtol=1e-12, atol=1e-300))


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--n", type=int, default=1024)
    args = p.parse_args(argv)

    py = _kernels.get_backend("python")
    try:
        co = _kernels.get_backend("compiled")
    except ImportError:
        print("compiled backend not built; only the Python timings are shown")
        co = None

    print(f"{'kernel':<40} {'python [s]':>11} {'compiled [s]':>13} {'speed-up':>9}  agree")
    for name, run in cases(args.n).items():
        t_py = best_time(lambda: run(py), args.repeat)
        if co is None:
            print(f"{name:<40} {t_py:11.4f}")
            continue
        t_co = best_time(lambda: run(co), args.repeat)
        ok = agree(run(py), run(co))
        print(f"{name:<40} {t_py:11.4f} {t_co:13.5f} {t_py / t_co:8.1f}x  {ok}")


if __name__ == "__main__":
    main()
