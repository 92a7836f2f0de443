"""Time the numba kernels against their pure-numpy twins.

    python benchmarks/bench_kernels.py --sizes 50 100 200 --repeat 5

The first numba call (compilation) is excluded. Both backends are checked
for agreement before timing.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from lsqcentrality import _kernels
from lsqcentrality.network import gnp_random
from lsqcentrality.spectral import symmetric_eigs


def _inputs(n, s, seed):
    net = gnp_random(n, 0.1, seed=seed)
    A = net.matrix.astype(float)
    basis = symmetric_eigs(A)
    gamma = basis.values[:s].copy()
    X = basis.vectors[:, :s].copy()
    zeros = np.zeros(n)
    loo_args = (A, 0.0, 0.0, zeros, zeros, gamma, X, X, True, True)
    pred_args = (0.0, 0.0, zeros, zeros, gamma, X, X)
    X2 = basis.vectors ** 2
    greedy_args = (basis.values, X2, np.sum(X2 * X2, axis=0), np.zeros(n), np.ones(n, bool))
    return {"loo_ss": loo_args, "predict": pred_args, "greedy_scores": greedy_args}


def _best_time(fn, args, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200])
    ap.add_argument("--s", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if _kernels.numba_impl is None:
        print("numba is not installed; only the numpy backend is available")
    print(f"{'kernel':<14}{'N':>6}{'numpy [ms]':>14}{'numba [ms]':>14}{'speedup':>10}")
    for n in args.sizes:
        inputs = _inputs(n, args.s, args.seed)
        for name, call_args in inputs.items():
            ref = _kernels.numpy_impl[name](*call_args)
            t_np = _best_time(_kernels.numpy_impl[name], call_args, args.repeat)
            if _kernels.numba_impl is None:
                print(f"{name:<14}{n:>6}{t_np * 1e3:>14.3f}{'-':>14}{'-':>10}")
                continue
            fast = _kernels.numba_impl[name]
            got = fast(*call_args)  # warm-up and compile
            np.testing.assert_allclose(got, ref, rtol=1e-10, atol=1e-12)
            t_nb = _best_time(fast, call_args, args.repeat)
            print(f"{name:<14}{n:>6}{t_np * 1e3:>14.3f}{t_nb * 1e3:>14.3f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
