"""Compare the compiled and pure-Python embedding kernels.

Times the three hot kernels (pairwise_distances, stress_value, guttman_bx)
and a full SMACOF solve on growing problem sizes, then prints per-backend
timings and speedups.

Run from the repository root:

    python3 benchmarks/kernel_benchmark.py [--sizes 100,200,400] [--repeats 5]
"""

import argparse
import time

import numpy as np

from jofcmatch.embedding import SmacofOptions, smacof
from jofcmatch.embedding._backend import get_kernels


def make_problem(n, dim, seed):
    rng = np.random.default_rng(seed)
    d = rng.random((n, n))
    d = np.ascontiguousarray((d + d.T) / 2)
    np.fill_diagonal(d, 0.0)
    w = np.ones_like(d)
    np.fill_diagonal(w, 0.0)
    x = np.ascontiguousarray(rng.normal(size=(n, dim)))
    return d, w, x


def best_of(repeats, fn):
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="100,200,400,800",
                        help="comma-separated point counts")
    parser.add_argument("--dim", type=int, default=5)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    backends = {}
    for name in ("python", "cython"):
        try:
            backends[name] = get_kernels(name)
        except Exception as exc:
            print(f"backend {name!r} unavailable: {exc}")
    if "cython" not in backends:
        print("compiled extension missing; run 'pip install -e .' to build it")

    kernels = [
        ("pairwise_distances", lambda k, d, w, x: k.pairwise_distances(x)),
        ("stress_value", lambda k, d, w, x: k.stress_value(d, w, x)),
        ("guttman_bx", lambda k, d, w, x: k.guttman_bx(d, w, x)),
    ]
    header = f"{'kernel':20s} {'n':>5s} " + " ".join(f"{b:>12s}" for b in backends) + "  speedup"
    print(header)
    print("-" * len(header))
    for n in sizes:
        d, w, x = make_problem(n, args.dim, seed=n)
        for kname, call in kernels:
            times = {}
            for bname, kern in backends.items():
                times[bname] = best_of(args.repeats, lambda: call(kern, d, w, x))
            cols = " ".join(f"{times[b] * 1e3:10.3f}ms" for b in backends)
            if "python" in times and "cython" in times:
                speedup = f"{times['python'] / times['cython']:8.2f}x"
            else:
                speedup = "     n/a"
            print(f"{kname:20s} {n:5d} {cols} {speedup}")

    print()
    print("full smacof solve (30 iterations, 1 start):")
    for n in sizes:
        d, w, _ = make_problem(n, args.dim, seed=n)
        opts = {"max_iters": 30, "rel_stress_tol": 0.0, "n_restarts": 1, "rng_seed": 0}
        times = {}
        for bname in backends:
            times[bname] = best_of(
                max(1, args.repeats // 2),
                lambda: smacof(d, w, args.dim, SmacofOptions(backend=bname, **opts)),
            )
        cols = " ".join(f"{times[b] * 1e3:10.3f}ms" for b in backends)
        if "python" in times and "cython" in times:
            speedup = f"{times['python'] / times['cython']:8.2f}x"
        else:
            speedup = "     n/a"
        print(f"{'smacof':20s} {n:5d} {cols} {speedup}")


if __name__ == "__main__":
    main()
